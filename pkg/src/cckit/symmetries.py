"""Infinitesimal symmetries of an almost-cosymplectic-contact structure.

Every vector field on the chart splits as X = Lambda#(alpha) + h E for a
generator pair g = (alpha, h); alpha is unique up to adding multiples of
omega, so pairs are compared through (Lambda# alpha, h).  The module
provides

* the bilinear bracket on generator pairs that mirrors the commutator:
  X_[[g1; g2]] = [X_g1, X_g2] exactly;
* residual-based certification of symmetry of omega, Omega, E, Lambda and
  the four mixed pairs, in both generator-condition form and direct
  Lie-derivative form, with exact equivalence between the two;
* reduced bracket formulas valid on each symmetry class (each computed
  from all of its displayed variants, which must agree);
* structural identities: the anchored Leibniz rule, derivation laws, the
  averaged Lie-derivative form of the bracket, and the commutation of
  Lie transport with the sharp map;
* an exact polynomial generator search (nullspace over Q).

The closed-kernel conditions are evaluated on the canonical representative
alpha - alpha(E) omega; this is the exact form of L_X Omega and keeps every
verdict independent of the representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import Chart, Scalar, rational_nullspace
from .algebra.poly import Poly
from .exterior import (
    DiffForm,
    Multivector,
    _contract,
    coordinate_form,
    exterior_derivative,
    form_on_vector,
    lie_derivative_form,
    lie_derivative_scalar,
    pairing,
    scalar_form,
    schouten_bracket,
    wedge,
    zero_form,
)
from .report import CheckEntry, ConditionReport
from .structures import (
    ContravariantPair,
    CovariantPair,
    StructureError,
    is_almost_cosymplectic_contact,
    lambda_pair,
    project,
    sharp,
    two_form_through_sharp,
)


class SymmetryTarget(Enum):
    omega = "omega"
    Omega = "Omega"
    E = "E"
    Lambda = "Lambda"
    cov_pair = "cov_pair"
    contra_pair = "contra_pair"
    E_Omega = "E_Omega"
    Lambda_Omega = "Lambda_Omega"
    E_omega = "E_omega"
    Lambda_omega = "Lambda_omega"


class BracketMode(Enum):
    omega_sym = "omega_sym"
    Omega_sym = "Omega_sym"
    E_sym = "E_sym"
    full_sym = "full_sym"


class PreconditionError(StructureError):
    """Inputs fail the symmetry-class preconditions of an operation."""

    def __init__(self, message: str, reports: tuple[ConditionReport, ...] = ()):
        super().__init__(message)
        self.reports = reports


class InternalIdentityError(StructureError):
    """Two displays of the same reduced formula disagreed (engine invariant)."""


@dataclass(frozen=True)
class GeneratorPair:
    """A (1-form, function) pair generating the vector field alpha# + h E."""

    alpha: DiffForm
    h: Scalar

    def __post_init__(self) -> None:
        if self.alpha.degree != 1:
            raise StructureError("generator pair carries a 1-form")
        if self.alpha.chart.dim != self.h.nvars:
            raise StructureError("pair members live on different charts")

    @property
    def chart(self) -> Chart:
        return self.alpha.chart

    def __add__(self, other: "GeneratorPair") -> "GeneratorPair":
        return GeneratorPair(self.alpha + other.alpha, self.h + other.h)

    def __sub__(self, other: "GeneratorPair") -> "GeneratorPair":
        return GeneratorPair(self.alpha - other.alpha, self.h - other.h)

    def __neg__(self) -> "GeneratorPair":
        return GeneratorPair(-self.alpha, -self.h)

    def scale(self, factor: Scalar | int | Fraction) -> "GeneratorPair":
        if not isinstance(factor, Scalar):
            factor = Scalar.const(self.chart.dim, factor)
        return GeneratorPair(self.alpha.scale(factor), factor * self.h)


def zero_pair(chart: Chart) -> GeneratorPair:
    return GeneratorPair(zero_form(chart, 1), Scalar.zero(chart.dim))


@dataclass(frozen=True)
class _Setting:
    """Cached data shared by the symmetry computations."""

    cov: CovariantPair
    con: ContravariantPair
    tau: DiffForm          # L_E omega = i_E d omega
    d_omega: DiffForm


def _setting(cov: CovariantPair, con: ContravariantPair) -> _Setting:
    if cov.chart != con.chart:
        raise StructureError("covariant and contravariant pairs on different charts")
    d_omega = exterior_derivative(cov.omega)
    tau = lie_derivative_form(con.E, cov.omega)
    return _Setting(cov, con, tau, d_omega)


def _grad(f: Scalar, chart: Chart) -> DiffForm:
    return exterior_derivative(scalar_form(chart, f))


def pair_to_vector(
    cov: CovariantPair, con: ContravariantPair, g: GeneratorPair
) -> Multivector:
    """X_g = Lambda#(alpha) + h E."""
    return sharp(con, g.alpha) + con.E.scale(g.h)


def pairs_equivalent(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
) -> bool:
    """Equality modulo the omega-multiple ambiguity of the 1-form slot."""
    return sharp(con, g1.alpha) == sharp(con, g2.alpha) and g1.h == g2.h


def pair_bracket(
    cov: CovariantPair, con: ContravariantPair, g1: GeneratorPair, g2: GeneratorPair
) -> GeneratorPair:
    """The bilinear bracket on generator pairs.

    Mirrors the commutator: X of the result equals [X_g1, X_g2] exactly.
    Requires d Omega = 0 (the identities behind the formula need it).
    """
    if not is_almost_cosymplectic_contact(cov):
        raise StructureError(
            "pair bracket requires a regular pair with d Omega = 0"
        )
    s = _setting(cov, con)
    return _bracket_formula(s, g1, g2)


def _bracket_formula(s: _Setting, g1: GeneratorPair, g2: GeneratorPair) -> GeneratorPair:
    chart = s.cov.chart
    e_field = s.con.E
    a1, h1 = g1.alpha, g1.h
    a2, h2 = g2.alpha, g2.h
    a1s = sharp(s.con, a1)
    a2s = sharp(s.con, a2)
    a1_e = form_on_vector(a1, e_field)
    a2_e = form_on_vector(a2, e_field)
    lam12 = form_on_vector(a2, a1s)  # Lambda(alpha1, alpha2)

    alpha_out = (
        _grad(lam12, chart)
        - _contract(a2s, exterior_derivative(a1))
        + _contract(a1s, exterior_derivative(a2))
        + _contract(a2s, s.d_omega).scale(a1_e)
        - _contract(a1s, s.d_omega).scale(a2_e)
        + (lie_derivative_form(e_field, a2) - s.tau.scale(a2_e)).scale(h1)
        - (lie_derivative_form(e_field, a1) - s.tau.scale(a1_e)).scale(h2)
    )
    h_out = (
        lie_derivative_scalar(a1s, h2)
        - lie_derivative_scalar(a2s, h1)
        - pairing(s.d_omega, a1s, a2s)
        + h1 * (lie_derivative_scalar(e_field, h2) + lambda_pair(s.con, s.tau, a2))
        - h2 * (lie_derivative_scalar(e_field, h1) + lambda_pair(s.con, s.tau, a1))
    )
    return GeneratorPair(alpha_out, h_out)


# ---------------------------------------------------------------------------
# condition residuals (all linear in (alpha, h))
# ---------------------------------------------------------------------------


def _omega_residual(s: _Setting, g: GeneratorPair) -> DiffForm:
    """L_X omega computed in pair data: i_{alpha#} d omega + h i_E d omega + dh."""
    a_sharp = sharp(s.con, g.alpha)
    return (
        _contract(a_sharp, s.d_omega)
        + _contract(s.con.E, s.d_omega).scale(g.h)
        + _grad(g.h, s.cov.chart)
    )


def _reeb_scalar_residual(s: _Setting, g: GeneratorPair) -> Scalar:
    """E.h + Lambda(L_E omega, alpha): the Reeb component of the omega residual."""
    return lie_derivative_scalar(s.con.E, g.h) + lambda_pair(s.con, s.tau, g.alpha)


def _image_vector_residual(s: _Setting, g: GeneratorPair) -> Multivector:
    """Lambda# of the omega residual: the component seen on the image of p1."""
    return sharp(s.con, _omega_residual(s, g))


def _canonical_alpha(s: _Setting, alpha: DiffForm) -> DiffForm:
    return project(s.cov, s.con, alpha, "q1")


def _closed_kernel_residual(s: _Setting, g: GeneratorPair) -> DiffForm:
    """d of the canonical representative; this equals L_X Omega exactly."""
    return exterior_derivative(_canonical_alpha(s, g.alpha))


def _reeb_vector_residual(s: _Setting, g: GeneratorPair) -> Multivector:
    """(L_E alpha - alpha(E) L_E omega)#: the vector part of [X, E]."""
    a_e = form_on_vector(g.alpha, s.con.E)
    return sharp(s.con, lie_derivative_form(s.con.E, g.alpha) - s.tau.scale(a_e))


def _two_sharp_residual(s: _Setting, g: GeneratorPair) -> Multivector:
    """(d alpha - alpha(E) d omega) pulled through (Lambda#, Lambda#)."""
    a_e = form_on_vector(g.alpha, s.con.E)
    two_form = exterior_derivative(g.alpha) - s.d_omega.scale(a_e)
    return two_form_through_sharp(s.con, two_form)


def _lambda_headline_residual(s: _Setting, g: GeneratorPair) -> Multivector:
    """[alpha#, Lambda] - E ^ (dh + h L_E omega)#: equals [X, Lambda]."""
    chart = s.cov.chart
    a_sharp = sharp(s.con, g.alpha)
    correction = sharp(s.con, _grad(g.h, chart) + s.tau.scale(g.h))
    return schouten_bracket(a_sharp, s.con.Lam) - wedge(s.con.E, correction)


_CONDITION_BUILDERS = {
    SymmetryTarget.omega: (
        ("1-form residual i_{alpha#} d omega + h i_E d omega + dh", _omega_residual),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
    ),
    SymmetryTarget.Omega: (
        (
            "closedness of the canonical representative d(alpha - alpha(E) omega)",
            _closed_kernel_residual,
        ),
    ),
    SymmetryTarget.E: (
        ("vector part (L_E alpha - alpha(E) L_E omega)#", _reeb_vector_residual),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
    ),
    SymmetryTarget.Lambda: (
        (
            "bivector residual [alpha#, Lambda] - E ^ (dh + h L_E omega)#",
            _lambda_headline_residual,
        ),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
        (
            "(d alpha - alpha(E) d omega) through (Lambda#, Lambda#)",
            _two_sharp_residual,
        ),
    ),
    SymmetryTarget.cov_pair: (
        (
            "closedness of the canonical representative d(alpha - alpha(E) omega)",
            _closed_kernel_residual,
        ),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
    ),
    SymmetryTarget.contra_pair: (
        ("vector part (L_E alpha - alpha(E) L_E omega)#", _reeb_vector_residual),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
        (
            "(d alpha - alpha(E) d omega) through (Lambda#, Lambda#)",
            _two_sharp_residual,
        ),
    ),
    SymmetryTarget.E_Omega: (
        (
            "closedness of the canonical representative d(alpha - alpha(E) omega)",
            _closed_kernel_residual,
        ),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
    ),
    SymmetryTarget.Lambda_Omega: (
        (
            "closedness of the canonical representative d(alpha - alpha(E) omega)",
            _closed_kernel_residual,
        ),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
    ),
    SymmetryTarget.E_omega: (
        ("vector part (L_E alpha - alpha(E) L_E omega)#", _reeb_vector_residual),
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
    ),
    SymmetryTarget.Lambda_omega: (
        ("Reeb component E.h + Lambda(L_E omega, alpha)", _reeb_scalar_residual),
        ("Lambda#-image component of the 1-form residual", _image_vector_residual),
        (
            "(d alpha - alpha(E) d omega) through (Lambda#, Lambda#)",
            _two_sharp_residual,
        ),
    ),
}


def check_generator_conditions(
    cov: CovariantPair,
    con: ContravariantPair,
    g: GeneratorPair,
    target: SymmetryTarget,
) -> ConditionReport:
    """Condition-form certification that X_g preserves the target.

    Degenerate data (alpha(E) != 0, d alpha != 0) shows up as condition
    failures, never as exceptions.
    """
    s = _setting(cov, con)
    entries = tuple(
        CheckEntry.of(label, builder(s, g))
        for label, builder in _CONDITION_BUILDERS[target]
    )
    return ConditionReport(f"generator conditions for target {target.value}", entries)


_DIRECT_FIELDS = {
    SymmetryTarget.omega: ("omega",),
    SymmetryTarget.Omega: ("Omega",),
    SymmetryTarget.E: ("E",),
    SymmetryTarget.Lambda: ("Lambda",),
    SymmetryTarget.cov_pair: ("omega", "Omega"),
    SymmetryTarget.contra_pair: ("E", "Lambda"),
    SymmetryTarget.E_Omega: ("E", "Omega"),
    SymmetryTarget.Lambda_Omega: ("Lambda", "Omega"),
    SymmetryTarget.E_omega: ("E", "omega"),
    SymmetryTarget.Lambda_omega: ("Lambda", "omega"),
}


def check_symmetry_direct(
    cov: CovariantPair,
    con: ContravariantPair,
    x: Multivector,
    target: SymmetryTarget,
) -> ConditionReport:
    """Direct Lie-derivative certification that X preserves the target."""
    if x.degree != 1:
        raise StructureError("symmetry candidate must be a vector field")
    entries = []
    for field in _DIRECT_FIELDS[target]:
        if field == "omega":
            entries.append(
                CheckEntry.of("L_X omega", lie_derivative_form(x, cov.omega))
            )
        elif field == "Omega":
            entries.append(
                CheckEntry.of("L_X Omega", lie_derivative_form(x, cov.Omega))
            )
        elif field == "E":
            entries.append(CheckEntry.of("[X, E]", schouten_bracket(x, con.E)))
        else:
            entries.append(
                CheckEntry.of("[X, Lambda]", schouten_bracket(x, con.Lam))
            )
    return ConditionReport(f"direct symmetry of {target.value}", tuple(entries))


@dataclass(frozen=True)
class EquivalenceReport:
    """Covariant conditions vs contravariant conditions vs direct transport."""

    covariant: ConditionReport
    contravariant: ConditionReport
    direct: ConditionReport

    @property
    def verdicts(self) -> tuple[bool, bool, bool]:
        return (self.covariant.ok, self.contravariant.ok, self.direct.ok)

    @property
    def agree(self) -> bool:
        a, b, c = self.verdicts
        return a == b == c

    @property
    def ok(self) -> bool:
        return self.agree


def theorem_equivalence_check(
    cov: CovariantPair, con: ContravariantPair, g: GeneratorPair
) -> EquivalenceReport:
    """Three certification routes for full-structure symmetry must agree.

    Conditions for (omega, Omega), conditions for (E, Lambda), and the
    four direct Lie derivatives of X_g give the same verdict; any
    disagreement is a hard failure surfaced through `agree`.
    """
    x = pair_to_vector(cov, con, g)
    covariant = check_generator_conditions(cov, con, g, SymmetryTarget.cov_pair)
    contravariant = check_generator_conditions(
        cov, con, g, SymmetryTarget.contra_pair
    )
    direct_cov = check_symmetry_direct(cov, con, x, SymmetryTarget.cov_pair)
    direct_con = check_symmetry_direct(cov, con, x, SymmetryTarget.contra_pair)
    direct = ConditionReport(
        "direct symmetry of all four fields",
        direct_cov.entries + direct_con.entries,
    )
    return EquivalenceReport(covariant, contravariant, direct)


# ---------------------------------------------------------------------------
# reduced brackets
# ---------------------------------------------------------------------------


def _require(
    s: _Setting, g: GeneratorPair, target: SymmetryTarget, role: str
) -> ConditionReport:
    report = check_generator_conditions(s.cov, s.con, g, target)
    if not report.ok:
        raise PreconditionError(
            f"{role} is not a generator for target {target.value}: "
            + "; ".join(entry.label for entry in report.failures()),
            (report,),
        )
    return report


_MODE_TARGET = {
    BracketMode.omega_sym: SymmetryTarget.omega,
    BracketMode.Omega_sym: SymmetryTarget.Omega,
    BracketMode.E_sym: SymmetryTarget.E,
    BracketMode.full_sym: SymmetryTarget.cov_pair,
}


def reduced_bracket(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
    mode: BracketMode,
) -> GeneratorPair:
    """Bracket computed through the reduced formula of a symmetry class.

    Inputs must satisfy the class conditions (PreconditionError otherwise).
    Every displayed variant of the reduced formula is evaluated; variants
    must agree exactly, and the result matches pair_bracket modulo the
    omega-ambiguity of the 1-form slot.
    """
    s = _setting(cov, con)
    target = _MODE_TARGET[mode]
    _require(s, g1, target, "first pair")
    _require(s, g2, target, "second pair")

    chart = s.cov.chart
    e_field = s.con.E
    if mode in (BracketMode.Omega_sym, BracketMode.full_sym):
        g1 = GeneratorPair(_canonical_alpha(s, g1.alpha), g1.h)
        g2 = GeneratorPair(_canonical_alpha(s, g2.alpha), g2.h)
    a1, h1 = g1.alpha, g1.h
    a2, h2 = g2.alpha, g2.h
    a1s = sharp(s.con, a1)
    a2s = sharp(s.con, a2)
    a1_e = form_on_vector(a1, e_field)
    a2_e = form_on_vector(a2, e_field)
    lam12 = form_on_vector(a2, a1s)
    d_lam12 = _grad(lam12, chart)
    grad_h1 = _grad(h1, chart)
    grad_h2 = _grad(h2, chart)

    def h_plain() -> Scalar:
        return (
            lie_derivative_scalar(a1s, h2)
            - lie_derivative_scalar(a2s, h1)
            - pairing(s.d_omega, a1s, a2s)
        )

    if mode == BracketMode.omega_sym:
        alpha_one = (
            d_lam12
            - _contract(a2s, exterior_derivative(a1))
            + _contract(a1s, exterior_derivative(a2))
            + _contract(a2s, s.d_omega).scale(a1_e)
            - _contract(a1s, s.d_omega).scale(a2_e)
            + (lie_derivative_form(e_field, a2) - s.tau.scale(a2_e)).scale(h1)
            - (lie_derivative_form(e_field, a1) - s.tau.scale(a1_e)).scale(h2)
        )
        h_one = h_plain()
        alpha_two = (
            d_lam12
            - _contract(a2s, exterior_derivative(a1))
            + _contract(a1s, exterior_derivative(a2))
            - grad_h2.scale(a1_e)
            + grad_h1.scale(a2_e)
            + lie_derivative_form(e_field, a2).scale(h1)
            - lie_derivative_form(e_field, a1).scale(h2)
        )
        h_two = (
            pairing(s.d_omega, a1s, a2s)
            + h1 * pairing(s.d_omega, e_field, a2s)
            - h2 * pairing(s.d_omega, e_field, a1s)
        )
        if alpha_one != alpha_two or h_one != h_two:
            raise InternalIdentityError("omega_sym displays disagree")
        return GeneratorPair(alpha_one, h_one)

    if mode == BracketMode.Omega_sym:
        h_out = (
            lie_derivative_scalar(a1s, h2)
            - lie_derivative_scalar(a2s, h1)
            - pairing(s.d_omega, a1s, a2s)
            + h1
            * (lie_derivative_scalar(e_field, h2) + lambda_pair(s.con, s.tau, a2))
            - h2
            * (lie_derivative_scalar(e_field, h1) + lambda_pair(s.con, s.tau, a1))
        )
        return GeneratorPair(d_lam12, h_out)

    if mode == BracketMode.E_sym:
        alpha_one = (
            d_lam12
            - _contract(a2s, exterior_derivative(a1))
            + _contract(a1s, exterior_derivative(a2))
            + _contract(a2s, s.d_omega).scale(a1_e)
            - _contract(a1s, s.d_omega).scale(a2_e)
        )
        alpha_two = (
            -d_lam12
            - lie_derivative_form(a2s, a1)
            + lie_derivative_form(a1s, a2)
            + lie_derivative_form(a2s, s.cov.omega).scale(a1_e)
            - lie_derivative_form(a1s, s.cov.omega).scale(a2_e)
        )
        if alpha_one != alpha_two:
            raise InternalIdentityError("E_sym displays disagree")
        return GeneratorPair(alpha_one, h_plain())

    # full_sym: three displays of the function slot
    h_one = h_plain()
    h_two = (
        pairing(s.d_omega, a1s, a2s)
        + h2 * lambda_pair(s.con, s.tau, a1)
        - h1 * lambda_pair(s.con, s.tau, a2)
    )
    h_three = (
        pairing(s.d_omega, a1s, a2s)
        + h1 * lie_derivative_scalar(e_field, h2)
        - h2 * lie_derivative_scalar(e_field, h1)
    )
    if h_one != h_two or h_one != h_three:
        raise InternalIdentityError("full_sym displays disagree")
    return GeneratorPair(d_lam12, h_one)


def closure_check_Omega(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
) -> ConditionReport:
    """The reduced bracket of two closed-form pairs stays closed-kernel.

    Precondition: both 1-forms are literally closed (raised otherwise).
    The output 1-form is d Lambda(alpha1, alpha2); the report certifies
    its Reeb pairing vanishes and that it is closed, i.e. the output pair
    stays inside closed-kernel forms times functions.
    """
    s = _setting(cov, con)
    for role, g in (("first pair", g1), ("second pair", g2)):
        if not exterior_derivative(g.alpha).is_zero():
            raise PreconditionError(f"{role} carries a non-closed 1-form")
    out_alpha = _grad(lambda_pair(con, g1.alpha, g2.alpha), cov.chart)
    entries = (
        CheckEntry.of(
            "Reeb pairing E . Lambda(alpha1, alpha2) of the output 1-form",
            form_on_vector(out_alpha, con.E),
        ),
        CheckEntry.of(
            "exterior derivative of the output 1-form",
            exterior_derivative(out_alpha),
        ),
    )
    return ConditionReport("closure of closed-kernel generators", entries)


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


def leibniz_defect(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
    f: Scalar,
) -> GeneratorPair:
    """[[g1; f g2]] - f [[g1; g2]] - (X_g1.f) g2, computed exactly.

    The exact expansion makes this vanish identically: the product-rule
    term of d Lambda(alpha1, f alpha2) cancels against the df-term inside
    i_{alpha1#} d(f alpha2), so the bracket obeys the anchored Leibniz
    rule on the nose.
    """
    scaled = g2.scale(f)
    x1 = pair_to_vector(cov, con, g1)
    x1_f = lie_derivative_scalar(x1, f)
    lhs = pair_bracket(cov, con, g1, scaled)
    rhs = pair_bracket(cov, con, g1, g2).scale(f) + g2.scale(x1_f)
    return lhs - rhs


def leibniz_rule_report(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
    f: Scalar,
) -> ConditionReport:
    """Certify the anchored Leibniz rule: the defect is trivial as a pair."""
    defect = leibniz_defect(cov, con, g1, g2, f)
    entries = (
        CheckEntry.of("defect 1-form slot (literal)", defect.alpha),
        CheckEntry.of("defect vector part (Lambda# of the 1-form slot)",
                      sharp(con, defect.alpha)),
        CheckEntry.of("defect function slot", defect.h),
    )
    return ConditionReport("anchored Leibniz rule", entries)


def leibniz_correction_report(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
    f: Scalar,
) -> ConditionReport:
    """Compare the defect against the candidate correction Lambda(a1,a2) df.

    The engine's exact defect is identically zero, so this check holds
    exactly when the candidate term itself is trivial (Lambda(alpha1,
    alpha2) df a multiple of omega); it fails on generic inputs.
    """
    chart = cov.chart
    defect = leibniz_defect(cov, con, g1, g2, f)
    lam12 = lambda_pair(con, g1.alpha, g2.alpha)
    candidate = _grad(f, chart).scale(lam12)
    entries = (
        CheckEntry.of(
            "defect minus Lambda(alpha1, alpha2) df (vector comparison)",
            sharp(con, defect.alpha - candidate),
        ),
        CheckEntry.of("defect function slot", defect.h),
    )
    return ConditionReport(
        "defect against the candidate correction term", entries
    )


@dataclass(frozen=True)
class HamiltonJacobiLift:
    pair: GeneratorPair
    reeb_derivative: Scalar

    @property
    def admissible(self) -> bool:
        return self.reeb_derivative.is_zero()


def hamilton_jacobi_lift(
    cov: CovariantPair, con: ContravariantPair, h: Scalar
) -> HamiltonJacobiLift:
    """The pair (dh, -h) together with the admissibility residual E.h."""
    chart = cov.chart
    pair = GeneratorPair(_grad(h, chart), -h)
    return HamiltonJacobiLift(pair, lie_derivative_scalar(con.E, h))


def poisson_bracket(con: ContravariantPair, h1: Scalar, h2: Scalar) -> Scalar:
    """{h1, h2} = Lambda(dh1, dh2)."""
    chart = con.chart
    return lambda_pair(con, _grad(h1, chart), _grad(h2, chart))


def lie_derivative_pair(
    cov: CovariantPair, con: ContravariantPair, x: Multivector, g: GeneratorPair
) -> GeneratorPair:
    """Componentwise transport (L_X alpha, X.h)."""
    if x.degree != 1:
        raise StructureError("transport along a vector field only")
    return GeneratorPair(
        lie_derivative_form(x, g.alpha), lie_derivative_scalar(x, g.h)
    )


def derivation_check_D(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
    g3: GeneratorPair,
) -> ConditionReport:
    """[[g1; .]] acts as a derivation of the bracket on Omega-symmetry pairs.

    All three pairs must satisfy the Omega generator conditions; the
    identity is compared through (Lambda# alpha, h).
    """
    s = _setting(cov, con)
    for role, g in (("first pair", g1), ("second pair", g2), ("third pair", g3)):
        _require(s, g, SymmetryTarget.Omega, role)
    lhs = pair_bracket(cov, con, g1, pair_bracket(cov, con, g2, g3))
    rhs = pair_bracket(cov, con, pair_bracket(cov, con, g1, g2), g3) + pair_bracket(
        cov, con, g2, pair_bracket(cov, con, g1, g3)
    )
    difference = lhs - rhs
    entries = (
        CheckEntry.of("vector slot of the derivation identity",
                      sharp(con, difference.alpha)),
        CheckEntry.of("function slot of the derivation identity", difference.h),
    )
    return ConditionReport("bracket derivation identity", entries)


def derivation_check_LX(
    cov: CovariantPair,
    con: ContravariantPair,
    x: Multivector,
    g1: GeneratorPair,
    g2: GeneratorPair,
) -> ConditionReport:
    """Transport along a structure symmetry is a derivation of the bracket.

    Preconditions (X preserves omega and Omega; g1, g2 generate full
    symmetries) are reported individually rather than raised.
    """
    entries: list[CheckEntry] = []
    x_report = check_symmetry_direct(cov, con, x, SymmetryTarget.cov_pair)
    entries.append(
        CheckEntry.verdict(
            "X preserves omega and Omega",
            x_report.ok,
            [entry.residual for entry in x_report.failures()],
        )
    )
    for role, g in (("first", g1), ("second", g2)):
        g_report = check_generator_conditions(cov, con, g, SymmetryTarget.cov_pair)
        entries.append(
            CheckEntry.verdict(
                f"{role} pair generates a full symmetry",
                g_report.ok,
                [entry.residual for entry in g_report.failures()],
            )
        )
    for role, g in (("first", g1), ("second", g2)):
        transported = lie_derivative_pair(cov, con, x, g)
        t_report = check_generator_conditions(
            cov, con, transported, SymmetryTarget.cov_pair
        )
        entries.append(
            CheckEntry.verdict(
                f"transported {role} pair stays a full symmetry",
                t_report.ok,
                [entry.residual for entry in t_report.failures()],
            )
        )
    lhs = lie_derivative_pair(cov, con, x, pair_bracket(cov, con, g1, g2))
    rhs = pair_bracket(
        cov, con, lie_derivative_pair(cov, con, x, g1), g2
    ) + pair_bracket(cov, con, g1, lie_derivative_pair(cov, con, x, g2))
    difference = lhs - rhs
    entries.append(
        CheckEntry.of("vector slot of the derivation identity",
                      sharp(con, difference.alpha))
    )
    entries.append(
        CheckEntry.of("function slot of the derivation identity", difference.h)
    )
    return ConditionReport("transport derivation identity", tuple(entries))


def antisymmetrization_identity(
    cov: CovariantPair,
    con: ContravariantPair,
    g1: GeneratorPair,
    g2: GeneratorPair,
) -> ConditionReport:
    """[[g1; g2]] = (L_X1 g2 - L_X2 g1) / 2 on full-symmetry generators."""
    s = _setting(cov, con)
    _require(s, g1, SymmetryTarget.cov_pair, "first pair")
    _require(s, g2, SymmetryTarget.cov_pair, "second pair")
    x1 = pair_to_vector(cov, con, g1)
    x2 = pair_to_vector(cov, con, g2)
    averaged = (
        lie_derivative_pair(cov, con, x1, g2)
        - lie_derivative_pair(cov, con, x2, g1)
    ).scale(Fraction(1, 2))
    difference = pair_bracket(cov, con, g1, g2) - averaged
    entries = (
        CheckEntry.of("vector slot of the averaged-transport identity",
                      sharp(con, difference.alpha)),
        CheckEntry.of("function slot of the averaged-transport identity",
                      difference.h),
    )
    return ConditionReport("averaged-transport form of the bracket", entries)


def musical_commutation_check(
    cov: CovariantPair,
    con: ContravariantPair,
    x: Multivector,
    beta: DiffForm,
) -> ConditionReport:
    """Residual (L_X beta)# - L_X(beta#) and its bracket-route cross-check.

    The residual equals -i_beta [X, Lambda]; it vanishes for every beta
    exactly when [X, Lambda] = 0.
    """
    if beta.degree != 1:
        raise StructureError("commutation check takes a 1-form")
    residual = sharp(con, lie_derivative_form(x, beta)) - schouten_bracket(
        x, sharp(con, beta)
    )
    cross = residual + _contract(beta, schouten_bracket(x, con.Lam))
    entries = (
        CheckEntry.of("(L_X beta)# - L_X(beta#)", residual),
        CheckEntry.of(
            "agreement with the bracket route -i_beta [X, Lambda]", cross
        ),
    )
    return ConditionReport("transport commutes with sharp", entries)


def musical_commutation_iff_report(
    cov: CovariantPair, con: ContravariantPair, x: Multivector
) -> ConditionReport:
    """Residuals on all basis 1-forms vanish exactly when [X, Lambda] = 0."""
    chart = cov.chart
    basis_residuals = []
    for index in range(chart.dim):
        beta = coordinate_form(chart, index)
        basis_residuals.append(
            sharp(con, lie_derivative_form(x, beta))
            - schouten_bracket(x, sharp(con, beta))
        )
    all_vanish = all(residual.is_zero() for residual in basis_residuals)
    bracket = schouten_bracket(x, con.Lam)
    entries = (
        CheckEntry.verdict(
            "residuals on all basis 1-forms vanish iff [X, Lambda] = 0",
            all_vanish == bracket.is_zero(),
            basis_residuals,
        ),
    )
    return ConditionReport("sharp-commutation equivalence", entries)


# ---------------------------------------------------------------------------
# polynomial generator search
# ---------------------------------------------------------------------------


def _monomials_up_to(chart: Chart, max_degree: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], max_degree, chart.dim)
    return sorted(out, key=lambda e: (sum(e), e))


def find_generator_pairs(
    cov: CovariantPair,
    con: ContravariantPair,
    target: SymmetryTarget,
    max_degree: int,
    *,
    include_trivial: bool = False,
) -> list[GeneratorPair]:
    """All polynomial pairs of coefficient degree <= max_degree for a target.

    The target conditions are linear in (alpha, h), so the solution space
    is the Q-nullspace of one exact matrix; the returned pairs are a basis.
    Pairs generating the zero vector field are filtered unless
    include_trivial is set.
    """
    s = _setting(cov, con)
    chart = cov.chart
    dim = chart.dim
    monomials = _monomials_up_to(chart, max_degree)
    basis_pairs: list[GeneratorPair] = []
    for exponent in monomials:
        coeff = Scalar(Poly(dim, {exponent: Fraction(1)}))
        for i in range(dim):
            basis_pairs.append(
                GeneratorPair(
                    DiffForm(chart, 1, {(i,): coeff}), Scalar.zero(dim)
                )
            )
        basis_pairs.append(GeneratorPair(zero_form(chart, 1), coeff))

    builders = [builder for _, builder in _CONDITION_BUILDERS[target]]
    residuals_per_pair = [
        [builder(s, g) for builder in builders] for g in basis_pairs
    ]

    slots: list[tuple[int, tuple[int, ...]]] = []
    seen = set()
    for residuals in residuals_per_pair:
        for c_index, residual in enumerate(residuals):
            if isinstance(residual, Scalar):
                keys: tuple[tuple[int, ...], ...] = ((),)
            else:
                keys = tuple(residual.comps.keys())
            for key in keys:
                if (c_index, key) not in seen:
                    seen.add((c_index, key))
                    slots.append((c_index, key))

    def slot_value(residuals: list, c_index: int, key: tuple[int, ...]) -> Scalar:
        residual = residuals[c_index]
        if isinstance(residual, Scalar):
            return residual
        return residual.comps.get(key, Scalar.zero(dim))

    rows: list[list[Fraction]] = []
    for c_index, key in slots:
        values = [
            slot_value(residuals, c_index, key)
            for residuals in residuals_per_pair
        ]
        common = Poly.one(dim)
        for value in values:
            if value.is_zero() or value.den.is_constant():
                continue
            if common.exact_div(value.den) is not None:
                continue
            quotient = value.den.exact_div(common)
            common = value.den if quotient is not None else common * value.den
        numerators = []
        for value in values:
            if value.is_zero():
                numerators.append(Poly.zero(dim))
                continue
            multiplier = common.exact_div(value.den)
            assert multiplier is not None
            numerators.append(value.num * multiplier)
        exponents = sorted({e for n in numerators for e in n.terms})
        for exponent in exponents:
            rows.append(
                [n.terms.get(exponent, Fraction(0)) for n in numerators]
            )

    solutions = rational_nullspace(rows, len(basis_pairs))
    found: list[GeneratorPair] = []
    for solution in solutions:
        pair = zero_pair(chart)
        for coefficient, basis_pair in zip(solution, basis_pairs):
            if coefficient:
                pair = pair + basis_pair.scale(coefficient)
        if include_trivial or not pair_to_vector(cov, con, pair).is_zero():
            found.append(pair)
    return found
