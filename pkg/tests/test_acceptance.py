"""Acceptance gate: one test per criterion, all tolerances exact.

Each test accumulates failures into a list, records a one-line verdict
for the terminal summary, and then asserts. A recorded FAIL means the
target is genuinely unattainable as stated; the detail says why.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from cckit import (
    BracketMode,
    Chart,
    CovariantPair,
    DiffForm,
    GeneratorPair,
    Multivector,
    NotRegular,
    Scalar,
    SymmetryTarget,
    antisymmetrization_identity,
    check_generator_conditions,
    check_symmetry_direct,
    derivation_check_D,
    derivation_check_LX,
    dualize,
    exterior_derivative,
    get_example,
    hamilton_jacobi_lift,
    interior_product,
    leibniz_correction_report,
    leibniz_defect,
    lie_derivative_form,
    lie_derivative_scalar,
    musical_commutation_iff_report,
    pair_bracket,
    pair_to_vector,
    pairs_equivalent,
    parse_scalar,
    poisson_bracket,
    regularity_density,
    schouten_bracket,
    sharp,
    theorem_equivalence_check,
    verify_contravariant_identities,
    verify_duality,
    wedge,
    zero_pair,
)
from cckit.cli import EXIT_CHECK_FAILED, EXIT_OK, run
from cckit.exterior import (
    coordinate_vector,
    form_on_vector,
    scalar_form,
    schouten_identity_residual,
    zero_form,
)
from cckit.report import format_residual

from conftest import (
    FIXTURES_DIR,
    random_form,
    random_multivector,
    random_pair,
    random_poly,
)

CHART3 = Chart(("x", "y", "z"))
CHART5 = Chart(("x1", "y1", "x2", "y2", "z"))
ACC_FIXTURES = ("cosym3", "contact3", "contact5", "acc3")


def s3(text: str) -> Scalar:
    return parse_scalar(text, CHART3)


def pair3_accept(spec: dict, h: str) -> GeneratorPair:
    alpha = DiffForm(CHART3, 1, {k: s3(v) for k, v in spec.items()})
    return GeneratorPair(alpha, s3(h))


def test_criterion_01_schouten_engine(record):
    problems = []
    start = time.monotonic()
    rng = random.Random(2024)
    pair_count = 0
    for chart, trials in ((CHART3, 15), (CHART5, 10)):
        for _ in range(trials):
            dp = rng.choice((1, 2))
            dq = rng.choice((1, 2))
            p = random_multivector(rng, chart, dp, poly_degree=2)
            q = random_multivector(rng, chart, dq, poly_degree=2)
            pair_count += 1
            beta = random_form(rng, chart, dp + dq - 1, poly_degree=2)
            if not schouten_identity_residual(p, q, beta).is_zero():
                problems.append(f"defining identity failed on {chart.names}")
            mirrored = schouten_bracket(q, p)
            if (dp * dq) % 2:
                mirrored = -mirrored
            if schouten_bracket(p, q) != mirrored:
                problems.append(f"graded symmetry failed on {chart.names}")
    for _ in range(13):
        dp, dq, dr = rng.choice(((1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 1)))
        p = random_multivector(rng, CHART3, dp, poly_degree=2)
        q = random_multivector(rng, CHART3, dq, poly_degree=2)
        r = random_multivector(rng, CHART3, dr, poly_degree=2)
        lhs = schouten_bracket(p, wedge(q, r))
        sign = Scalar.const(3, (-1) ** ((dp - 1) * dq))
        rhs = wedge(schouten_bracket(p, q), r) + wedge(
            q, schouten_bracket(p, r)
        ).scale(sign)
        if lhs != rhs:
            problems.append("graded Leibniz failed")
        jacobi = (
            schouten_bracket(p, schouten_bracket(q, r)).scale(
                Scalar.const(3, (-1) ** (dp * (dr - 1)))
            )
            + schouten_bracket(q, schouten_bracket(r, p)).scale(
                Scalar.const(3, (-1) ** (dq * (dp - 1)))
            )
            + schouten_bracket(r, schouten_bracket(p, q)).scale(
                Scalar.const(3, (-1) ** (dr * (dq - 1)))
            )
        )
        if not jacobi.is_zero():
            problems.append("graded Jacobi failed")
    elapsed = time.monotonic() - start
    if pair_count < 25:
        problems.append(f"only {pair_count} pairs exercised")
    if elapsed >= 60:
        problems.append(f"runtime {elapsed:.1f}s exceeds 60s")
    record(
        1,
        "Schouten engine laws, dims 3 and 5",
        not problems,
        problems[0] if problems else
        f"{pair_count} pairs + 13 triples exact in {elapsed:.1f}s",
    )
    assert not problems


def test_criterion_02_duality(record):
    problems = []
    checked = 0
    for name in ACC_FIXTURES:
        cov = get_example(name).cov
        if not verify_duality(cov, dualize(cov)).ok:
            problems.append(f"{name} dual failed certification")
        checked += 1
    rng = random.Random(77)
    perturbations = 0
    bases = [get_example(name).cov for name in ("cosym3", "contact3", "acc3")]
    while perturbations < 12:
        base = bases[perturbations % len(bases)]
        if perturbations % 2:
            bump = exterior_derivative(random_form(rng, CHART3, 1, poly_degree=2))
            candidate = CovariantPair(base.omega, base.Omega + bump)
        else:
            bump = exterior_derivative(
                scalar_form(CHART3, random_poly(rng, 3, 2))
            )
            candidate = CovariantPair(base.omega + bump, base.Omega)
        if regularity_density(candidate).is_zero():
            continue
        perturbations += 1
        if not verify_duality(candidate, dualize(candidate)).ok:
            problems.append("random regular perturbation failed certification")
    try:
        dualize(get_example("singular3").cov)
        problems.append("singular3 was not rejected")
    except NotRegular:
        pass
    record(
        2,
        "duality solve and certificate",
        not problems,
        problems[0] if problems else
        f"{checked} fixtures + {perturbations} perturbations certified, "
        "singular3 rejected",
    )
    assert not problems


def test_criterion_03_dual_pair_identities(record, duals):
    problems = []
    for name in ACC_FIXTURES:
        cov, con = duals[name]
        tau = lie_derivative_form(con.E, cov.omega)
        first = schouten_bracket(con.E, con.Lam) + wedge(con.E, sharp(con, tau))
        if not first.is_zero():
            problems.append(f"[E, Lambda] identity failed on {name}")
        report = verify_contravariant_identities(cov, con)
        entry = report.entry(
            "[Lambda, Lambda] - 2 E ^ (d omega)(Lambda#., Lambda#.) = 0"
        )
        if not entry.ok:
            problems.append(f"[Lambda, Lambda] identity failed on {name}")
    record(
        3,
        "dual pair bracket identities on all closed fixtures",
        not problems,
        problems[0] if problems else "both identities exact on 4 fixtures",
    )
    assert not problems


def test_criterion_04_specializations(record, duals):
    problems = []
    cov, con = duals["cosym3"]
    if not schouten_bracket(con.E, con.Lam).is_zero():
        problems.append("cosym3: [E, Lambda] != 0")
    if not schouten_bracket(con.Lam, con.Lam).is_zero():
        problems.append("cosym3: [Lambda, Lambda] != 0")
    for name in ("contact3", "contact5"):
        cov, con = duals[name]
        if not schouten_bracket(con.E, con.Lam).is_zero():
            problems.append(f"{name}: [E, Lambda] != 0")
        residual = schouten_bracket(con.Lam, con.Lam) + wedge(
            con.E, con.Lam
        ).scale(2)
        if not residual.is_zero():
            problems.append(f"{name}: [Lambda, Lambda] != -2 E ^ Lambda")
    record(
        4,
        "cosymplectic and contact specializations",
        not problems,
        problems[0] if problems else
        "cosym3 flat, contact3/contact5 match -2 E ^ Lambda exactly",
    )
    assert not problems


def _flipped_sign_alpha(cov, con, g1, g2):
    # variant bracket with the two d omega coupling terms negated
    d_omega = exterior_derivative(cov.omega)
    result = pair_bracket(cov, con, g1, g2)
    a1_e = form_on_vector(g1.alpha, con.E)
    a2_e = form_on_vector(g2.alpha, con.E)
    twist = interior_product(sharp(con, g2.alpha), d_omega).scale(a1_e) - \
        interior_product(sharp(con, g1.alpha), d_omega).scale(a2_e)
    return GeneratorPair(result.alpha - twist.scale(Scalar.const(cov.chart.dim, 2)),
                         result.h)


def test_criterion_05_bracket_compatibility(record, duals):
    problems = []
    rng = random.Random(505)
    per_fixture = {}
    for name in ACC_FIXTURES:
        cov, con = duals[name]
        count = 0
        for _ in range(25):
            g1 = random_pair(rng, cov.chart)
            g2 = random_pair(rng, cov.chart)
            anchored = pair_to_vector(cov, con, pair_bracket(cov, con, g1, g2))
            direct = schouten_bracket(
                pair_to_vector(cov, con, g1), pair_to_vector(cov, con, g2)
            )
            if anchored != direct:
                problems.append(f"compatibility failed on {name}")
                break
            count += 1
        per_fixture[name] = count
    # sign resolution: the variant with negated d omega couplings must
    # break compatibility somewhere (it survives only when d omega = 0)
    cov, con = duals["acc3"]
    flipped_failures = 0
    for _ in range(25):
        g1 = random_pair(rng, CHART3)
        g2 = random_pair(rng, CHART3)
        variant = _flipped_sign_alpha(cov, con, g1, g2)
        anchored = pair_to_vector(cov, con, variant)
        direct = schouten_bracket(
            pair_to_vector(cov, con, g1), pair_to_vector(cov, con, g2)
        )
        if anchored != direct:
            flipped_failures += 1
    if flipped_failures == 0:
        problems.append("sign variant was not separated from the true bracket")
    record(
        5,
        "anchor map intertwines the pair bracket with the commutator",
        not problems,
        problems[0] if problems else
        "25 pairs per fixture exact; sign resolution pinned: the d omega "
        "couplings enter with + on the alpha(E) terms, the negated variant "
        f"broke compatibility on {flipped_failures}/25 acc3 pairs",
    )
    assert not problems


def _mixed_pairs(rng, cov, con, name, count):
    chart = cov.chart
    pairs = [
        GeneratorPair(zero_form(chart, 1), Scalar.one(chart.dim)),
        GeneratorPair(cov.omega, Scalar.zero(chart.dim)),
    ]
    if name == "acc3":
        pairs.append(GeneratorPair(
            DiffForm(chart, 1, {(1,): Scalar.one(3)}), Scalar.one(3)))
        pairs.append(GeneratorPair(
            DiffForm(chart, 1, {(1,): -Scalar.one(3)}), s3("y")))
    else:
        for h in ("x", "y") if chart.dim == 3 else ("x1", "y2"):
            pairs.append(
                hamilton_jacobi_lift(
                    cov, con, parse_scalar(h, chart)
                ).pair
            )
    seeds = list(pairs)
    for g in seeds:
        pairs.append(g + random_pair(rng, chart))
    while len(pairs) < count:
        pairs.append(random_pair(rng, chart))
    return pairs[:count]


def test_criterion_06_theorem_equivalences(record, duals):
    problems = []
    rng = random.Random(606)
    total = 0
    for name in ACC_FIXTURES:
        cov, con = duals[name]
        for g in _mixed_pairs(rng, cov, con, name, 25):
            total += 1
            x = pair_to_vector(cov, con, g)
            for target in SymmetryTarget:
                conditions = check_generator_conditions(cov, con, g, target)
                direct = check_symmetry_direct(cov, con, x, target)
                if conditions.ok != direct.ok:
                    problems.append(
                        f"{name}: target {target.value} verdicts disagree"
                    )
            if not theorem_equivalence_check(cov, con, g).agree:
                problems.append(f"{name}: three-way verdict disagrees")
    record(
        6,
        "condition and direct symmetry verdicts agree on every target",
        not problems,
        problems[0] if problems else
        f"{total} pairs x 10 targets x 3-way check, no disagreement",
    )
    assert not problems


def test_criterion_07_hamilton_jacobi(record, duals):
    problems = []
    cov, con = duals["contact3"]
    functions = [s3("x"), s3("y"), s3("x*y"), s3("x^2 - y^2")]
    for h in functions:
        lift = hamilton_jacobi_lift(cov, con, h)
        if not lift.admissible:
            problems.append("lift with E.h = 0 flagged inadmissible")
        if not check_generator_conditions(
            cov, con, lift.pair, SymmetryTarget.cov_pair
        ).ok:
            problems.append("lift not certified as a structure generator")
    if poisson_bracket(con, s3("x"), s3("y")) != s3("-1"):
        problems.append("{x, y} != -1 on contact3")
    for h1 in functions:
        for h2 in functions:
            g1 = hamilton_jacobi_lift(cov, con, h1).pair
            g2 = hamilton_jacobi_lift(cov, con, h2).pair
            result = pair_bracket(cov, con, g1, g2)
            lifted = hamilton_jacobi_lift(
                cov, con, poisson_bracket(con, h1, h2)
            ).pair
            if not pairs_equivalent(cov, con, result, lifted):
                problems.append("bracket of lifts is not the lift of {h1, h2}")
    cov, con = duals["cosym3"]
    rng = random.Random(707)
    for _ in range(6):
        g = random_pair(rng, CHART3)
        entry = check_generator_conditions(
            cov, con, g, SymmetryTarget.omega
        ).entries[0]
        dh = exterior_derivative(scalar_form(CHART3, g.h))
        if entry.residual != dh:
            problems.append("cosym3 residual did not reduce to dh")
    constant_h = GeneratorPair(random_form(rng, CHART3, 1), Scalar.const(3, 5))
    if not check_generator_conditions(
        cov, con, constant_h, SymmetryTarget.omega
    ).ok:
        problems.append("constant h rejected on cosym3")
    varying_h = GeneratorPair(zero_form(CHART3, 1), s3("x"))
    if check_generator_conditions(cov, con, varying_h, SymmetryTarget.omega).ok:
        problems.append("non-constant h accepted on cosym3")
    record(
        7,
        "Hamilton-Jacobi lifts close under the bracket",
        not problems,
        problems[0] if problems else
        "4 lifts certified, 16 bracket pairs match (d{h1,h2}, -{h1,h2}), "
        "cosymplectic residual reduces to dh",
    )
    assert not problems


def test_criterion_08_reeb_pair_witness(record, duals):
    problems = []
    for name in ("cosym3", "contact3"):
        cov, con = duals[name]
        reeb_pair = GeneratorPair(zero_form(CHART3, 1), Scalar.one(3))
        if not check_generator_conditions(
            cov, con, reeb_pair, SymmetryTarget.cov_pair
        ).ok:
            problems.append(f"Reeb pair not certified on {name}")
    cov, con = duals["acc3"]
    reeb_pair = GeneratorPair(zero_form(CHART3, 1), Scalar.one(3))
    report = check_generator_conditions(cov, con, reeb_pair, SymmetryTarget.omega)
    if report.ok:
        problems.append("Reeb pair wrongly certified on acc3")
    residual = report.entries[0].residual
    expected = DiffForm(CHART3, 1, {(1,): s3("-1/(1 + y)")})
    if sharp(con, residual) != sharp(con, expected):
        problems.append("acc3 residual is not sharp-equal to -1/(1+y) dy")
    printed = format_residual(residual, CHART3)
    if printed != "((-1)/(y + 1)) dy":
        problems.append(f"unexpected printed residual {printed!r}")
    record(
        8,
        "Reeb pair generates on special classes, fails on acc3",
        not problems,
        problems[0] if problems else
        f"acc3 residual prints as {printed}",
    )
    assert not problems


def test_criterion_09_bracket_algebra_identities(record, duals):
    problems = []
    rng = random.Random(909)
    cov, con = duals["acc3"]
    closed_kernel = [
        GeneratorPair(
            DiffForm(CHART3, 1, {(1,): Scalar.one(3)}), random_poly(rng, 3, 2)
        )
        for _ in range(12)
    ]
    derivation_runs = 0
    for i in range(10):
        g1, g2, g3 = closed_kernel[i], closed_kernel[i + 1], closed_kernel[i + 2]
        if not derivation_check_D(cov, con, g1, g2, g3).ok:
            problems.append("bracket derivation identity failed")
        derivation_runs += 1

    hands = [
        GeneratorPair(DiffForm(CHART3, 1, {(1,): Scalar.one(3)}), Scalar.one(3)),
        GeneratorPair(DiffForm(CHART3, 1, {(1,): -Scalar.one(3)}), s3("y")),
        GeneratorPair(
            DiffForm(CHART3, 1, {(1,): s3("-(y^2 + 2*y)")}), s3("y^2")
        ),
    ]
    transport_runs = 0
    antisym_runs = 0
    for name in ("cosym3", "contact3", "acc3"):
        fcov, fcon = duals[name]
        if name == "acc3":
            generators = hands
        elif name == "contact3":
            generators = [
                GeneratorPair(zero_form(CHART3, 1), Scalar.one(3)),
                hamilton_jacobi_lift(fcov, fcon, s3("x")).pair,
                hamilton_jacobi_lift(fcov, fcon, s3("y")).pair,
                hamilton_jacobi_lift(fcov, fcon, s3("x*y")).pair,
            ]
        else:
            # cosymplectic generators: closed-kernel 1-forms, constant h
            generators = [
                GeneratorPair(zero_form(CHART3, 1), Scalar.one(3)),
                pair3_accept({(0,): "1"}, "1"),
                pair3_accept({(1,): "1"}, "-2"),
                pair3_accept({(0,): "y", (1,): "x"}, "3"),
            ]
        for i in range(len(generators)):
            for j in range(i + 1, len(generators)):
                x = pair_to_vector(fcov, fcon, generators[i])
                k = (j + 1) % len(generators)
                if not derivation_check_LX(
                    fcov, fcon, x, generators[j], generators[k]
                ).ok:
                    problems.append(f"transport derivation failed on {name}")
                transport_runs += 1
                if not antisymmetrization_identity(
                    fcov, fcon, generators[i], generators[j]
                ).ok:
                    problems.append(f"averaged-transport failed on {name}")
                antisym_runs += 1

    iff_runs = 0
    for name in ("contact3", "acc3"):
        fcov, fcon = duals[name]
        candidates = [
            pair_to_vector(fcov, fcon, random_pair(rng, CHART3))
            for _ in range(4)
        ] + [coordinate_vector(CHART3, i) for i in range(3)]
        for x in candidates:
            if not musical_commutation_iff_report(fcov, fcon, x).ok:
                problems.append(f"sharp-commutation iff failed on {name}")
            iff_runs += 1

    # Leibniz defect formula: the claimed correction Lambda(a1, a2) df.
    # The engine's exact defect is identically (0, 0): the product-rule
    # term of d Lambda(a1, f a2) cancels inside the bracket expansion, so
    # the claimed nonzero correction is unattainable. Run it honestly.
    defect_formula_failures = 0
    defect_runs = 0
    for _ in range(10):
        g1 = random_pair(rng, CHART3)
        g2 = random_pair(rng, CHART3)
        f = random_poly(rng, 3, 2)
        defect = leibniz_defect(cov, con, g1, g2, f)
        if not (defect.alpha.is_zero() and defect.h.is_zero()):
            problems.append("exact defect was not identically zero")
        if not leibniz_correction_report(cov, con, g1, g2, f).ok:
            defect_formula_failures += 1
        defect_runs += 1
    if defect_formula_failures:
        problems.append(
            f"defect formula fails on {defect_formula_failures}/{defect_runs} "
            "instances: the exact defect is identically (0, 0) while the "
            "claimed correction Lambda(alpha1, alpha2) df is generically "
            "nonzero"
        )

    record(
        9,
        "derivation, transport, averaged-transport, defect, iff identities",
        not problems,
        problems[-1] if problems else
        f"{derivation_runs}+{transport_runs}+{antisym_runs}+{defect_runs}"
        f"+{iff_runs} instances exact",
    )
    assert not problems


def test_criterion_10_cli_gate(record, tmp_path, capsys):
    problems = []
    timings = {}
    for name in ("cosym3", "contact3", "contact5", "acc3", "singular3"):
        path = str(FIXTURES_DIR / f"{name}.json")
        start = time.monotonic()
        code = run(["suite", "-s", path, "--seed", "42"])
        elapsed = time.monotonic() - start
        capsys.readouterr()
        timings[name] = elapsed
        if code != EXIT_OK:
            problems.append(f"suite failed on {name}")
        if elapsed >= 120:
            problems.append(f"suite on {name} took {elapsed:.0f}s")
    doc = json.loads((FIXTURES_DIR / "acc3.json").read_text(encoding="utf-8"))
    doc["Omega"][0] = [[0, 1], "z"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc), encoding="utf-8")
    code = run(["verify", "-s", str(broken)])
    output = capsys.readouterr().out
    if code != EXIT_CHECK_FAILED:
        problems.append("corrupted structure did not flip verify to exit 1")
    if "residual: (1) dx^dy^dz" not in output:
        problems.append("corrupted structure did not print a nonzero residual")
    slowest = max(timings.values())
    record(
        10,
        "CLI suite deterministic gate and corruption probe",
        not problems,
        problems[0] if problems else
        f"5 suites exit 0, slowest {slowest:.1f}s; corruption flips "
        "verify to exit 1 with printed residual",
    )
    assert not problems
