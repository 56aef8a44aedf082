"""The built-in example structures and their JSON mirrors."""

import pytest

from cckit import (
    NotRegular,
    StructureClass,
    classify,
    dualize,
    example_names,
    exterior_derivative,
    get_example,
    lie_derivative_form,
    verify_duality,
)
from cckit.cli.files import load_structure

from conftest import FIXTURES_DIR


class TestCatalog:
    def test_names(self):
        assert example_names() == (
            "cosym3",
            "contact3",
            "contact5",
            "acc3",
            "singular3",
        )

    def test_expected_classes(self):
        for name in example_names():
            entry = get_example(name)
            assert classify(entry.cov) is entry.expected_class

    def test_unknown_name(self):
        with pytest.raises(KeyError) as info:
            get_example("acc7")
        assert "acc3" in str(info.value)

    def test_duals_certify(self):
        for name in example_names():
            entry = get_example(name)
            if entry.expected_class is StructureClass.NOT_REGULAR:
                with pytest.raises(NotRegular):
                    dualize(entry.cov)
                continue
            assert verify_duality(entry.cov, dualize(entry.cov)).ok

    def test_acc3_mixes_both_defects(self):
        # the strictly mixed example: twisted 1-form and Omega != d omega
        cov = get_example("acc3").cov
        d_omega = exterior_derivative(cov.omega)
        assert not d_omega.is_zero()
        assert cov.Omega != d_omega
        con = dualize(cov)
        assert not lie_derivative_form(con.E, cov.omega).is_zero()

    def test_notes_are_informative(self):
        for name in example_names():
            assert get_example(name).notes


class TestFixtureFiles:
    @pytest.mark.parametrize(
        "name", ["cosym3", "contact3", "contact5", "acc3", "singular3"]
    )
    def test_json_mirrors_catalog(self, name):
        loaded = load_structure(FIXTURES_DIR / f"{name}.json")
        entry = get_example(name)
        assert loaded.chart == entry.chart
        assert loaded.omega == entry.cov.omega
        assert loaded.Omega == entry.cov.Omega
