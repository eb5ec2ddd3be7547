from fractions import Fraction

import numpy as np
import pytest

from markov_choice import reference
from markov_choice.core import (
    ChoiceDataset,
    MissingMenuError,
    ModelBlock,
    MscModel,
    StructuralError,
    Tolerances,
    Universe,
    binary_share,
    to_fraction,
    validate_dataset,
    validate_model,
)


class TestUniverseAndMenu:
    def test_menu_is_sorted_by_universe_position(self):
        U = Universe(["x", "a", "m"])
        assert U.menu(["m", "x"]).members == ("x", "m")
        assert U.menu("a,x") == U.menu(["x", "a"])

    @pytest.mark.parametrize("bad", [[], ["x", "x"], ["q"]])
    def test_bad_menus(self, bad):
        U = Universe("xy")
        with pytest.raises((ValueError, KeyError)):
            U.menu(bad)

    @pytest.mark.parametrize("alts", [["a"], ["a", "a"], ["a", ""]])
    def test_bad_universes(self, alts):
        with pytest.raises(ValueError):
            Universe(alts)

    def test_binary_menu_rejects_self_pair(self):
        with pytest.raises(ValueError):
            Universe("ab").binary("a", "a")


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert (t.eps_sum, t.eps_tol, t.eps_delta) == (1e-12, 1e-9, 1e-12)

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            Tolerances(eps_delta=1e-6, eps_tol=1e-9)
        with pytest.raises(ValueError):
            Tolerances(eps_sum=0.0)


class TestValidateDataset:
    def test_reference_data_is_valid(self, star):
        assert validate_dataset(star).ok

    def test_sum_violation(self):
        d = ChoiceDataset(Universe("ij"), {("i", "j"): ["0.7", "0.2"]})
        (msg,) = validate_dataset(d).violations
        assert "sum 0.9" in msg and "≠ 1" in msg

    def test_missing_binary_menu(self):
        d = ChoiceDataset(Universe("ijk"), {
            ("i", "j", "k"): ["0.2", "0.3", "0.5"],
            ("i", "j"): ["0.5", "0.5"],
            ("j", "k"): ["0.5", "0.5"],
        })
        (msg,) = validate_dataset(d).violations
        assert "missing binary menu {i,k}" in msg

    def test_out_of_range(self):
        d = ChoiceDataset(Universe("ij"), {("i", "j"): [1.2, -0.2]})
        assert len(validate_dataset(d).violations) == 2

    def test_exact_values_kept(self, circulating):
        assert circulating.exact_vector("i,j,k,l")[1] == Fraction(7, 25)


class TestBinaryShare:
    def test_reference_values(self, star):
        assert binary_share(star, "j", "k") == 0.6
        assert binary_share(star, "i", "j") == 0.5

    def test_self_pair_is_an_error(self, star):
        with pytest.raises(ValueError):
            binary_share(star, "i", "i")

    def test_missing_menu(self):
        d = ChoiceDataset(Universe("ijk"), {("i", "j"): ["0.5", "0.5"]})
        with pytest.raises(MissingMenuError):
            binary_share(d, "i", "k")

    def test_shares_sum_to_one(self, bottleneck):
        for a, b in bottleneck.universe.full_menu().pairs():
            assert abs(binary_share(bottleneck, a, b) + binary_share(bottleneck, b, a) - 1) <= 1e-12

    def test_outside_menu_is_zero(self, star):
        assert star.p("k", "i,j") == 0.0


def _two(q01, q10):
    return np.array([[1 - q01, q01], [q10, 1 - q10]])


class TestValidateModel:
    def test_reference_chain_passes(self):
        rep = validate_model(reference.star_chain())
        assert rep.a1 and rep.a2 and rep.a3 and rep.ok

    def test_zero_diagonal_fails_a1(self):
        U = Universe("ij")
        m = MscModel(U, [ModelBlock(U.menu("i,j"), [[0.0, 1.0], [0.5, 0.5]], [0.5, 0.5])])
        rep = validate_model(m)
        assert not rep.a1 and rep.prolonged_consideration == (("{i,j}", "i"),)

    def test_binary_without_moves_fails_a2(self):
        U = Universe("ij")
        m = MscModel(U, [ModelBlock(U.menu("i,j"), np.eye(2), [0.5, 0.5])])
        assert not validate_model(m).a2

    def test_ratio_inconsistency_fails_a3(self):
        U = Universe("ijk")
        Q = np.array([[0.8, 0.1, 0.1], [0.3, 0.6, 0.1], [0.1, 0.1, 0.8]])
        blocks = [ModelBlock(U.full_menu(), Q, [1 / 3] * 3)]
        blocks += [ModelBlock(U.binary(a, b), _two(0.1, 0.1), [0.5, 0.5]) for a, b in U.full_menu().pairs()]
        rep = validate_model(MscModel(U, blocks))
        assert not rep.a3 and rep.ratio_consistency == (("{i,j,k}", ("i", "j")),)

    def test_dimension_mismatch_is_structural(self):
        U = Universe("ijk")
        m = MscModel(U, [ModelBlock(U.full_menu(), np.eye(2), [0.5, 0.5])])
        with pytest.raises(StructuralError):
            validate_model(m)

    def test_row_sum_violation(self):
        U = Universe("ij")
        m = MscModel(U, [ModelBlock(U.menu("i,j"), [[0.5, 0.4], [0.5, 0.5]], [0.5, 0.5])])
        assert validate_model(m).stochastic


def test_to_fraction_reads_decimals_exactly():
    assert to_fraction("0.28") == Fraction(7, 25)
    assert to_fraction(0.28) == Fraction(7, 25)
    assert to_fraction("1/3") == Fraction(1, 3)
