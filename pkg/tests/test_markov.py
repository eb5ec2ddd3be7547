import numpy as np
import pytest

from markov_choice import reference as R
from markov_choice.markov import (
    PreconditionError,
    absorption_weights,
    generate_finite,
    generate_limiting,
    generate_series,
    scc_decompose,
    stationary_distribution,
)
from oracles import neumann_choice, power_limit


class TestFinite:
    def test_identity_chain_returns_start(self):
        pi = np.array([0.1, 0.6, 0.3])
        assert np.allclose(generate_finite(np.eye(3), pi, 0.37), pi, atol=1e-15)

    def test_two_state_closed_form(self):
        """alpha pi (I - (1-alpha) Q)^-1 with a uniform mixing step."""
        rho = generate_finite([[0.5, 0.5], [0.5, 0.5]], [1, 0], 0.5)
        assert np.allclose(rho, [0.75, 0.25], atol=1e-15)

    def test_star_chain_matches_series(self):
        rho = generate_finite(R.STAR_Q, R.STAR_PI, 0.5)
        assert np.max(np.abs(rho - generate_series(R.STAR_Q, R.STAR_PI, 0.5, 200))) <= 1e-12

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 1.5])
    def test_alpha_domain(self, alpha):
        with pytest.raises(ValueError):
            generate_finite(np.eye(2), [0.5, 0.5], alpha)

    def test_matches_power_oracle(self):
        rho = generate_finite(R.CIRCULATING_Q, [0.1, 0.2, 0.3, 0.4], 0.05)
        assert np.max(np.abs(rho - neumann_choice(R.CIRCULATING_Q, [0.1, 0.2, 0.3, 0.4], 0.05))) <= 1e-12


class TestSeries:
    def test_single_term(self):
        assert np.allclose(generate_series(R.STAR_Q, R.STAR_PI, 0.3, 0), 0.3 * R.STAR_PI)

    def test_geometric_tail(self):
        pi = np.array([0.25, 0.75])
        got = generate_series(np.eye(2), pi, 0.5, 50)
        assert np.allclose(got, (1 - 0.5**51) * pi, atol=1e-16)

    def test_circulating_agrees_with_closed_form(self):
        pi = np.full(4, 0.25)
        diff = generate_series(R.CIRCULATING_Q, pi, 0.3, 400) - generate_finite(R.CIRCULATING_Q, pi, 0.3)
        assert np.max(np.abs(diff)) <= 1e-10


class TestScc:
    def test_star_chain_classes(self):
        dec = scc_decompose(R.STAR_Q)
        assert dec.classes == ((0, 1, 3), (2,))
        assert dec.closed == (True, True)

    def test_circulating_is_irreducible(self):
        dec = scc_decompose(R.CIRCULATING_Q)
        assert dec.irreducible and dec.closed == (True,)

    def test_one_way_edge(self):
        dec = scc_decompose([[0.5, 0.5], [0.0, 1.0]])
        assert dec.classes == ((0,), (1,))
        assert dec.closed == (False, True)
        assert dec.transient == [0]


class TestStationary:
    def test_circulating(self):
        assert np.max(np.abs(stationary_distribution(R.CIRCULATING_Q) - [0.25, 0.28, 0.2, 0.27])) <= 1e-12

    def test_star_subchain_is_uniform(self):
        sub = R.STAR_Q[np.ix_([0, 1, 3], [0, 1, 3])]
        rho = stationary_distribution(sub)
        assert np.allclose(rho, 1 / 3, atol=1e-14)
        assert np.allclose(rho @ sub, rho, atol=1e-15)

    def test_singleton(self):
        assert stationary_distribution([[1.0]]).tolist() == [1.0]

    def test_reducible_is_rejected(self):
        with pytest.raises(PreconditionError):
            stationary_distribution(R.STAR_Q)

    def test_agrees_with_power_iteration(self):
        assert np.allclose(stationary_distribution(R.BOTTLENECK_Q), power_limit(R.BOTTLENECK_Q, [1, 0, 0, 0]),
                           atol=1e-12)


class TestAbsorption:
    def test_star_chain(self):
        w = absorption_weights(R.STAR_Q, [0.2, 0.2, 0.4, 0.2])
        assert w[(0, 1, 3)] == pytest.approx(0.6, abs=1e-15)
        assert w[(2,)] == pytest.approx(0.4, abs=1e-15)

    def test_irreducible_single_weight(self):
        assert absorption_weights(R.CIRCULATING_Q, [0.1, 0.2, 0.3, 0.4]) == {(0, 1, 2, 3): pytest.approx(1.0)}

    def test_mass_on_closed_class(self):
        w = absorption_weights(R.STAR_Q, [0, 0, 1, 0])
        assert w[(2,)] == 1.0 and w[(0, 1, 3)] == 0.0

    def test_transient_split(self):
        Q = [[0.4, 0.3, 0.3], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        w = absorption_weights(Q, [1, 0, 0])
        assert w[(1,)] == pytest.approx(0.5) and w[(2,)] == pytest.approx(0.5)


class TestLimiting:
    def test_star_chain_mixture(self):
        rho = generate_limiting(R.STAR_Q, [0.3, 0.1, 0.4, 0.2])
        assert np.max(np.abs(rho - [0.2, 0.2, 0.4, 0.2])) <= 1e-12

    @pytest.mark.parametrize("Q,target", [
        (R.CIRCULATING_Q, [0.25, 0.28, 0.2, 0.27]),
        (R.BOTTLENECK_Q, [0.24, 0.3, 0.22, 0.24]),
    ])
    def test_irreducible_reference_chains(self, Q, target):
        for pi in ([1, 0, 0, 0], [0.1, 0.2, 0.3, 0.4], [0, 0, 0, 1]):
            assert np.max(np.abs(generate_limiting(Q, pi) - target)) <= 1e-12

    def test_transient_states_get_no_mass(self):
        Q = [[0.4, 0.3, 0.3], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        assert np.allclose(generate_limiting(Q, [1, 0, 0]), [0, 0.5, 0.5])
