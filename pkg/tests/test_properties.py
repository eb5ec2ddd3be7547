"""Property tests: each draws a seed and builds a random instance from it."""

import numpy as np
from hypothesis import given, settings, strategies as st

from markov_choice.axioms import check_kolmogorov, check_reversible
from markov_choice.core import binary_share, validate_model
from markov_choice.cycles import (
    build_delta_graph,
    classify,
    delta,
    theorem1_condition,
    theorem2_condition,
    theorem3_condition,
)
from markov_choice.io import dataset_from_json, dataset_to_json, model_from_json, model_to_json
from markov_choice.manipulate import (
    apply_restriction,
    decoy_analysis,
    enumerate_strict_restrictions,
    robustness_to_initial,
    robustness_to_restrictions,
)
from markov_choice.markov import (
    absorption_weights,
    generate_finite,
    generate_limiting,
    generate_series,
    scc_decompose,
    stationary_distribution,
)
from markov_choice.rationalize import (
    build_design_system,
    construct_irreducible,
    construct_model,
    float_feasibility_status,
    forced_zero_pairs,
    rationalize,
    solve_feasibility,
    verify_rationalizes,
)
import generators as gen
import oracles

seeds = st.integers(0, 2**32 - 1)
common = settings(max_examples=40, deadline=None)


def _full(m):
    return m.block(m.universe.full_menu())


# markov


@common
@given(seeds, st.floats(0.05, 0.95))
def test_finite_is_a_distribution_and_matches_series(seed, alpha):
    b = _full(gen.random_model(np.random.default_rng(seed)))
    rho = generate_finite(b.Q, b.pi, alpha)
    assert abs(rho.sum() - 1) <= 1e-12 and rho.min() >= -1e-15
    # the partial sum misses exactly (1 - alpha)^(T + 1) of the mass
    tail = (1 - alpha) ** 401
    assert np.max(np.abs(rho - generate_series(b.Q, b.pi, alpha, 400))) <= 1e-10 + tail


@common
@given(seeds)
def test_limit_is_invariant_and_agrees_with_powers(seed):
    b = _full(gen.random_model(np.random.default_rng(seed)))
    rho = generate_limiting(b.Q, b.pi)
    assert np.max(np.abs(rho @ b.Q - rho)) <= 1e-12
    assert np.max(np.abs(rho - oracles.power_limit(b.Q, b.pi))) <= 1e-9


@common
@given(seeds)
def test_absorption_weights_sum_to_one(seed):
    b = _full(gen.random_model(np.random.default_rng(seed)))
    w = absorption_weights(b.Q, b.pi)
    dec = scc_decompose(b.Q)
    assert set(w) == set(dec.closed_classes)
    assert abs(sum(w.values()) - 1) <= 1e-12


@common
@given(seeds)
def test_transient_states_carry_no_limit_mass(seed):
    b = _full(gen.random_model(np.random.default_rng(seed)))
    rho = generate_limiting(b.Q, b.pi)
    assert all(rho[t] <= 1e-12 for t in scc_decompose(b.Q).transient)


@common
@given(seeds)
def test_stationary_unique_on_irreducible(seed):
    b = _full(gen.random_irreducible_model(np.random.default_rng(seed)))
    s = stationary_distribution(b.Q)
    assert np.all(s > 0) and np.max(np.abs(generate_limiting(b.Q, b.pi) - s)) <= 1e-12


# core and axioms


@common
@given(seeds)
def test_generated_models_satisfy_assumptions(seed):
    assert validate_model(gen.random_model(np.random.default_rng(seed))).ok


@common
@given(seeds)
def test_reversibility_checks_agree(seed):
    rng = np.random.default_rng(seed)
    m = gen.random_reversible_model(rng) if rng.random() < 0.5 else gen.random_model(rng)
    Q = _full(m).Q
    assert check_reversible(Q) == check_kolmogorov(Q).holds


@common
@given(seeds)
def test_reversible_family_is_reversible(seed):
    Q = _full(gen.random_reversible_model(np.random.default_rng(seed))).Q
    assert check_reversible(Q) and oracles.cycle_products_reversible(Q)


# cycles


@common
@given(seeds)
def test_delta_is_antisymmetric_and_graph_partitions_pairs(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    M = d.universe.full_menu()
    for i, j in M.pairs():
        assert delta(d, M, i, j, exact=True) == -delta(d, M, j, i, exact=True)
    g = build_delta_graph(d, M)
    seen = [frozenset(e) for e in g.edges] + list(g.zero_pairs)
    assert len(seen) == len(set(seen)) == len(list(M.pairs()))


@common
@given(seeds)
def test_graph_conditions_match_brute_force(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    M = d.universe.full_menu()
    assert theorem1_condition(d, M).holds == oracles.brute_theorem1(d, M)
    assert theorem2_condition(d, M).pairwise == oracles.brute_theorem2_pairwise(d, M)
    assert theorem3_condition(d, M).holds == oracles.brute_theorem3(d, M)


@common
@given(seeds)
def test_class_flags_are_nested(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    f = classify(d, d.universe.full_menu()).flags
    assert f["rationalizable_always"]
    assert not f["fully"] or f["pairwise"]
    assert not f["pairwise"] or f["irreducible"] or not f["fully"]
    assert not f["luce"] or (f["reversible_only"] and f["fully"])


@common
@given(seeds)
def test_limiting_data_meets_class_conditions(seed):
    rng = np.random.default_rng(seed)
    d = gen.limiting_data(gen.random_reversible_model(rng))
    assert theorem1_condition(d, d.universe.full_menu()).holds
    d = gen.limiting_data(gen.random_pairwise_model(rng))
    assert theorem2_condition(d, d.universe.full_menu()).pairwise
    d = gen.limiting_data(gen.random_irreducible_model(rng))
    assert theorem3_condition(d, d.universe.full_menu()).holds


# rationalize


@common
@given(seeds)
def test_feasibility_exact_vs_float_and_certificates(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    sys = build_design_system(d, d.universe.full_menu())
    for grade in ("nonneg", "strict"):
        res = solve_feasibility(sys, grade)
        assert float_feasibility_status(sys, grade) == res.feasible
        if res.feasible:
            assert all(v == 0 for v in sys.apply(res.gamma))
        else:
            w = sys.row_times(res.certificate)
            if res.kind == "gordan":
                assert all(v > 0 for v in w)
            else:
                assert all(v >= 0 for v in w) and any(v > 0 for v in w)


@common
@given(seeds)
def test_strict_feasibility_matches_pairwise_condition(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    M = d.universe.full_menu()
    strict = solve_feasibility(build_design_system(d, M), "strict").feasible
    assert strict == theorem2_condition(d, M).pairwise
    assert (forced_zero_pairs(d, M) == set()) == strict


@common
@given(seeds)
def test_lemma_identity_on_random_models(seed):
    m = gen.random_model(np.random.default_rng(seed))
    b = _full(m)
    assert oracles.lemma_identity_gap(b.Q, b.menu, gen.limiting_data(m)) <= 1e-12


@common
@given(seeds)
def test_granted_classes_round_trip(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    M = d.universe.full_menu()
    f = classify(d, M).flags
    m = rationalize(d, M, "any")
    assert validate_model(m).ok and verify_rationalizes(m, d, [M]).holds
    if f["reversible_only"]:
        assert check_reversible(rationalize(d, M, "reversible").block(M).Q)
    if f["pairwise"]:
        Q = rationalize(d, M, "pairwise").block(M).Q
        assert all(Q[a, b] > 0 or Q[b, a] > 0 for a in range(len(M)) for b in range(a))
    if f["fully"]:
        Q = rationalize(d, M, "fully").block(M).Q
        assert np.all(Q > 0)
    if f["irreducible"]:
        m = construct_irreducible(d, M)
        assert scc_decompose(m.block(M).Q).irreducible
        assert verify_rationalizes(m, d, [M]).holds


@common
@given(seeds)
def test_constructed_models_satisfy_lemma_identity(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    M = d.universe.full_menu()
    res = solve_feasibility(build_design_system(d, M), "nonneg")
    Q = construct_model(d, M, res.gamma).block(M).Q
    assert oracles.lemma_identity_gap(Q, M, d) <= 1e-12


# manipulate


@common
@given(seeds)
def test_reversible_models_survive_restrictions(seed):
    b = _full(gen.random_reversible_model(np.random.default_rng(seed)))
    base = generate_limiting(b.Q, b.pi)
    for r in enumerate_strict_restrictions(b):
        nb = apply_restriction(b, r)
        assert np.max(np.abs(generate_limiting(nb.Q, nb.pi) - base)) <= 1e-9
    assert robustness_to_restrictions(b, "weak", k=10, seed=seed % 1000).holds


@common
@given(seeds)
def test_initial_robust_iff_one_closed_class(seed):
    rng = np.random.default_rng(seed)
    b = _full(gen.random_model(rng, cut_prob=rng.uniform(0, 0.7)))
    dec = scc_decompose(b.Q)
    robust = robustness_to_initial(b, k=5).holds
    # transient states drain into the single closed class whatever the start
    assert robust == (len(dec.closed_classes) == 1)
    if dec.irreducible:
        assert robust


@common
@given(seeds)
def test_irreducible_iff_initial_robust_without_transients(seed):
    b = _full(gen.random_reversible_model(np.random.default_rng(seed), cut_prob=0.6))
    assert robustness_to_initial(b, k=5).holds == scc_decompose(b.Q).irreducible


@common
@given(seeds, st.booleans())
def test_decoy_iff(seed, boundary):
    m, q = gen.random_decoy_model(np.random.default_rng(seed), boundary)
    rep = decoy_analysis(m, "ijk")
    assert rep.relative_ratio_increase
    if boundary:
        assert abs(rep.rho_triple - rep.rho_pair) <= 1e-10
    else:
        assert rep.absolute_increase == (q["ki"] > q["ji"])


@common
@given(seeds)
def test_restrictions_keep_rows_stochastic(seed):
    b = _full(gen.random_model(np.random.default_rng(seed)))
    for r in enumerate_strict_restrictions(b):
        nb = apply_restriction(b, r)
        assert np.allclose(nb.Q.sum(axis=1), 1) and np.all(np.diag(nb.Q) > 0)


# io


@common
@given(seeds)
def test_dataset_json_round_trip(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    back = dataset_from_json(dataset_to_json(d), validate=False)
    assert all(back.exact_vector(M) == d.exact_vector(M) for M in d.menus)


@common
@given(seeds)
def test_model_json_round_trip(seed):
    m = gen.random_model(np.random.default_rng(seed))
    back = model_from_json(model_to_json(m))
    assert all(np.array_equal(back.block(b.menu).Q, b.Q) for b in m.blocks())


@common
@given(seeds)
def test_binary_shares_complement(seed):
    d = gen.random_dataset(np.random.default_rng(seed))
    for i, j in d.universe.full_menu().pairs():
        assert binary_share(d, i, j, exact=True) + binary_share(d, j, i, exact=True) == 1
