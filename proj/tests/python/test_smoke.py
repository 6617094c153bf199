"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import fredproj as fp


def test_weighted_inner_product():
    s = fp.Space.unit(2)
    assert fp.inner(s, np.array([3.0, 4.0]), np.array([3.0, 4.0])) == pytest.approx(25.0)
    w = fp.Space.weighted(np.array([0.5, 0.5]))
    assert fp.inner(w, np.array([1.0, 1.0]), np.array([1.0, 1.0])) == pytest.approx(1.0)


def test_operator_norm_matches_hand_value():
    s = fp.Space.unit(2)
    est = fp.operator_norm(s, np.array([[0.0, 0.3], [0.0, 0.2]]))
    assert est.value == pytest.approx(math.sqrt(0.13), abs=1e-12)
    assert est.method == "exact-svd"


def test_gram_schmidt_orthonormalizes():
    s = fp.Space.unit(2)
    out = fp.gram_schmidt(s, [np.array([1.0, 0.0]), np.array([1.0, 1.0])])
    assert np.allclose(out[0], [1.0, 0.0])
    assert np.allclose(out[1], [0.0, 1.0])


def test_projection_pair_identity_split():
    s = fp.Space.unit(4)
    cs = fp.build_constraints(s, [np.array([1.0, 0.0, 0.0, 0.0])])
    k = fp.build_k(cs, np.array([[0.5], [0.0], [-0.25]]))
    pair = fp.build_projections(k)
    assert np.allclose(pair.P + pair.Pt, np.eye(4), atol=1e-13)
    vals = fp.check_projected_constraints(pair, np.array([1.0, 2.0, 3.0, 4.0]))
    assert np.max(np.abs(vals)) <= 1e-10


def test_worked_2x2_instance_solves():
    s = fp.Space.unit(2)
    problem = fp.make_problem(
        s,
        np.array([[1.0, 0.3], [0.0, 0.2]]),
        np.array([-0.3, 0.8]),
        ys=[np.array([1.0, 0.0])],
    )
    rep = fp.solve(problem)
    assert rep.status == "solved"
    assert rep.exit_code == 0
    assert abs(rep.x[0]) <= 1e-8
    assert rep.x[1] == pytest.approx(1.0, abs=1e-8)

    est = fp.region_radius(problem)
    assert est.exact
    assert est.epsilon == pytest.approx(1.7735, abs=1e-3)


def test_honest_failure_status():
    s = fp.Space.unit(3)
    problem = fp.make_problem(
        s,
        np.array([[0.0, 0.4, 0.0], [0.0, 0.0, 0.4], [0.0, 0.0, 0.0]]),
        np.ones(3),
        ys=[np.array([1.0, 0.0, 0.0])],
    )
    rep = fp.solve(problem)
    assert rep.status == "residual-nonzero"
    assert rep.exit_code == 2


def test_neumann_matches_dense_oracle():
    rng = np.random.default_rng(5)
    s = fp.Space.unit(8)
    a = rng.standard_normal((8, 8))
    a *= 0.7 / fp.operator_norm(s, a).value
    phi = rng.standard_normal(8)
    eye = np.eye(8)
    x, terms = fp.neumann_solve(s, a, eye, phi)
    xd = fp.direct_solve_oracle(s, a, eye, phi)
    assert terms > 1
    assert np.max(np.abs(x - xd)) <= 1e-8


def test_sigma_pairing():
    assert fp.sigma(0) == (0, 0)
    assert fp.sigma(1) == (0, 1)
    assert fp.sigma(2) == (1, 0)
    assert fp.sigma(5) == (2, 0)
    for i in range(2000):
        a, b = fp.sigma(i)
        assert fp.sigma_index(a, b) == i


def test_lemma_trials_pass_and_reproduce():
    for name in fp.lemma_names():
        r1 = fp.run_lemma_trial(name, 42)
        r2 = fp.run_lemma_trial(name, 42)
        assert r1.passed, name
        assert r1.discrepancy == r2.discrepancy


def test_gauss_legendre_integrates_x_squared():
    q = fp.gauss_legendre(0.0, 1.0, 16)
    assert float(np.sum(q.weights * q.nodes**2)) == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_corpus_separable_basic():
    cp = fp.corpus("separable-basic")
    rep = fp.solve(cp.problem)
    assert rep.status == "solved"
    assert np.max(np.abs(rep.x - cp.reference)) <= 1e-6


def test_errors_are_typed():
    s = fp.Space.unit(2)
    with pytest.raises(fp.ContractionError):
        fp.neumann_solve(s, 2.0 * np.eye(2), np.eye(2), np.ones(2))
    with pytest.raises(fp.ConfigError):
        fp.corpus("nope")
