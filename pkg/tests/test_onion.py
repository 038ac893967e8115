import numpy as np
import pytest
from scipy import stats

from dagonion import (
    Dag,
    dao_sample,
    er_dag,
    parent_first_permutation,
    sample_mpii,
    sfi_rewire,
    sfo_rewire,
    shuffle_labels,
    source_first_order,
)
from util import partial_corr


class TestSampleMpii:
    def test_zero_dimension_gives_zero_vector(self):
        draw = sample_mpii(0, 1.0, 5, np.random.default_rng(0))
        assert draw.w.shape == (5,)
        assert np.all(draw.w == 0.0)
        assert draw.gamma == 1.0

    def test_invalid_arguments(self):
        rng = np.random.default_rng(1)
        with pytest.raises(ValueError):
            sample_mpii(1, -0.5, 3, rng)
        with pytest.raises(ValueError):
            sample_mpii(-1, 1.0, 3, rng)
        with pytest.raises(ValueError):
            sample_mpii(4, 1.0, 3, rng)

    def test_inside_unit_ball_with_exact_padding(self):
        rng = np.random.default_rng(2)
        for _ in range(500):
            k = int(rng.integers(1, 6))
            pad = k + int(rng.integers(0, 4))
            draw = sample_mpii(k, float(rng.uniform(-0.4, 3.0)), pad, rng)
            assert draw.w.shape == (pad,)
            assert np.all(draw.w[k:] == 0.0)
            assert draw.w @ draw.w < 1.0

    def test_k1_half_gamma_is_uniform(self):
        rng = np.random.default_rng(3)
        draws = np.array([sample_mpii(1, 0.5, 1, rng).w[0] for _ in range(4000)])
        ks = stats.kstest(draws, stats.uniform(loc=-1, scale=2).cdf)
        assert ks.pvalue > 0.01


class TestParentFirstPermutation:
    def test_all_parents_identity(self):
        g = Dag(4, frozenset({(1, 4), (2, 4), (3, 4)}))
        P = parent_first_permutation(g, 3)
        assert np.array_equal(P, np.eye(3))

    def test_no_parents_identity(self):
        g = Dag(4, frozenset())
        assert np.array_equal(parent_first_permutation(g, 3), np.eye(3))

    def test_single_middle_parent(self):
        # Parents of vertex 4 are {2}; permuted basis order is (2, 1, 3).
        g = Dag(4, frozenset({(2, 4)}))
        P = parent_first_permutation(g, 3)
        x = np.array([10.0, 20.0, 30.0])
        assert np.array_equal(P.T @ x, np.array([20.0, 10.0, 30.0]))

    def test_orthogonal(self):
        rng = np.random.default_rng(4)
        g = er_dag(8, 3, rng)
        for i in range(1, 8):
            P = parent_first_permutation(g, i)
            assert np.array_equal(P.T @ P, np.eye(i))

    def test_bad_layer_index(self):
        g = Dag(3, frozenset({(1, 2)}))
        with pytest.raises(ValueError):
            parent_first_permutation(g, 0)
        with pytest.raises(ValueError):
            parent_first_permutation(g, 3)

    def test_parent_beyond_layer_rejected(self):
        g = Dag(3, frozenset({(3, 2)}))
        with pytest.raises(ValueError):
            parent_first_permutation(g, 1)


def _check_valid_draw(g, R, params, tol=1e-10):
    p = g.p
    assert np.array_equal(R, R.T)
    assert np.array_equal(np.diag(R), np.ones(p))
    assert np.linalg.eigvalsh(R)[0] > 0
    off = R[~np.eye(p, dtype=bool)]
    assert np.all(np.abs(off) < 1.0)
    assert np.all(params.omega > 0) and np.all(params.omega <= 1.0)
    mask = np.zeros((p, p), dtype=bool)
    for a, b in g.edges:
        mask[b - 1, a - 1] = True
    assert np.all(params.B[~mask] == 0.0)
    A = np.linalg.inv(np.eye(p) - params.B)
    recon = (A * params.omega) @ A.T
    assert np.max(np.abs(recon - R)) < tol


class TestDaoSample:
    def test_empty_graph_identity(self):
        R, params = dao_sample(Dag(4, frozenset()), np.random.default_rng(0))
        assert np.array_equal(R, np.eye(4))
        assert np.array_equal(params.B, np.zeros((4, 4)))
        assert np.array_equal(params.omega, np.ones(4))

    def test_valid_draws_on_random_graphs(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            g = er_dag(12, 4, rng)
            R, params = dao_sample(g, rng)
            _check_valid_draw(g, R, params)

    def test_relabeled_graph_maps_back(self):
        rng = np.random.default_rng(6)
        base = er_dag(10, 3, rng)
        g, _ = shuffle_labels(base, rng)
        assert source_first_order(g) != tuple(range(1, 11))  # actually shuffled
        R, params = dao_sample(g, rng)
        _check_valid_draw(g, R, params)

    def test_markov_partial_correlations(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            g = er_dag(7, 2.5, rng)
            if rng.random() < 0.5:
                g = sfi_rewire(g, rng)
            R, _ = dao_sample(g, rng)
            order = source_first_order(g)
            for pos, v in enumerate(order):
                parents = set(g.parents(v))
                for u in order[:pos]:
                    if u in parents:
                        continue
                    rho = partial_corr(R, v - 1, u - 1, [w - 1 for w in parents])
                    assert abs(rho) < 1e-8

    def test_deterministic_given_seed(self):
        g = er_dag(9, 3, np.random.default_rng(8))
        R1, p1 = dao_sample(g, np.random.default_rng(99))
        R2, p2 = dao_sample(g, np.random.default_rng(99))
        assert np.array_equal(R1, R2)
        assert np.array_equal(p1.B, p2.B)
        assert np.array_equal(p1.omega, p2.omega)

    def test_single_edge_marginal_is_uniform(self):
        g = Dag(2, frozenset({(1, 2)}))
        rng = np.random.default_rng(9)
        draws = np.array([dao_sample(g, rng)[0][0, 1] for _ in range(4000)])
        ks = stats.kstest(draws, stats.uniform(loc=-1, scale=2).cdf)
        assert ks.pvalue > 0.01

    def test_rewired_graphs_still_valid(self):
        rng = np.random.default_rng(10)
        for rewire in (sfi_rewire, sfo_rewire):
            g = rewire(er_dag(10, 3, rng), rng)
            R, params = dao_sample(g, rng)
            _check_valid_draw(g, R, params)
