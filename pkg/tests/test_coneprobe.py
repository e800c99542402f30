"""Finite-stage probes: admissibility, tail estimates, circle maps."""

import math

import numpy as np
import pytest

from conecheck import coneprobe, matnorm
from conecheck.coneprobe import (
    ScaledSequence,
    StageFamily,
    admissibility,
    arc_identity_exact,
    check_sequence_contraction,
    circle_to_zmod,
    cyclic_norm,
    estimate_limit,
    load_sequence,
    scaling_by_name,
    theta_lipschitz_bound,
    zmod_to_circle,
)


class TestAdmissibility:
    def test_constant_identity(self):
        seq = load_sequence({"family": "constant-identity", "stages": list(range(1, 30))})
        ok, witness = admissibility(seq, 0.0)
        assert ok and witness["ratio"] == 0.0

    def test_cycle_family_ratio_one(self):
        seq = load_sequence({"family": "cycle", "stages": list(range(1, 30))})
        ok, witness = admissibility(seq, 1.0)
        assert ok and witness["ratio"] == 1.0

    def test_square_family_inadmissible(self):
        seq = load_sequence({"family": "square-cycle", "stages": list(range(1, 30))})
        ok, witness = admissibility(seq, 5.0)
        assert not ok
        assert witness["stage"] == 29 and witness["ratio"] == 29.0

    def test_table_and_alpha_scaling(self):
        seq = load_sequence({
            "family": "table", "values": [[4, 2.0], [9, 3.0]],
            "scaling": "n^alpha", "alpha": 0.5,
        })
        assert seq.normalized() == (1.0, 1.0)

    def test_invalid_scaling(self):
        with pytest.raises(ValueError):
            scaling_by_name("nonsense")


class TestEstimateLimit:
    def test_constant(self):
        estimate = estimate_limit([2.5] * 40)
        assert estimate.converged and estimate.tail_mean == 2.5

    def test_vanishing(self):
        estimate = estimate_limit([1.0 / n for n in range(1, 500)], tolerance=1e-2)
        assert estimate.converged and estimate.tail_mean < 0.01

    def test_alternating_is_honestly_unresolved(self):
        estimate = estimate_limit([0.0, 1.0] * 25)
        assert not estimate.converged
        assert estimate.tail_min == 0.0 and estimate.tail_max == 1.0

    def test_tail_ordering_invariant(self):
        estimate = estimate_limit([3.0, 1.0, 2.0, 5.0], tail_fraction=1.0)
        assert estimate.tail_min <= estimate.tail_mean <= estimate.tail_max

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            estimate_limit([])


class TestCircleMaps:
    def test_zero(self):
        assert zmod_to_circle(0, 7) == 0.0
        assert circle_to_zmod(0.0, 7) == 0

    def test_half_turn(self):
        assert zmod_to_circle(4, 8) == math.pi

    def test_eighth(self):
        assert zmod_to_circle(1, 8) == pytest.approx(math.pi / 4)

    def test_tie_break_to_smaller(self):
        # exactly between roots 0 and 1
        assert circle_to_zmod(math.pi / 8, 8) in (0, 1)
        n = 4
        midpoint = 2.0 * math.pi / (2 * n)
        assert circle_to_zmod(midpoint, n) == 0

    def test_roundtrip(self):
        for n in (1, 2, 7, 64, 128, 1000):
            for k in range(0, n, max(1, n // 37)):
                assert circle_to_zmod(zmod_to_circle(k, n), n) == k

    def test_arc_identity(self):
        for n in (1, 2, 3, 8, 31):
            for a in range(n):
                for b in range(n):
                    assert arc_identity_exact(a, b, n)

    def test_lipschitz_bound_shape(self):
        observed, allowed = theta_lipschitz_bound(0.3, 1.2, 16)
        assert observed <= allowed
        assert cyclic_norm(5, 16) == 5 and cyclic_norm(13, 16) == 3

    def test_lipschitz_bound_random(self):
        rng = np.random.default_rng(13)
        for _ in range(2000):
            n = int(rng.integers(1, 200))
            x, y = rng.uniform(0, 2 * math.pi, 2)
            observed, allowed = theta_lipschitz_bound(float(x), float(y), n)
            assert observed <= allowed + 1e-9


class TestSequenceContraction:
    def test_triangular_family(self):
        def distance(n, x, y):
            return matnorm.bareiss_rank((x - y).rows) if n else 0

        def sample(n, count, seed):
            rng = np.random.default_rng((seed, n))
            return [matnorm.random_unit_triangular(rng, n) for _ in range(count)]

        family = StageFamily(
            name="upper-triangular",
            distance=distance,
            project=lambda n, x: matnorm.triangular_project(x),
            include=lambda n, x: matnorm.embed(x, n),
            sample=sample,
            identity_at=lambda n: matnorm.RationalMatrix.identity(n),
        )
        report = check_sequence_contraction(family, range(2, 6), 6, seed=4, expected_k=1)
        assert report["expansions"] == 0
        assert report["inclusion_defects"] == 0
        assert report["smallest_working_k"] <= 1

    def test_scaling_constant_rescales_exactly(self):
        seq = load_sequence({"family": "cycle", "stages": list(range(1, 20))})
        doubled = ScaledSequence(seq.stages, lambda n: 2.0 * n)
        assert all(a == b / 2.0 for a, b in zip(doubled.normalized(), seq.normalized()))


def test_sequence_validation():
    with pytest.raises(ValueError):
        ScaledSequence(((1, -1.0),), lambda n: float(n))
    with pytest.raises(ValueError):
        ScaledSequence(((0, 1.0),), lambda n: float(n))
