import math

import numpy as np
import pytest

from atomcavity import (
    CoherentLabel,
    EffectiveDensity,
    EvolutionEnvelope,
    FockDensity,
    InvalidStateError,
    SystemParams,
    TruncationError,
    coherent_fock_vector,
    coherent_overlap,
    trace_distance,
)
from conftest import random_psd


class TestSystemParams:
    def test_fields_coerced(self):
        p = SystemParams(g=1, k=0, alpha=2)
        assert isinstance(p.g, float) and isinstance(p.alpha, complex)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(g=-0.1, k=0.0),
            dict(g=float("nan"), k=0.0),
            dict(g=1.0, k=-1e-6),
            dict(g=1.0, k=float("inf")),
            dict(g=1.0, k=0.0, alpha=complex("inf")),
        ],
    )
    def test_rejects_bad_inputs(self, kwargs):
        with pytest.raises(ValueError):
            SystemParams(**kwargs)


class TestCoherentOverlap:
    def test_identical_states(self):
        for beta in (0.0, 1.3, 2 - 0.5j):
            assert coherent_overlap(CoherentLabel(beta), CoherentLabel(beta)) == pytest.approx(1.0, abs=1e-14)

    def test_vacuum_overlap(self):
        gamma = 1.5 + 0.5j
        expected = math.exp(-abs(gamma) ** 2 / 2)
        assert coherent_overlap(0.0, gamma) == pytest.approx(expected, abs=1e-14)

    def test_opposite_imaginary_pair(self):
        # hand evaluation: exp(-1 + (-i)(-i)) = exp(-2)
        got = coherent_overlap(1j, -1j)
        assert got == pytest.approx(math.exp(-2), abs=1e-14)
        # cross-check against the Fock-space inner product at N = 60
        vp = coherent_fock_vector(1j, 60)
        vm = coherent_fock_vector(-1j, 60)
        assert complex(np.vdot(vp, vm)) == pytest.approx(got, abs=1e-10)

    def test_conjugate_symmetry_and_modulus(self, rng):
        for _ in range(100):
            a = complex(rng.normal(), rng.normal())
            b = complex(rng.normal(), rng.normal())
            ov = coherent_overlap(a, b)
            assert ov == pytest.approx(coherent_overlap(b, a).conjugate(), abs=1e-14)
            assert abs(ov) ** 2 == pytest.approx(math.exp(-abs(a - b) ** 2), rel=1e-12, abs=1e-300)
            assert abs(ov) <= 1 + 1e-15


class TestCoherentFockVector:
    def test_vacuum_any_truncation(self):
        v = coherent_fock_vector(0.0, 5)
        assert np.array_equal(v, np.array([1, 0, 0, 0, 0, 0], dtype=complex))

    def test_norm_approaches_one(self):
        norms = [float(np.vdot(v, v).real) for v in (coherent_fock_vector(1.0, n) for n in (17, 20, 30))]
        assert norms[0] <= norms[1] <= norms[2] <= 1 + 1e-14
        assert norms[2] == pytest.approx(1.0, abs=1e-12)

    def test_self_overlap_matches(self):
        v = coherent_fock_vector(2.0, 40)
        assert complex(np.vdot(v, v)) == pytest.approx(1.0, abs=1e-10)

    def test_matches_overlap_when_adequate(self, rng):
        for _ in range(25):
            a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            n = math.ceil(max(abs(a) ** 2 + 8 * abs(a) + 20, abs(b) ** 2 + 8 * abs(b) + 20))
            va, vb = coherent_fock_vector(a, n), coherent_fock_vector(b, n)
            assert complex(np.vdot(va, vb)) == pytest.approx(coherent_overlap(a, b), abs=1e-10)

    def test_rejects_inadequate_truncation(self):
        with pytest.raises(TruncationError):
            coherent_fock_vector(2.0, 20)  # rule demands >= 26 and the tail is visible

    def test_rejects_negative_truncation(self):
        with pytest.raises(ValueError):
            coherent_fock_vector(1.0, -1)


class TestTraceDistance:
    def test_identical(self, rng):
        rho = random_psd(rng, 6)
        assert trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert trace_distance(a, b) == pytest.approx(1.0, abs=1e-14)

    def test_pure_vs_maximally_mixed(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        assert trace_distance(a, np.eye(2, dtype=complex) / 2) == pytest.approx(0.5, abs=1e-14)

    def test_triangle_inequality(self, rng):
        for _ in range(30):
            a, b, c = (random_psd(rng, 5) for _ in range(3))
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-10

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            trace_distance(random_psd(rng, 4), random_psd(rng, 6))

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
        with pytest.raises(InvalidStateError):
            trace_distance(m, np.eye(2, dtype=complex) / 2)


class TestEffectiveDensity:
    def test_accepts_valid_state(self):
        bell = np.zeros((4, 4), dtype=complex)
        for i in (0, 3):
            for j in (0, 3):
                bell[i, j] = 0.5
        rho = EffectiveDensity(bell)
        assert rho.entries.flags.writeable is False
        with pytest.raises(ValueError):
            rho.entries[0, 0] = 2.0

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidStateError):
            EffectiveDensity(np.eye(4, dtype=complex))

    def test_rejects_non_hermitian(self):
        m = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        m[0, 1] = 0.2
        with pytest.raises(InvalidStateError):
            EffectiveDensity(m)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            EffectiveDensity(np.diag([0.7, 0.5, -0.2, 0.0]).astype(complex))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            EffectiveDensity(np.eye(3, dtype=complex) / 3)


class TestFockDensity:
    def test_accepts_coherent_projector(self):
        v = coherent_fock_vector(0.8, 20)
        f = 21
        m = np.zeros((2 * f, 2 * f), dtype=complex)
        m[:f, :f] = np.outer(v, v.conj())
        rho = FockDensity(m, n_max=20)
        assert rho.fock_populations().sum() == pytest.approx(1.0, abs=1e-9)

    def test_rejects_top_level_population(self):
        f = 13
        m = np.zeros((2 * f, 2 * f), dtype=complex)
        m[f - 1, f - 1] = 1.0  # all weight on the cutoff level
        with pytest.raises(TruncationError):
            FockDensity(m, n_max=12)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            FockDensity(np.eye(10, dtype=complex) / 10, n_max=12)


class TestEvolutionEnvelope:
    def test_rejects_positive_f1(self):
        with pytest.raises(InvalidStateError):
            EvolutionEnvelope(
                alpha_plus=CoherentLabel(0),
                alpha_minus=CoherentLabel(0),
                f1=0.5,
                f2=0j,
                f_plus=1 + 0j,
                f_minus=1 + 0j,
                lam=1 + 0j,
            )

    def test_rejects_modulus_identity_violation(self):
        with pytest.raises(InvalidStateError):
            EvolutionEnvelope(
                alpha_plus=CoherentLabel(0),
                alpha_minus=CoherentLabel(0),
                f1=-1.0,
                f2=0j,
                f_plus=1 + 0j,  # should be e^{-1}
                f_minus=1 + 0j,
                lam=0.5 + 0j,
            )
