import math

import numpy as np
import pytest

from atomcavity import (
    EffectiveDensity,
    InvalidStateError,
    MetricSample,
    SystemParams,
    atom_entropy_closed,
    concurrence,
    effective_density,
    field_entropy_closed,
    linear_entropy,
    negativity,
    reduced_atom_density,
    reduced_field_density,
    total_entropy_closed,
)
from conftest import draw_params


def bell_state():
    m = np.zeros((4, 4), dtype=complex)
    for i in (0, 3):
        for j in (0, 3):
            m[i, j] = 0.5
    return m


def random_pure_projector(rng):
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    return psi, np.outer(psi, psi.conj())


class TestConcurrence:
    def test_bell_state(self):
        assert concurrence(bell_state()) == pytest.approx(1.0, abs=1e-12)

    def test_product_states(self, rng):
        for _ in range(5):
            a = rng.normal(size=2) + 1j * rng.normal(size=2)
            b = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
            assert concurrence(np.outer(psi, psi.conj())) <= 1e-9

    def test_cat_value(self):
        state = effective_density(SystemParams(g=1.0, k=0.0, alpha=0.0), 1.0)
        assert concurrence(state.rho_eff) == pytest.approx(math.sqrt(1 - math.exp(-4)), abs=1e-9)

    def test_pure_state_formula(self, rng):
        # independent cross-check: C(|psi>) = 2 sqrt(det rho_A)
        for _ in range(50):
            psi, proj = random_pure_projector(rng)
            rho_a = proj.reshape(2, 2, 2, 2)
            rho_a = np.einsum("afbf->ab", rho_a)
            expected = 2 * math.sqrt(max(0.0, np.linalg.det(rho_a).real))
            assert concurrence(proj) == pytest.approx(expected, abs=1e-9)

    def test_rejects_invalid_state(self):
        with pytest.raises(InvalidStateError):
            concurrence(np.diag([0.7, 0.5, -0.2, 0.0]).astype(complex))


class TestNegativity:
    def test_bell_state(self):
        assert negativity(bell_state()) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self):
        assert negativity(np.diag([1.0, 0, 0, 0]).astype(complex)) == 0.0

    def test_concurrence_bounds_on_analytic_family(self, rng):
        for _ in range(300):
            p = draw_params(rng)
            rho = effective_density(p, rng.uniform(0, 10)).rho_eff
            c = concurrence(rho)
            n = negativity(rho)
            lower = math.sqrt((1 - c) ** 2 + c * c) - (1 - c)
            assert lower - 1e-9 <= n <= c + 1e-9


class TestLinearEntropy:
    def test_pure_projector(self, rng):
        _, proj = random_pure_projector(rng)
        assert linear_entropy(proj) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_qubit(self):
        assert linear_entropy(np.eye(2, dtype=complex) / 2) == pytest.approx(0.5, abs=1e-14)

    def test_maximally_mixed_two_qubits(self):
        assert linear_entropy(np.eye(4, dtype=complex) / 4) == pytest.approx(0.75, abs=1e-14)


class TestClosedForms:
    def test_zero_at_t0(self):
        p = SystemParams(g=1.0, k=0.4, alpha=1 - 1j)
        assert total_entropy_closed(p, 0.0) == pytest.approx(0.0, abs=1e-14)
        assert atom_entropy_closed(p, 0.0) == pytest.approx(0.0, abs=1e-14)
        assert field_entropy_closed(p, 0.0) == pytest.approx(0.0, abs=1e-14)

    def test_lossless_total_entropy_vanishes(self, rng):
        for _ in range(20):
            p = SystemParams(g=rng.uniform(0.1, 2), k=0.0, alpha=rng.normal() + 1j * rng.normal())
            assert abs(total_entropy_closed(p, rng.uniform(0, 10))) <= 1e-12

    def test_total_entropy_plateau(self):
        assert total_entropy_closed(SystemParams(g=1.0, k=0.3, alpha=1.0), 20.0) == pytest.approx(0.5, abs=1e-3)

    def test_atom_entropy_saturates(self):
        for k in (0.3, 1.0):
            assert atom_entropy_closed(SystemParams(g=1.0, k=k, alpha=1.0), 20.0) == pytest.approx(0.5, abs=1e-6)

    def test_field_entropy_limits(self):
        # 0.5 (1 - exp(-4 g^2/k^2)): below 0.5 and shrinking as k/g grows
        s1 = field_entropy_closed(SystemParams(g=1.0, k=1.0, alpha=1.0), 20.0)
        assert s1 == pytest.approx(0.5 * (1 - math.exp(-4)), abs=1e-6)
        s6 = field_entropy_closed(SystemParams(g=1.0, k=6.0, alpha=1.0), 20.0)
        assert s6 == pytest.approx(0.5 * (1 - math.exp(-1 / 9)), abs=1e-6)

    def test_matrix_path_agreement(self, rng):
        for _ in range(500):
            p = draw_params(rng)
            t = rng.uniform(0, 10)
            state = effective_density(p, t)
            assert abs(total_entropy_closed(p, t) - linear_entropy(state.rho_eff)) <= 1e-9
            assert abs(atom_entropy_closed(p, t) - linear_entropy(reduced_atom_density(state))) <= 1e-9
            assert abs(field_entropy_closed(p, t) - linear_entropy(reduced_field_density(state))) <= 1e-9

    def test_alpha_independence(self, rng):
        for _ in range(20):
            g, k, t = rng.uniform(0.1, 2), rng.uniform(0, 2), rng.uniform(0, 10)
            values = [
                (
                    total_entropy_closed(SystemParams(g=g, k=k, alpha=a), t),
                    atom_entropy_closed(SystemParams(g=g, k=k, alpha=a), t),
                    field_entropy_closed(SystemParams(g=g, k=k, alpha=a), t),
                )
                for a in (0.0, 1.0, 2j, 1 + 1j)
            ]
            for trio in values[1:]:
                for got, ref in zip(trio, values[0]):
                    assert abs(got - ref) <= 1e-10

    def test_atom_entropy_dominates_total(self):
        p = SystemParams(g=1.0, k=1.0, alpha=1.0)
        for t in np.linspace(0.0, 10.0, 41):
            assert atom_entropy_closed(p, t) >= total_entropy_closed(p, t) - 1e-12

    def test_concurrence_decays_with_loss(self):
        for k in (0.1, 0.5, 1.0):
            rho = effective_density(SystemParams(g=1.0, k=k, alpha=1.0), 20.0).rho_eff
            assert concurrence(rho) <= 1e-3


class TestReducedDensities:
    def test_reduced_states_are_states(self, rng):
        for _ in range(20):
            state = effective_density(draw_params(rng), rng.uniform(0, 5))
            for red in (reduced_atom_density(state), reduced_field_density(state)):
                assert abs(np.trace(red) - 1) <= 1e-12
                assert float(np.linalg.eigvalsh(red).min()) >= -1e-12


class TestMetricSample:
    def test_rejects_bound_violation(self):
        with pytest.raises(InvalidStateError):
            MetricSample(t=0.0, concurrence=0.9, negativity=0.1, s_total=0.1, s_atom=0.1, s_field=0.1)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidStateError):
            MetricSample(t=0.0, concurrence=1.5, negativity=1.0, s_total=0.1, s_atom=0.1, s_field=0.1)
