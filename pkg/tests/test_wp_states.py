import numpy as np
import pytest

from cheshire.qstate import inner, make_basis_state, projector_onto
from cheshire.weakvalue import PrePostPair
from cheshire.wp_states import (
    ATTRIBUTE_SPACE,
    CANONICAL_OBSERVABLES,
    MODES1,
    MODES2,
    PATH1,
    POL1,
    POL2,
    DomainError,
    WpParams,
    attribute_observable,
    make_input_state,
    make_particle,
    make_postselected,
    make_preselected,
    make_wave,
    observable_name,
    separation_weak_values,
)

SQ2 = np.sqrt(2.0)


def closed_form(attr, arm, alpha):
    """The predicted weak values, written out independently of the package."""
    c, s = np.cos(alpha), np.sin(alpha)
    nonzero = {
        ("W", "R1"): c, ("P", "L1"): s,
        ("Wp", "L2"): c, ("Pp", "R2"): s,
    }
    return nonzero.get((attr, arm), 0.0) / (c + s)


class TestInputState:
    def test_alpha_zero_is_vv(self):
        s = make_input_state(0.0)
        np.testing.assert_allclose(
            s.amplitudes, make_basis_state((POL1, POL2), ["V", "V"]).amplitudes,
            atol=1e-12,
        )

    def test_balanced_angle(self):
        s = make_input_state(np.pi / 4)
        assert abs(s.amplitude(("V", "V")) - 1 / SQ2) <= 1e-12
        assert abs(s.amplitude(("H", "H")) - 1 / SQ2) <= 1e-12
        assert abs(s.amplitude(("H", "V"))) <= 1e-12

    def test_normalized_for_random_angles(self):
        rng = np.random.default_rng(40)
        for alpha in rng.uniform(-10, 10, size=50):
            assert abs(make_input_state(alpha).norm() - 1.0) <= 1e-12


class TestToolboxStates:
    def test_wave_at_zero_phase(self):
        np.testing.assert_allclose(make_wave(0.0).amplitudes, [1, 0, 0, 0], atol=1e-12)

    def test_particle_at_zero_phase(self):
        np.testing.assert_allclose(
            make_particle(0.0).amplitudes, [0, 1 / SQ2, 0, 1 / SQ2], atol=1e-12
        )

    def test_wave_particle_orthogonal(self):
        rng = np.random.default_rng(41)
        for phi in rng.uniform(-2 * np.pi, 2 * np.pi, size=50):
            assert abs(inner(make_wave(phi), make_particle(phi))) <= 1e-12
            assert abs(make_wave(phi).norm() - 1.0) <= 1e-12
            assert abs(make_particle(phi).norm() - 1.0) <= 1e-12

    def test_primed_modes_variant(self):
        w = make_wave(0.7, MODES2)
        assert w.space == (MODES2,)
        assert abs(w.norm() - 1.0) <= 1e-12


class TestSelectionStates:
    def test_pure_wave_branch(self):
        s = make_preselected(WpParams(0.0))
        expected = make_basis_state(ATTRIBUTE_SPACE, ["R1", "L2", "W", "Wp"])
        np.testing.assert_allclose(s.amplitudes, expected.amplitudes, atol=1e-12)

    def test_balanced_equals_postselected(self):
        params = WpParams(np.pi / 4, 0.3, -0.8)
        for rep in ("attribute", "mode"):
            pre = make_preselected(params, rep)
            post = make_postselected(params, rep)
            np.testing.assert_allclose(pre.amplitudes, post.amplitudes, atol=1e-12)

    def test_postselected_ignores_alpha(self):
        a = make_postselected(WpParams(0.1))
        b = make_postselected(WpParams(1.2))
        np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-12)

    def test_postselected_attribute_amplitudes(self):
        s = make_postselected(WpParams(0.0))
        assert abs(s.amplitude(("R1", "L2", "W", "Wp")) - 1 / SQ2) <= 1e-12
        assert abs(s.amplitude(("L1", "R2", "P", "Pp")) - 1 / SQ2) <= 1e-12
        assert np.count_nonzero(np.abs(s.amplitudes) > 1e-12) == 2

    def test_support_sizes(self):
        params = WpParams(0.9, 1.1, 2.2)
        attr = make_preselected(params, "attribute")
        mode = make_preselected(params, "mode")
        assert np.count_nonzero(np.abs(attr.amplitudes) > 1e-12) == 2
        assert np.count_nonzero(np.abs(mode.amplitudes) > 1e-12) <= 8
        assert mode.dim == 64 and attr.dim == 16

    def test_selection_overlap_closed_form(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            params = WpParams(rng.uniform(0, np.pi / 2), rng.uniform(-3, 3), rng.uniform(-3, 3))
            for rep in ("attribute", "mode"):
                got = inner(make_postselected(params, rep), make_preselected(params, rep))
                want = (np.cos(params.alpha) + np.sin(params.alpha)) / SQ2
                assert abs(got - want) <= 1e-12

    def test_overlap_is_one_at_balance(self):
        params = WpParams(np.pi / 4)
        got = inner(make_postselected(params), make_preselected(params))
        assert abs(got - 1.0) <= 1e-12

    def test_alpha_domain_enforced(self):
        with pytest.raises(DomainError):
            WpParams(-0.1)
        with pytest.raises(DomainError):
            WpParams(np.pi / 2 + 0.1)

    def test_bad_representation(self):
        with pytest.raises(ValueError):
            make_preselected(WpParams(0.2), "density")


class TestAttributeObservable:
    def test_wrong_path_annihilates(self):
        obs = attribute_observable("L1", "W")
        state = make_basis_state(ATTRIBUTE_SPACE, ["R1", "L2", "W", "Wp"])
        assert (obs @ state).norm() <= 1e-12

    def test_rank_in_attribute_representation(self):
        obs = attribute_observable("R2", "Pp")
        assert abs(obs.trace() - 4.0) <= 1e-12
        assert obs.is_projector()

    def test_mode_representation_structure(self):
        params = WpParams(0.3, 0.9, -1.4)
        obs = attribute_observable("R1", "W", "mode", params)
        wproj = projector_onto(make_wave(params.phi1, MODES1))
        pproj = projector_onto(make_basis_state((PATH1,), ["R1"]))
        expected = np.kron(
            np.kron(pproj.matrix, np.eye(2)), np.kron(wproj.matrix, np.eye(4))
        )
        np.testing.assert_allclose(obs.matrix, expected, atol=1e-12)

    def test_photon_mismatch_rejected(self):
        with pytest.raises(DomainError):
            attribute_observable("L1", "Wp")
        with pytest.raises(DomainError):
            attribute_observable("R2", "P")

    def test_unknown_arm_rejected(self):
        with pytest.raises(DomainError):
            attribute_observable("L3", "W")


class TestSeparationWeakValues:
    def test_balanced_angle_pattern(self):
        values = {
            r.observable_name: r.value for r in separation_weak_values(WpParams(np.pi / 4))
        }
        half = ["Pi_P_L1", "Pi_W_R1", "Pi_Pp_R2", "Pi_Wp_L2"]
        for name, v in values.items():
            expected = 0.5 if name in half else 0.0
            assert abs(v - expected) <= 1e-12

    def test_pure_wave_branch(self):
        values = {
            r.observable_name: r.value for r in separation_weak_values(WpParams(0.0))
        }
        for name, v in values.items():
            expected = 1.0 if name in ("Pi_W_R1", "Pi_Wp_L2") else 0.0
            assert abs(v - expected) <= 1e-12

    def test_frozen_values_at_pi_third(self):
        values = {
            r.observable_name: r.value
            for r in separation_weak_values(WpParams(np.pi / 3))
        }
        assert abs(values["Pi_W_R1"] - 0.3660254037844387) <= 1e-10
        assert abs(values["Pi_P_L1"] - 0.6339745962155612) <= 1e-10

    def test_closed_form_across_grid(self):
        for alpha in np.linspace(0.0, np.pi / 2, 101):
            reports = separation_weak_values(WpParams(alpha))
            for r, (attr, arm) in zip(reports, CANONICAL_OBSERVABLES):
                assert r.observable_name == observable_name(attr, arm)
                assert abs(r.value - closed_form(attr, arm, alpha)) <= 1e-10
                assert abs(r.value.imag) <= 1e-12

    def test_complementarity_sums(self):
        for alpha in np.linspace(0.0, np.pi / 2, 101):
            values = {
                r.observable_name: r.value
                for r in separation_weak_values(WpParams(alpha))
            }
            sum1 = values["Pi_P_L1"] + values["Pi_W_R1"]
            sum2 = values["Pi_Pp_R2"] + values["Pi_Wp_L2"]
            assert abs(sum1 - 1.0) <= 1e-10
            assert abs(sum2 - 1.0) <= 1e-10

    def test_representations_agree(self):
        rng = np.random.default_rng(43)
        for _ in range(30):
            params = WpParams(
                rng.uniform(0, np.pi / 2),
                rng.uniform(-2 * np.pi, 2 * np.pi),
                rng.uniform(-2 * np.pi, 2 * np.pi),
            )
            attr = separation_weak_values(params, "attribute")
            mode = separation_weak_values(params, "mode")
            for a, m in zip(attr, mode):
                assert a.observable_name == m.observable_name
                assert abs(a.value - m.value) <= 1e-10

    def test_one_attribute_per_arm(self):
        rng = np.random.default_rng(44)
        for _ in range(20):
            alpha = rng.uniform(0.05, np.pi / 2 - 0.05)
            values = {
                r.observable_name: r.value
                for r in separation_weak_values(WpParams(alpha))
            }
            for arm in ("L1", "R1", "L2", "R2"):
                attrs = ("W", "P") if arm in ("L1", "R1") else ("Wp", "Pp")
                nonzero = [
                    a for a in attrs
                    if abs(values[observable_name(a, arm)]) > 1e-10
                ]
                assert len(nonzero) <= 1

    def test_phase_independence(self):
        base = separation_weak_values(WpParams(0.7))
        for phi1 in np.linspace(-np.pi, np.pi, 7):
            for phi1p in np.linspace(-np.pi, np.pi, 7):
                got = separation_weak_values(WpParams(0.7, phi1, phi1p), "mode")
                for b, g in zip(base, got):
                    assert abs(b.value - g.value) <= 1e-10

    def test_pair_is_valid_even_at_domain_edges(self):
        for alpha in (0.0, np.pi / 2):
            pair = PrePostPair(
                make_preselected(WpParams(alpha)), make_postselected(WpParams(alpha))
            )
            assert abs(pair.overlap) > 0.5
