import numpy as np
import pytest

from cheshire.qstate import (
    ATOL,
    LabelError,
    NormalizationError,
    Operator,
    ShapeError,
    SpaceLabel,
    StateVector,
    apply,
    embed,
    identity,
    inner,
    make_basis_state,
    projector_onto,
    tensor,
)
from helpers import random_hermitian, random_projector, random_state, random_unitary

PATH = SpaceLabel("path", ("L", "R"))
POL = SpaceLabel("pol", ("H", "V"))
MODES = SpaceLabel("modes", ("1", "2", "3", "4"))


class TestSpaceLabel:
    def test_dim_and_index(self):
        assert MODES.dim == 4
        assert MODES.index_of("3") == 2

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            PATH.index_of("X")

    def test_duplicate_labels_rejected(self):
        with pytest.raises(LabelError):
            SpaceLabel("bad", ("a", "a"))

    def test_empty_basis_rejected(self):
        with pytest.raises(ShapeError):
            SpaceLabel("bad", ())


class TestMakeBasisState:
    def test_single_factor(self):
        s = make_basis_state((PATH,), ["L"])
        np.testing.assert_allclose(s.amplitudes, [1, 0])
        assert s.is_normalized

    def test_row_major_index(self):
        s = make_basis_state((PATH, POL), ["R", "V"])
        np.testing.assert_allclose(s.amplitudes, [0, 0, 0, 1])

    def test_four_mode_column_vector(self):
        s = make_basis_state((MODES,), ["3"])
        np.testing.assert_allclose(s.amplitudes, [0, 0, 1, 0])

    def test_unknown_label(self):
        with pytest.raises(LabelError):
            make_basis_state((PATH,), ["Q"])

    def test_arity_mismatch(self):
        with pytest.raises(ShapeError):
            make_basis_state((PATH, POL), ["L"])


class TestTensor:
    def test_basis_times_basis(self):
        a = make_basis_state((PATH,), ["L"])
        b = make_basis_state((POL,), ["H"])
        t = tensor(a, b)
        assert t.amplitudes[0] == 1
        assert np.count_nonzero(t.amplitudes) == 1

    def test_interferometer_input(self):
        arm = StateVector((PATH,), [1j / np.sqrt(2), 1 / np.sqrt(2)])
        t = tensor(arm, make_basis_state((POL,), ["H"]))
        np.testing.assert_allclose(
            t.amplitudes, [1j / np.sqrt(2), 0, 1 / np.sqrt(2), 0], atol=ATOL
        )

    def test_norm_multiplicative(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            u = random_state((PATH,), rng)
            v = random_state((POL, MODES), rng)
            assert abs(tensor(u, v).norm() - 1.0) <= ATOL

    def test_duplicate_factor_name_rejected(self):
        a = make_basis_state((PATH,), ["L"])
        with pytest.raises(ShapeError):
            tensor(a, a)

    def test_associativity(self):
        rng = np.random.default_rng(8)
        a = random_state((PATH,), rng)
        b = random_state((POL,), rng)
        c = random_state((MODES,), rng)
        left = tensor(tensor(a, b), c)
        right = tensor(a, tensor(b, c))
        np.testing.assert_allclose(left.amplitudes, right.amplitudes, atol=ATOL)


class TestInner:
    def test_orthonormal_basis(self):
        l = make_basis_state((PATH,), ["L"])
        assert inner(l, l) == 1

    def test_cheshire_selection_overlap(self):
        pre = StateVector((PATH, POL), [1j / np.sqrt(2), 0, 1 / np.sqrt(2), 0])
        post = StateVector((PATH, POL), [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])
        assert abs(inner(post, pre) - 0.5j) <= ATOL

    def test_conjugate_symmetry_and_positivity(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            a = random_state((MODES,), rng)
            b = random_state((MODES,), rng)
            assert abs(inner(a, b) - np.conj(inner(b, a))) <= ATOL
            self_ip = inner(a, a)
            assert abs(self_ip.imag) <= ATOL and self_ip.real >= 0

    def test_space_mismatch(self):
        with pytest.raises(ShapeError):
            inner(make_basis_state((PATH,), ["L"]), make_basis_state((POL,), ["H"]))


class TestApply:
    def test_identity(self):
        rng = np.random.default_rng(10)
        s = random_state((PATH, POL), rng)
        np.testing.assert_allclose(
            apply(identity((PATH, POL)), s).amplitudes, s.amplitudes, atol=ATOL
        )

    def test_projector_idempotent_on_states(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = random_projector((MODES,), rng)
            s = random_state((MODES,), rng)
            once = apply(p, s)
            twice = apply(p, once)
            np.testing.assert_allclose(twice.amplitudes, once.amplitudes, atol=ATOL)

    def test_space_mismatch(self):
        with pytest.raises(ShapeError):
            apply(identity((PATH,)), make_basis_state((POL,), ["H"]))


class TestEmbed:
    def test_orthogonal_projector_annihilates(self):
        proj_l = projector_onto(make_basis_state((PATH,), ["L"]))
        s = make_basis_state((PATH, POL), ["R", "H"])
        out = apply(embed(proj_l, (PATH, POL)), s)
        assert out.norm() <= ATOL

    def test_circular_polarization_action(self):
        sigma = Operator((POL,), [[0, -1j], [1j, 0]])
        s = make_basis_state((PATH, POL), ["R", "H"])
        out = apply(embed(sigma, (PATH, POL)), s)
        expected = 1j * make_basis_state((PATH, POL), ["R", "V"])
        np.testing.assert_allclose(out.amplitudes, expected.amplitudes, atol=ATOL)

    def test_identity_embeds_to_identity(self):
        full = (PATH, POL, MODES)
        out = embed(identity((POL,)), full)
        np.testing.assert_allclose(out.matrix, np.eye(16), atol=ATOL)

    def test_factor_order_permutation(self):
        # embedding an operator given in (pol, path) order into (path, pol)
        rng = np.random.default_rng(12)
        a = random_hermitian((POL,), rng)
        b = random_hermitian((PATH,), rng)
        swapped = Operator((POL, PATH), np.kron(a.matrix, b.matrix))
        direct = Operator((PATH, POL), np.kron(b.matrix, a.matrix))
        np.testing.assert_allclose(
            embed(swapped, (PATH, POL)).matrix, direct.matrix, atol=ATOL
        )

    def test_projector_spectrum_preserved(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = random_projector((PATH,), rng, rank=1)
            big = embed(p, (PATH, POL, MODES))
            assert big.is_projector()
            # rank multiplies by the dimension of the identity factors
            assert abs(big.trace() - p.trace() * 8) <= 1e-10

    def test_unknown_factor(self):
        with pytest.raises(ShapeError):
            embed(identity((MODES,)), (PATH, POL))


class TestProjectorOnto:
    def test_basis_projector(self):
        p = projector_onto(make_basis_state((PATH,), ["L"]))
        np.testing.assert_allclose(p.matrix, [[1, 0], [0, 0]], atol=ATOL)

    def test_trace_one_for_random_units(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            p = projector_onto(random_state((MODES,), rng))
            assert abs(p.trace() - 1.0) <= 1e-10
            assert p.is_projector()

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            projector_onto(StateVector((PATH,), [1.0, 1.0]))


class TestOperatorFlags:
    def test_unitary_flag_and_norm_preservation(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            u = random_unitary((MODES,), rng)
            assert u.is_unitary()
            s = random_state((MODES,), rng)
            assert abs(apply(u, s).norm() - 1.0) <= 1e-10

    def test_projector_flag(self):
        rng = np.random.default_rng(16)
        for _ in range(30):
            p = random_projector((PATH, POL), rng)
            assert p.is_projector()
            assert not (p - identity((PATH, POL)) * 0.5).is_projector()

    def test_adjoint_moves_across_inner(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            a = random_state((MODES,), rng)
            b = random_state((MODES,), rng)
            m = random_hermitian((MODES,), rng) @ random_unitary((MODES,), rng)
            lhs = inner(a, apply(m, b))
            rhs = inner(apply(m.adjoint(), a), b)
            assert abs(lhs - rhs) <= 1e-10


class TestStateVectorBasics:
    def test_length_must_match_space(self):
        with pytest.raises(ShapeError):
            StateVector((PATH, POL), [1, 0, 0])

    def test_amplitudes_are_frozen(self):
        s = make_basis_state((PATH,), ["L"])
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0

    def test_arithmetic(self):
        l = make_basis_state((PATH,), ["L"])
        r = make_basis_state((PATH,), ["R"])
        s = 0.6 * l + 0.8j * r
        np.testing.assert_allclose(s.amplitudes, [0.6, 0.8j], atol=ATOL)
        assert s.is_normalized
        with pytest.raises(ShapeError):
            l + make_basis_state((POL,), ["H"])

    def test_json_debug_form(self):
        s = make_basis_state((PATH, POL), ["R", "H"])
        d = s.to_json_dict()
        assert d["space"][0] == {"name": "path", "labels": ["L", "R"]}
        assert d["amplitudes"][2] == [1.0, 0.0]
        assert len(d["amplitudes"]) == 4
