"""Tests for the bipartite linear-algebra substrate."""

import numpy as np
import pytest

from _helpers import (
    brute_full_transpose_via_factors,
    brute_kron,
    brute_partial_transpose,
    random_complex,
    random_hermitian,
    random_psd,
    rng,
)
from mapcones.choi import matrix_unit, max_entangled_projector, swap_operator
from mapcones.linalg import (
    Dims,
    as_operator,
    both_transpose,
    conj_transpose,
    eig_hermitian,
    frob,
    full_transpose,
    hs_inner,
    is_psd,
    partial_trace,
    partial_transpose,
    tensor,
    trace_pairing,
)


class TestTensor:
    def test_identity_case(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(3)), np.eye(6))

    def test_unit_bookkeeping(self):
        out = tensor(matrix_unit(0, 1, 2), matrix_unit(1, 0, 2))
        expected = np.zeros((4, 4))
        expected[0 * 2 + 1, 1 * 2 + 0] = 1.0
        assert np.array_equal(out, expected)

    def test_against_brute_force(self):
        g = rng(11)
        a = random_complex(g, (2, 2))
        b = random_complex(g, (2, 2))
        assert np.max(np.abs(tensor(a, b) - brute_kron(a, b))) <= 1e-15


class TestPartialTranspose:
    def test_product_case(self):
        g = rng(5)
        a = random_complex(g, (2, 2))
        b = random_complex(g, (3, 3))
        out = partial_transpose(tensor(a, b), Dims(2, 3))
        assert np.allclose(out, tensor(a, b.T), atol=1e-15)

    def test_swap_spectrum(self):
        # PT of the maximally entangled projector is the swap operator,
        # whose square is the identity and whose trace is n: eigenvalues
        # are +1 and -1 with multiplicities n(n+1)/2 and n(n-1)/2
        for n in (2, 3, 4):
            p = max_entangled_projector(n)
            s = partial_transpose(p, Dims(n, n))
            assert np.allclose(s, swap_operator(n), atol=0)
            assert np.allclose(s @ s, np.eye(n * n), atol=1e-15)
            assert abs(np.trace(s) - n) <= 1e-15
            w = np.sort(np.linalg.eigvalsh(s))
            expected = np.sort([-1.0] * (n * (n - 1) // 2) + [1.0] * (n * (n + 1) // 2))
            assert np.allclose(w, expected, atol=1e-12)

    def test_involution_exact(self):
        g = rng(7)
        x = random_complex(g, (6, 6))
        d = Dims(2, 3)
        assert np.array_equal(partial_transpose(partial_transpose(x, d), d), x)

    def test_preserves_trace_and_norm(self):
        g = rng(8)
        x = random_complex(g, (6, 6))
        d = Dims(3, 2)
        y = partial_transpose(x, d)
        assert abs(np.trace(x) - np.trace(y)) <= 1e-14
        assert abs(frob(x) - frob(y)) <= 1e-14

    def test_linear(self):
        g = rng(9)
        d = Dims(2, 2)
        x, y = random_complex(g, (4, 4)), random_complex(g, (4, 4))
        lhs = partial_transpose(1.5 * x + 2j * y, d)
        rhs = 1.5 * partial_transpose(x, d) + 2j * partial_transpose(y, d)
        assert np.allclose(lhs, rhs, atol=1e-15)

    def test_against_entry_permutation(self):
        g = rng(10)
        x = random_complex(g, (6, 6))
        d = Dims(2, 3)
        assert np.array_equal(partial_transpose(x, d), brute_partial_transpose(x, d))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            partial_transpose(np.eye(5), Dims(2, 3))


class TestFullAndBothTranspose:
    def test_product_case(self):
        g = rng(12)
        a, b = random_complex(g, (2, 2)), random_complex(g, (3, 3))
        out = both_transpose(tensor(a, b), Dims(2, 3))
        assert np.allclose(out, tensor(a.T, b.T), atol=1e-15)

    def test_equals_full_transpose(self):
        g = rng(13)
        x = random_complex(g, (6, 6))
        d = Dims(2, 3)
        assert np.max(np.abs(both_transpose(x, d) - full_transpose(x))) <= 1e-15
        assert np.array_equal(both_transpose(x, d), brute_full_transpose_via_factors(x, d))

    def test_max_entangled_projector_invariant(self):
        p = max_entangled_projector(3)
        assert np.array_equal(both_transpose(p, Dims(3, 3)), p)

    def test_conj_transpose(self):
        g = rng(14)
        x = random_complex(g, (3, 4))
        assert np.array_equal(conj_transpose(x), x.conj().T)


class TestPartialTrace:
    def test_product_case(self):
        g = rng(15)
        a, b = random_complex(g, (2, 2)), random_complex(g, (3, 3))
        x = tensor(a, b)
        d = Dims(2, 3)
        assert np.allclose(partial_trace(x, d, 2), np.trace(b) * a, atol=1e-14)
        assert np.allclose(partial_trace(x, d, 1), np.trace(a) * b, atol=1e-14)

    def test_max_entangled_projector(self):
        p = max_entangled_projector(3)
        assert np.allclose(partial_trace(p, Dims(3, 3), 1), np.eye(3), atol=0)

    def test_trace_consistency(self):
        g = rng(16)
        x = random_complex(g, (6, 6))
        d = Dims(2, 3)
        for factor in (1, 2):
            assert abs(np.trace(partial_trace(x, d, factor)) - np.trace(x)) <= 1e-14

    def test_bad_factor(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4), Dims(2, 2), 3)


class TestEigHermitian:
    def test_diagonal(self):
        spec = eig_hermitian(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(spec.eigenvalues, [3.0, 2.0, 1.0], atol=0)

    def test_swap_two_by_two(self):
        spec = eig_hermitian(swap_operator(2))
        assert np.allclose(spec.eigenvalues, [1.0, 1.0, 1.0, -1.0], atol=1e-14)

    def test_rank_one_projector(self):
        g = rng(17)
        v = random_complex(g, 5)
        v /= np.linalg.norm(v)
        spec = eig_hermitian(np.outer(v, v.conj()))
        assert abs(spec.eigenvalues[0] - 1.0) <= 1e-10
        assert np.max(np.abs(spec.eigenvalues[1:])) <= 1e-10

    @pytest.mark.parametrize("k", [4, 9, 27, 81])
    def test_reconstruction_and_orthonormality(self, k):
        g = rng(100 + k)
        x = random_hermitian(g, k)
        spec = eig_hermitian(x)
        u, w = spec.eigenvectors, spec.eigenvalues
        assert np.all(np.diff(w) <= 1e-12)
        assert frob(x - (u * w) @ u.conj().T) <= 1e-10 * (1 + frob(x))
        assert np.max(np.abs(u.conj().T @ u - np.eye(k))) <= 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestIsPsd:
    def test_identity(self):
        ok, lo = is_psd(np.eye(3))
        assert ok and abs(lo - 1.0) <= 1e-14

    def test_indefinite_diagonal(self):
        ok, lo = is_psd(np.diag([1.0, -0.5]))
        assert not ok and abs(lo + 0.5) <= 1e-14

    def test_partial_transpose_of_entangled_projector(self):
        p = max_entangled_projector(2)
        ok, lo = is_psd(partial_transpose(p, Dims(2, 2)))
        assert not ok and abs(lo + 1.0) <= 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            is_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_psd_and_pt_psd_agree_on_product_positives(self):
        g = rng(18)
        for _ in range(10):
            x = tensor(random_psd(g, 2), random_psd(g, 3))
            d = Dims(2, 3)
            assert is_psd(x)[0]
            assert is_psd(partial_transpose(x, d))[0]


class TestInnerProducts:
    def test_hs_identity(self):
        assert hs_inner(np.eye(4), np.eye(4)) == pytest.approx(4.0)

    def test_trace_pairing_units(self):
        assert trace_pairing(matrix_unit(0, 1, 2), matrix_unit(1, 0, 2)) == pytest.approx(1.0)

    def test_trace_cyclicity(self):
        g = rng(19)
        a, b = random_complex(g, (4, 4)), random_complex(g, (4, 4))
        assert trace_pairing(a, b) == pytest.approx(trace_pairing(b, a), abs=1e-13)

    def test_hs_positive(self):
        g = rng(20)
        a = random_complex(g, (3, 3))
        v = hs_inner(a, a)
        assert v.real >= 0 and abs(v.imag) <= 1e-14

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            hs_inner(np.eye(2), np.eye(3))
        with pytest.raises(ValueError):
            trace_pairing(np.eye(2), np.eye(3))


class TestValidation:
    def test_rejects_non_finite(self):
        x = np.eye(2)
        x[0, 0] = np.nan
        with pytest.raises(ValueError):
            as_operator(x)

    def test_rejects_vector(self):
        with pytest.raises(ValueError):
            as_operator(np.ones(4))
