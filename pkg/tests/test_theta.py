import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclecodes.bounds import cycle_params
from cyclecodes.errors import CertificateRejected, DomainError
from cyclecodes.fourier import build_f, build_g, dft
from cyclecodes.krawtchouk import SchemeParams
from cyclecodes.lp import lp_solve
from cyclecodes.search import alpha_search
from cyclecodes.theta import (
    CirculantCert,
    MatrixCert,
    all_ones_cert,
    cert_from_function,
    lovasz_circulant,
    min_eigenvalue,
    psd_check,
    schur_combine,
    tensor_power,
)


def f_cert(q, n, d):
    cert = lp_solve(SchemeParams(n, cycle_params(q).q_prime), d)[0]
    return cert_from_function(q, n, build_f(q, n, cert))


class TestPSD:
    def test_examples(self):
        assert psd_check(np.eye(4))
        assert not psd_check(np.diag([1.0, -1.0]))

    def test_non_square(self):
        with pytest.raises(DomainError):
            psd_check(np.ones((2, 3)))

    def test_factorization_branch(self, monkeypatch):
        import cyclecodes.theta as T
        monkeypatch.setattr(T, "EIGEN_LIMIT", 2)
        assert psd_check(np.eye(5))
        assert not psd_check(np.diag([1.0, 1.0, -1e-3]), tol=1e-8)
        assert psd_check(np.diag([1.0, 1.0, -1e-9]), tol=1e-8)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_gram_matrices(self, m, data):
        B = np.array(data.draw(st.lists(st.lists(st.floats(-3, 3), min_size=m, max_size=m),
                                        min_size=m, max_size=m)))
        G = B @ B.T
        assert psd_check(G, tol=1e-9 * (1 + np.abs(G).max()))
        assert min_eigenvalue(G) == pytest.approx(np.linalg.eigvalsh(G)[0], abs=1e-9 * (1 + np.abs(G).max()))


class TestCirculant:
    def test_triangle(self):
        c = lovasz_circulant(3)
        np.testing.assert_allclose(c.matrix(), np.ones((3, 3)), atol=1e-12)

    def test_pentagon(self):
        c = lovasz_circulant(5)
        assert c.d0 == pytest.approx(math.sqrt(5), abs=1e-12)
        assert c.d1 == pytest.approx(1.3819660, abs=1e-7)
        assert lovasz_circulant(9).d0 == pytest.approx(4.360090, abs=1e-6)

    @pytest.mark.parametrize("q", range(3, 100, 2))
    def test_all_odd(self, q):
        c = lovasz_circulant(q)
        assert c.d0 == pytest.approx(cycle_params(q).theta_l, abs=1e-12)
        assert c.min_gap() >= -1e-10
        spec = np.linalg.eigvalsh(c.matrix() - np.ones((q, q)))
        assert spec.min() >= -1e-9

    def test_seven_lifted(self):
        D = lovasz_circulant(7).matrix()
        assert psd_check(D - np.ones((7, 7)), 1e-8)
        lovasz_circulant(7).to_matrix_cert().verify()

    def test_infeasible_circulant(self):
        assert CirculantCert(5, 2.0, 1.3819660).min_gap() < 0

    def test_even_rejected(self):
        with pytest.raises(DomainError):
            lovasz_circulant(8)


class TestMatrixCert:
    def test_value_and_violations(self):
        m = MatrixCert(np.array([[2.0, 0.5], [0.5, 2.0]]), zero_mask=np.array([[0, 1], [1, 0]]))
        assert m.value == 2.0
        assert m.violations()["zero-entries"] == 0.5
        with pytest.raises(CertificateRejected) as info:
            m.verify()
        assert info.value.clause == "zero-entries"

    def test_psd_failure(self):
        with pytest.raises(CertificateRejected) as info:
            MatrixCert(np.eye(3)).verify()
        assert info.value.clause == "psd"

    def test_mask_shape(self):
        with pytest.raises(DomainError):
            MatrixCert(np.eye(2), zero_mask=np.zeros((3, 3)))

    def test_schur_with_ones(self):
        c = lovasz_circulant(5).to_matrix_cert()
        out = schur_combine(c, all_ones_cert(5))
        np.testing.assert_array_equal(out.matrix, c.matrix)
        np.testing.assert_array_equal(out.zero_mask, c.zero_mask)

    def test_schur_diagonal(self):
        a = MatrixCert(np.diag([3.0, 4.0]) + 1)
        b = MatrixCert(np.diag([2.0, 5.0]) + 1)
        out = schur_combine(a, b)
        np.testing.assert_allclose(np.diag(out.matrix), [12.0, 30.0])

    def test_schur_size_mismatch(self):
        with pytest.raises(DomainError):
            schur_combine(all_ones_cert(2), all_ones_cert(3))

    def test_tensor_power(self):
        c = lovasz_circulant(5).to_matrix_cert()
        t = tensor_power(c, 2)
        assert t.size == 25
        assert t.value == pytest.approx(5.0, rel=1e-12)
        t.verify()
        with pytest.raises(DomainError):
            tensor_power(c, 0)


class TestFunctionCerts:
    def test_identity(self):
        delta = np.zeros(25)
        delta[0] = 1
        D = cert_from_function(5, 2, dft(5, 2, delta))
        np.testing.assert_allclose(D.matrix, 25 * np.eye(25))

    def test_lovasz_function(self):
        D = cert_from_function(5, 1, build_g(5, 1))
        np.testing.assert_allclose(D.matrix, lovasz_circulant(5).matrix(), atol=1e-12)

    @pytest.mark.parametrize("q,n,d", [(5, 2, 2), (5, 2, 1), (5, 3, 2), (7, 2, 2), (9, 2, 2)])
    def test_from_lp(self, q, n, d):
        D = f_cert(q, n, d)
        D.verify(psd_tol=1e-8 * q ** n)
        assert D.value >= alpha_search(q, n, d)[0] * (1 - 1e-9)

    def test_schur_product_instance(self):
        D1 = tensor_power(lovasz_circulant(5).to_matrix_cert(), 2)
        D2 = f_cert(5, 2, 2)
        out = schur_combine(D1, D2)
        assert psd_check(out.matrix - np.ones((25, 25)), 1e-8 * 25)
        assert out.value >= alpha_search(5, 2, 2)[0] * (1 - 1e-9)

    def test_rejects_negative_transform(self):
        f = np.zeros(5)
        f[0], f[1], f[4] = 1, 1, 1    # transform 1 + 2cos(2 pi w / 5) dips below zero
        with pytest.raises(CertificateRejected):
            cert_from_function(5, 1, dft(5, 1, f))

    def test_nonpositive_pairs(self):
        D = f_cert(5, 2, 2)
        assert D.nonpos_mask.any()
        assert (D.matrix[D.nonpos_mask] <= 1e-10 * D.value).all()
        assert D.info["d"] == 2
