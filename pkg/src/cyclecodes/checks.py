"""Named pass/fail checks used by ``cyclecodes verify`` and ``cyclecodes cert``."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .bounds import cycle_params
from .codes import Code, dmin
from .errors import CertificateRejected, InfeasibleDegreeError
from .fourier import build_f, build_g, verify_sphere_transform
from .krawtchouk import SchemeParams
from .lp import LPCertificate, certificate_check, lp_solve, mrrw_certificate
from .theta import cert_from_function, lovasz_circulant, schur_combine, tensor_power


class Check(NamedTuple):
    name: str
    passed: bool
    violation: float

    def line(self) -> str:
        return f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'} {self.violation:.3e}"


def _guard(name, fn) -> Check:
    """Run ``fn`` (returning a violation, 0 when clean) and catch rejections."""
    try:
        v = float(fn())
    except CertificateRejected as exc:
        return Check(name, False, float(exc.violation) if not math.isnan(exc.violation) else math.inf)
    return Check(name, True, v)


def code_checks(code: Code, d=None) -> tuple:
    """Returns ``(checks, dmin)``; a distance target adds a comparison."""
    m = dmin(code)
    checks = [Check("symbols", True, 0.0)]
    if d is not None:
        checks.append(Check("dmin", m >= d, max(0.0, d - m)))
    return checks, m


def certificate_checks(cert: LPCertificate) -> tuple:
    rep = certificate_check(cert)
    checks = [
        Check("leading-coefficient", bool(cert.coeffs[0] > 0), max(0.0, -float(cert.coeffs[0]))),
        Check("coefficients-nonnegative", rep.min_coeff >= -rep.tol, max(0.0, -rep.min_coeff)),
        Check("far-values-nonpositive", rep.max_constraint <= rep.tol, max(0.0, rep.max_constraint)),
    ]
    return checks, rep


def certificate_battery(q: int, n: int, d, tol: float | None = None) -> list:
    """Every check of the Fourier and theta chain for one ``(q, n, d)``."""
    p = cycle_params(q)
    out = []

    def circulant():
        c = lovasz_circulant(q)
        return max(0.0, -c.min_gap())
    out.append(_guard("circulant-psd", circulant))

    def g_table():
        build_g(q, n)
        return 0.0
    out.append(_guard("lovasz-assignment", g_table))

    worst = 0.0
    for ell in range(n + 1):
        for u in range(n + 1):
            worst = max(worst, verify_sphere_transform(q, n, ell, u).max_rel_error)
    out.append(Check("sphere-transform", worst < 1e-10, worst))

    scheme = SchemeParams(n, p.q_prime)
    cert, _ = lp_solve(scheme, d)
    rep = certificate_check(cert)
    out.append(Check("lp-certificate", rep.feasible, max(0.0, rep.max_constraint, -rep.min_coeff)))

    if cert.d <= n:
        try:
            mc = mrrw_certificate(scheme, cert.d)
            mrep = certificate_check(mc)
            out.append(Check("mrrw-certificate", mrep.feasible,
                             max(0.0, mrep.max_constraint, -mrep.min_coeff)))
        except InfeasibleDegreeError:
            pass

    holder = {}

    def f_table():
        holder["f"] = build_f(q, n, cert)
        return holder["f"].plancherel_error()
    out.append(_guard("product-function", f_table))

    if "f" in holder and q ** n <= 2000:
        def witness():
            D = cert_from_function(q, n, holder["f"], tol=tol)
            holder["D"] = D
            return D.violations()["psd"] or 0.0
        out.append(_guard("function-witness-psd", witness))
        if "D" in holder:
            def schur():
                base = tensor_power(lovasz_circulant(q).to_matrix_cert(), n)
                schur_combine(base, holder["D"])
                return 0.0
            out.append(_guard("schur-product-psd", schur))
    return out
