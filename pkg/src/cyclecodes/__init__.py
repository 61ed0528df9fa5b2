"""Bounds on the rate-distance tradeoff of codes in powers of cycle graphs.

Modules by concern:

* :mod:`cyclecodes.bounds`: closed-form asymptotic curves, in nats.
* :mod:`cyclecodes.krawtchouk` and :mod:`cyclecodes.lp`: Krawtchouk
  polynomials with real parameter and the finite-length LP bound.
* :mod:`cyclecodes.codes` and :mod:`cyclecodes.search`: codes, constructions
  and exact maximum-code search.
* :mod:`cyclecodes.fourier` and :mod:`cyclecodes.theta`: Fourier and matrix
  witnesses for the bounds, with verification.
"""

from .bounds import (
    BoundCurve,
    CycleParams,
    RatePoint,
    cycle_params,
    entropy_hq,
    lower_2r1,
    lower_9cycle,
    lower_pentagon,
    rate_gv,
    rate_lp1,
    rate_lp2_binary,
    sample_curve,
    upper_main,
    upper_schur,
    weighted_gv_rate,
)
from .codes import Code, WeightTable, dist, dmin
from .errors import *  # noqa: F401,F403
from .fourier import FourierTable, build_f, build_g, dft, verify_sphere_transform
from .krawtchouk import SchemeParams, coeff_extract, kraw_eval, kraw_first_root
from .lp import (
    LPBoundResult,
    LPCertificate,
    certificate_check,
    finite_n_rate,
    lp_solve,
    mrrw_certificate,
)
from .search import alpha_search
from .theta import (
    CirculantCert,
    MatrixCert,
    cert_from_function,
    lovasz_circulant,
    psd_check,
    schur_combine,
    tensor_power,
)

__version__ = "0.1.0"
