"""Plain-text formats for codes and LP certificates.

Code file::

    q n
    w_1 ... w_n        (one word per line, symbols in [0, q))

Certificate file::

    n q_prime d
    H_0 H_1 ... H_n    (shortest round-trip decimal of each float)

Both are written with LF endings and read strictly; malformed input raises
:class:`CodeFormatError` with the offending line number.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .codes import Code
from .errors import CodeFormatError, DomainError
from .krawtchouk import SchemeParams
from .lp import LPCertificate


def format_code(code: Code) -> str:
    lines = [f"{code.q} {code.n}"]
    lines += [" ".join(str(s) for s in w) for w in code.words]
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise CodeFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def parse_code(text: str) -> Code:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CodeFormatError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise CodeFormatError("header must be 'q n'", 1)
    q, n = _ints(head, 1)
    if q < 2 or n < 1:
        raise CodeFormatError(f"invalid parameters q={q}, n={n}", 1)
    words = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if not tokens:
            raise CodeFormatError("blank line", lineno)
        w = _ints(tokens, lineno)
        if len(w) != n:
            raise CodeFormatError(f"word has {len(w)} symbols, expected {n}", lineno)
        bad = [s for s in w if not 0 <= s < q]
        if bad:
            raise CodeFormatError(f"symbol {bad[0]} outside [0, {q})", lineno)
        words.append(tuple(w))
    if not words:
        raise CodeFormatError("no codewords", 2)
    return Code(q, n, tuple(words))


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(path, code: Code) -> None:
    Path(path).write_bytes(format_code(code).encode())


def code_io(path, mode: str, code: Code | None = None):
    if mode == "read":
        return read_code(path)
    if mode == "write":
        if code is None:
            raise DomainError("write mode needs a code")
        write_code(path, code)
        return None
    raise DomainError(f"mode must be 'read' or 'write', got {mode!r}")


def format_certificate(cert: LPCertificate) -> str:
    head = f"{cert.scheme.n} {cert.scheme.q_prime!r} {cert.d}"
    body = " ".join(repr(float(c)) for c in cert.coeffs)
    return head + "\n" + body + "\n"


def parse_certificate(text: str) -> LPCertificate:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != 2:
        raise CodeFormatError(f"certificate must have 2 lines, found {len(lines)}", min(len(lines), 3) or 1)
    head = lines[0].split()
    if len(head) != 3:
        raise CodeFormatError("header must be 'n q_prime d'", 1)
    try:
        n, qp, d = int(head[0]), float(head[1]), int(head[2])
    except ValueError as exc:
        raise CodeFormatError(str(exc), 1) from None
    try:
        coeffs = np.array([float(t) for t in lines[1].split()])
    except ValueError as exc:
        raise CodeFormatError(str(exc), 2) from None
    if len(coeffs) != n + 1:
        raise CodeFormatError(f"expected {n + 1} coefficients, got {len(coeffs)}", 2)
    try:
        return LPCertificate(SchemeParams(n, qp), coeffs, d)
    except DomainError as exc:
        raise CodeFormatError(str(exc), 1) from None


def read_certificate(path) -> LPCertificate:
    return parse_certificate(Path(path).read_text())


def write_certificate(path, cert: LPCertificate) -> None:
    Path(path).write_bytes(format_certificate(cert).encode())


def sniff(path) -> str:
    """``'code'`` or ``'certificate'`` from the header's token count."""
    with open(path) as fh:
        first = fh.readline().split()
    if len(first) == 2:
        return "code"
    if len(first) == 3:
        return "certificate"
    raise CodeFormatError("unrecognized header", 1)
