"""Exact integer characteristic polynomials of adjacency matrices.

The stored convention is monic: coefficients of det(lambda*I - A) in
ascending degree, length n + 1, arbitrary-precision Python integers
throughout.  No floating point enters polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonZeroRemainder
from .graphs import Graph


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coeffs[k] multiplying lambda^k."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval_at(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(tuple(poly_mul(self.coeffs, other.coeffs)))

    def __add__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(tuple(poly_add(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(tuple(poly_add(self.coeffs, [-c for c in other.coeffs])))

    def shift(self, s: int) -> "CharPoly":
        """Multiply by lambda^s."""
        return CharPoly((0,) * s + self.coeffs)

    def scale(self, k: int) -> "CharPoly":
        return CharPoly(tuple(k * c for c in self.coeffs))


def poly_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_add(a, b) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for j, bj in enumerate(b):
        out[j] += bj
    return out


def poly_trim(a) -> list[int]:
    out = list(a)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_divmod_exact(num, den) -> list[int]:
    """Long division of integer polynomials with a monic-leading divisor.

    Raises NonZeroRemainder unless the division is exact.
    """
    num = poly_trim(num)
    den = poly_trim(den)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) < len(den):
        raise NonZeroRemainder("degree of numerator below divisor")
    rem = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(den) - 1]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                rem[k + j] -= c * dj
    if any(rem):
        raise NonZeroRemainder(f"non-exact polynomial division, remainder {poly_trim(rem)}")
    return quot


def poly_compose_neg_shift(coeffs) -> list[int]:
    """Substitute lambda -> -lambda - 1, exactly."""
    acc = [0]
    for c in reversed(coeffs):
        # acc = acc * (-x - 1) + c
        nxt = [0] * (len(acc) + 1)
        for i, ai in enumerate(acc):
            nxt[i] -= ai
            nxt[i + 1] -= ai
        nxt[0] += c
        acc = nxt
    return poly_trim(acc)


def char_poly(g: Graph) -> CharPoly:
    """Exact char poly of the adjacency matrix via the Faddeev-LeVerrier
    recurrence; every division by the step index k is exact over the
    integers, which is asserted."""
    n = g.n
    if n == 0:
        return CharPoly((1,))
    a = g.adjacency_rows()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]  # M_0
    for k in range(1, n + 1):
        # M_k = A @ M_{k-1} + c_{n-k+1} * I
        am = _int_matmul(a, m)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            am[i][i] += c_prev
        m = am
        tr = 0
        for i in range(n):
            tr += sum(a[i][j] * m[j][i] for j in range(n))
        q, r = divmod(-tr, k)
        if r != 0:
            raise AssertionError("Faddeev-LeVerrier division was not exact")
        coeffs[n - k] = q
    return CharPoly(tuple(coeffs))


def _int_matmul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            aik = ai[k]
            if aik == 0:
                continue
            bk = b[k]
            for j in range(n):
                oi[j] += aik * bk[j]
    return out
