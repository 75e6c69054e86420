"""Arithmetic in small finite fields GF(p^e).

Elements are plain ints in ``range(q)``: the base-p digits of an element
are its polynomial coefficients over GF(p), least significant digit first,
so in GF(4) the int 3 is x+1 and 2 is x.  Extension fields reduce modulo a
fixed irreducible polynomial from a built-in table, which keeps the
element numbering (and every point ordering built on it) identical across
runs and platforms.
"""

from __future__ import annotations

from .caps import DEFAULT_CAPS, SizeCaps
from .errors import NotAPrimePower, SizeCapExceeded, UnsupportedDegree

# Monic irreducible polynomials over GF(p), ascending coefficients
# (constant term first, leading 1 last).
_IRREDUCIBLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),              # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),           # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),        # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),     # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 1, 1, 0, 1),  # x^6 + x^4 + x^3 + x + 1
    (3, 2): (2, 2, 1),              # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),           # x^3 + 2x + 1
    (3, 4): (2, 0, 0, 2, 1),        # x^4 + 2x^3 + 2
    (5, 2): (2, 4, 1),              # x^2 + 4x + 2
    (5, 3): (3, 3, 0, 1),           # x^3 + 3x + 3
    (7, 2): (3, 6, 1),              # x^2 + 6x + 3
    (11, 2): (2, 7, 1),             # x^2 + 7x + 2
    (13, 2): (2, 12, 1),            # x^2 + 12x + 2
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q == p**e and p prime, or None if q is not one."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            n, e = q, 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
        p += 1
    return (q, 1)


class GF:
    """A field of q = p^e elements with canonical element order range(q)."""

    def __init__(self, q: int, caps: SizeCaps = DEFAULT_CAPS):
        pe = prime_power(q)
        if pe is None:
            raise NotAPrimePower(f"{q} is not a prime power")
        if q > caps.max_points:
            raise SizeCapExceeded(f"GF({q}) exceeds the point cap {caps.max_points}")
        self.q = q
        self.p, self.e = pe
        if self.e > 1:
            try:
                self.modulus = _IRREDUCIBLE[(self.p, self.e)]
            except KeyError:
                raise UnsupportedDegree(
                    f"no built-in irreducible polynomial for GF({self.p}^{self.e})"
                ) from None
        else:
            self.modulus = None
        self._inverse: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def elements(self) -> range:
        return range(self.q)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _undigits(self, digits: list[int]) -> int:
        val = 0
        for d in reversed(digits):
            val = val * self.p + d
        return val

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._undigits([(-d) % self.p for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce by the monic modulus: x^e == -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.e):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * self.modulus[j]) % self.p
        return self._undigits(prod[: self.e])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        hit = self._inverse.get(a)
        if hit is None:
            for x in range(1, self.q):
                if self.mul(a, x) == 1:
                    hit = x
                    break
            assert hit is not None, "nonzero element without inverse: modulus not irreducible"
            self._inverse[a] = hit
        return hit

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out
