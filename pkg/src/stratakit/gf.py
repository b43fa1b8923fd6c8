"""Exact arithmetic in small finite fields GF(p^(e*k)) with the q-power Frobenius.

Elements are represented as integers in ``range(p**(e*k))`` whose base-p
digits (little-endian) are the coefficients of a polynomial over the prime
field.  Arithmetic is done modulo a monic irreducible polynomial of degree
``e*k``; multiplication and inversion go through discrete log tables, so a
context is cheap to use but bounded in size (desk scale, a few thousand
elements).

The context views its field as the degree-``k`` extension of a base field
GF(q), q = p^e, and exposes the arithmetic Frobenius ``x -> x**q``.  The
base field is recovered intrinsically as the fixed set of that map; no
Conway-style compatible towers are needed.

>>> ctx = FieldCtx(3, 1, 2)            # GF(9) over GF(3), auto modulus
>>> ctx.modulus                        # x^2 + 1 is the smallest irreducible
(1, 0, 1)
>>> i = ctx.element(ctx.gen_code)      # a generator of GF(9)^x
>>> (i * i.inverse()).code
1
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Hard cap on field size; everything here is meant for exhaustive checks.
ENUMERATION_BOUND = 4096


class FieldError(ValueError):
    pass


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin for the desk-scale range we care about
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, r, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        coef = a[-1] * binv % p
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _poly_trim(a)
    return q, a


def _poly_is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= d/2."""
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] != 1:
        return False
    if d == 1:
        return True
    mod = list(coeffs)
    for deg in range(1, d // 2 + 1):
        for code in range(p**deg):
            div = _int_to_digits(code, p, deg) + [1]
            _, rem = _poly_divmod(mod, div, p)
            if not rem:
                return False
    return True


def _int_to_digits(code: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(code % p)
        code //= p
    return out


def _digits_to_int(digits, p: int) -> int:
    out = 0
    for c in reversed(list(digits)):
        out = out * p + c
    return out


@lru_cache(maxsize=None)
def auto_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Smallest monic irreducible of the given degree over GF(p).

    "Smallest" means the lowest little-endian integer encoding of the
    non-leading coefficients, which makes the auto choice reproducible.
    """
    if degree == 1:
        return (0, 1)  # the convention x - 0 for prime fields
    for code in range(p**degree):
        coeffs = tuple(_int_to_digits(code, p, degree)) + (1,)
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {degree} over GF({p})")


class FieldCtx:
    """GF(p^(e*k)) seen as the degree-k extension of GF(q), q = p^e.

    Parameters
    ----------
    p : odd prime characteristic.
    e : degree of the base field over the prime field (q = p^e).
    k : degree of the working extension over the base field.
    modulus : coefficient tuple (little-endian, monic) of an irreducible
        polynomial of degree e*k over GF(p), or "auto".
    """

    def __init__(self, p: int, e: int, k: int, modulus="auto"):
        if not _is_probable_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if p < 3:
            raise FieldError("odd characteristic required (p >= 3)")
        if e < 1 or k < 1:
            raise FieldError("extension degrees must be >= 1")
        d = e * k
        if p**d > ENUMERATION_BOUND:
            raise FieldError(f"field size {p**d} exceeds enumeration bound {ENUMERATION_BOUND}")
        if modulus == "auto":
            modulus = auto_modulus(p, d)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {d}")
        if not _poly_is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.k = k
        self.q = p**e
        self.size = p**d
        self.degree = d
        self.modulus = modulus
        self._build_tables()

    # -- construction ---------------------------------------------------

    def _mul_codes_slow(self, a: int, b: int) -> int:
        p, d = self.p, self.degree
        da = _int_to_digits(a, p, d)
        db = _int_to_digits(b, p, d)
        prod = [0] * (2 * d - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce modulo the (monic) modulus
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    prod[i - d + j] = (prod[i - d + j] - c * self.modulus[j]) % p
        return _digits_to_int(prod[:d], p)

    def _build_tables(self) -> None:
        n = self.size
        # additive structure is digitwise mod p
        codes = np.arange(n)
        digit_cols = []
        tmp = codes.copy()
        for _ in range(self.degree):
            digit_cols.append(tmp % self.p)
            tmp //= self.p
        digits = np.stack(digit_cols, axis=1)  # (n, degree)
        sums = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.degree)
        self.ADD = (sums * weights).sum(axis=2).astype(np.int32)
        self.NEG = self.ADD[0].copy()
        neg = ((-digits) % self.p * weights).sum(axis=1).astype(np.int32)
        self.NEG = neg
        # multiplicative structure via a generator
        gen = None
        for cand in range(2, n):
            seen = 1
            x = cand
            order = 1
            while x != 1:
                x = self._mul_codes_slow(x, cand)
                order += 1
                if order > n:
                    break
            if order == n - 1:
                gen = cand
                break
        if gen is None:
            raise FieldError("no multiplicative generator found (bug)")
        self.gen_code = gen
        exp = np.zeros(2 * (n - 1), dtype=np.int32)
        log = np.zeros(n, dtype=np.int32)
        x = 1
        for i in range(n - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_codes_slow(x, gen)
        exp[n - 1 :] = exp[: n - 1]
        self._EXP, self._LOG = exp, log
        mul = np.zeros((n, n), dtype=np.int32)
        nz = np.arange(1, n)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (n - 1)]
        self.MUL = mul
        inv = np.zeros(n, dtype=np.int32)
        inv[1:] = exp[(n - 1 - log[nz]) % (n - 1)]
        self.INV = inv
        # arithmetic Frobenius x -> x^q and its fixed set (the base field)
        frob = np.zeros(n, dtype=np.int32)
        frob[1:] = exp[(log[nz] * (self.q % (n - 1))) % (n - 1)]
        self.FROB = frob
        self.base_codes = tuple(int(c) for c in np.nonzero(frob == codes)[0])

    # -- scalar ops on codes ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.ADD[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.ADD[a, self.NEG[b]])

    def neg(self, a: int) -> int:
        return int(self.NEG[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.MUL[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.INV[a])

    def frobenius(self, a: int) -> int:
        return int(self.FROB[a])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return int(self._EXP[(int(self._LOG[a]) * n) % (self.size - 1)])

    def element(self, code: int) -> "FieldElem":
        if not 0 <= code < self.size:
            raise FieldError(f"code {code} out of range")
        return FieldElem(self, code)

    def from_int(self, n: int) -> "FieldElem":
        """Image of the integer n under Z -> GF(p) -> the field."""
        return FieldElem(self, n % self.p)

    def coeffs(self, code: int) -> tuple[int, ...]:
        return tuple(_int_to_digits(code, self.p, self.degree))

    def enumerate(self):
        """All field elements exactly once, lexicographic on coefficient vectors."""
        return [FieldElem(self, c) for c in range(self.size)]

    def subfield_codes(self, j: int = 1) -> tuple[int, ...]:
        """Codes of the subfield GF(q^j), the fixed set of frobenius^j."""
        if self.k % j != 0:
            raise FieldError(f"GF(q^{j}) is not a subfield for k = {self.k}")
        fixed = []
        for a in range(self.size):
            x = a
            for _ in range(j):
                x = int(self.FROB[x])
            if x == a:
                fixed.append(a)
        return tuple(fixed)

    # -- misc -------------------------------------------------------------

    def describe(self) -> dict:
        return {"p": self.p, "e": self.e, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.e, self.k, self.modulus) == (other.p, other.e, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.k, self.modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, k={self.k})"


@dataclass(frozen=True)
class FieldElem:
    """A field element: a context handle plus an integer code."""

    ctx: FieldCtx
    code: int

    def _check(self, other: "FieldElem") -> None:
        if self.ctx != other.ctx:
            raise FieldError("cross-context arithmetic")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, other.code))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, other.code))

    def __truediv__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, self.ctx.inv(other.code)))

    def __pow__(self, n: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def frobenius(self) -> "FieldElem":
        """The arithmetic Frobenius x -> x^q."""
        return FieldElem(self.ctx, self.ctx.frobenius(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def __repr__(self):
        return f"<{self.coeffs()} in GF({self.ctx.p}^{self.ctx.degree})>"
