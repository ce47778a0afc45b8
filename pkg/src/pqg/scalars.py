"""Exact arithmetic in cyclotomic fields Q(z), z a primitive n-th root of unity.

Conductors whose field is Q itself (n = 1, 2) are handled with plain
``Fraction``/``int`` values, which is what the rest of the package uses for
speed.  Other conductors use :class:`CyclotomicScalar`.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union


class ConductorMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists low -> high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class CyclotomicField:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.degree = euler_phi(n)
        self.poly = cyclotomic_poly(n)
        d = self.degree
        # reduced power table z^m for 0 <= m < max(n, 2d)
        top = max(n, 2 * d)
        table = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(top):
            table.append(tuple(cur))
            # multiply by z
            carry = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if carry:
                for i in range(d):
                    cur[i] -= carry * self.poly[i]
        self._pow = table

    @property
    def rational(self) -> bool:
        return self.degree == 1

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def zeta_power(self, m: int) -> tuple:
        return self._pow[m % self.n]

    def reduce(self, raw: list) -> tuple:
        d = self.degree
        out = list(raw[:d]) + [Fraction(0)] * max(0, d - len(raw))
        for m in range(d, len(raw)):
            c = raw[m]
            if c:
                row = self._pow[m]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def element(self, coeffs) -> "Scalar":
        """Build a field element from power-basis coefficients (any length)."""
        coeffs = [Fraction(c) for c in coeffs]
        if self.rational:
            red = self.reduce(coeffs) if len(coeffs) > 1 else tuple(coeffs or [Fraction(0)])
            return _simplify(red[0])
        return CyclotomicScalar(self.reduce(coeffs), self)

    def coerce(self, x) -> "Scalar":
        if isinstance(x, CyclotomicScalar):
            if x.field.n != self.n:
                raise ConductorMismatch(f"conductor {x.field.n} vs {self.n}")
            return x
        if self.rational:
            return _simplify(Fraction(x))
        return CyclotomicScalar((Fraction(x),) + (Fraction(0),) * (self.degree - 1), self)

    def zeta(self) -> "Scalar":
        return self.element(self.zeta_power(1))

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self)

    def format(self, x) -> str:
        return format_scalar(x)


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def _simplify(q: Fraction):
    return q.numerator if q.denominator == 1 else q


class CyclotomicScalar:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple, fld: CyclotomicField):
        if len(coeffs) != fld.degree:
            raise ValueError("coefficient vector has wrong length")
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.field = fld

    # -- coercion helpers
    def _other(self, y):
        if isinstance(y, CyclotomicScalar):
            if y.field.n != self.field.n:
                raise ConductorMismatch(f"conductor {self.field.n} vs {y.field.n}")
            return y.coeffs
        if isinstance(y, (int, Fraction)):
            return (Fraction(y),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def _wrap(self, coeffs):
        return CyclotomicScalar(coeffs, self.field)

    def __add__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return self._wrap(tuple(a + b for a, b in zip(self.coeffs, c)))

    __radd__ = __add__

    def __sub__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return self._wrap(tuple(a - b for a, b in zip(self.coeffs, c)))

    def __rsub__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return self._wrap(tuple(b - a for a, b in zip(self.coeffs, c)))

    def __neg__(self):
        return self._wrap(tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, y):
        if isinstance(y, (int, Fraction)):
            return self._wrap(tuple(a * y for a in self.coeffs))
        c = self._other(y)
        if c is None:
            return NotImplemented
        a = self.coeffs
        raw = [Fraction(0)] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(c):
                    if bj:
                        raw[i + j] += ai * bj
        return self._wrap(self.field.reduce(raw))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicScalar":
        if not self:
            raise DivisionByZero("division by zero in cyclotomic field")
        d = self.field.degree
        # columns: self * z^k
        cols = []
        for k in range(d):
            raw = [Fraction(0)] * k + list(self.coeffs)
            cols.append(self.field.reduce(raw))
        # solve sum_k y_k cols[k] = e_0 by Gauss-Jordan on the d x d system
        rows = [[cols[k][i] for k in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return self._wrap(tuple(rows[i][d] for i in range(d)))

    def __truediv__(self, y):
        if isinstance(y, (int, Fraction)):
            if not y:
                raise DivisionByZero("division by zero in cyclotomic field")
            return self._wrap(tuple(a / y for a in self.coeffs))
        if not isinstance(y, CyclotomicScalar):
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, y):
        if not isinstance(y, (int, Fraction)):
            return NotImplemented
        return self.inverse() * y

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.coerce(1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, y):
        c = self._other(y)
        if c is None:
            return NotImplemented
        return self.coeffs == c

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    def conjugate(self) -> "CyclotomicScalar":
        n = self.field.n
        raw = [Fraction(0)] * self.field.degree
        for k, a in enumerate(self.coeffs):
            if a:
                row = self.field.zeta_power(n - k)
                for i, v in enumerate(row):
                    if v:
                        raw[i] += a * v
        return self._wrap(tuple(raw))

    def embed(self) -> complex:
        n = self.field.n
        return sum(
            (float(a) * cmath.exp(2j * cmath.pi * k / n) for k, a in enumerate(self.coeffs) if a),
            0j,
        )

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"CyclotomicScalar({format_scalar(self)!r}, n={self.field.n})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, CyclotomicScalar]


def field_arithmetic(x: Scalar, y: Scalar, op: str) -> Scalar:
    if isinstance(x, CyclotomicScalar) and isinstance(y, CyclotomicScalar):
        if x.field.n != y.field.n:
            raise ConductorMismatch(f"conductor {x.field.n} vs {y.field.n}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise DivisionByZero("division by zero")
        return div(x, y)
    raise ValueError(f"unknown operation {op!r}")


def conj(x: Scalar) -> Scalar:
    if isinstance(x, CyclotomicScalar):
        return x.conjugate()
    return x


conjugate = conj


def embed(x: Scalar) -> complex:
    if isinstance(x, CyclotomicScalar):
        return x.embed()
    return complex(float(x), 0.0)


embed_complex = embed


def inv(x: Scalar) -> Scalar:
    if isinstance(x, CyclotomicScalar):
        return x.inverse()
    if not x:
        raise DivisionByZero("division by zero")
    return _simplify(Fraction(1) / x)


def div(x: Scalar, y: Scalar) -> Scalar:
    if isinstance(x, CyclotomicScalar) or isinstance(y, CyclotomicScalar):
        return x * inv(y)
    if not y:
        raise DivisionByZero("division by zero")
    return _simplify(Fraction(x) / y)


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, CyclotomicScalar) or x.is_rational()


def as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, CyclotomicScalar):
        if not x.is_rational():
            raise ValueError("not a rational scalar")
        return x.coeffs[0]
    return Fraction(x)


# -- text form -------------------------------------------------------------

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?(?P<z>z(?:\s*\^\s*(?P<exp>\d+))?)?\s*"
)


class ScalarSyntaxError(ValueError):
    def __init__(self, msg: str, col: int):
        super().__init__(msg)
        self.col = col


def parse_scalar(text: str, fld: CyclotomicField | None = None) -> Scalar:
    """Parse ``a0 + a1*z + a2*z^2`` style text into the field."""
    fld = fld or field(1)
    s = text.strip()
    if not s:
        raise ScalarSyntaxError("empty scalar", 0)
    pos = 0
    raw: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ScalarSyntaxError(f"unexpected character {s[pos]!r}", pos)
        if not first and not m.group("sign"):
            raise ScalarSyntaxError("missing operator between terms", pos)
        if not m.group("num") and not m.group("z"):
            raise ScalarSyntaxError("missing term", m.end())
        if m.group("star") and not m.group("z"):
            raise ScalarSyntaxError("dangling '*'", m.end())
        if m.group("num") and m.group("z") and not m.group("star"):
            raise ScalarSyntaxError("expected '*' before z", m.start("z"))
        coef = Fraction(1)
        if m.group("num"):
            num = m.group("num")
            if "/" in num:
                p, q = num.split("/")
                if int(q) == 0:
                    raise ScalarSyntaxError("zero denominator", m.start("num") + len(p) + 1)
                coef = Fraction(int(p), int(q))
            else:
                coef = Fraction(int(num))
        if m.group("sign") == "-":
            coef = -coef
        k = 0
        if m.group("z"):
            if fld.rational and fld.n == 1:
                raise ScalarSyntaxError("z is not available at conductor 1", m.start("z"))
            k = int(m.group("exp")) if m.group("exp") else 1
        raw[k] = raw.get(k, Fraction(0)) + coef
        pos = m.end()
        first = False
    top = max(raw)
    coeffs = [Fraction(0)] * (top + 1)
    for k, c in raw.items():
        coeffs[k] = c
    if fld.rational:
        # z = -1 at conductor 2
        return _simplify(sum((c * (-1) ** k for k, c in enumerate(coeffs)), Fraction(0)))
    red = [Fraction(0)] * fld.degree
    for k, c in enumerate(coeffs):
        if c:
            for i, v in enumerate(fld.zeta_power(k)):
                red[i] += c * v
    return CyclotomicScalar(tuple(red), fld)


def _fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    coeffs = x.coeffs if isinstance(x, CyclotomicScalar) else (Fraction(x),)
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_q(mag)
        else:
            zpart = "z" if k == 1 else f"z^{k}"
            body = zpart if mag == 1 else f"{_fmt_q(mag)}*{zpart}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"
