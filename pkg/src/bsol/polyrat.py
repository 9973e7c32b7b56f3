"""Exact sparse polynomials and rational functions over the integers.

Coefficients are arbitrary-precision ints stored as {exponent: coefficient}
with no zero entries.  IntPoly restricts exponents to >= 0, LaurentPoly
allows negative exponents.  RatFn keeps a reduced num/den pair of IntPoly
in a canonical form, so equality is plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Coeffs = Mapping[int, int]


def _clean(coeffs: Coeffs) -> dict[int, int]:
    return {e: c for e, c in coeffs.items() if c != 0}


class _BasePoly:
    __slots__ = ("_c",)

    _allow_negative = False

    def __init__(self, coeffs: Union[Coeffs, Iterable[tuple[int, int]], None] = None):
        if coeffs is None:
            d: dict[int, int] = {}
        elif isinstance(coeffs, Mapping):
            d = _clean(coeffs)
        else:
            d = _clean(dict(coeffs))
        for e, c in d.items():
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be int")
            if e < 0 and not self._allow_negative:
                raise ValueError(f"negative exponent {e} in a plain polynomial")
        self._c = d

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial (by convention)."""
        return max(self._c) if self._c else -1

    @property
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def leading(self) -> int:
        return self._c[max(self._c)] if self._c else 0

    def content(self) -> int:
        """gcd of the coefficients, 0 for the zero polynomial."""
        g = 0
        for c in self._c.values():
            g = gcd(g, abs(c))
        return g

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _BasePoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({} if other == 0 else {0: other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((type(self)._allow_negative, frozenset(self._c.items())))

    def _binop(self, other, fn):
        cls = type(self)
        if isinstance(other, int):
            other = cls({0: other})
        if not isinstance(other, _BasePoly):
            return None
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = fn(out.get(e, 0), c)
        return cls(out)

    def __add__(self, other):
        r = self._binop(other, lambda a, b: a + b)
        return NotImplemented if r is None else r

    __radd__ = __add__

    def __sub__(self, other):
        r = self._binop(other, lambda a, b: a - b)
        return NotImplemented if r is None else r

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return type(self)({e: -c for e, c in self._c.items()})

    def __mul__(self, other):
        cls = type(self)
        if isinstance(other, int):
            return cls({e: c * other for e, c in self._c.items()})
        if not isinstance(other, _BasePoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return cls(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = type(self)({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate exactly; x may be int or Fraction."""
        return sum((c * x**e for e, c in self._c.items()), type(x)(0) if self._c else 0)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._c!r})"

    def __str__(self) -> str:
        return format_poly(self)


class IntPoly(_BasePoly):
    """Polynomial in x with integer coefficients, exponents >= 0."""

    _allow_negative = False

    @staticmethod
    def x_power(e: int, c: int = 1) -> "IntPoly":
        return IntPoly({e: c})

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly({0: c})

    def to_laurent(self) -> "LaurentPoly":
        return LaurentPoly(self._c)


class LaurentPoly(_BasePoly):
    """Polynomial in x and 1/x with integer coefficients."""

    _allow_negative = True

    @staticmethod
    def x_power(e: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: c})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        return LaurentPoly({e + k: c for e, c in self._c.items()})

    def to_intpoly(self) -> IntPoly:
        if self._c and min(self._c) < 0:
            raise ValueError("negative exponents present, not a plain polynomial")
        return IntPoly(self._c)


ONE = IntPoly({0: 1})
ZERO = IntPoly()
X = IntPoly({1: 1})


def _mixed_mul(a: _BasePoly, b: _BasePoly) -> LaurentPoly:
    """Product in the Laurent ring regardless of operand subclasses."""
    return LaurentPoly(a.coeffs) * LaurentPoly(b.coeffs)


def poly_divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact division a / b in Z[x]; raises if the division is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return ZERO
    rem = {e: Fraction(c) for e, c in a.coeffs.items()}
    quot: dict[int, Fraction] = {}
    bd = b.degree
    blead = b.coeff(bd)
    bitems = [(e, c) for e, c in b.coeffs.items()]
    while rem:
        d = max(rem)
        if d < bd:
            raise ValueError("inexact polynomial division (remainder)")
        q = rem[d] / blead
        quot[d - bd] = q
        for e, c in bitems:
            e2 = e + d - bd
            v = rem.get(e2, Fraction(0)) - q * c
            if v:
                rem[e2] = v
            else:
                rem.pop(e2, None)
    out: dict[int, int] = {}
    for e, c in quot.items():
        if c.denominator != 1:
            raise ValueError("inexact polynomial division (non-integer quotient)")
        out[e] = c.numerator
    return IntPoly(out)


def primitive_part(p: IntPoly) -> IntPoly:
    """p divided by its content, sign fixed so the leading coefficient is > 0."""
    if p.is_zero():
        return ZERO
    c = p.content()
    if p.leading < 0:
        c = -c
    return IntPoly({e: v // c for e, v in p.coeffs.items()})


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Z[x] (leading coefficient positive); gcd(0,0) = 0."""
    fa = {e: Fraction(c) for e, c in a.coeffs.items()}
    fb = {e: Fraction(c) for e, c in b.coeffs.items()}

    def frem(u: dict[int, Fraction], v: dict[int, Fraction]) -> dict[int, Fraction]:
        dv = max(v)
        lv = v[dv]
        u = dict(u)
        while u and max(u) >= dv:
            du = max(u)
            q = u[du] / lv
            for e, c in v.items():
                e2 = e + du - dv
                w = u.get(e2, Fraction(0)) - q * c
                if w:
                    u[e2] = w
                else:
                    u.pop(e2, None)
        return u

    while fb:
        fa, fb = fb, frem(fa, fb)
    if not fa:
        return ZERO
    lcm_den = 1
    for c in fa.values():
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    ints = IntPoly({e: int(c * lcm_den) for e, c in fa.items()})
    return primitive_part(ints)


class RatFn:
    """Reduced fraction of integer polynomials.

    Canonical form: num/den coprime over the rationals, the pair jointly
    primitive (no common integer factor), den leading coefficient positive.
    On every value this package produces the denominator ends up with
    content 1 (its constant term is a unit).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly = ONE):
        if isinstance(num, int):
            num = IntPoly.const(num)
        if isinstance(den, int):
            den = IntPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", ZERO)
            object.__setattr__(self, "den", ONE)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        k = gcd(num.content(), den.content())
        if den.leading < 0:
            k = -k
        if k != 1:
            num = IntPoly({e: c // k for e, c in num.coeffs.items()})
            den = IntPoly({e: c // k for e, c in den.coeffs.items()})
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @staticmethod
    def from_poly(p: IntPoly) -> "RatFn":
        return RatFn(p, ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (IntPoly, int)):
            return self == RatFn(other if isinstance(other, IntPoly) else IntPoly.const(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfn(other)
        if other is None:
            return NotImplemented
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfn(other)
        if other is None:
            return NotImplemented
        return RatFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __mul__(self, other):
        other = _as_ratfn(other)
        if other is None:
            return NotImplemented
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfn(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfn(other)
        return other / self

    def __repr__(self) -> str:
        return f"RatFn({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


def _as_ratfn(v) -> RatFn | None:
    if isinstance(v, RatFn):
        return v
    if isinstance(v, IntPoly):
        return RatFn(v)
    if isinstance(v, int):
        return RatFn(IntPoly.const(v))
    return None


def ratfn_normalize(num: IntPoly, den: IntPoly) -> RatFn:
    return RatFn(num, den)


def series_coeffs(f: RatFn, m: int) -> list[Fraction]:
    """Taylor coefficients c_0..c_m of f at the origin, exact.

    Requires den(0) != 0, i.e. no pole at the origin.
    """
    d0 = f.den.coeff(0)
    if d0 == 0:
        raise ValueError("pole at the origin, no Taylor series")
    out: list[Fraction] = []
    for k in range(m + 1):
        acc = Fraction(f.num.coeff(k))
        for i in range(1, k + 1):
            di = f.den.coeff(i)
            if di:
                acc -= di * out[k - i]
        out.append(acc / d0)
    return out


# --- text format -------------------------------------------------------------
#
# Terms in descending exponent order, " + " / " - " separators, unit
# coefficients elided on x terms: "6x^4 + 4x^3 + x^2 - 1".  The parser also
# accepts an optional "*" between coefficient and x, arbitrary term order,
# repeated terms (summed), and a unicode minus.


def format_poly(p: _BasePoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e in sorted(p.coeffs, reverse=True):
        c = p.coeff(e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            body = xs if a == 1 else f"{a}{xs}"
        parts.append((sign, body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class PolyParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"cannot parse {text!r} at position {pos}: {msg}")
        self.pos = pos


def _parse_terms(text: str, allow_negative: bool) -> dict[int, int]:
    s = text.replace("−", "-")
    i, n = 0, len(s)
    coeffs: dict[int, int] = {}

    def skip_ws(i: int) -> int:
        while i < n and s[i].isspace():
            i += 1
        return i

    def read_int(i: int, signed: bool) -> tuple[int, int]:
        j = i
        if signed and j < n and s[j] in "+-":
            j += 1
        k = j
        while k < n and s[k].isdigit():
            k += 1
        if k == j:
            raise PolyParseError(text, i, "expected an integer")
        return int(s[i:k]), k

    i = skip_ws(i)
    if i == n:
        raise PolyParseError(text, i, "empty input")
    first = True
    while i < n:
        sign = 1
        i = skip_ws(i)
        if not first or (i < n and s[i] in "+-"):
            if i >= n or s[i] not in "+-":
                raise PolyParseError(text, i, "expected '+' or '-'")
            sign = -1 if s[i] == "-" else 1
            i = skip_ws(i + 1)
        first = False
        c = 1
        have_coeff = False
        if i < n and s[i].isdigit():
            c, i = read_int(i, signed=False)
            have_coeff = True
            i = skip_ws(i)
            if i < n and s[i] == "*":
                i = skip_ws(i + 1)
        if i < n and s[i] == "x":
            i += 1
            e = 1
            if i < n and s[i] == "^":
                e, i = read_int(i + 1, signed=True)
        else:
            if not have_coeff:
                raise PolyParseError(text, i, "expected a coefficient or 'x'")
            e = 0
        if e < 0 and not allow_negative:
            raise PolyParseError(text, i, f"negative exponent {e} not allowed here")
        coeffs[e] = coeffs.get(e, 0) + sign * c
        i = skip_ws(i)
    return coeffs


def parse_poly(text: str) -> IntPoly:
    return IntPoly(_parse_terms(text, allow_negative=False))


def parse_laurent(text: str) -> LaurentPoly:
    return LaurentPoly(_parse_terms(text, allow_negative=True))


# --- JSON form ---------------------------------------------------------------


def poly_to_json(p: _BasePoly) -> dict:
    return {"coeffs": {str(e): str(c) for e, c in sorted(p.coeffs.items(), reverse=True)}}


def poly_from_json(obj: dict) -> IntPoly:
    return IntPoly({int(e): int(c) for e, c in obj["coeffs"].items()})


def laurent_from_json(obj: dict) -> LaurentPoly:
    return LaurentPoly({int(e): int(c) for e, c in obj["coeffs"].items()})


def ratfn_to_json(f: RatFn) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfn_from_json(obj: dict) -> RatFn:
    return RatFn(poly_from_json(obj["num"]), poly_from_json(obj["den"]))
