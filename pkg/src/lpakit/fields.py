"""Exact scalars (rationals and prime fields) and polynomials over them.

Rational scalars are :class:`fractions.Fraction`; prime-field scalars are
plain ``int`` values reduced into ``range(p)``. All arithmetic goes through a
:class:`FieldSpec` so that algebra code never needs to know which one it has.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UnsupportedField

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "parse_field",
    "Polynomial",
    "is_irreducible",
    "is_irreducible_trial",
    "is_irreducible_fast",
    "monic_polynomials",
    "enumerate_laurent_irreducibles",
    "count_irreducibles",
    "mobius",
]


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field of order ``p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (isinstance(self.p, int) and 2 <= self.p < 2**31 and _is_prime(self.p)):
                raise ValueError(f"prime field order must be a prime below 2^31, got {self.p!r}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __str__(self):
        return self.name

    # scalar arithmetic
    def __call__(self, x):
        """Coerce ``x`` (int, Fraction or numeric string) into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        if self.p is None:
            raise UnsupportedField("the rationals cannot be enumerated")
        return range(self.p)


QQ = FieldSpec(None)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def parse_field(text: str) -> FieldSpec:
    """Accept ``Q``/``q``/``QQ`` for the rationals and ``Fp``/``GFp``/``p`` for primes."""
    t = text.strip()
    if t.lower() in ("q", "qq", "rationals"):
        return QQ
    m = re.fullmatch(r"(?:[Ff]|GF|gf)?(\d+)", t)
    if not m:
        raise ValueError(f"unrecognised field {text!r}")
    return FieldSpec(int(m.group(1)))


# polynomials

_TERM = re.compile(r"^(?:(?P<c>\d+(?:/\d+)?)\*?)?(?P<x>x(?:\^(?P<e>\d+))?)?$")


class Polynomial:
    """Polynomial over a :class:`FieldSpec`, coefficients lowest degree first.

    Trailing zeros are stripped, so ``coeffs == ()`` is the zero polynomial.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: FieldSpec):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls, field: FieldSpec) -> "Polynomial":
        return cls((0, 1), field)

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> "Polynomial":
        """Parse forms like ``x^3+x+1`` or ``2*x^2 - x + 3/2``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        acc: dict[int, object] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = _TERM.match(body)
            if not m or (m.group("c") is None and m.group("x") is None):
                raise ValueError(f"bad polynomial term {body!r}")
            c = field(m.group("c") or 1)
            if sign == "-":
                c = field.neg(c)
            e = 0 if m.group("x") is None else int(m.group("e") or 1)
            acc[e] = field.add(acc.get(e, field.zero), c)
        if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
            raise ValueError(f"bad polynomial {text!r}")
        deg = max(acc)
        return cls([acc.get(i, field.zero) for i in range(deg + 1)], field)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if self.field.p is None and c < 0:
                sign, c = "-", -c
            else:
                sign = "+"
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if e == 0:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.field})"

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def sort_key(self):
        return (self.degree, self.coeffs[::-1])

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other], self.field)
        if other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        k = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [k.add(a[i] if i < len(a) else k.zero, b[i] if i < len(b) else k.zero) for i in range(n)],
            k,
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([self.field.neg(c) for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        k = self.field
        if not self.coeffs or not other.coeffs:
            return Polynomial((), k)
        out = [k.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = k.add(out[i + j], k.mul(a, b))
        return Polynomial(out, k)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        k = self.field
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = k.inv(other.coeffs[-1])
        quo = [k.zero] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = k.mul(c, lead_inv)
            quo[i - d] = q
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = k.sub(rem[i - d + j], k.mul(q, b))
        return Polynomial(quo, k), Polynomial(rem[:d] if d > 0 else [], k)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = self.field.inv(self.coeffs[-1])
        return Polynomial([self.field.mul(c, inv) for c in self.coeffs], self.field)

    def gcd(self, other) -> "Polynomial":
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, n: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial([1], self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result


def _require_prime_field(k: FieldSpec):
    if not k.is_finite:
        raise UnsupportedField("irreducible enumeration is only available over prime fields")


def monic_polynomials(k: FieldSpec, degree: int):
    """Yield every monic polynomial of exactly ``degree``, lexicographic in coefficients."""
    _require_prime_field(k)
    for lower in itertools.product(range(k.p), repeat=degree):
        # product() varies the last slot fastest; reverse so the constant term does
        yield Polynomial(tuple(reversed(lower)) + (1,), k)


def _check_input(f: Polynomial, k: FieldSpec):
    _require_prime_field(k)
    if f.field != k:
        raise ValueError("polynomial is over a different field")
    if not f.is_monic() or f.degree < 1:
        raise ValueError("expected a monic polynomial of degree >= 1")


def is_irreducible_trial(f: Polynomial, k: FieldSpec) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    _check_input(f, k)
    for d in range(1, f.degree // 2 + 1):
        for g in monic_polynomials(k, d):
            if (f % g).is_zero():
                return False
    return True


def is_irreducible_fast(f: Polynomial, k: FieldSpec) -> bool:
    """Distinct-degree test: ``gcd(f, x^(p^i) - x) == 1`` for ``i <= deg(f)/2``."""
    _check_input(f, k)
    x = Polynomial.x(k)
    power = x % f
    for _ in range(f.degree // 2):
        power = power.powmod(k.p, f)
        if (f.gcd(power - x)).degree > 0:
            return False
    return True


def is_irreducible(f: Polynomial, k: FieldSpec, fast: bool = False) -> bool:
    return is_irreducible_fast(f, k) if fast else is_irreducible_trial(f, k)


def enumerate_laurent_irreducibles(k: FieldSpec, max_degree: int) -> list[Polynomial]:
    """Monic irreducibles of degree 1..max_degree other than ``x``.

    ``x`` is a unit of ``K[x, x^-1]``, so it is left out; every other monic
    irreducible is the canonical representative of its associate class.
    Sorted by degree, then by coefficients from the leading term down.
    """
    _require_prime_field(k)
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    x = Polynomial.x(k)
    found = []
    for d in range(1, max_degree + 1):
        for f in monic_polynomials(k, d):
            if f != x and is_irreducible_fast(f, k):
                found.append(f)
    found.sort(key=Polynomial.sort_key)
    return found


def mobius(n: int) -> int:
    result, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def count_irreducibles(k: FieldSpec, n: int) -> int:
    """Number of monic irreducibles of exact degree ``n`` (necklace formula)."""
    _require_prime_field(k)
    if n < 1:
        raise ValueError("degree must be at least 1")
    total = sum(mobius(d) * k.p ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n
