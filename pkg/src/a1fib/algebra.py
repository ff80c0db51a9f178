"""Exact polynomial arithmetic over the rationals.

All scalars are ``fractions.Fraction``, so every operation is exact and
independent of evaluation order.  Three polynomial shapes are provided:

* ``UniPoly``     dense univariate polynomials indexed by degree,
* ``LaurentPoly`` sparse univariate polynomials with integer exponents of
  either sign,
* ``BihomForm``   bihomogeneous forms in two pairs of projective coordinates
  (u0, u1) x (v0, v1) with a fixed bidegree.

Values are immutable after construction; arithmetic returns new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, str, Fraction]


def _frac(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class UniPoly:
    """Dense polynomial sum(c_k * x^k); trailing zero coefficients trimmed."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, value: Scalar) -> "UniPoly":
        return cls([_frac(value)])

    @classmethod
    def x_power(cls, power: int, coeff: Scalar = 1) -> "UniPoly":
        if power < 0:
            raise ValueError("UniPoly exponents must be non-negative")
        return cls([0] * power + [_frac(coeff)])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_even(self) -> bool:
        """True when only even-degree coefficients are present."""
        return all(c == 0 for k, c in enumerate(self._coeffs) if k % 2 == 1)

    def leading(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def order_at_zero(self) -> int:
        """Smallest exponent with nonzero coefficient; rejects the zero poly."""
        for k, c in enumerate(self._coeffs):
            if c != 0:
                return k
        raise ValueError("order at zero undefined for the zero polynomial")

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self._coeffs))

    def __add__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self._coeffs])

    def __sub__(self, other) -> "UniPoly":
        other = _as_unipoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return -(self - other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self._coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative powers are not defined for UniPoly")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x: Scalar) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def scale_x(self, lam: Scalar) -> "UniPoly":
        """Substitute x -> lam*x, mapping c_k to lam^k * c_k."""
        lam = _frac(lam)
        return UniPoly([c * lam**k for k, c in enumerate(self._coeffs)])

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Substitute x -> inner(x)."""
        acc = UniPoly()
        for c in reversed(self._coeffs):
            acc = acc * inner + UniPoly([c])
        return acc

    def truncate(self, k: int) -> "UniPoly":
        """Part of degree < k."""
        return UniPoly(self._coeffs[:max(k, 0)])

    def shift_down(self, k: int) -> "UniPoly":
        """Exact division by x^k; the k lowest coefficients must vanish."""
        if any(c != 0 for c in self._coeffs[:k]):
            raise ValueError("polynomial is not divisible by x^%d" % k)
        return UniPoly(self._coeffs[k:])

    def __str__(self) -> str:
        return _format_terms(enumerate(self._coeffs), "x")

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r})"


def _as_unipoly(value) -> "UniPoly":
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return UniPoly([value])
    return NotImplemented


class LaurentPoly:
    """Sparse polynomial sum(c_k * x^k) with k ranging over the integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for k, c in items:
            c = _frac(c)
            if c == 0:
                continue
            acc[k] = acc.get(k, Fraction(0)) + c
            if acc[k] == 0:
                del acc[k]
        object.__setattr__(self, "_terms", dict(sorted(acc.items())))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def x_power(cls, power: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({power: _frac(coeff)})

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "LaurentPoly":
        return cls({k: c for k, c in enumerate(p.coeffs) if c != 0})

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple(self._terms.items())

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero Laurent polynomial has no support")
        return next(iter(self._terms))

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero Laurent polynomial has no support")
        return next(reversed(self._terms))

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: _frac(other)} if other != 0 else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("LaurentPoly", tuple(self._terms.items())))

    def __add__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, Fraction(0)) + c
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return -(self - other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                acc[i + j] = acc.get(i + j, Fraction(0)) + a * b
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def scale_x(self, lam: Scalar) -> "LaurentPoly":
        """Substitute x -> lam*x; lam must be nonzero (negative exponents)."""
        lam = _frac(lam)
        if lam == 0:
            raise ValueError("cannot substitute x -> 0 into a Laurent polynomial")
        return LaurentPoly({k: c * lam**k for k, c in self._terms.items()})

    def invert_x(self) -> "LaurentPoly":
        """Substitute x -> x^-1."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def compose_monomial(self, power: int, coeff: Scalar = 1) -> "LaurentPoly":
        """Substitute x -> coeff * x^power (power nonzero, coeff nonzero).

        General composition leaves the Laurent ring; monomial substitution is
        the only case needed here and stays exact.
        """
        coeff = _frac(coeff)
        if power == 0 or coeff == 0:
            raise ValueError("substitution must be by a nonzero monomial")
        return LaurentPoly({k * power: c * coeff**k for k, c in self._terms.items()})

    def to_unipoly(self) -> UniPoly:
        if self._terms and self.min_exp() < 0:
            raise ValueError("Laurent polynomial has a pole at zero")
        if not self._terms:
            return UniPoly()
        out = [Fraction(0)] * (self.max_exp() + 1)
        for k, c in self._terms.items():
            out[k] = c
        return UniPoly(out)

    def __str__(self) -> str:
        return _format_terms(self._terms.items(), "x")

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _as_laurent(value) -> "LaurentPoly":
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly({0: value})
    if isinstance(value, UniPoly):
        return LaurentPoly.from_unipoly(value)
    return NotImplemented


def ord_at_zero(f: LaurentPoly | UniPoly) -> int:
    """Smallest exponent carrying a nonzero coefficient.

    For a Laurent polynomial with a pole at the origin this is negative; the
    zero polynomial is rejected.
    """
    if isinstance(f, UniPoly):
        return f.order_at_zero()
    if f.is_zero():
        raise ValueError("order at zero undefined for the zero polynomial")
    return f.min_exp()


def bezout(ints: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """gcd of positive integers together with a certificate.

    Returns (g, coeffs) with g = gcd(ints) and sum(coeffs[i] * ints[i]) == g.
    The fold is deterministic, so identical inputs give identical coefficients.
    """
    if not ints:
        raise ValueError("bezout requires a nonempty sequence")
    if any(n <= 0 for n in ints):
        raise ValueError("bezout requires positive integers")
    g, coeffs = ints[0], [1]
    for n in ints[1:]:
        g2, x, y = _egcd(g, n)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return g, tuple(coeffs)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class BihomForm:
    """Bihomogeneous form of bidegree (p, q) in (u0, u1) x (v0, v1).

    Coefficients are keyed by (i, j) with 0 <= i <= p and 0 <= j <= q, the
    key (i, j) standing for the monomial u0^(p-i) u1^i v0^(q-j) v1^j.
    """

    __slots__ = ("_bidegree", "_coeffs")

    def __init__(self, bidegree: tuple[int, int],
                 coeffs: Mapping[tuple[int, int], Scalar]):
        p, q = bidegree
        if p < 0 or q < 0:
            raise ValueError("bidegree entries must be non-negative")
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in coeffs.items():
            if not (0 <= i <= p and 0 <= j <= q):
                raise ValueError(f"exponent pair {(i, j)} outside bidegree {bidegree}")
            c = _frac(c)
            if c != 0:
                acc[(i, j)] = c
        object.__setattr__(self, "_bidegree", (p, q))
        object.__setattr__(self, "_coeffs", dict(sorted(acc.items())))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("BihomForm is immutable")

    @property
    def bidegree(self) -> tuple[int, int]:
        return self._bidegree

    def coeff(self, i: int, j: int) -> Fraction:
        return self._coeffs.get((i, j), Fraction(0))

    def items(self) -> tuple[tuple[tuple[int, int], Fraction], ...]:
        return tuple(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, BihomForm):
            return NotImplemented
        return self._bidegree == other._bidegree and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("BihomForm", self._bidegree, tuple(self._coeffs.items())))

    def __add__(self, other: "BihomForm") -> "BihomForm":
        if not isinstance(other, BihomForm):
            return NotImplemented
        if self._bidegree != other._bidegree:
            raise ValueError("bidegree mismatch")
        merged = dict(self._coeffs)
        for key, c in other._coeffs.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return BihomForm(self._bidegree, merged)

    def __neg__(self) -> "BihomForm":
        return BihomForm(self._bidegree, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "BihomForm") -> "BihomForm":
        return self + (-other)

    def __mul__(self, other: Scalar) -> "BihomForm":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return BihomForm(self._bidegree, {k: c * other for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "BihomForm":
        other = _frac(other)
        if other == 0:
            raise ZeroDivisionError("division of a form by zero")
        return self * (1 / other)

    def scale_coords(self, u0: Scalar = 1, u1: Scalar = 1,
                     v0: Scalar = 1, v1: Scalar = 1) -> "BihomForm":
        """Substitute u0 -> u0*U0, ..., v1 -> v1*V1 for nonzero scalars."""
        p, q = self._bidegree
        su0, su1, sv0, sv1 = (_frac(u0), _frac(u1), _frac(v0), _frac(v1))
        if 0 in (su0, su1, sv0, sv1):
            raise ValueError("coordinate scalings must be nonzero")
        return BihomForm(self._bidegree, {
            (i, j): c * su0**(p - i) * su1**i * sv0**(q - j) * sv1**j
            for (i, j), c in self._coeffs.items()
        })

    def __str__(self) -> str:
        p, q = self._bidegree
        parts = []
        for (i, j), c in self._coeffs.items():
            factors = []
            for sym, e in (("u0", p - i), ("u1", i), ("v0", q - j), ("v1", j)):
                if e == 1:
                    factors.append(sym)
                elif e > 1:
                    factors.append(f"{sym}^{e}")
            parts.append((c, "*".join(factors) or "1"))
        return _format_signed(parts)

    def __repr__(self) -> str:
        return f"BihomForm({self._bidegree}, {str(self)!r})"


def diagonal_restrict(form: BihomForm) -> UniPoly:
    """Restrict a bidegree-(p, 1) form to the diagonal [v0:v1] := [u0:u1].

    The result is the binary form C(u0, u1, u0, u1) of degree p+1, returned
    through the dehomogenization u1 = 1: the coefficient of x^k is the
    coefficient of u0^k u1^(p+1-k).  Vanishing order at [0:1] is then the
    order of the returned polynomial at x = 0.
    """
    p, q = form.bidegree
    if q != 1:
        raise ValueError("diagonal restriction requires bidegree (p, 1)")
    deg = p + 1
    out = [Fraction(0)] * (deg + 1)
    for (i, j), c in form.items():
        u0_power = (p - i) + (1 - j)
        out[u0_power] += c
    return UniPoly(out)


def exact_root(value: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root of value, or None when no such root exists."""
    if n <= 0:
        raise ValueError("root index must be positive")
    if n == 1:
        return value
    if value == 0:
        return Fraction(0)
    if value < 0 and n % 2 == 0:
        return None
    sign = -1 if value < 0 else 1
    num = _int_nth_root(abs(value.numerator), n)
    den = _int_nth_root(abs(value.denominator), n)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def _int_nth_root(k: int, n: int) -> int | None:
    if k == 0:
        return 0
    # Newton iteration on integers, then exact verification.
    x = 1 << (-(-k.bit_length() // n))
    while True:
        y = ((n - 1) * x + k // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x if x**n == k else None


def _format_terms(items, sym: str) -> str:
    parts = []
    for k, c in items:
        if c == 0:
            continue
        if k == 0:
            body = ""
        elif k == 1:
            body = sym
        else:
            body = f"{sym}^{k}"
        parts.append((c, body or "1"))
    return _format_signed(parts)


def _format_signed(parts: list[tuple[Fraction, str]]) -> str:
    if not parts:
        return "0"
    chunks = []
    for idx, (c, body) in enumerate(parts):
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if idx == 0:
            chunks.append(text if c > 0 else f"-{text}")
        else:
            chunks.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(chunks)


def gcd_many(values: Iterable[int]) -> int:
    vals = list(values)
    return math.gcd(*vals) if vals else 0
