"""Classification of affine-line fibrations with a multiplicity-two fiber.

The normal form for such a fibration is a pair (pole order l, even
polynomial s with s(0) = 1 and deg s < l); two normal forms are equivalent
exactly when some scaling x -> lambda*x carries one polynomial to the other.
Squaring lambda turns that into a system mu^i = ratio_i over the nonzero
even coefficients, which is decided exactly over the algebraic closure by an
integer-exponent consistency test: no root of a rational number is ever
extracted.

The module also provides the mu_2-gluing normalization that produces the
normal form from transition data, the canonical invariant separating
equivalence classes, class counts and moduli families, the normal form for
maximal-multiplicity fibrations, and symbolic verification of the three
gluing presentations used elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import LaurentPoly, UniPoly, bezout, exact_root, ord_at_zero


# -- counting verdicts --------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    """A finite number of equivalence classes.

    ``provenance`` records whether the package computed the count itself or
    reproduced a recorded classification value.
    """

    count: int
    provenance: str = "computed"


@dataclass(frozen=True)
class Infinite:
    """Infinitely many classes, with the dimension of the moduli family."""

    moduli_dim: int


# -- normal form --------------------------------------------------------------

@dataclass(frozen=True)
class SlsParams:
    """Normal form (pole order, even unit polynomial) of a multiplicity-two
    fibration class."""

    pole_order: int
    unit: UniPoly

    def __post_init__(self):
        if self.pole_order < 1:
            raise ValueError("pole order must be >= 1")
        if not isinstance(self.unit, UniPoly):
            object.__setattr__(self, "unit", UniPoly(self.unit))
        if self.unit[0] != 1:
            raise ValueError("unit polynomial must have constant term 1")
        if not self.unit.is_even():
            raise ValueError("unit polynomial must be even")
        if self.unit.degree >= self.pole_order:
            raise ValueError(
                f"unit degree {self.unit.degree} must be < pole order {self.pole_order}")

    def support(self) -> tuple[int, ...]:
        """Even exponents >= 2 carrying a nonzero coefficient."""
        return tuple(k for k, c in enumerate(self.unit.coeffs) if k >= 2 and c != 0)

    def __str__(self) -> str:
        return f"(l={self.pole_order}, s={self.unit})"


# -- equivalence --------------------------------------------------------------

@dataclass(frozen=True)
class EquivWitness:
    """Witness of equivalence: mu = lambda^2 satisfies mu^root_index = mu_power.

    ``mu`` is the exact rational root when it exists; otherwise the witness
    lives over the algebraic closure and is described by (mu_power,
    root_index).
    """

    support: tuple[int, ...]
    mu_power: Fraction
    root_index: int
    mu: Fraction | None


@dataclass(frozen=True)
class NotEquivalent:
    reason: str  # "length" | "support" | "consistency"
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def power_consistency(pairs: Sequence[tuple[int, Fraction]]) -> tuple[bool, Fraction, int]:
    """Decide solvability of mu^i = r over the algebraic closure.

    Given pairs (i_j, r_j) with positive integer exponents and nonzero
    rational ratios, any solution satisfies mu^g = t for g = gcd(i_j) and
    t the Bezout combination of the ratios; conversely a g-th root of t
    solves the system iff t^(i_j/g) = r_j for every j.  Returns
    (solvable, t, g).
    """
    if not pairs:
        return True, Fraction(1), 0
    exps = [i for i, _ in pairs]
    if any(i < 1 for i in exps):
        raise ValueError("exponents must be positive")
    if any(r == 0 for _, r in pairs):
        raise ValueError("ratios must be nonzero")
    g, coeffs = bezout(exps)
    t = Fraction(1)
    for (_, r), c in zip(pairs, coeffs):
        t *= r**c
    ok = all(t ** (i // g) == r for i, r in pairs)
    return ok, t, g


def equivalent(a: SlsParams, b: SlsParams) -> EquivWitness | NotEquivalent:
    """Decide equivalence of two normal forms, with a witness either way.

    Equivalence means some lambda with b.unit(lambda*x) = a.unit(x); writing
    mu = lambda^2 this asks mu^i * b_2i = a_2i on the common support.
    """
    if a.pole_order != b.pole_order:
        return NotEquivalent(
            "length", f"pole orders differ: {a.pole_order} != {b.pole_order}")
    if a.support() != b.support():
        return NotEquivalent(
            "support", f"supports differ: {a.support()} != {b.support()}")
    sup = a.support()
    if not sup:
        return EquivWitness((), Fraction(1), 0, Fraction(1))
    pairs = [(e // 2, a.unit[e] / b.unit[e]) for e in sup]
    ok, t, g = power_consistency(pairs)
    if not ok:
        ratios = {e: a.unit[e] / b.unit[e] for e in sup}
        return NotEquivalent("consistency", f"no consistent scaling: ratios {ratios}")
    return EquivWitness(sup, t, g, exact_root(t, g))


def canonical_invariant(p: SlsParams) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """Complete invariant of the scaling action at fixed pole order.

    Normalizing each supported coefficient by t^(i/g), with t the Bezout
    combination of the coefficients themselves, kills the scaling freedom:
    two normal forms with equal pole order are equivalent exactly when their
    invariants coincide.  The Bezout choice is deterministic, so the
    invariant is comparable across calls.
    """
    sup = p.support()
    if not sup:
        return (), ()
    idx = [e // 2 for e in sup]
    g, coeffs = bezout(idx)
    t = Fraction(1)
    for e, c in zip(sup, coeffs):
        t *= p.unit[e] ** c
    return sup, tuple(p.unit[e] / t ** (i // g) for e, i in zip(sup, idx))


def count_classes(pole_order: int) -> Finite | Infinite:
    """Number of equivalence classes at a fixed pole order.

    Classes are grouped by the support of s - 1.  The empty support is one
    class; each single-exponent support collapses to one class (the scaling
    absorbs the coefficient over the algebraic closure); a support with two
    or more exponents leaves continuous invariants.  With k available even
    exponents the count is therefore 1 for k = 0, 2 for k = 1 and infinite
    for k >= 2, with moduli dimension k - 1 realized on the full support.
    """
    if pole_order < 1:
        raise ValueError("pole order must be >= 1")
    available = [e for e in range(2, pole_order, 2)]
    k = len(available)
    if k == 0:
        return Finite(1)
    if k == 1:
        return Finite(2)
    return Infinite(k - 1)


def moduli_family(pole_order: int, samples: Iterable[Sequence]) -> list[SlsParams]:
    """Pairwise non-equivalent family 1 + x^2 + sum(a_i x^(2i)), i >= 2.

    Sample points give the coordinates (a_2, ..., a_M) with 2M the largest
    even exponent below the pole order; shorter points are padded with
    zeros.  Fixing the x^2 coefficient at 1 pins the scaling completely, so
    distinct points yield distinct classes; a duplicate canonical invariant
    is reported as an error.
    """
    if pole_order < 5:
        raise ValueError("a positive-dimensional family requires pole order >= 5")
    max_half = (pole_order - 1) // 2
    n_params = max_half - 1
    family: list[SlsParams] = []
    seen: dict[tuple, int] = {}
    for k, point in enumerate(samples):
        pt = tuple(Fraction(c) for c in point)
        if len(pt) > n_params:
            raise ValueError(
                f"point {pt} has more than {n_params} coordinates for pole order {pole_order}")
        pt = pt + (Fraction(0),) * (n_params - len(pt))
        coeffs = [Fraction(0)] * (2 * max_half + 1)
        coeffs[0] = Fraction(1)
        coeffs[2] = Fraction(1)
        for j, a in enumerate(pt, start=2):
            coeffs[2 * j] = a
        member = SlsParams(pole_order, UniPoly(coeffs))
        inv = (member.pole_order,) + canonical_invariant(member)
        if inv in seen:
            raise ValueError(
                f"sample points {seen[inv]} and {k} give the same class {member}")
        seen[inv] = k
        family.append(member)
    for i, p in enumerate(family):
        for q in family[i + 1:]:
            if equivalent(p, q):
                raise ValueError(f"family members {p} and {q} are equivalent")
    return family


# -- mu_2 gluing normalization ------------------------------------------------

def mu2_normalize(f: LaurentPoly, epsilon: int) -> tuple[int, UniPoly, Fraction, UniPoly]:
    """Normal form of a mu_2-equivariant transition u -> u + f(x).

    ``f`` must be a non-constant polynomial in x^-1 (a constant term is
    allowed and ends up in the remainder); the sign ``epsilon`` of the
    mu_2-action forces the parity of the polar part: odd for +1, even for
    -1.  Writing sigma = x^l * f / 2 with l the pole order, sigma factors as
    scale * (unit + x^l * remainder) with unit even, unit(0) = 1 and
    deg unit < l.  Returns (l, unit, scale, remainder), and the identity
    2 * x^-l * scale * (unit + x^l * remainder) = f holds exactly.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if f.is_zero():
        raise ValueError("transition polynomial must be nonzero")
    exps = [k for k, _ in f.items()]
    if any(k > 0 for k in exps):
        raise ValueError("transition polynomial must lie in k[x^-1]")
    negative = [k for k in exps if k < 0]
    if not negative:
        raise ValueError("transition polynomial must have a pole at the origin")
    want_odd = epsilon == 1
    bad = [k for k in negative if (abs(k) % 2 == 1) != want_odd]
    if bad:
        raise ValueError(
            f"parity mismatch with epsilon={epsilon:+d}: offending exponents {bad}")
    ell = -ord_at_zero(f)
    sigma = (LaurentPoly.x_power(ell) * f * Fraction(1, 2)).to_unipoly()
    scale = sigma[0]
    if scale == 0:
        raise ValueError("leading polar coefficient vanished")
    sigma_unit = sigma * (1 / scale)
    unit = sigma_unit.truncate(ell)
    remainder = (sigma_unit - unit).shift_down(ell)
    if not unit.is_even() or unit[0] != 1:
        raise ValueError("normalization failed to produce an even unit")
    return ell, unit, scale, remainder


def mu2_reconstruct(ell: int, unit: UniPoly, scale: Fraction,
                    remainder: UniPoly) -> LaurentPoly:
    """Inverse of ``mu2_normalize``: rebuild the transition polynomial."""
    sigma = (unit + UniPoly.x_power(ell) * remainder) * scale
    return LaurentPoly.from_unipoly(sigma * 2) * LaurentPoly.x_power(-ell)


# -- maximal multiplicity normal form -----------------------------------------

@dataclass(frozen=True)
class MaximalForm:
    """Affine transformation (x, y) -> (lam*x + mu, (y - shift(x)) / nu)
    carrying the curve y = p(x) onto y = x^(deg p)."""

    lam: Fraction
    mu: Fraction
    nu: Fraction
    shift: UniPoly

    def apply(self, p: UniPoly) -> UniPoly:
        return (p - self.shift) * (1 / self.nu)


def maximal_normal_form(p: UniPoly, d: int | None = None) -> MaximalForm:
    """Normalize a graph curve y = p(x) of degree d + 1 to y = x^(d+1).

    Among the valid transformations the deterministic choice is lam = 1,
    mu = 0, nu the leading coefficient and shift the lower-degree part; the
    result is verified by substitution before returning.
    """
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    if d is not None and p.degree != d + 1:
        raise ValueError(f"degree mismatch: deg p = {p.degree}, expected {d + 1}")
    top = p.degree
    nu = p.leading()
    shift = p - UniPoly.x_power(top, nu)
    form = MaximalForm(Fraction(1), Fraction(0), nu, shift)
    if form.apply(p) != UniPoly.x_power(top):
        raise ValueError("normalization failed verification")
    return form


# -- gluing data and symbolic verification ------------------------------------

class GluingError(ValueError):
    """A gluing identity failed: the transition data is mistranscribed."""


@dataclass(frozen=True)
class GluingDatum:
    """Two-chart transition u -> alpha(x) * u + beta(x), with an optional
    mu_2-action sign."""

    alpha: LaurentPoly
    beta: LaurentPoly
    epsilon: int | None = None

    def __post_init__(self):
        if not isinstance(self.alpha, LaurentPoly):
            object.__setattr__(self, "alpha", LaurentPoly(self.alpha))
        if not isinstance(self.beta, LaurentPoly):
            object.__setattr__(self, "beta", LaurentPoly(self.beta))
        if self.alpha.is_zero():
            raise ValueError("alpha must not vanish identically")
        if self.epsilon not in (None, 1, -1):
            raise ValueError("epsilon must be +1, -1 or None")


@dataclass(frozen=True)
class GluingReport:
    kind: str
    checks: tuple[str, ...]


def sls_gluing(pole_order: int, unit: UniPoly) -> GluingDatum:
    """Transition datum of the double cover of a multiplicity-two class."""
    params = SlsParams(pole_order, unit)
    beta = LaurentPoly(
        {k - pole_order: 2 * c for k, c in enumerate(params.unit.coeffs) if c != 0})
    return GluingDatum(LaurentPoly({0: 1}), beta, 1 if pole_order % 2 else -1)


def reduced_gluing(d: int) -> GluingDatum:
    """Transition datum of the smooth fibration with boundary degree d."""
    if d < 2:
        raise ValueError("requires d >= 2")
    return GluingDatum(LaurentPoly.x_power(2 - d), LaurentPoly.x_power(1 - d))


def wd_gluing(d: int) -> GluingDatum:
    """Base-inverting transition of the degree-d affine-line bundle model."""
    if d < 2:
        raise ValueError("requires d >= 2")
    return GluingDatum(LaurentPoly.x_power(d), LaurentPoly.x_power(d - 1, -1))


def gluing_check(datum: GluingDatum, kind: str, *, d: int | None = None,
                 pole_order: int | None = None,
                 unit: UniPoly | None = None) -> GluingReport:
    """Verify the defining identities of a gluing presentation symbolically.

    kind="sls": the transition must be u -> u + 2 x^-l s(x) with the correct
    action sign, and the chart coordinates u+- = x^-l (y -+ s) must satisfy
    u+ u- = x^-l z and u+ - u- = -2 x^-l s modulo x^l z = y^2 - s^2.

    kind="reduced": the transition must be u -> x^(2-d) u + x^(1-d) and
    compose with its inverse to the identity.

    kind="wd": the base-inverting transition (w, u) -> (w^-1, w^d u - w^(d-1))
    must compose with its inverse to the identity, and the degree-d relation
    x1^(d-1) x4 = x2 (x2+1)^(d-1) of the non-normal image surface must reduce
    to zero using the defining relations of the model.

    Any failed identity raises ``GluingError``.
    """
    if kind == "sls":
        if pole_order is None or unit is None:
            raise ValueError("sls check needs pole_order and unit")
        return _check_sls(datum, pole_order, unit)
    if kind == "reduced":
        if d is None:
            raise ValueError("reduced check needs d")
        return _check_reduced(datum, d)
    if kind == "wd":
        if d is None:
            raise ValueError("wd check needs d")
        return _check_wd(datum, d)
    raise ValueError(f"unknown gluing kind {kind!r}")


def _check_sls(datum: GluingDatum, pole_order: int, unit: UniPoly) -> GluingReport:
    reference = sls_gluing(pole_order, unit)
    if datum.alpha != reference.alpha:
        raise GluingError(f"alpha must be 1, got {datum.alpha}")
    if datum.beta != reference.beta:
        raise GluingError(
            f"beta must be 2*x^-{pole_order}*(unit), got {datum.beta}")
    if datum.epsilon != reference.epsilon:
        raise GluingError(
            f"action sign {datum.epsilon} inconsistent with pole order {pole_order}")
    # involution identity: beta(-x) = -epsilon * beta(x)
    if datum.beta.scale_x(-1) != datum.beta * (-datum.epsilon):
        raise GluingError("transition is not compatible with the mu_2-action")

    # surface identities in Q[x, y, z] against the relation x^l z = y^2 - s^2
    x = _MPoly.var(3, 0)
    y = _MPoly.var(3, 1)
    z = _MPoly.var(3, 2)
    s = _MPoly.from_unipoly(3, 0, unit)
    relation = x**pole_order * z - y * y + s * s
    # (x^l u+)(x^l u-) = (y - s)(y + s) equals x^l * (x^l z) modulo the relation
    prod_check = (y - s) * (y + s) - x**pole_order * z + relation
    if not prod_check.is_zero():
        raise GluingError("product identity u+ u- = x^-l z fails")
    diff_check = (y - s) - (y + s) + s * 2
    if not diff_check.is_zero():
        raise GluingError("difference identity u+ - u- = -2 x^-l s fails")
    return GluingReport("sls", (
        "transition matches 2*x^-l*s",
        "mu_2 involution sign consistent",
        "u+ * u- = x^-l * z (mod surface relation)",
        "u+ - u- = -2 * x^-l * s",
    ))


def _check_reduced(datum: GluingDatum, d: int) -> GluingReport:
    reference = reduced_gluing(d)
    if datum.alpha != reference.alpha or datum.beta != reference.beta:
        raise GluingError(
            f"transition must be u -> x^{2 - d} u + x^{1 - d}, "
            f"got alpha={datum.alpha}, beta={datum.beta}")
    alpha_inv, beta_inv = _affine_inverse(datum.alpha, datum.beta)
    comp_a = alpha_inv * datum.alpha
    comp_b = alpha_inv * datum.beta + beta_inv
    if comp_a != LaurentPoly({0: 1}) or not comp_b.is_zero():
        raise GluingError("transition composed with its inverse is not the identity")
    return GluingReport("reduced", (
        "transition matches x^(2-d) * u + x^(1-d)",
        "inverse composition is the identity",
    ))


def _check_wd(datum: GluingDatum, d: int) -> GluingReport:
    reference = wd_gluing(d)
    if datum.alpha != reference.alpha or datum.beta != reference.beta:
        raise GluingError(
            f"transition must be (w, u) -> (w^-1, w^{d} u - w^{d - 1}), "
            f"got alpha={datum.alpha}, beta={datum.beta}")
    # inverse transition (w', u') -> (w'^-1, alpha'(w') u' + beta'(w')):
    # alpha'(w') = 1/alpha(1/w'), beta'(w') = -beta(1/w') / alpha(1/w')
    alpha_inv, beta_inv = _affine_inverse(datum.alpha.invert_x(), datum.beta.invert_x())
    comp_a = alpha_inv.invert_x() * datum.alpha
    comp_b = alpha_inv.invert_x() * datum.beta + beta_inv.invert_x()
    if comp_a != LaurentPoly({0: 1}) or not comp_b.is_zero():
        raise GluingError("base-inverting transition does not invert to the identity")

    # normalization-image relation: x1^(d-1) x4 - x2 (x2+1)^(d-1) lies in the
    # ideal of the defining relations, exhibited by
    #   x1 * (x1^(d-2) x4 - (x2+1)^(d-2) x3) + (x2+1)^(d-2) * (x1 x3 - x2 (x2+1))
    x1 = _MPoly.var(4, 0)
    x2 = _MPoly.var(4, 1)
    x3 = _MPoly.var(4, 2)
    x4 = _MPoly.var(4, 3)
    one = _MPoly.const(4, 1)
    r1 = x1 * x3 - x2 * (x2 + one)
    r3 = x1 ** (d - 2) * x4 - (x2 + one) ** (d - 2) * x3
    target = x1 ** (d - 1) * x4 - x2 * (x2 + one) ** (d - 1)
    if not (target - (x1 * r3 + (x2 + one) ** (d - 2) * r1)).is_zero():
        raise GluingError("image-surface relation does not reduce to zero")
    return GluingReport("wd", (
        "transition matches (w^-1, w^d * u - w^(d-1))",
        "inverse composition is the identity",
        "image-surface relation reduces via the defining relations",
    ))


def _affine_inverse(alpha: LaurentPoly, beta: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Inverse of u -> alpha*u + beta when alpha is an invertible monomial."""
    items = alpha.items()
    if len(items) != 1:
        raise GluingError("alpha must be a monomial to invert the transition")
    (k, c), = items
    alpha_inv = LaurentPoly({-k: 1 / c})
    beta_inv = -(beta * alpha_inv)
    return alpha_inv, beta_inv


# -- minimal sparse multivariate polynomials (internal) -----------------------

class _MPoly:
    """Sparse exact polynomial in a fixed number of variables; just enough
    arithmetic to verify the gluing identities."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction]):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def const(cls, nvars: int, value) -> "_MPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def var(cls, nvars: int, idx: int) -> "_MPoly":
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def from_unipoly(cls, nvars: int, idx: int, p: UniPoly) -> "_MPoly":
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c != 0:
                exp = [0] * nvars
                exp[idx] = k
                terms[tuple(exp)] = c
        return cls(nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "_MPoly") -> "_MPoly":
        if isinstance(other, int):
            other = _MPoly.const(self.nvars, other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return _MPoly(self.nvars, merged)

    def __sub__(self, other: "_MPoly") -> "_MPoly":
        return self + (other * -1)

    def __mul__(self, other) -> "_MPoly":
        if isinstance(other, (int, Fraction)):
            return _MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return _MPoly(self.nvars, acc)

    def __pow__(self, n: int) -> "_MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = _MPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result
