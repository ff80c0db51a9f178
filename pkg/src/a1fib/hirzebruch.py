"""Divisor-class arithmetic on Hirzebruch surfaces.

The surface F_n carries the negative section C0 (C0^2 = -n) and the fiber
class F; a divisor class is an integer combination a*C0 + b*F.  This module
implements the intersection form, the canonical class, section counts of
line bundles, the enumeration of ample-section models of a fixed boundary
self-intersection, and the elementary-transformation moves between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class ModelError(ValueError):
    """An operation left the family of valid ample-section models."""


@dataclass(frozen=True)
class HClass:
    """Divisor class a*C0 + b*F on the Hirzebruch surface F_n."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("Hirzebruch index n must be >= 0")

    def __str__(self) -> str:
        return f"{self.a}*C0 + {self.b}*F on F_{self.n}"


def intersect(d1: HClass, d2: HClass) -> int:
    """Intersection number, from C0^2 = -n, C0.F = 1, F^2 = 0."""
    if d1.n != d2.n:
        raise ValueError(f"classes live on different surfaces F_{d1.n} and F_{d2.n}")
    return d1.a * d2.b + d2.a * d1.b - d1.n * d1.a * d2.a


def self_intersection(d: HClass) -> int:
    return intersect(d, d)


def canonical(n: int) -> HClass:
    """Canonical class of F_n: -2*C0 - (n+2)*F."""
    return HClass(n, -2, -(n + 2))


def h0(d: HClass) -> int:
    """dim H^0(F_n, O(a*C0 + b*F)) by pushing forward along the ruling.

    For a >= 0 the pushforward splits into line bundles O(b - i*n) on the
    base, i = 0..a; classes with a < 0 have no sections.
    """
    if d.a < 0:
        return 0
    return sum(max(0, d.b - i * d.n + 1) for i in range(d.a + 1))


def contact_system_dim(d: int, m: int) -> int:
    """Recorded projective dimension of the contact linear system.

    This is the system of divisors in |B + mF| meeting the boundary section B
    (B^2 = d) with full contact d + m at a fixed point.  The recorded value is
    m.  The section count of ``contact_system_dim_via_h0`` yields m + 1
    instead; both are exposed because the two conventions differ by whether
    divisors containing B are projected out, and downstream counts only ever
    use the recorded value.
    """
    if d < 2:
        raise ValueError("boundary self-intersection must be >= 2")
    if m < 0:
        raise ValueError("twist m must be >= 0")
    return m


def contact_system_dim_via_h0(d: int, m: int) -> int:
    """Contact-system dimension implied by the raw section count.

    From the restriction sequence, h0(B + mF) = (d + m + 1) + (m + 1) and the
    full-contact condition imposes d + m linear conditions, leaving a linear
    space of dimension m + 2, i.e. projective dimension m + 1.
    """
    if d < 2:
        raise ValueError("boundary self-intersection must be >= 2")
    if m < 0:
        raise ValueError("twist m must be >= 0")
    return m + 1


def h1_p1_dim(d: int) -> int:
    """dim H^1(P^1, O(-d)) = d - 1 for d >= 2."""
    if d < 2:
        raise ValueError("twist must satisfy d >= 2")
    return d - 1


def h1_p1_projective_dim(d: int) -> int:
    """Dimension of the projectivized H^1(P^1, O(-d)), i.e. d - 2."""
    return h1_p1_dim(d) - 1


@dataclass(frozen=True)
class AmpleModel:
    """A pair (F_n, B) with B an ample section of self-intersection d.

    For fixed d >= 2 the realizable surfaces are F_(d-2i), i = 1..floor(d/2),
    with B in |C0 + (d-i)F|; equivalently d >= n + 2 and d = n (mod 2).
    """

    n: int
    section_class: HClass
    d: int

    def __post_init__(self):
        if self.n < 0:
            raise ModelError("model index n must be >= 0")
        if (self.d - self.n) % 2 != 0:
            raise ModelError(f"parity broken: d = {self.d}, n = {self.n}")
        if self.d < self.n + 2:
            raise ModelError(f"section is not ample: d = {self.d} < n + 2 = {self.n + 2}")
        expected = HClass(self.n, 1, (self.d + self.n) // 2)
        if self.section_class != expected:
            raise ModelError(
                f"section class {self.section_class} is not {expected}")
        if self_intersection(self.section_class) != self.d:
            raise ModelError("section self-intersection does not equal d")

    @property
    def i(self) -> int:
        """Position in the enumeration: n = d - 2i."""
        return (self.d - self.n) // 2


def ample_model(d: int, n: int) -> AmpleModel:
    return AmpleModel(n, HClass(n, 1, (d + n) // 2), d)


def ample_models(d: int) -> list[AmpleModel]:
    """All models (F_n, B) carrying an ample section with B^2 = d."""
    if d < 2:
        raise ValueError("boundary self-intersection must be >= 2")
    return [ample_model(d, d - 2 * i) for i in range(1, d // 2 + 1)]


def elementary_transform(model: AmpleModel, on_negative_section: bool, *,
                         count: int = 1) -> AmpleModel:
    """Move between ample-section models by elementary transformations.

    One elementary transformation (blow up a point of a fiber, contract the
    old fiber) sends F_n to F_(n+1) when the center lies on the negative
    section and to F_(n-1) otherwise.  A single step therefore flips the
    parity of n and leaves the fixed-d model family: no section of
    self-intersection d exists on F_(n+-1).  Steps taken in pairs land on the
    adjacent model and keep B^2 = d.  The move is rejected when the endpoint
    is not a valid model for the same d or when n would become negative.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    n_new = model.n + count if on_negative_section else model.n - count
    if n_new < 0:
        raise ModelError(f"{count} steps would drive n negative (n = {model.n})")
    if (model.d - n_new) % 2 != 0:
        raise ModelError(
            f"parity broken: an odd number of steps leaves the model family "
            f"(d = {model.d}, n = {n_new})")
    try:
        return ample_model(model.d, n_new)
    except ModelError as exc:
        raise ModelError(f"no ample model at n = {n_new} for d = {model.d}: {exc}") from exc


def ruling_swap_trace(d: int, i: int) -> list[tuple[int, HClass]]:
    """Per-step class bookkeeping for the move from (F_(d-2i), B) to (F_0, ruling).

    Starting from the model with index i, the pencil of sections through a
    fixed point of C0 and a fixed point of the disjoint positive section is
    straightened by i elementary transformations centered on C0 followed by
    d - i centered off C0; each center lies on the tracked section, whose
    class transforms as (1, b) -> (1, b) on F_(n+1) and (1, b) -> (1, b-1)
    on F_(n-1).  The endpoint is the second ruling of F_0.  The returned
    trace lists (n, tracked class) from start to finish.
    """
    if d < 2:
        raise ValueError("boundary self-intersection must be >= 2")
    if not 1 <= i <= d // 2:
        raise ValueError(f"model index i = {i} outside 1..{d // 2}")
    n = d - 2 * i
    cls = HClass(n, 1, d - i)

    # sanity of the starting data: contact with the two fixed sections
    if intersect(cls, HClass(n, 1, 0)) != i:
        raise ModelError("starting class does not meet C0 with multiplicity i")
    if intersect(cls, HClass(n, 1, n)) != d - i:
        raise ModelError("starting class does not meet the positive section "
                         "with multiplicity d - i")

    trace = [(n, cls)]
    for _ in range(i):
        n += 1
        cls = HClass(n, 1, cls.b)
        trace.append((n, cls))
    for _ in range(d - i):
        n -= 1
        cls = HClass(n, 1, cls.b - 1)
        trace.append((n, cls))
    final_n, final_cls = trace[-1]
    if final_n != 0 or self_intersection(final_cls) != 0 or final_cls.b != 0:
        raise ModelError("trace did not end on the second ruling of F_0")
    return trace


def adjunction_defect(model: AmpleModel) -> int:
    """K.B + B^2, which equals -2 for every rational boundary section."""
    k = canonical(model.n)
    return intersect(k, model.section_class) + model.d
