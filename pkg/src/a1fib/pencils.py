"""Resolution scenarios for the special pencils, plus pointed-contact curves.

Each ``resolve_*`` function rebuilds one resolution diagram as an SNC dual
graph through an explicit sequence of blow-ups and returns the graph together
with the multiplicities of the singular fiber of the induced P^1-fibration.
The center sequences are hard-coded; the fiber solver re-derives every
multiplicity vector from the zero-pairing conditions, so a transcription
error in a script cannot go unnoticed.  Where the configuration to be blown
up contains tangential or triple intersections (which a transverse dual
graph cannot express), the script starts instead from the minimal SNC model
reached by contracting the target tree and replays those contractions in
reverse.

The second half of the module constructs the pointed-contact sections of
P^1 x P^1 (after Blanc-van Santen) and the induced torus action on the
pencil parameter space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import BihomForm, UniPoly, diagonal_restrict
from .sncgraph import (SncGraph, WeightedMember, blow_up, chain_type, contract,
                       fiber_multiplicities, fiber_self_intersection,
                       is_tree, make_graph)


class ScenarioError(ValueError):
    """A scenario script produced an inconsistent configuration."""


def _verify(g: SncGraph, fiber: Sequence[str], section: str,
            expected: dict[str, int]) -> dict[str, int]:
    """Check a scenario against the fiber solver and the tree invariants."""
    if not is_tree(g):
        raise ScenarioError("scenario graph is not a tree")
    solved = fiber_multiplicities(g, fiber, section)
    if solved != expected:
        raise ScenarioError(
            f"fiber solver disagrees with scenario bookkeeping: {solved} != {expected}")
    if fiber_self_intersection(g, solved) != 0:
        raise ScenarioError("fiber class has nonzero self-intersection")
    return solved


# -- the pencil of conics through a fixed tangency ---------------------------

def resolve_conic() -> tuple[SncGraph, dict[str, int]]:
    """Resolution tree of the pencil of conics with total contact at one point.

    The tree is the chain Q(0) - E4(-1) - E3(-2) - E2(-2) with E1(-2) and the
    tangent-line transform T(-1) both attached to E2.  The tangency of the
    conic and its tangent line cannot be drawn transversally, so the script
    builds the same tree from the minimal model of the resolved fibration:
    two transverse lines, blown up four times.
    """
    g = make_graph([("Q", 1, "boundary"), ("E3", 1, "exceptional")],
                   [("Q", "E3")])
    g, _ = blow_up(g, ("Q", "E3"), new_id="E4", role="section")
    g, _ = blow_up(g, "E3", new_id="E1")
    g, _ = blow_up(g, ("E3", "E1"), new_id="E2")
    g, _ = blow_up(g, "E2", new_id="T", role="fiber-component")
    expected = {"E1": 1, "E2": 2, "E3": 1, "T": 2}
    return g, _verify(g, ["E1", "E2", "E3", "T"], "E4", expected)


# -- special pencils on a Hirzebruch surface ---------------------------------

def _special_pencil_tower(d: int) -> SncGraph:
    """The d-fold blow-up tower of the full-contact pencil at a boundary point.

    Starting from the boundary section B (B^2 = d) and the fiber Fq through
    the contact point, every base point of the pencil lies on the proper
    transform of B: the first center is the crossing B.Fq, each later one the
    crossing of B with the newest exceptional curve.
    """
    g = make_graph([("B", d, "boundary"), ("Fq", 0, "fiber-component")],
                   [("B", "Fq")])
    g, _ = blow_up(g, ("B", "Fq"), new_id="E1")
    for k in range(2, d + 1):
        g, _ = blow_up(g, ("B", f"E{k - 1}"), new_id=f"E{k}")
    return g.set_role(f"E{d}", "section")


def resolve_reduced(d: int) -> tuple[SncGraph, dict[str, int]]:
    """Resolution tree of a pencil whose singular member is reduced.

    Chain B(0) - Ed(-1) - E(d-1)(-2) - ... - E1(-2) - Fq(-1) with the reduced
    section component C(-1) attached to E(d-1); all fiber multiplicities 1.
    C meets B with contact d-1 at the blown-up point, hence passes through
    the first d-1 centers and separates at E(d-1) with self-intersection
    (d-2) - (d-1) = -1.
    """
    if d < 2:
        raise ScenarioError("reduced scenario requires d >= 2")
    g = _special_pencil_tower(d)
    g = g.add_vertex("C", -1, "fiber-component").add_edge("C", f"E{d - 1}")
    fiber = ["C", "Fq"] + [f"E{k}" for k in range(1, d)]
    expected = {vid: 1 for vid in fiber}
    return g, _verify(g, fiber, f"E{d}", expected)


def resolve_mult2(d: int) -> tuple[SncGraph, dict[str, int]]:
    """Resolution tree of a pencil whose singular member is C + 2*Fq.

    Same tower as the reduced case, but the section component C lies in
    |B - 2F|: contact d-2 with B puts it through the first d-2 centers, so
    it ends with self-intersection (d-4) - (d-2) = -2 attached to E(d-2).
    The fiber multiplicity of Fq becomes 2.
    """
    if d < 3:
        raise ScenarioError("multiplicity-two scenario requires d >= 3")
    g = _special_pencil_tower(d)
    g = g.add_vertex("C", -2, "boundary").add_edge("C", f"E{d - 2}")
    fiber = ["C", "Fq"] + [f"E{k}" for k in range(1, d)]
    expected = {f"E{k}": 2 for k in range(1, d - 1)}
    expected.update({f"E{d - 1}": 1, "C": 1, "Fq": 2})
    return g, _verify(g, fiber, f"E{d}", expected)


def resolve_complete(d: int, m: int) -> tuple[SncGraph, dict[str, int]]:
    """Resolution tree of the complete-type pencil spanned by a pointed-contact
    section and the reducible member B + m*Fq.

    The d + 2m blow-ups all follow the moving member: the first d + m centers
    lie on the proper transform of B, the last m on the newest exceptional
    curve alone.  The final exceptional curve is a section of the resolved
    fibration; the moving member closes up as a disjoint 0-curve ``Bm``.

    Fiber multiplicities are computed twice: by pullback of the reducible
    member minus the base locus of the pencil during the blow-ups, and by the
    linear solver; the two must agree.
    """
    if d < 2 or m < 1:
        raise ScenarioError("complete-type scenario requires d >= 2 and m >= 1")
    g = make_graph([("B", d, "boundary"), ("Fq", 0, "fiber-component")],
                   [("B", "Fq")])
    # pullback of the reducible member B + m*Fq, corrected by one base point
    # of the moving pencil at every center
    member: WeightedMember = {"B": 1, "Fq": m}

    def step(g, center, new_id):
        nonlocal member
        g, (member,) = blow_up(g, center, [member], new_id=new_id)
        member[new_id] -= 1
        if member[new_id] == 0:
            del member[new_id]
        return g

    g = step(g, ("B", "Fq"), "E1")
    for k in range(2, d + m + 1):
        g = step(g, ("B", f"E{k - 1}"), f"E{k}")
    for k in range(d + m + 1, d + 2 * m + 1):
        g = step(g, f"E{k - 1}", f"E{k}")
    g = g.set_role(f"E{d + 2 * m}", "section")
    g = g.add_vertex("Bm", 0, "fiber-component").add_edge("Bm", f"E{d + 2 * m}")

    fiber = ["B", "Fq"] + [f"E{k}" for k in range(1, d + 2 * m)]
    expected = {"B": 1, "Fq": m}
    expected.update({f"E{k}": m for k in range(1, d + m + 1)})
    expected.update({f"E{k}": d + 2 * m - k for k in range(d + m + 1, d + 2 * m)})
    if member != expected:
        raise ScenarioError(
            f"pullback bookkeeping disagrees with the closed form: {member}")
    return g, _verify(g, fiber, f"E{d + 2 * m}", expected)


def resolve_sls(ell: int) -> tuple[SncGraph, dict[str, int]]:
    """Relatively minimal completion tree of the multiplicity-two surfaces.

    The tree is Finf(0) - H(-1) - G0(-2) - G2(-2) - ... - G(l+1)(-2) - Fbar(-1)
    with G1(-2) attached to G2; the double fiber is G0 + G1 + 2*(G2 + ... +
    G(l+1)) + 2*Fbar.  The base case l = 1 is the conic tree relabeled; each
    induction step blows up an interior point of the current Fbar, which
    becomes the next G component.
    """
    if ell < 1:
        raise ScenarioError("completion scenario requires l >= 1")
    g = make_graph([("Finf", 1, "boundary"), ("G0", 1, "exceptional")],
                   [("Finf", "G0")])
    g, _ = blow_up(g, ("Finf", "G0"), new_id="H", role="section")
    g, _ = blow_up(g, "G0", new_id="G1")
    g, _ = blow_up(g, ("G0", "G1"), new_id="G2")
    g, _ = blow_up(g, "G2", new_id="Fbar", role="fiber-component")
    for k in range(2, ell + 1):
        g, _ = blow_up(g, "Fbar", new_id="Fnew", role="fiber-component")
        g = g.rename_vertex("Fbar", f"G{k + 1}").set_role(f"G{k + 1}", "exceptional")
        g = g.rename_vertex("Fnew", "Fbar")
    fiber = ["Fbar"] + [f"G{k}" for k in range(ell + 2)]
    expected = {"G0": 1, "G1": 1, "Fbar": 2}
    expected.update({f"G{k}": 2 for k in range(2, ell + 2)})
    return g, _verify(g, fiber, "H", expected)


def replay_reduced_contraction(g: SncGraph, d: int) -> SncGraph:
    """Contract the reduced-scenario tree back to its minimal model.

    Contracting Fq, E1, ..., E(d-2), C in that order collapses the singular
    fiber to a smooth one; what remains is the chain B(0) - Ed(-1) - E(d-1)(0)
    whose boundary part B - Ed has type [0, -1].
    """
    for vid in ["Fq"] + [f"E{k}" for k in range(1, d - 1)] + ["C"]:
        g = contract(g, vid)
    final = chain_type(g, "B")
    if final != [0, -1, 0]:
        raise ScenarioError(f"contraction replay ended on chain {final}")
    return g


# -- pointed-contact sections of P^1 x P^1 -----------------------------------

def bvs_curve(m: int, p: UniPoly) -> BihomForm:
    """Section of pr1 on P^1 x P^1 with contact m + 2 with the diagonal.

    For a monic polynomial p of degree m with homogenization P(u0, u1), the
    curve is  u0*P*v1 - (u0^(m+1) + u1*P)*v0,  a form of bidegree (m+1, 1).
    """
    if m < 1:
        raise ValueError("contact twist m must be >= 1")
    if p.degree != m:
        raise ValueError(f"polynomial degree {p.degree} != m = {m}")
    if p.leading() != 1:
        raise ValueError("polynomial must be monic")
    coeffs: dict[tuple[int, int], Fraction] = {}
    # P(u0, u1) = sum p_j u1^j u0^(m-j); keys are (u1-power, v1-power)
    for j, c in enumerate(p.coeffs):
        if c == 0:
            continue
        # u0 * P * v1 : u1-power j, total u-degree m+1
        coeffs[(j, 1)] = coeffs.get((j, 1), Fraction(0)) + c
        # -u1 * P * v0 : u1-power j+1
        coeffs[(j + 1, 0)] = coeffs.get((j + 1, 0), Fraction(0)) - c
    # -u0^(m+1) * v0
    coeffs[(0, 0)] = coeffs.get((0, 0), Fraction(0)) - 1
    return BihomForm((m + 1, 1), coeffs)


def bvs_contact_order(m: int, p: UniPoly) -> int:
    """Vanishing order at [0:1] of the diagonal restriction of the section.

    The restriction collapses to a single monomial -u0^(m+2); anything else
    signals a construction error.
    """
    restricted = diagonal_restrict(bvs_curve(m, p))
    support = [k for k, c in enumerate(restricted.coeffs) if c != 0]
    if len(support) != 1:
        raise ScenarioError(
            f"diagonal restriction is not a pure power: {restricted}")
    order = support[0]
    if restricted[order] != -1:
        raise ScenarioError(
            f"diagonal restriction has unexpected coefficient {restricted[order]}")
    return order


# -- torus action on the pencil parameters -----------------------------------

def _pencil_form(e: int, m: int, coeffs: Sequence[Fraction]) -> BihomForm:
    """Normalized member of the contact pencil on F_0 with boundary of
    bidegree (e, 1) type: u1^e*A(u)*v0 + (u1^(e+m) - A(u)*u0^e)*v1 where
    A(u) = sum(a_j u0^j u1^(m-j)), a_0 = 0 fixed by the pencil normalization.
    """
    form: dict[tuple[int, int], Fraction] = {(e + m, 1): Fraction(1)}
    for j, a in enumerate(coeffs, start=1):
        if a == 0:
            continue
        # u1^e * a_j u0^j u1^(m-j) * v0: u1-power e + m - j
        form[(e + m - j, 0)] = a
        # -a_j u0^(j+e) u1^(m-j) * v1: u1-power m - j
        form[(m - j, 1)] = -a
    return BihomForm((e + m, 1), form)


def torus_orbit_map(e: int, m: int, coeffs: Sequence, lam) -> tuple[Fraction, ...]:
    """Pull the pencil parameters back along the torus action.

    The one-parameter group lam.([u0:u1], [v0:v1]) = ([lam*u0:u1],
    [v0:lam^-e*v1]) fixes the boundary section and the distinguished fiber,
    hence acts on the m-dimensional space of contact pencils.  The action is
    computed on the curve equation itself and the new parameter point is read
    back off the renormalized form; the induced map is a_j -> lam^(e+j)*a_j.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("torus parameter must be nonzero")
    if e < 1 or m < 1:
        raise ValueError("requires e >= 1 and m >= 1")
    a = [Fraction(c) for c in coeffs]
    if len(a) != m:
        raise ValueError(f"expected {m} pencil coordinates, got {len(a)}")
    if all(c == 0 for c in a):
        raise ValueError("degenerate parameter: every member of the pencil is reducible")

    pulled = _pencil_form(e, m, a).scale_coords(u0=lam, v1=lam**(-e))
    marker = pulled.coeff(e + m, 1)
    if marker == 0:
        raise ScenarioError("pullback lost the pencil normalization")
    pulled = pulled / marker

    new = [pulled.coeff(e + m - j, 0) for j in range(1, m + 1)]
    if pulled != _pencil_form(e, m, new):
        raise ScenarioError("pullback left the pencil parameter family")
    return tuple(new)


def same_torus_orbit(e: int, m: int, a: Sequence, b: Sequence) -> bool:
    """Decide whether two pencil parameter points lie on one torus orbit.

    Solving lam^(e+j)*a_j = b_j over the algebraic closure reduces to the
    usual power-consistency test on the nonzero coordinate ratios.
    """
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    if len(a) != m or len(b) != m:
        raise ValueError("parameter points must have length m")
    if [c == 0 for c in a] != [c == 0 for c in b]:
        return False
    pairs = [(e + j, b[j - 1] / a[j - 1])
             for j in range(1, m + 1) if a[j - 1] != 0]
    if not pairs:
        raise ValueError("degenerate parameter points")
    from .classifier import power_consistency
    ok, _, _ = power_consistency(pairs)
    return ok
