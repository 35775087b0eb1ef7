"""The compatibility degree and its computation paths.

For roots α, β in the almost-positive set the degree is

    max(arrow_to(α, β), arrow_from(α, β))

except when both roots have finite tau-orbits and their joint arc support
covers a whole component cycle; in that exceptional case it is the adjacency
count of the two arcs.  The two "arrow" sums are coordinate formulas over
the coroot coordinates of α and the root coordinates of β; on positive
roots they equal -E_c(α^vee, β) and -E_{c^{-1}}(α^vee, β).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import DELTA, NEG_SIMPLE, TUBE, CoxeterContext
from .errors import DeltaHasNoTubeSupport, NotDistinct, NotInPhiC, NotInTube
from .linalg import canon, vec


@dataclass(frozen=True)
class TubeSupport:
    component: int
    arc: frozenset       # positions within the component cycle

    def is_component_full(self, cc: CoxeterContext) -> bool:
        return len(self.arc) == cc.components[self.component].rank


@dataclass(frozen=True)
class CompatibilityValue:
    degree: object
    branch: str                      # "coordinate-max" or "tube-adjacency"
    arrow_to: object | None = None
    arrow_from: object | None = None


def coroot_coordinates(cc: CoxeterContext, v):
    """Simple-coroot coordinates of v^vee for any member of the set."""
    cls = cc.phi_c_class(v)
    if cls is None:
        raise NotInPhiC(str(v))
    if cls == NEG_SIMPLE:
        return tuple(-x for x in cc.ctx.coroot_coords(tuple(-y for y in v)))
    if cls == DELTA:
        return cc.ctx.delta_vee_coroot
    return cc.ctx.coroot_coords(v)


def tube_support(cc: CoxeterContext, v) -> TubeSupport:
    """Arc support of a real finite-orbit root over its component's cycle."""
    v = vec(v)
    if v == cc.ctx.delta or cc.ctx.is_imaginary_root(v):
        raise DeltaHasNoTubeSupport("imaginary roots have no well-defined arc support")
    for ci, comp in enumerate(cc.components):
        coeffs = _component_coefficients(cc, comp, v)
        if coeffs is not None:
            arc = frozenset(p for p, x in enumerate(coeffs) if x != 0)
            return TubeSupport(component=ci, arc=arc)
    raise NotInTube(str(v))


def _component_coefficients(cc: CoxeterContext, comp, v):
    from .linalg import solve_general

    rows = [[comp.cycle[j][i] for j in range(comp.rank)] for i in range(cc.n)]
    coeffs = solve_general(rows, list(v))
    if coeffs is None:
        return None
    rec = [0] * cc.n
    for x, root in zip(coeffs, comp.cycle):
        for i, r in enumerate(root):
            rec[i] += x * r
    if tuple(canon(x) for x in rec) != v:
        return None
    return coeffs


def _arc_positions(cc: CoxeterContext, v):
    sup = tube_support(cc, v)
    return sup.component, sup.arc


def adjacency_count(cc: CoxeterContext, alpha, beta) -> int:
    """Number of cycle nodes adjacent to the arc of α and inside the arc of β."""
    ca, arc_a = _arc_positions(cc, vec(alpha))
    cb, arc_b = _arc_positions(cc, vec(beta))
    if ca != cb:
        return 0
    k = cc.components[ca].rank
    neighbours = set()
    for p in arc_a:
        for q in ((p - 1) % k, (p + 1) % k):
            if q not in arc_a:
                neighbours.add(q)
    return len(neighbours & arc_b)


def compat_circ(cc: CoxeterContext, alpha, beta):
    """Support-combinatorial expression of the degree on finite-orbit roots."""
    alpha, beta = vec(alpha), vec(beta)
    if alpha == beta:
        return -1
    ca, arc_a = _arc_positions(cc, alpha)
    cb, arc_b = _arc_positions(cc, beta)
    if ca == cb and (arc_a < arc_b or arc_b < arc_a):
        return 0
    return adjacency_count(cc, alpha, beta)


def compat_arrows(cc: CoxeterContext, alpha, beta):
    """(arrow_to, arrow_from): the two coordinate sums.

    The triangular parts follow the positions of the letters in the word
    for c, not the ambient numbering.
    """
    alpha, beta = vec(alpha), vec(beta)
    cv = coroot_coordinates(cc, alpha)
    if cc.phi_c_class(beta) is None:
        raise NotInPhiC(str(beta))
    a = cc.cm.a
    n = cc.n
    pos = cc.pos
    base = sum(x * y for x, y in zip(cv, beta))
    cv_pos = [x if x > 0 else 0 for x in cv]
    beta_pos = [x if x > 0 else 0 for x in beta]
    lower = 0
    upper = 0
    for i in range(n):
        ci = cv_pos[i]
        if not ci:
            continue
        row = a[i]
        pi = pos[i]
        for j in range(n):
            if j == i or not row[j] or not beta_pos[j]:
                continue
            if pi > pos[j]:
                lower += row[j] * ci * beta_pos[j]
            else:
                upper += row[j] * ci * beta_pos[j]
    return canon(-base - lower), canon(-base - upper)


def _joint_component_full(cc: CoxeterContext, alpha, beta) -> bool:
    ca, arc_a = _arc_positions(cc, alpha)
    cb, arc_b = _arc_positions(cc, beta)
    if ca != cb:
        return False
    return len(arc_a | arc_b) == cc.components[ca].rank


def compatibility_degree(cc: CoxeterContext, alpha, beta) -> CompatibilityValue:
    alpha, beta = vec(alpha), vec(beta)
    ca = cc.phi_c_class(alpha)
    cb = cc.phi_c_class(beta)
    if ca is None:
        raise NotInPhiC(str(alpha))
    if cb is None:
        raise NotInPhiC(str(beta))
    if ca == TUBE and cb == TUBE and _joint_component_full(cc, alpha, beta):
        return CompatibilityValue(
            degree=adjacency_count(cc, alpha, beta), branch="tube-adjacency"
        )
    to, frm = compat_arrows(cc, alpha, beta)
    return CompatibilityValue(
        degree=max(to, frm), branch="coordinate-max", arrow_to=to, arrow_from=frm
    )


def degree(cc: CoxeterContext, alpha, beta):
    """Bare degree value; memoized on the context."""
    alpha, beta = vec(alpha), vec(beta)
    cache = getattr(cc, "_degree_cache", None)
    if cache is None:
        cache = cc._degree_cache = {}
    key = (alpha, beta)
    hit = cache.get(key)
    if hit is None:
        hit = compatibility_degree(cc, alpha, beta).degree
        cache[key] = hit
    return hit


def is_compatible(cc: CoxeterContext, alpha, beta) -> bool:
    alpha, beta = vec(alpha), vec(beta)
    if alpha == beta:
        raise NotDistinct(str(alpha))
    return degree(cc, alpha, beta) == 0
