"""Clusters, the exchange graph, exchangeability, and the piecewise-linear
weight map.

A cluster is a maximal set of pairwise compatible almost-positive roots:
real clusters have n elements and form a lattice basis, imaginary clusters
have n-1 elements, contain delta, and otherwise consist of finite-orbit
roots.  Exchange across a facet of a real cluster either produces the unique
neighbouring real cluster or certifies a wall of the imaginary cone, where
the would-be partner pairs with the removed root through imaginary clusters
only.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import almost_positive as ap
from . import compatibility as compat
from .coxeter import DELTA, TUBE, CoxeterContext
from .errors import NotACluster, NotInPhiC, RootNotInCluster
from .expansion import cluster_expansion, in_delta_cone_interior
from .linalg import canon, det, gcd_of_maximal_minors, in_simplicial_cone, vec

REAL = "real"
IMAGINARY = "imaginary"


def _deg(cc, a, b):
    return compat.degree(cc, a, b)


def is_cluster(cc: CoxeterContext, roots):
    """Classify a set of vectors as a real cluster, an imaginary cluster, or
    neither; returns (kind-or-None, reason)."""
    roots = sorted(vec(r) for r in roots)
    if len(set(roots)) != len(roots):
        return None, "repeated roots"
    classes = {}
    for r in roots:
        cls = cc.phi_c_class(r)
        if cls is None:
            return None, f"{r} is not almost positive"
        classes[r] = cls
    for a, b in combinations(roots, 2):
        if _deg(cc, a, b) != 0:
            return None, f"{a} and {b} have degree {_deg(cc, a, b)}"
    has_delta = any(cls == DELTA for cls in classes.values())
    if has_delta:
        if len(roots) != cc.n - 1:
            return None, f"imaginary cluster must have {cc.n - 1} roots"
        if any(cls not in (DELTA, TUBE) for cls in classes.values()):
            return None, "imaginary cluster may contain only finite-orbit roots"
        return IMAGINARY, ""
    if len(roots) == cc.n:
        return REAL, ""
    witness = _extension_witness(cc, roots)
    reason = "not maximal"
    if witness is not None:
        reason = f"not maximal: extendable by {witness}"
    return None, reason


def _extension_witness(cc, roots, m_bound: int = 4):
    pool = ap.enumerate_phi_c(cc, m_bound)
    for cand in pool:
        if cand in roots:
            continue
        if all(_deg(cc, a, cand) == 0 for a in roots):
            return cand
    return None


def require_real_cluster(cc, roots):
    kind, reason = is_cluster(cc, roots)
    if kind != REAL:
        raise NotACluster(reason or "not a real cluster")
    return tuple(sorted(vec(r) for r in roots))


class TubeWall:
    """Failed real exchange: the partner root pairs only through imaginary
    clusters.  `candidate` is that root; the joint arc support of it and the
    removed root covers a full component cycle."""

    def __init__(self, removed, candidate):
        self.removed = removed
        self.candidate = candidate

    def __repr__(self):
        return f"TubeWall(removed={self.removed}, candidate={self.candidate})"


def exchange(cc: CoxeterContext, cluster, alpha):
    """Exchange alpha out of a real cluster.

    Returns (beta, new_cluster) or a TubeWall certificate.  The partner is
    searched in enumerations of geometrically growing reach; the wall case
    is certified by the finite-orbit support criterion and cross-checked
    against the expansion of a probe point across the facet.
    """
    cluster = require_real_cluster(cc, cluster)
    alpha = vec(alpha)
    if alpha not in cluster:
        raise RootNotInCluster(str(alpha))
    facet = tuple(r for r in cluster if r != alpha)
    for m_bound in (4, 8, 16, 32):
        found = []
        for cand in ap.enumerate_phi_c(cc, m_bound):
            if cand == alpha or cand in facet:
                continue
            if cc.phi_c_class(cand) == DELTA:
                continue
            if _deg(cc, alpha, cand) != 1 or _deg(cc, cand, alpha) != 1:
                continue
            if all(_deg(cc, g, cand) == 0 for g in facet):
                found.append(cand)
        if found:
            assert len(found) == 1, f"facet admits several partners: {found}"
            beta = found[0]
            return beta, tuple(sorted(facet + (beta,)))
    wall = _tube_wall_candidate(cc, alpha, facet)
    if wall is not None and _probe_confirms_wall(cc, facet, alpha):
        return TubeWall(alpha, wall)
    raise AssertionError("exchange partner search exhausted")


def _tube_wall_candidate(cc, alpha, facet):
    if cc.phi_c_class(alpha) != TUBE:
        return None
    tube_facet = [g for g in facet if cc.phi_c_class(g) == TUBE]
    out = []
    for cand in cc.tube_roots():
        if cand == alpha:
            continue
        if _deg(cc, alpha, cand) != 1 or _deg(cc, cand, alpha) != 1:
            continue
        if not compat._joint_component_full(cc, alpha, cand):
            continue
        if any(_deg(cc, g, cand) != 0 for g in tube_facet):
            continue
        out.append(cand)
    if not out:
        return None
    cand = sorted(out)[0]
    total = vec(a + b for a, b in zip(alpha, cand))
    assert in_delta_cone_interior(cc, total)
    return cand


def _probe_confirms_wall(cc, facet, alpha):
    """Across a wall facet the expansion of a probe never completes the facet."""
    base = [0] * cc.n
    for g in facet:
        base = [a + b for a, b in zip(base, g)]
    t = Fraction(1, 2)
    for _ in range(10):
        probe = vec(b - t * a for b, a in zip(base, alpha))
        support = set(cluster_expansion(cc, probe))
        if set(facet) <= support:
            return False
        t /= 2
    return True


def enumerate_clusters(cc: CoxeterContext, depth: int, start=None):
    """Real clusters within `depth` exchanges of the start cluster (the
    negative simples unless given), plus all imaginary clusters.  Returns
    (real_set, imaginary_set)."""
    if start is None:
        start = tuple(sorted(tuple(-1 if j == i else 0 for j in range(cc.n))
                             for i in range(cc.n)))
    else:
        start = require_real_cluster(cc, start)
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for cluster in frontier:
            for alpha in cluster:
                result = exchange(cc, cluster, alpha)
                if isinstance(result, TubeWall):
                    continue
                _, new = result
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return seen, imaginary_clusters(cc)


def _component_facets(cc, comp):
    """Maximal pairwise-compatible sets of proper arcs of one component."""
    k = comp.rank
    arcs = []
    for start in range(k):
        for length in range(1, k):
            arcs.append(frozenset((start + t) % k for t in range(length)))
    arcs = sorted(set(arcs), key=sorted)

    def compatible(a, b):
        if a < b or b < a:
            return True
        if a & b:
            return False
        # spaced: no node of b adjacent to a
        for p in a:
            if (p - 1) % k in b or (p + 1) % k in b:
                return False
        return True

    facets = []

    def grow(chosen, rest):
        if len(chosen) == k - 1:
            facets.append(tuple(sorted(chosen, key=sorted)))
            return
        for idx, arc in enumerate(rest):
            if all(compatible(arc, c) for c in chosen):
                grow(chosen + [arc], rest[idx + 1:])

    grow([], arcs)
    out = set()
    for facet in facets:
        roots = []
        for arc in facet:
            total = [0] * cc.n
            for p in arc:
                total = [a + b for a, b in zip(total, comp.cycle[p])]
            roots.append(tuple(total))
        out.add(tuple(sorted(roots)))
    return sorted(out)


def imaginary_clusters(cc: CoxeterContext):
    """All imaginary clusters: delta plus one cyclohedron facet per component."""
    options = [_component_facets(cc, comp) for comp in cc.components]
    out = set()

    def build(idx, acc):
        if idx == len(options):
            out.add(tuple(sorted(acc + [cc.ctx.delta])))
            return
        for choice in options[idx]:
            build(idx + 1, acc + list(choice))

    build(0, [])
    return out


# ---------------------------------------------------------------------------
# exchangeability
# ---------------------------------------------------------------------------

def is_exchangeable(cc: CoxeterContext, alpha, beta) -> bool:
    alpha, beta = vec(alpha), vec(beta)
    if cc.phi_c_class(alpha) is None or cc.phi_c_class(beta) is None:
        raise NotInPhiC("arguments must be almost positive")
    if alpha == beta:
        return False
    if cc.phi_c_class(alpha) == DELTA or cc.phi_c_class(beta) == DELTA:
        return False
    return _deg(cc, alpha, beta) == 1 and _deg(cc, beta, alpha) == 1


def is_real_exchangeable(cc: CoxeterContext, alpha, beta) -> bool:
    if not is_exchangeable(cc, alpha, beta):
        return False
    total = vec(a + b for a, b in zip(vec(alpha), vec(beta)))
    return not in_delta_cone_interior(cc, total)


def delta_pair_test_available(cc: CoxeterContext) -> bool:
    """The single-root criterion for pair exchanges with delta is valid in
    every affine type except the one with [delta:α_aff] = 2."""
    return cc.ctx.delta[cc.ctx.aff] != 2


def single_root_delta_pair_test(cc: CoxeterContext, alpha) -> bool:
    """(alpha‖delta) = 1 = (delta‖alpha); only meaningful when
    delta_pair_test_available."""
    alpha = vec(alpha)
    d = cc.ctx.delta
    return _deg(cc, alpha, d) == 1 and _deg(cc, d, alpha) == 1


def is_pair_exchangeable_with_delta(cc: CoxeterContext, alpha, beta) -> bool:
    """Honest search: an imaginary cluster C and a real cluster C' with
    C - {delta} = C' - {alpha, beta}."""
    alpha, beta = vec(alpha), vec(beta)
    if alpha == beta:
        return False
    for cim in imaginary_clusters(cc):
        rest = tuple(r for r in cim if r != cc.ctx.delta)
        if alpha in rest or beta in rest:
            continue
        candidate = tuple(sorted(rest + (alpha, beta)))
        kind, _ = is_cluster(cc, candidate)
        if kind == REAL:
            return True
    return False


# ---------------------------------------------------------------------------
# the piecewise-linear weight map
# ---------------------------------------------------------------------------

def nu(cc: CoxeterContext, v, inverse_element: bool = False):
    """The piecewise-linear map into fundamental-weight coordinates.

    On the positive orthant it is -E_c; negative coordinates contribute
    their weight instead, with the positive truncation still feeding every
    row.  This is the unique extension of the values on roots that is
    linear on each cone of the fan (compatibility zeroes out the mixed
    terms there), and it is a piecewise-linear homeomorphism.  With
    `inverse_element`, the form of c^{-1} is used instead.
    """
    v = vec(v)
    e_mat = cc.E_inv_word if inverse_element else cc.E
    plus = tuple(x if x > 0 else 0 for x in v)
    out = []
    for i in range(cc.n):
        val = -sum(e * p for e, p in zip(e_mat[i], plus) if e)
        if v[i] < 0:
            val -= v[i]
        out.append(canon(val))
    return tuple(out)


def nu_inverse(cc: CoxeterContext, weight, inverse_element: bool = False):
    """Inverse of the weight map, solved orthant by orthant."""
    from .linalg import solve_general

    weight = vec(weight)
    n = cc.n
    e_mat = cc.E_inv_word if inverse_element else cc.E
    subsets = sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))
    for mask in subsets:
        neg = [i for i in range(n) if (mask >> i) & 1]
        pos = [i for i in range(n) if not (mask >> i) & 1]
        rows = [[e_mat[i][j] for j in pos] for i in pos]
        rhs = [-weight[i] for i in pos]
        sol = solve_general(rows, rhs)
        if sol is None:
            continue
        if any(x < 0 for x in sol):
            continue
        v = [0] * n
        for i, x in zip(pos, sol):
            v[i] = x
        for i in neg:
            v[i] = -(weight[i] + sum(e_mat[i][j] * v[j] for j in pos))
        if any(v[i] >= 0 for i in neg):
            continue
        v = vec(v)
        if nu(cc, v, inverse_element=inverse_element) == weight:
            return v
    raise AssertionError("weight map inversion failed")


# ---------------------------------------------------------------------------
# fan consistency
# ---------------------------------------------------------------------------

def cone_contains(cc, gens, v):
    return in_simplicial_cone([list(g) for g in gens], vec(v)) is not None


def _facet_normals_3d(gens):
    """Inward normals of a simplicial cone in dimension 3."""
    def cross(a, b):
        return (
            canon(a[1] * b[2] - a[2] * b[1]),
            canon(a[2] * b[0] - a[0] * b[2]),
            canon(a[0] * b[1] - a[1] * b[0]),
        )

    def dot(a, b):
        return canon(sum(x * y for x, y in zip(a, b)))

    out = []
    if len(gens) == 3:
        for i in range(3):
            others = [gens[j] for j in range(3) if j != i]
            nrm = cross(others[0], others[1])
            if dot(nrm, gens[i]) < 0:
                nrm = tuple(-x for x in nrm)
            out.append(nrm)
    elif len(gens) == 2:
        plane = cross(gens[0], gens[1])
        out.append(plane)            # equality constraint, handled by caller
    return out


def cones_intersect_in_face(cc: CoxeterContext, gens1, gens2) -> bool:
    """Exact mutual-face test for two cluster cones (ranks 2 and 3)."""
    assert cc.n in (2, 3), "exact face intersection implemented for ranks 2, 3"
    gens1 = [vec(g) for g in gens1]
    gens2 = [vec(g) for g in gens2]
    face1 = [g for g in gens1 if cone_contains(cc, gens2, g)]
    face2 = [g for g in gens2 if cone_contains(cc, gens1, g)]
    if sorted(face1) != sorted(face2):
        return False
    face = sorted(face1)
    if cc.n == 2:
        # planar cones: boundary rays are the generators themselves, so the
        # intersection is spanned by the common ones
        for g in gens1:
            for h in gens2:
                mid = vec(a + b for a, b in zip(g, h))
                if cone_contains(cc, gens1, mid) and cone_contains(cc, gens2, mid):
                    if not face or in_simplicial_cone([list(x) for x in face], mid) is None:
                        return False
        return True

    def cross(a, b):
        return (
            canon(a[1] * b[2] - a[2] * b[1]),
            canon(a[2] * b[0] - a[0] * b[2]),
            canon(a[0] * b[1] - a[1] * b[0]),
        )

    # candidate extreme rays of the intersection: common generators plus all
    # pairwise boundary-plane intersections lying in both cones
    planes1 = [cross(a, b) for a, b in combinations(gens1, 2)]
    planes2 = [cross(a, b) for a, b in combinations(gens2, 2)]
    rays = list(face)
    for p1 in planes1:
        for p2 in planes2:
            line = cross(p1, p2)
            if all(x == 0 for x in line):
                continue
            for cand in (line, tuple(-x for x in line)):
                if cone_contains(cc, gens1, cand) and cone_contains(cc, gens2, cand):
                    rays.append(vec(cand))
    for ray in rays:
        if not face:
            if any(x != 0 for x in ray):
                return False
        elif in_simplicial_cone([list(g) for g in face], ray) is None:
            return False
    return True


def fan_consistency(cc: CoxeterContext, clusters, samples=None):
    """Pairwise face-intersection checks plus a completeness probe.

    Returns a report dict; raises nothing (failures are collected).
    """
    clusters = [tuple(sorted(vec(r) for r in cl)) for cl in clusters]
    bad_pairs = []
    if cc.n == 3:
        for c1, c2 in combinations(clusters, 2):
            if not cones_intersect_in_face(cc, c1, c2):
                bad_pairs.append((c1, c2))
    probe_report = []
    for v in samples or []:
        terms = cluster_expansion(cc, v)
        support = tuple(sorted(terms))
        hit = any(set(support) <= set(cl) for cl in clusters)
        probe_report.append({"vector": v, "support": support,
                             "in_enumeration": hit})
    determinant_ok = all(
        abs(det([list(r) for r in cl])) == 1
        for cl in clusters
        if len(cl) == cc.n
    )
    return {
        "pairs_checked": len(clusters) * (len(clusters) - 1) // 2,
        "bad_pairs": bad_pairs,
        "probes": probe_report,
        "real_determinants_unimodular": determinant_ok,
    }


def real_cluster_determinant(cl) -> int:
    return int(det([list(r) for r in cl]))


def imaginary_cluster_spans_hyperplane_lattice(cc: CoxeterContext, cl) -> bool:
    """The n-1 roots of an imaginary cluster base the lattice of integer
    vectors in the hyperplane."""
    from .linalg import integer_kernel_basis, primitive_integer_vector

    rows = [list(r) for r in cl]
    fun = primitive_integer_vector(cc._phi_fun)
    basis = integer_kernel_basis(fun)
    target = gcd_of_maximal_minors(basis)
    ours = gcd_of_maximal_minors(rows)
    return ours == target and ours != 0
