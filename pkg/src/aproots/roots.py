"""Real-root enumeration, supports, coroots, and parabolic restriction.

Roots are plain coordinate tuples in the simple-root basis.  Enumeration is
graded by the delta-level |[β:α_aff]| / [delta:α_aff] and returned in
lexicographic order so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import AffineContext, CartanMatrix, Kind, classify, validate_cartan
from .errors import IndexOutOfRange, NotAffine
from .linalg import vec


@dataclass(frozen=True)
class Root:
    vec: tuple
    is_real: bool
    coroot: tuple   # simple-coroot coordinates (delta_vee coordinates for delta)


def simple_reflection(cm: CartanMatrix, i: int, v):
    """s_i(v) = v - K(α_i^vee, v)·α_i."""
    if not 0 <= i < cm.n:
        raise IndexOutOfRange(f"index {i + 1} out of range 1..{cm.n}")
    return cm.reflect(i, vec(v))


def support(v) -> frozenset:
    return frozenset(i for i, x in enumerate(v) if x != 0)


def has_full_support(v) -> bool:
    return all(x != 0 for x in v)


def roots_up_to_level(ctx, bound: int):
    """All roots β with |[β:α_aff]| ≤ bound·[delta:α_aff], plus ±k·delta.

    For a finite-type Cartan matrix, pass the matrix itself: the full finite
    root set is returned and the bound is ignored.
    """
    if isinstance(ctx, CartanMatrix):
        cls = classify(ctx)
        if cls.kind is not Kind.FINITE:
            raise NotAffine("expected a finite-type matrix or an AffineContext")
        pos = finite_positive_roots(ctx, range(ctx.n))
        out = sorted(pos | {tuple(-x for x in r) for r in pos})
        return out
    assert isinstance(ctx, AffineContext)
    pos = set(ctx.positive_real_roots(bound))
    # the simples are part of every bounded enumeration, whatever the bound
    for i in range(ctx.n):
        pos.add(tuple(1 if j == i else 0 for j in range(ctx.n)))
    full = set(pos)
    full.update(tuple(-x for x in r) for r in pos)
    for k in range(1, bound + 1):
        full.add(tuple(k * x for x in ctx.delta))
        full.add(tuple(-k * x for x in ctx.delta))
    return sorted(full)


def as_root(ctx: AffineContext, v) -> Root:
    v = vec(v)
    if ctx.is_real_root(v):
        return Root(vec=v, is_real=True, coroot=ctx.coroot_coords(v))
    assert ctx.is_imaginary_root(v), "not a root"
    i = next(j for j, x in enumerate(v) if x != 0)
    k = v[i] // ctx.delta[i]
    return Root(vec=v, is_real=False,
                coroot=tuple(k * x for x in ctx.delta_vee_coroot))


def finite_positive_roots(cm: CartanMatrix, active):
    """Positive roots supported on `active`, ambient coordinates.

    The restriction must be of finite type (every proper parabolic of an
    affine matrix qualifies).
    """
    active = sorted(active)
    n = cm.n
    seen = set()
    frontier = []
    for i in active:
        root = tuple(1 if j == i else 0 for j in range(n))
        seen.add(root)
        frontier.append(root)
    cap = 10 ** 5
    while frontier:
        nxt = []
        for root in frontier:
            for i in active:
                img = cm.reflect(i, root)
                if img in seen:
                    continue
                if all(x >= 0 for x in img):
                    seen.add(img)
                    nxt.append(img)
        if len(seen) > cap:
            raise AssertionError("active set does not span a finite-type parabolic")
        frontier = nxt
    return seen


def parabolic_restriction(cm: CartanMatrix, subset):
    """Sub-Cartan matrix on `subset` (0-based, kept in increasing order).

    Returns (sub_matrix, classification, index_map) where index_map[j] is the
    ambient index of the j-th node of the restriction.
    """
    keep = sorted(set(subset))
    raw = [[cm.a[i][j] for j in keep] for i in keep]
    sub = validate_cartan(raw) if keep else None
    cls = classify(sub) if keep else None
    return sub, cls, tuple(keep)
