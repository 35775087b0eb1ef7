"""Cartan matrices, symmetrizers, classification, and the affine type catalog.

A Cartan matrix A is symmetrizable: there are positive rationals d_i with
d_i·a_ij = d_j·a_ji.  The symmetric form K(α_i, α_j) = d_i·a_ij is encoded
as a gram matrix; K(α_i^vee, α_j) = a_ij holds exactly by construction.

Classification is exact: finite iff K is positive definite; affine iff K is
positive semidefinite with one-dimensional kernel and every proper principal
submatrix positive definite.  For affine matrices we compute the primitive
positive imaginary root delta, a distinguished index `aff`, the root
theta = delta - [delta:α_aff]·α_aff of the finite part, and the coroot-side
imaginary root delta_vee.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    BadDiagonal,
    CartanError,
    NotAffine,
    NotSymmetrizable,
    PositiveOffDiagonal,
    RankOutOfRange,
    UnknownLabel,
)
from . import linalg
from .linalg import canon, kernel_basis, mat, primitive_integer_vector, vec


@dataclass(frozen=True)
class CartanMatrix:
    n: int
    a: tuple            # integer entries, row tuples
    d: tuple            # symmetrizers, positive rationals with min = 1
    gram: tuple         # K(α_i, α_j) = d_i·a_ij

    def row(self, i):
        return self.a[i]

    def k(self, v, w):
        """K(v, w) for vectors in simple-root coordinates."""
        return canon(sum(vi * x for vi, x in zip(v, linalg.mat_vec(self.gram, w))))

    def pairing(self, i, v):
        """K(α_i^vee, v) = Σ_j a_ij v_j."""
        return canon(sum(x * y for x, y in zip(self.a[i], v)))

    def reflect(self, i, v):
        """Simple reflection s_i(v) = v - K(α_i^vee, v)·α_i."""
        t = self.pairing(i, v)
        if t == 0:
            return tuple(v)
        out = list(v)
        out[i] = canon(out[i] - t)
        return tuple(out)

    def reflection_matrix(self, i):
        rows = []
        for r in range(self.n):
            row = [1 if r == c else 0 for c in range(self.n)]
            if r == i:
                row = [row[c] - self.a[i][c] for c in range(self.n)]
            rows.append(tuple(row))
        return tuple(rows)


def validate_cartan(raw) -> CartanMatrix:
    """Validate an integer matrix as a symmetrizable Cartan matrix.

    The symmetrizers d_i are determined per connected component of the
    Dynkin graph by propagation from the smallest index, then rescaled so
    the minimum of each component is 1.
    """
    n = len(raw)
    if n == 0 or any(len(row) != n for row in raw):
        raise CartanError("matrix must be square and nonempty")
    a = tuple(tuple(int(x) for x in row) for row in raw)
    for i in range(n):
        if a[i][i] != 2:
            raise BadDiagonal(f"a[{i + 1}][{i + 1}] = {a[i][i]}, expected 2")
        for j in range(n):
            if i != j and a[i][j] > 0:
                raise PositiveOffDiagonal(f"a[{i + 1}][{j + 1}] = {a[i][j]} > 0")
    for i in range(n):
        for j in range(i + 1, n):
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotSymmetrizable(
                    f"a[{i + 1}][{j + 1}] = {a[i][j]} but a[{j + 1}][{i + 1}] = {a[j][i]}:"
                    " no positive symmetrizer exists"
                )
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        comp = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if a[i][j] == 0 or i == j:
                    continue
                val = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = val
                    queue.append(j)
                    comp.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable(
                        f"inconsistent symmetrizer at a[{i + 1}][{j + 1}]"
                    )
        low = min(d[j] for j in comp)
        for j in comp:
            d[j] = canon(d[j] / low)
    gram = mat([[canon(d[i] * a[i][j]) for j in range(n)] for i in range(n)])
    for i in range(n):
        for j in range(n):
            assert gram[i][j] == gram[j][i]
    return CartanMatrix(n=n, a=a, d=vec(d), gram=gram)


def dual(cm: CartanMatrix) -> CartanMatrix:
    """The dual Cartan matrix (transpose)."""
    return validate_cartan(list(zip(*cm.a)))


class Kind(Enum):
    FINITE = "finite"
    AFFINE = "affine"
    OTHER = "other"


@dataclass(frozen=True)
class TypeClassification:
    kind: Kind
    delta: tuple | None = None          # primitive positive kernel vector
    aff: int | None = None              # 0-based distinguished index
    theta: tuple | None = None          # delta - [delta:α_aff]·α_aff
    delta_vee: tuple | None = None      # delta^vee in simple-root coordinates
    delta_vee_coroot: tuple | None = None  # its simple-coroot coordinates


def _positive_definite(gram) -> bool:
    n = len(gram)
    for k in range(1, n + 1):
        minor = tuple(tuple(gram[i][j] for j in range(k)) for i in range(k))
        if linalg.det(minor) <= 0:
            return False
    return True


def _principal_submatrix(m, keep):
    return tuple(tuple(m[i][j] for j in keep) for i in keep)


def _finite_positive_roots(cm: CartanMatrix, active):
    """All positive roots supported on `active`, in ambient coordinates.

    Only valid when the restriction to `active` is of finite type; a hard
    cap guards against misuse.
    """
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
                        raise AssertionError("parabolic is not of finite type")
        frontier = nxt
    return seen


def valid_aff_indices(cm: CartanMatrix, delta) -> list:
    """Indices i such that delta - [delta:α_i]·α_i is a positive root of the
    parabolic obtained by deleting i."""
    out = []
    n = cm.n
    for i in range(n):
        active = [j for j in range(n) if j != i]
        theta = list(delta)
        theta[i] = 0
        theta = tuple(theta)
        if linalg.is_zero(theta):
            continue
        if theta in _finite_positive_roots(cm, active):
            out.append(i)
    return out


def classify(cm: CartanMatrix, aff: int | None = None) -> TypeClassification:
    """Exact finite/affine/other classification.

    For affine input, `aff` may force the distinguished index (0-based);
    otherwise the smallest valid index with minimal [delta:α_i] is chosen.
    """
    if _positive_definite(cm.gram):
        return TypeClassification(kind=Kind.FINITE)
    kernel = kernel_basis([list(r) for r in cm.a])
    if len(kernel) != 1:
        return TypeClassification(kind=Kind.OTHER)
    delta = primitive_integer_vector(kernel[0])
    if any(x <= 0 for x in delta):
        if all(x <= 0 for x in delta) and any(x < 0 for x in delta):
            delta = tuple(-x for x in delta)
        else:
            return TypeClassification(kind=Kind.OTHER)
    n = cm.n
    for i in range(n):
        keep = [j for j in range(n) if j != i]
        if keep and not _positive_definite(_principal_submatrix(cm.gram, keep)):
            return TypeClassification(kind=Kind.OTHER)
    candidates = valid_aff_indices(cm, delta)
    assert candidates, "affine matrix must admit a distinguished index"
    if aff is None:
        best = min(delta[i] for i in candidates)
        aff = min(i for i in candidates if delta[i] == best)
    elif aff not in candidates:
        raise NotAffine(f"index {aff + 1} cannot serve as the affine node")
    theta = list(delta)
    theta[aff] = 0
    theta = tuple(theta)

    # coroot-side imaginary root: primitive kernel vector of the transpose,
    # read in simple-coroot coordinates
    dvee_coroot = primitive_integer_vector(
        kernel_basis([list(r) for r in zip(*cm.a)])[0]
    )
    if any(x < 0 for x in dvee_coroot):
        dvee_coroot = tuple(-x for x in dvee_coroot)
    delta_vee = vec(Fraction(m) / Fraction(di) for m, di in zip(dvee_coroot, cm.d))
    # cross-check against the closed form: factor 2/K(α_aff, α_aff) in
    # general, halved exactly when [delta:α_aff] = 2
    kaff = cm.gram[aff][aff]
    factor = Fraction(2, 1) / Fraction(kaff)
    if delta[aff] == 2:
        factor = factor / 2
    assert delta_vee == vec(factor * x for x in delta)
    return TypeClassification(
        kind=Kind.AFFINE,
        delta=delta,
        aff=aff,
        theta=theta,
        delta_vee=delta_vee,
        delta_vee_coroot=dvee_coroot,
    )


# ---------------------------------------------------------------------------
# catalog of affine types
# ---------------------------------------------------------------------------

_MAX_RANK = 12


def _edges_to_matrix(n, edges):
    """Build a Cartan matrix from {(i, j): (a_ij, a_ji)} with 0-based i < j."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), (aij, aji) in edges.items():
        a[i][j] = aij
        a[j][i] = aji
    return a


def _cycle_edges(order):
    """Simply-laced edges along a cyclic node order."""
    edges = {}
    k = len(order)
    for t in range(k):
        i, j = order[t], order[(t + 1) % k]
        edges[(min(i, j), max(i, j))] = (-1, -1)
    return edges


def _path(lo, hi):
    """Simply-laced edges lo-(lo+1)-...-hi, 0-based inclusive."""
    return {(i, i + 1): (-1, -1) for i in range(lo, hi)}


def _untwisted_edges(family: str, n: int, k: int | None):
    if family == "A":
        if n == 2:
            return {(0, 1): (-2, -2)}
        order = list(range(k)) + [n - 1] + list(range(n - 2, k - 1, -1))
        return _cycle_edges(order)
    if family == "B":
        edges = {(0, 1): (-2, -1)}
        edges.update(_path(1, n - 3))
        edges[(n - 3, n - 2)] = (-1, -1)
        edges[(n - 3, n - 1)] = (-1, -1)
        return edges
    if family == "C":
        edges = {(0, 1): (-1, -2)}
        edges.update(_path(1, n - 2))
        edges[(n - 2, n - 1)] = (-2, -1)
        return edges
    if family == "D":
        edges = {(0, 2): (-1, -1), (1, 2): (-1, -1)}
        edges.update(_path(2, n - 3))
        edges[(n - 3, n - 2)] = (-1, -1)
        edges[(n - 3, n - 1)] = (-1, -1)
        return edges
    if family == "E":
        if n == 7:
            pairs = [(2, 3), (3, 4), (4, 5), (5, 6), (1, 4), (0, 1)]
        elif n == 8:
            pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 4)]
        else:
            pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (0, 3)]
        return {(min(i, j), max(i, j)): (-1, -1) for i, j in pairs}
    if family == "F":
        return {(0, 1): (-1, -1), (1, 2): (-2, -1), (2, 3): (-1, -1), (3, 4): (-1, -1)}
    if family == "G":
        return {(0, 1): (-3, -1), (1, 2): (-1, -1)}
    raise AssertionError(family)


def catalog_labels(max_rank: int = 8):
    """All supported catalog labels up to the given rank, in a stable order."""
    labels = []
    for n in range(2, max_rank + 1):
        if n == 2:
            labels.append("A1(1)")
        else:
            for k in range(1, n - 1 + 1):
                labels.append(f"A{n - 1}(1):k={k}")
        if n >= 4:
            labels.append(f"B{n - 1}(1)")
        if n >= 3:
            labels.append(f"C{n - 1}(1)")
        if n >= 5:
            labels.append(f"D{n - 1}(1)")
        if n == 7:
            labels.append("E6(1)")
        if n == 8:
            labels.append("E7(1)")
        if n == 9 and max_rank >= 9:
            labels.append("E8(1)")
        if n == 5:
            labels.append("F4(1)")
        if n == 3:
            labels.append("G2(1)")
        # twisted families
        labels.append(f"A{2 * (n - 1)}(2)")
        if n >= 4:
            labels.append(f"A{2 * n - 3}(2)")
        if n >= 3:
            labels.append(f"D{n}(2)")
        if n == 5:
            labels.append("E6(2)")
        if n == 3:
            labels.append("D4(3)")
    return labels


def _parse_label(label: str):
    text = label.strip().replace(" ", "")
    k = None
    if ":" in text:
        text, kpart = text.split(":", 1)
        if not kpart.startswith("k="):
            raise UnknownLabel(label)
        k = int(kpart[2:])
    if "(" not in text or not text.endswith(")"):
        raise UnknownLabel(label)
    base, twist = text[:-1].split("(", 1)
    family, sub = base[0], base[1:]
    if not sub.isdigit() or twist not in {"1", "2", "3"}:
        raise UnknownLabel(label)
    return family, int(sub), int(twist), k


def catalog(label: str):
    """Resolve a type label to (CartanMatrix, aff index, canonical word).

    The canonical Coxeter element is always s_1···s_n in the returned node
    order, and the distinguished affine node is the last one.
    """
    family, sub, twist, k = _parse_label(label)
    if twist == 1:
        if family == "A":
            n = sub + 1
            if n == 2:
                if k is not None:
                    raise UnknownLabel(label)
            else:
                if n < 3:
                    raise RankOutOfRange(label)
                if k is None:
                    raise UnknownLabel(f"{label}: orientation parameter k=1..{n - 1} required")
                if not 1 <= k <= n - 1:
                    raise UnknownLabel(f"{label}: k ranges over 1..{n - 1}")
        elif family == "B":
            n = sub + 1
            if n < 4:
                raise RankOutOfRange(label)
        elif family == "C":
            n = sub + 1
            if n < 3:
                raise RankOutOfRange(label)
        elif family == "D":
            n = sub + 1
            if n < 5:
                raise RankOutOfRange(label)
        elif family == "E":
            if sub not in (6, 7, 8):
                raise UnknownLabel(label)
            n = sub + 1
        elif family == "F":
            if sub != 4:
                raise UnknownLabel(label)
            n = 5
        elif family == "G":
            if sub != 2:
                raise UnknownLabel(label)
            n = 3
        else:
            raise UnknownLabel(label)
        if n > _MAX_RANK:
            raise RankOutOfRange(label)
        edges = _untwisted_edges(family, n, k)
        raw = _edges_to_matrix(n, edges)
    else:
        if twist == 2 and family == "A" and sub % 2 == 0:
            n = sub // 2 + 1
            if n < 2 or n > _MAX_RANK:
                raise RankOutOfRange(label)
            if n == 2:
                raw = [[2, -1], [-4, 2]]
            else:
                edges = {(0, 1): (-1, -2)}
                edges.update(_path(1, n - 2))
                edges[(n - 2, n - 1)] = (-1, -2)
                raw = _edges_to_matrix(n, edges)
        elif twist == 2 and family == "A" and sub % 2 == 1:
            n = (sub + 1) // 2 + 1
            if n < 4 or n > _MAX_RANK:
                raise RankOutOfRange(label)
            raw = [list(r) for r in zip(*_edges_to_matrix(n, _untwisted_edges("B", n, None)))]
            for i in range(n):
                raw[i][i] = 2
        elif twist == 2 and family == "D":
            n = sub
            if n < 3 or n > _MAX_RANK:
                raise RankOutOfRange(label)
            raw = [list(r) for r in zip(*_edges_to_matrix(n, _untwisted_edges("C", n, None)))]
        elif twist == 2 and family == "E":
            if sub != 6:
                raise UnknownLabel(label)
            n = 5
            raw = [list(r) for r in zip(*_edges_to_matrix(n, _untwisted_edges("F", n, None)))]
        elif twist == 3 and family == "D":
            if sub != 4:
                raise UnknownLabel(label)
            n = 3
            raw = [list(r) for r in zip(*_edges_to_matrix(n, _untwisted_edges("G", n, None)))]
        else:
            raise UnknownLabel(label)
    cm = validate_cartan(raw)
    return cm, n - 1, tuple(range(n))


class AffineContext:
    """A validated affine Cartan matrix with its classification data."""

    def __init__(self, cm: CartanMatrix, aff: int | None = None, label: str | None = None):
        cls = classify(cm, aff=aff)
        if cls.kind is not Kind.AFFINE:
            raise NotAffine(f"matrix is of {cls.kind.value} type")
        self.cm = cm
        self.n = cm.n
        self.label = label
        self.delta = cls.delta
        self.aff = cls.aff
        self.theta = cls.theta
        self.delta_vee = cls.delta_vee
        self.delta_vee_coroot = cls.delta_vee_coroot
        self._pos_roots_by_level = {}   # level -> sorted list
        self._pos_root_set = set()
        self._level_done = -1

    # -- basic geometry ----------------------------------------------------

    def k(self, v, w):
        return self.cm.k(v, w)

    def reflect(self, i, v):
        if not 0 <= i < self.n:
            from .errors import IndexOutOfRange

            raise IndexOutOfRange(f"index {i + 1} out of range 1..{self.n}")
        return self.cm.reflect(i, v)

    def coroot_coords(self, v):
        """Simple-coroot coordinates of the coroot of a real root v."""
        norm = self.k(v, v)
        assert norm > 0, "coroot requires a real root"
        return vec(Fraction(2) * di * x / norm for di, x in zip(self.cm.d, v))

    def level_num(self, v):
        """[v:α_aff] as a bare number (level = this / [delta:α_aff])."""
        return v[self.aff]

    # -- bounded real-root enumeration --------------------------------------

    def ensure_level(self, bound: int):
        """Extend the positive-real-root cache to delta-level `bound`."""
        if bound <= self._level_done:
            return
        daff = self.delta[self.aff]
        cap = (bound + 1) * daff
        seen = set(self._pos_root_set)
        frontier = []
        if self._level_done < 0:
            for i in range(self.n):
                root = tuple(1 if j == i else 0 for j in range(self.n))
                seen.add(root)
                frontier.append(root)
        else:
            frontier = list(seen)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(self.n):
                    img = self.cm.reflect(i, root)
                    if img in seen or any(x < 0 for x in img):
                        continue
                    if img[self.aff] > cap:
                        continue
                    seen.add(img)
                    nxt.append(img)
            frontier = nxt
        self._pos_root_set = seen
        self._level_done = bound

    def positive_real_roots(self, bound: int):
        """Sorted positive real roots with [β:α_aff] ≤ bound·[delta:α_aff]."""
        self.ensure_level(bound)
        cap = bound * self.delta[self.aff]
        return sorted(r for r in self._pos_root_set if r[self.aff] <= cap)

    def is_real_root(self, v) -> bool:
        v = vec(v)
        if any(not isinstance(x, int) for x in v):
            return False
        if all(x == 0 for x in v):
            return False
        if all(x <= 0 for x in v):
            v = tuple(-x for x in v)
        elif not all(x >= 0 for x in v):
            return False
        daff = self.delta[self.aff]
        lvl = -(-v[self.aff] // daff)   # ceil
        self.ensure_level(max(lvl, self._level_done, 1))
        return v in self._pos_root_set

    def is_imaginary_root(self, v) -> bool:
        v = vec(v)
        i = next((j for j, x in enumerate(v) if x != 0), None)
        if i is None or not isinstance(v[i], int) or v[i] % self.delta[i] != 0:
            return False
        k = v[i] // self.delta[i]
        return k != 0 and tuple(x * k for x in self.delta) == v

    def is_root(self, v) -> bool:
        return self.is_real_root(v) or self.is_imaginary_root(v)


def context_from_label(label: str) -> tuple:
    """(AffineContext, canonical word) for a catalog label."""
    cm, aff, word = catalog(label)
    return AffineContext(cm, aff=aff, label=label), word
