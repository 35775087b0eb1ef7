"""Everything attached to a fixed Coxeter element c.

Builds the Euler form, the matrix of c (two independent ways, compared), the
generalized 1-eigenvector gamma_c with its functional phi_c, the finite-orbit
hyperplane data, the rotation subsystem living inside that hyperplane (its
type-A components, cyclically ordered simple roots, per-component delta
multiple), the transversals psi_to / psi_from / omega, the kappa function,
the deformed maps sigma_s and tau_c, and the source-sink move graph.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .cartan import AffineContext
from .errors import IndexOutOfRange, NotAlmostPositive, NotInPhiC
from . import linalg
from .linalg import canon, identity, inverse, mat_mul, mat_vec, vec
from .roots import finite_positive_roots

NEG_SIMPLE = "negative-simple"
TRANSIENT = "transient"
TUBE = "tube"
DELTA = "delta"


class TubeComponent:
    """One type-A component of the finite-orbit subsystem.

    `cycle` lists its simple roots in c-rotation order (c maps each entry to
    the next, cyclically); exactly one entry, `affine_simple`, lies outside
    the finite parabolic, and the cycle sums to `delta_multiple`·delta.
    """

    def __init__(self, cycle, affine_pos, delta_multiple):
        self.cycle = tuple(cycle)
        self.rank = len(cycle)
        self.affine_pos = affine_pos
        self.affine_simple = cycle[affine_pos]
        self.delta_multiple = delta_multiple
        self.fin_simples = tuple(r for p, r in enumerate(cycle) if p != affine_pos)
        self.index_of = {r: p for p, r in enumerate(cycle)}


class CoxeterContext:
    def __init__(self, ctx: AffineContext, word):
        word = tuple(word)
        if sorted(word) != list(range(ctx.n)):
            raise IndexOutOfRange("word must be a permutation of all node indices")
        self.ctx = ctx
        self.cm = ctx.cm
        self.n = ctx.n
        self.word = word
        self.pos = {letter: p for p, letter in enumerate(word)}

        a = ctx.cm.a
        n = ctx.n
        self.E = tuple(
            tuple(a[i][j] if self.pos[i] > self.pos[j] else (1 if i == j else 0)
                  for j in range(n))
            for i in range(n)
        )
        self.E_inv_word = tuple(
            tuple(a[i][j] if self.pos[i] < self.pos[j] else (1 if i == j else 0)
                  for j in range(n))
            for i in range(n)
        )
        by_product = identity(n)
        for letter in reversed(word):
            by_product = mat_mul(ctx.cm.reflection_matrix(letter), by_product)
        by_form = tuple(
            tuple(canon(-x) for x in row)
            for row in mat_mul(inverse(self.E_inv_word), self.E)
        )
        assert by_product == by_form, "Coxeter matrix mismatch between definitions"
        self.c_mat = by_form
        self.c_inv_mat = inverse(self.c_mat)
        assert mat_vec(self.c_mat, ctx.delta) == ctx.delta

        self.gamma = self._solve_gamma()
        # phi as a functional on simple-root coordinates: phi(v) = f · v
        self._phi_fun = mat_vec(ctx.cm.gram, self.gamma)
        self.phi_weight = self._normalized_phi_weight()

        self.psi_to = self._psi(forward=True)
        self.psi_from = self._psi(forward=False)
        for i in range(n):
            assert self.phi(self.psi_to[i]) > 0 and self.phi(self.psi_from[i]) < 0

        self.components = self._build_tubes()
        self._tube_index = {}
        for ci, comp in enumerate(self.components):
            for r in comp.cycle:
                self._tube_index[r] = ci
        self.fin_simples = tuple(
            r for comp in self.components for r in comp.fin_simples
        )
        self.omega = self._build_omega()
        self.kappa = {w: self._kappa(w) for w in self.omega}

        graph = source_sink_graph(ctx)
        ranks = [comp.rank for comp in self.components]
        self.m_bound = len(graph.vertices) + n * (lcm(*ranks) if ranks else 1)

        self._tube_roots = None

    # -- scalar evaluations --------------------------------------------------

    def phi(self, v):
        return canon(sum(a * b for a, b in zip(self._phi_fun, v)))

    def k(self, v, w):
        return self.ctx.k(v, w)

    def euler(self, u_coroot, w_root):
        """E_c on (simple-coroot coordinates, simple-root coordinates)."""
        total = 0
        for i, ui in enumerate(u_coroot):
            if ui:
                row = self.E[i]
                total += ui * sum(e * wj for e, wj in zip(row, w_root) if e)
        return canon(total)

    def euler_roots(self, v, w):
        """E_c(v, w) for arbitrary vectors in simple-root coordinates."""
        d = self.cm.d
        return self.euler(tuple(canon(x * di) for x, di in zip(v, d)), w)

    def euler_inv(self, u_coroot, w_root):
        total = 0
        for i, ui in enumerate(u_coroot):
            if ui:
                row = self.E_inv_word[i]
                total += ui * sum(e * wj for e, wj in zip(row, w_root) if e)
        return canon(total)

    def c_action(self, v):
        return mat_vec(self.c_mat, v)

    def c_inverse_action(self, v):
        return mat_vec(self.c_inv_mat, v)

    # -- construction helpers --------------------------------------------------

    def _solve_gamma(self):
        n, ctx = self.n, self.ctx
        rows = [
            [self.c_mat[i][j] - (1 if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        rows.append([1 if j == ctx.aff else 0 for j in range(n)])
        rhs = list(ctx.delta) + [0]
        gamma = linalg.solve_general(rows, rhs)
        assert gamma is not None
        assert mat_vec(self.c_mat, gamma) == linalg.vadd(gamma, ctx.delta)
        return gamma

    def _normalized_phi_weight(self):
        d = self.cm.d
        weight = [Fraction(f) / Fraction(di) for f, di in zip(self._phi_fun, d)]
        first = next((w for w in weight if w != 0), None)
        assert first is not None
        scale = abs(first)
        return vec(w / scale for w in weight)

    def _psi(self, forward: bool):
        out = {}
        word = self.word
        for p, letter in enumerate(word):
            v = tuple(1 if j == letter else 0 for j in range(self.n))
            # s_{w_1}···s_{w_{p-1}}·α (forward) or s_{w_n}···s_{w_{p+1}}·α:
            # rightmost factor acts first
            seq = reversed(word[:p]) if forward else word[p + 1:]
            for s in seq:
                v = self.cm.reflect(s, v)
            out[letter] = v
        return out

    def _build_tubes(self):
        ctx = self.ctx
        active = [j for j in range(self.n) if j != ctx.aff]
        fin_pos = finite_positive_roots(self.cm, active)
        ups = sorted(r for r in fin_pos if self.phi(r) == 0)
        simple = []
        upset = set(ups)
        for r in ups:
            decomposable = any(
                tuple(a - b for a, b in zip(r, s)) in upset
                for s in ups
                if s != r and all(a - b >= 0 for a, b in zip(r, s))
            )
            if not decomposable:
                simple.append(r)
        assert len(simple) == self.n - 2, "finite-orbit simple system has rank n-2"
        # group into K-connected components
        comps = []
        unused = set(simple)
        while unused:
            seed = min(unused)
            block = {seed}
            frontier = [seed]
            while frontier:
                x = frontier.pop()
                for y in list(unused - block):
                    if self.k(x, y) != 0:
                        block.add(y)
                        frontier.append(y)
            unused -= block
            comps.append(sorted(block))
        out = []
        for block in comps:
            total = [0] * self.n
            for r in block:
                total = [a + b for a, b in zip(total, r)]
            m = None
            for cand in range(1, 4 * max(ctx.delta) + 4):
                aff_root = tuple(cand * dx - tx for dx, tx in zip(ctx.delta, total))
                if all(x >= 0 for x in aff_root) and ctx.is_real_root(aff_root):
                    m = cand
                    break
            assert m is not None, "component has no affine completion"
            aff_root = tuple(m * dx - tx for dx, tx in zip(ctx.delta, total))
            start = min(block)
            cycle = [start]
            cur = start
            for _ in range(len(block)):
                cur = self.c_action(cur)
                if cur == start:
                    break
                cycle.append(cur)
            assert set(cycle) == set(block) | {aff_root}, "c does not rotate the component"
            assert self.c_action(cycle[-1]) == start
            out.append(TubeComponent(cycle, cycle.index(aff_root), m))
        out.sort(key=lambda comp: min(comp.fin_simples))
        return out

    def _build_omega(self):
        def reflect_in(beta, v):
            t = canon(Fraction(2) * self.k(beta, v) / self.k(beta, beta))
            return tuple(canon(a - t * b) for a, b in zip(v, beta))

        ordered = []
        for comp in self.components:
            k = comp.rank
            start = (comp.affine_pos + 1) % k
            ordered.extend(comp.cycle[(start + t) % k] for t in range(k - 1))
        omega = []
        for i, beta in enumerate(ordered):
            v = beta
            for b in reversed(ordered[:i]):
                v = reflect_in(b, v)
            omega.append(v)
        return tuple(omega)

    def _kappa(self, beta):
        ctx = self.ctx
        for m in range(1, 4 * max(ctx.delta) + 4):
            cand = tuple(m * dx - bx for dx, bx in zip(ctx.delta, beta))
            if ctx.is_root(cand):
                return m
        raise AssertionError("kappa search exhausted")

    # -- conjugation ----------------------------------------------------------

    def initial_letters(self):
        """Letters s that are initial in c (sources of the orientation)."""
        out = []
        for i in range(self.n):
            if all(self.pos[i] < self.pos[j]
                   for j in range(self.n)
                   if j != i and self.cm.a[i][j] != 0):
                out.append(i)
        return out

    def final_letters(self):
        out = []
        for i in range(self.n):
            if all(self.pos[i] > self.pos[j]
                   for j in range(self.n)
                   if j != i and self.cm.a[i][j] != 0):
                out.append(i)
        return out

    def source_sink_move(self, s: int) -> "CoxeterContext":
        """Context for scs; s must be initial or final in c."""
        word = list(self.word)
        if s in self.initial_letters():
            word.remove(s)
            word.append(s)
        elif s in self.final_letters():
            word.remove(s)
            word.insert(0, s)
        else:
            raise IndexOutOfRange(f"letter {s + 1} is neither initial nor final")
        return CoxeterContext(self.ctx, word)

    def inverse_context(self) -> "CoxeterContext":
        return CoxeterContext(self.ctx, self.word[::-1])

    # -- almost-positive membership -------------------------------------------

    def neg_simple_index(self, v):
        idx = None
        for i, x in enumerate(v):
            if x == 0:
                continue
            if x == -1 and idx is None:
                idx = i
            else:
                return None
        return idx

    def tube_roots(self):
        """Positive real finite-orbit roots with proper arc support."""
        if self._tube_roots is None:
            out = []
            for comp in self.components:
                k = comp.rank
                if k < 2:
                    continue
                for start in range(k):
                    acc = [0] * self.n
                    for length in range(1, k):
                        node = comp.cycle[(start + length - 1) % k]
                        acc = [a + b for a, b in zip(acc, node)]
                        out.append(tuple(acc))
            self._tube_roots = sorted(set(out))
        return self._tube_roots

    def phi_c_class(self, v):
        """Membership class of v in the almost-positive set, or None."""
        v = vec(v)
        if self.neg_simple_index(v) is not None:
            return NEG_SIMPLE
        if v == self.ctx.delta:
            return DELTA
        if not all(x >= 0 for x in v):
            return None
        if not self.ctx.is_real_root(v):
            return None
        if self.phi(v) != 0:
            return TRANSIENT
        if v in set(self.tube_roots()):
            return TUBE
        return None

    def in_phi_c(self, v) -> bool:
        return self.phi_c_class(v) is not None

    # -- deformed maps ----------------------------------------------------------

    def sigma(self, s: int, v):
        """The involution sigma_s on -Π ∪ Φ+."""
        v = vec(v)
        neg = self.neg_simple_index(v)
        if neg is None and not (all(x >= 0 for x in v) and self.ctx.is_root(v)):
            raise NotAlmostPositive(f"{v} is neither a negative simple nor a positive root")
        if neg is not None and neg != s:
            return v
        return self.cm.reflect(s, v)

    def tau(self, v):
        if self.phi_c_class(v) is None:
            raise NotInPhiC(str(v))
        neg = self.neg_simple_index(v)
        if neg is not None:
            return self.psi_to[neg]
        for i, psi in self.psi_from.items():
            if psi == v:
                return tuple(-1 if j == i else 0 for j in range(self.n))
        return self.c_action(v)

    def tau_inverse(self, v):
        if self.phi_c_class(v) is None:
            raise NotInPhiC(str(v))
        neg = self.neg_simple_index(v)
        if neg is not None:
            return self.psi_from[neg]
        for i, psi in self.psi_to.items():
            if psi == v:
                return tuple(-1 if j == i else 0 for j in range(self.n))
        return self.c_inverse_action(v)

    def tau_power(self, v, m: int):
        step = self.tau if m >= 0 else self.tau_inverse
        for _ in range(abs(m)):
            v = step(v)
        return v

    # -- orbit classification ----------------------------------------------------

    def orbit_classification(self, v):
        """(kind, representative, power) of the tau-orbit of v.

        kind is 'infinite' (representative a negative simple), 'finite'
        (representative in omega) or 'delta'.
        """
        cls = self.phi_c_class(v)
        if cls is None:
            raise NotInPhiC(str(v))
        if cls == DELTA:
            return ("delta", v, 0)
        if cls == NEG_SIMPLE:
            return ("infinite", v, 0)
        if cls == TUBE:
            ci = self._tube_index.get(v)
            comp = self.components[ci if ci is not None else self._locate_component(v)]
            cur = v
            for p in range(comp.rank):
                if cur in self.kappa:
                    return ("finite", cur, p)
                cur = self.c_inverse_action(cur)
            raise AssertionError("finite orbit missed its transversal")
        cur = v
        cap = 4 * self.m_bound + 8 * sum(abs(x) for x in v) + 8
        if self.phi(v) > 0:
            for m in range(1, cap):
                cur = self.tau_inverse(cur)
                if self.neg_simple_index(cur) is not None:
                    return ("infinite", cur, m)
        else:
            for m in range(1, cap):
                cur = self.tau(cur)
                if self.neg_simple_index(cur) is not None:
                    return ("infinite", cur, -m)
        raise AssertionError("infinite-orbit walk exhausted")

    def _locate_component(self, v):
        for ci, comp in enumerate(self.components):
            coeffs = linalg.in_simplicial_cone(list(comp.cycle), v)
            if coeffs is not None:
                return ci
        raise NotInPhiC(f"{v} lies in no component")


class SourceSinkGraph:
    def __init__(self, vertices, edges, component_of):
        self.vertices = vertices            # tuple of orientations
        self.edges = edges                  # set of frozenset pairs of indices
        self.component_of = component_of    # orientation -> component id

    @property
    def component_count(self):
        return len(set(self.component_of.values()))


def orientation_of_word(cm, word):
    pos = {letter: p for p, letter in enumerate(word)}
    edges = []
    for i in range(cm.n):
        for j in range(i + 1, cm.n):
            if cm.a[i][j] != 0:
                edges.append((i, j) if pos[i] < pos[j] else (j, i))
    return frozenset(edges)


def source_sink_graph(ctx: AffineContext) -> SourceSinkGraph:
    """Acyclic orientations of the Dynkin diagram under source/sink flips."""
    cm = ctx.cm
    n = cm.n
    diagram = [(i, j) for i in range(n) for j in range(i + 1, n) if cm.a[i][j] != 0]

    def acyclic(orient):
        succ = {i: [] for i in range(n)}
        for i, j in orient:
            succ[i].append(j)
        seen, done = set(), set()

        def dfs(u):
            seen.add(u)
            for w in succ[u]:
                if w in seen and w not in done:
                    return False
                if w not in seen and not dfs(w):
                    return False
            done.add(u)
            return True

        return all(dfs(u) for u in range(n) if u not in seen)

    vertices = []
    for mask in range(1 << len(diagram)):
        orient = frozenset(
            (i, j) if not (mask >> e) & 1 else (j, i)
            for e, (i, j) in enumerate(diagram)
        )
        if acyclic(orient):
            vertices.append(orient)
    vertices = sorted(vertices, key=sorted)

    def flip(orient, v):
        return frozenset((j, i) if v in (i, j) else (i, j) for i, j in orient)

    edges = set()
    adj = {o: [] for o in vertices}
    for orient in vertices:
        outs = {i for i, _ in orient}
        ins = {j for _, j in orient}
        touched = outs | ins
        sources = [v for v in range(n) if v not in ins and (v in outs or v not in touched)]
        sinks = [v for v in range(n) if v not in outs and (v in ins or v not in touched)]
        for v in set(sources) | set(sinks):
            other = flip(orient, v)
            edges.add(frozenset({orient, other}))
            adj[orient].append(other)
    component_of = {}
    comp = 0
    for orient in vertices:
        if orient in component_of:
            continue
        stack = [orient]
        component_of[orient] = comp
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in component_of:
                    component_of[nxt] = comp
                    stack.append(nxt)
        comp += 1
    return SourceSinkGraph(tuple(vertices), edges, component_of)
