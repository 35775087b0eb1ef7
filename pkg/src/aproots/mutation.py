"""Ground-truth cluster-algebra engine: exchange-matrix mutation and
principal-coefficient Laurent seeds.

Cluster variables are stored as sparse Laurent polynomials over 2n
variables (x_1..x_n, y_1..y_n): dict mapping exponent tuples to nonzero
integer coefficients.  Every mutation divides exactly (the Laurent
phenomenon); a failed division raises and means a bug.  Denominator vectors
and principal-grading degrees are extracted per variable and cross-checked
against the root-theoretic model elsewhere.
"""

from __future__ import annotations

from .errors import DepthTooDeep, NonExactDivision, NotHomogeneous

TERM_CAP = 200_000


# ---------------------------------------------------------------------------
# sparse Laurent polynomials: dict[tuple[int, ...], int]
# ---------------------------------------------------------------------------

def poly_const(nvars: int, value: int = 1) -> dict:
    if value == 0:
        return {}
    return {tuple([0] * nvars): value}


def poly_var(nvars: int, index: int) -> dict:
    exp = [0] * nvars
    exp[index] = 1
    return {tuple(exp): 1}


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for exp, coeff in q.items():
        new = out.get(exp, 0) + coeff
        if new:
            out[exp] = new
        else:
            out.pop(exp, None)
    return out


def poly_mul(p: dict, q: dict) -> dict:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            exp = tuple(a + b for a, b in zip(e1, e2))
            new = out.get(exp, 0) + c1 * c2
            if new:
                out[exp] = new
            else:
                del out[exp]
    if len(out) > TERM_CAP:
        raise DepthTooDeep(f"polynomial exceeded {TERM_CAP} terms")
    return out


def poly_pow(p: dict, k: int) -> dict:
    assert k >= 0
    nvars = len(next(iter(p))) if p else 0
    out = poly_const(nvars) if p else {}
    for _ in range(k):
        out = poly_mul(out, p)
    return out if k else poly_const(nvars)


def poly_shift(p: dict, shift) -> dict:
    return {tuple(a + b for a, b in zip(exp, shift)): c for exp, c in p.items()}


def _min_exponents(p: dict):
    it = iter(p)
    first = next(it)
    mins = list(first)
    for exp in it:
        for i, e in enumerate(exp):
            if e < mins[i]:
                mins[i] = e
    return mins


def poly_div_exact(p: dict, q: dict) -> dict:
    """Exact division of Laurent polynomials; raises NonExactDivision."""
    if not q:
        raise NonExactDivision("division by zero polynomial")
    if not p:
        return {}
    # normalize to ordinary polynomials by clearing minimal exponents
    pm = _min_exponents(p)
    qm = _min_exponents(q)
    pp = poly_shift(p, [-m for m in pm])
    qq = poly_shift(q, [-m for m in qm])
    lead_q = max(qq)
    lcq = qq[lead_q]
    quotient: dict = {}
    rem = dict(pp)
    while rem:
        lead_r = max(rem)
        tvec = tuple(a - b for a, b in zip(lead_r, lead_q))
        if any(t < 0 for t in tvec) or rem[lead_r] % lcq != 0:
            raise NonExactDivision("Laurent phenomenon violated")
        coeff = rem[lead_r] // lcq
        quotient[tvec] = coeff
        for e2, c2 in qq.items():
            exp = tuple(a + b for a, b in zip(tvec, e2))
            new = rem.get(exp, 0) - coeff * c2
            if new:
                rem[exp] = new
            else:
                rem.pop(exp, None)
    shift = [a - b for a, b in zip(pm, qm)]
    return poly_shift(quotient, shift)


def poly_key(p: dict) -> tuple:
    return tuple(sorted(p.items()))


# ---------------------------------------------------------------------------
# exchange matrices and seeds
# ---------------------------------------------------------------------------

def exchange_matrix_from_cartan(cm, word) -> tuple:
    """Skew-symmetrizable B with b_ij > 0 exactly when i precedes j in the
    word and a_ij != 0."""
    pos = {s: p for p, s in enumerate(word)}
    n = cm.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j or cm.a[i][j] == 0:
                row.append(0)
            elif pos[i] < pos[j]:
                row.append(-cm.a[i][j])
            else:
                row.append(cm.a[i][j])
        rows.append(tuple(row))
    return tuple(rows)


def initial_btilde(b: tuple) -> tuple:
    n = len(b)
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return tuple(b) + ident


def matrix_mutation(btilde: tuple, k: int) -> tuple:
    n = len(btilde[0])
    rows = []
    for i, row in enumerate(btilde):
        new = []
        for j in range(n):
            if i == k or j == k:
                new.append(-row[j])
            else:
                bik, bkj = row[k], btilde[k][j]
                new.append(row[j] + max(bik, 0) * max(bkj, 0) - max(-bik, 0) * max(-bkj, 0))
        rows.append(tuple(new))
    return tuple(rows)


class Seed:
    """Exchange matrix with principal coefficients plus its Laurent cluster."""

    __slots__ = ("n", "btilde", "polys", "history")

    def __init__(self, n, btilde, polys, history=()):
        self.n = n
        self.btilde = btilde
        self.polys = tuple(polys)
        self.history = tuple(history)

    @classmethod
    def initial(cls, b: tuple) -> "Seed":
        n = len(b)
        polys = [poly_var(2 * n, i) for i in range(n)]
        return cls(n, initial_btilde(b), polys)

    def mutate(self, k: int) -> "Seed":
        n = self.n
        col = [self.btilde[i][k] for i in range(2 * n)]
        plus = poly_const(2 * n)
        minus = poly_const(2 * n)
        for i in range(n):
            if col[i] > 0:
                plus = poly_mul(plus, poly_pow(self.polys[i], col[i]))
            elif col[i] < 0:
                minus = poly_mul(minus, poly_pow(self.polys[i], -col[i]))
        yplus = [0] * (2 * n)
        yminus = [0] * (2 * n)
        for j in range(n):
            cval = col[n + j]
            if cval > 0:
                yplus[n + j] = cval
            elif cval < 0:
                yminus[n + j] = -cval
        plus = poly_shift(plus, yplus)
        minus = poly_shift(minus, yminus)
        numerator = poly_add(plus, minus)
        newpoly = poly_div_exact(numerator, self.polys[k])
        polys = list(self.polys)
        polys[k] = newpoly
        return Seed(n, matrix_mutation(self.btilde, k), polys,
                    self.history + (k,))

    def key(self) -> frozenset:
        return frozenset(poly_key(p) for p in self.polys)

    def d_vector(self, slot: int) -> tuple:
        p = self.polys[slot]
        mins = _min_exponents(p)
        return tuple(-m for m in mins[: self.n])

    def g_vector(self, slot: int, b0: tuple) -> tuple:
        n = self.n
        p = self.polys[slot]
        grade = None
        for exp in p:
            g = [0] * n
            for i in range(n):
                if exp[i]:
                    g[i] += exp[i]
            for j in range(n):
                e = exp[n + j]
                if e:
                    for i in range(n):
                        g[i] -= e * b0[i][j]
            g = tuple(g)
            if grade is None:
                grade = g
            elif grade != g:
                raise NotHomogeneous(f"slot {slot + 1} is not homogeneous")
        assert grade is not None
        return grade


def seed_bfs(b: tuple, depth: int):
    """All seeds within `depth` mutations of the initial seed.

    Returns (seeds, edges): seeds keyed by their unordered variable set, one
    representative each; edges as key pairs of the mutation graph.
    """
    start = Seed.initial(b)
    reps = {start.key(): start}
    edges = set()
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for seed in frontier:
            for k in range(seed.n):
                new = seed.mutate(k)
                kn = new.key()
                edges.add(frozenset({seed.key(), kn}))
                if kn not in reps:
                    reps[kn] = new
                    nxt.append(new)
        frontier = nxt
    return reps, edges
