"""Cartan validation, classification, and catalog checks."""

from fractions import Fraction
from itertools import product

import pytest

from aproots.cartan import (
    AffineContext,
    Kind,
    catalog,
    catalog_labels,
    classify,
    context_from_label,
    dual,
    validate_cartan,
)
from aproots.errors import (
    BadDiagonal,
    CartanError,
    NotSymmetrizable,
    PositiveOffDiagonal,
    RankOutOfRange,
    UnknownLabel,
)


def brute_force_symmetrizers(a):
    """Independent oracle: solve d_i a_ij = d_j a_ji by propagation over the
    constraint graph, returned unnormalized from d_1 = 1."""
    n = len(a)
    d = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i, j in product(range(n), repeat=2):
            if i != j and a[i][j] != 0 and d[i] is not None and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                changed = True
    return d


def proportional(u, v):
    ratio = None
    for x, y in zip(u, v):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            r = Fraction(x) / Fraction(y)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


def test_validate_symmetric_matrix():
    cm = validate_cartan([[2, -2], [-2, 2]])
    assert cm.d == (1, 1)


def test_validate_symmetrizers_match_brute_force():
    raw = [[2, -2, 0], [-1, 2, -1], [0, -2, 2]]
    cm = validate_cartan(raw)
    oracle = brute_force_symmetrizers(raw)
    assert proportional(cm.d, oracle)
    assert proportional(cm.d, (Fraction(1, 2), 1, Fraction(1, 2)))


def test_validate_rejects_asymmetric_zero():
    with pytest.raises(NotSymmetrizable):
        validate_cartan([[2, -1], [0, 2]])


def test_validate_rejects_bad_diagonal_and_positive_entries():
    with pytest.raises(BadDiagonal):
        validate_cartan([[1, -1], [-1, 2]])
    with pytest.raises(PositiveOffDiagonal):
        validate_cartan([[2, 1], [-1, 2]])
    with pytest.raises(CartanError):
        validate_cartan([[2, -1]])


def test_classify_finite():
    cm = validate_cartan([[2, -1], [-1, 2]])
    assert classify(cm).kind is Kind.FINITE


def test_classify_affine_rank2():
    cm = validate_cartan([[2, -2], [-2, 2]])
    cls = classify(cm)
    assert cls.kind is Kind.AFFINE
    assert cls.delta == (1, 1)


def test_classify_doubled_mark():
    cm = validate_cartan([[2, -1], [-4, 2]])
    cls = classify(cm)
    assert cls.kind is Kind.AFFINE
    assert cls.delta == (1, 2)
    assert cls.aff == 1
    assert cls.delta[cls.aff] == 2
    assert cls.theta == (1, 0)
    # dual imaginary root: half of delta, coroot coordinates (2, 1)
    assert cls.delta_vee == (Fraction(1, 2), 1)
    assert cls.delta_vee_coroot == (2, 1)


def test_classify_indefinite():
    cm = validate_cartan([[2, -3], [-3, 2]])
    assert classify(cm).kind is Kind.OTHER


def test_classify_direct_sums_and_corners():
    # a strictly affine block plus anything violates the proper-submatrix
    # condition, and a two-dimensional kernel is out as well
    assert classify(validate_cartan([[2, -2, 0], [-2, 2, 0], [0, 0, 2]])).kind \
        is Kind.OTHER
    assert classify(validate_cartan([[2, 0], [0, 2]])).kind is Kind.FINITE
    two_affine = [[2, -2, 0, 0], [-2, 2, 0, 0], [0, 0, 2, -2], [0, 0, -2, 2]]
    assert classify(validate_cartan(two_affine)).kind is Kind.OTHER
    assert classify(validate_cartan([[2]])).kind is Kind.FINITE


def test_catalog_g2():
    cm, aff, word = catalog("G2(1)")
    assert cm.n == 3
    assert aff == 2
    assert word == (0, 1, 2)


def test_catalog_d3_twisted_matrix_pinned():
    cm, aff, word = catalog("D3(2)")
    assert cm.a == ((2, -2, 0), (-1, 2, -1), (0, -2, 2))
    assert aff == 2


def test_catalog_type_a_parameter_range():
    with pytest.raises(UnknownLabel):
        catalog("A4(1):k=5")
    with pytest.raises(UnknownLabel):
        catalog("A4(1)")
    with pytest.raises(UnknownLabel):
        catalog("Z9(1)")
    with pytest.raises(RankOutOfRange):
        catalog("B99(1)")


def test_dual_involution_and_affineness():
    cm, _, _ = catalog("D3(2)")
    dd = dual(cm)
    assert classify(dd).kind is Kind.AFFINE
    assert dual(dd).a == cm.a
    sym = validate_cartan([[2, -1], [-1, 2]])
    assert dual(sym).a == sym.a


def test_catalog_types_classify_affine_with_consistent_form():
    for label in catalog_labels(6):
        cm, aff, word = catalog(label)
        cls = classify(cm, aff=aff)
        assert cls.kind is Kind.AFFINE, label
        # the bilinear form pairs coroots with roots through the matrix
        for i in range(cm.n):
            for j in range(cm.n):
                lhs = cm.k([1 if t == i else 0 for t in range(cm.n)],
                           [1 if t == j else 0 for t in range(cm.n)])
                assert lhs == cm.d[i] * cm.a[i][j]
        ctx = AffineContext(cm, aff=aff, label=label)
        assert all(x > 0 for x in ctx.delta)


def test_form_invariance_under_reflections():
    import random

    rng = random.Random(7)
    for label in ("A1(1)", "D3(2)", "G2(1)", "C3(1)", "A2(2)"):
        ctx, _ = context_from_label(label)
        n = ctx.n
        for _ in range(100):
            v = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n))
            w = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n))
            i = rng.randrange(n)
            assert ctx.k(ctx.reflect(i, v), ctx.reflect(i, w)) == ctx.k(v, w)


def test_delta_matches_kernel_for_all_catalog_types():
    for label in catalog_labels(7):
        ctx, _ = context_from_label(label)
        n = ctx.n
        for i in range(n):
            assert ctx.cm.pairing(i, ctx.delta) == 0, label
