"""Clusters, exchange, enumeration, the weight map, fan checks."""

import random
from fractions import Fraction

import pytest

from aproots.cartan import context_from_label
from aproots.clusters import (
    IMAGINARY,
    REAL,
    TubeWall,
    cone_contains,
    cones_intersect_in_face,
    enumerate_clusters,
    exchange,
    fan_consistency,
    imaginary_clusters,
    is_cluster,
    nu,
    nu_inverse,
)
from aproots.compatibility import degree
from aproots.coxeter import CoxeterContext
from aproots.errors import NotACluster, RootNotInCluster
from aproots.expansion import cluster_expansion
from aproots.linalg import vec


def cc_for(label, word=None):
    ctx, default = context_from_label(label)
    return CoxeterContext(ctx, word or default)


def neg_pi(n):
    return tuple(sorted(tuple(-1 if j == i else 0 for j in range(n))
                        for i in range(n)))


def test_is_cluster_basic():
    cc = cc_for("D3(2)")
    kind, _ = is_cluster(cc, neg_pi(3))
    assert kind == REAL
    kind, _ = is_cluster(cc, [(1, 1, 1), (0, 1, 0)])
    assert kind == IMAGINARY
    kind, reason = is_cluster(cc, [(-1, 0, 0), (1, 0, 0)])
    assert kind is None and "degree" in reason
    kind, reason = is_cluster(cc, [(-1, 0, 0), (0, -1, 0)])
    assert kind is None and "maximal" in reason
    kind, reason = is_cluster(cc, [(9, 9, 9), (0, 1, 0)])
    assert kind is None


def test_exchange_basics():
    cc = cc_for("A1(1)")
    cluster = neg_pi(2)
    beta, new = exchange(cc, cluster, (-1, 0))
    assert beta == (1, 0)
    assert new == ((0, -1), (1, 0))
    back, orig = exchange(cc, new, (1, 0))
    assert back == (-1, 0) and orig == cluster
    with pytest.raises(RootNotInCluster):
        exchange(cc, cluster, (1, 1))
    with pytest.raises(NotACluster):
        exchange(cc, [(-1, 0), (1, 0)], (1, 0))


def test_exchange_is_involutive_across_graph():
    cc = cc_for("D3(2)")
    real, _ = enumerate_clusters(cc, 3)
    for cluster in sorted(real)[:12]:
        for alpha in cluster:
            result = exchange(cc, cluster, alpha)
            if isinstance(result, TubeWall):
                continue
            beta, new = result
            assert degree(cc, alpha, beta) == 1 and degree(cc, beta, alpha) == 1
            back, orig = exchange(cc, new, beta)
            assert back == alpha and orig == cluster


def test_enumerate_depth_zero():
    cc = cc_for("G2(1)")
    real, imag = enumerate_clusters(cc, 0)
    assert real == {neg_pi(3)}
    assert len(imag) == 2


def test_imaginary_cluster_counts_match_cyclohedron_facets():
    from math import comb

    for label in ("D3(2)", "C3(1)", "B3(1)", "A3(1):k=1"):
        cc = cc_for(label)
        expected = 1
        for comp in cc.components:
            expected *= comb(2 * (comp.rank - 1), comp.rank - 1)
        assert len(imaginary_clusters(cc)) == expected, label


def test_transport_by_moves_and_tau():
    # the deformed reflection maps the depth-d ball around the negative
    # simples onto the depth-d ball around its image cluster, and the
    # deformed rotation preserves clusters outright
    for label in ("D3(2)", "A4(2)"):
        cc = cc_for(label)
        real, _ = enumerate_clusters(cc, 3)
        s = cc.word[0]
        moved = cc.source_sink_move(s)
        center = tuple(sorted(cc.sigma(s, r)
                              for r in neg_pi(cc.n)))
        moved_ball, _ = enumerate_clusters(moved, 3, start=center)
        image_ball = {tuple(sorted(cc.sigma(s, r) for r in cluster))
                      for cluster in real}
        assert image_ball == moved_ball
        for cluster in sorted(real)[:10]:
            tau_image = tuple(sorted(cc.tau(r) for r in cluster))
            kind, _ = is_cluster(cc, tau_image)
            assert kind == REAL


def test_expansion_unique_against_brute_force():
    rng = random.Random(41)
    for label in ("A1(1)", "D3(2)"):
        cc = cc_for(label)
        real, imag = enumerate_clusters(cc, 5)
        cones = sorted(real) + sorted(imag)
        for _ in range(60):
            cone = cones[rng.randrange(len(cones))]
            coeffs = {r: Fraction(rng.randint(1, 9), rng.randint(1, 3))
                      for r in cone}
            v = [0] * cc.n
            for r, x in coeffs.items():
                for i, ri in enumerate(r):
                    v[i] += x * ri
            v = vec(v)
            assert cluster_expansion(cc, v) == coeffs
            holders = [cl for cl in cones
                       if cone_contains(cc, [list(g) for g in cl], v)]
            assert len(holders) == 1 and holders[0] == cone


def test_every_real_cluster_rotates_to_contain_a_negative_simple():
    # iterating the deformed rotation eventually exposes a negative simple,
    # which is how clusters reduce to finite parabolics
    for label in ("D3(2)", "A4(2)"):
        cc = cc_for(label)
        real, _ = enumerate_clusters(cc, 4)
        for cluster in real:
            found = False
            for direction in (cc.tau, cc.tau_inverse):
                cur = cluster
                for _ in range(2 * cc.m_bound):
                    if any(cc.neg_simple_index(r) is not None for r in cur):
                        found = True
                        break
                    cur = tuple(direction(r) for r in cur)
                if found:
                    break
            assert found, (label, cluster)


def test_real_clusters_keep_two_infinite_orbit_roots():
    for label in ("D3(2)", "A4(2)", "G2(1)"):
        cc = cc_for(label)
        real, _ = enumerate_clusters(cc, 4)
        for cluster in real:
            infinite = sum(1 for r in cluster
                           if cc.orbit_classification(r)[0] == "infinite")
            assert infinite >= 2, (label, cluster)


def test_degree_one_pairs_are_realized_by_exchanges():
    # every 1/1 pair in a bounded enumeration is witnessed by two clusters
    # sharing all other elements: real ones when the sum leaves the cone
    # interior, imaginary ones otherwise
    from itertools import combinations

    from aproots import almost_positive as ap
    from aproots.expansion import in_delta_cone_interior

    for label in ("D3(2)", "A4(2)"):
        cc = cc_for(label)
        pool = ap.enumerate_phi_c(cc, 2)
        # witnesses may need a larger reach than the pair pool
        witness_pool = ap.enumerate_phi_c(cc, 6)
        candidates = [r for r in pool if r != cc.ctx.delta]
        for a, b in combinations(candidates, 2):
            if degree(cc, a, b) != 1 or degree(cc, b, a) != 1:
                continue
            total = vec(x + y for x, y in zip(a, b))
            if not in_delta_cone_interior(cc, total):
                witness = _real_witness(cc, witness_pool, a, b)
                assert witness is not None, (label, a, b)
            else:
                rest = [t for t in cc.tube_roots()
                        if t not in (a, b)
                        and degree(cc, t, a) == 0 and degree(cc, t, b) == 0]
                found = False
                for combo in combinations(rest, cc.n - 3):
                    base = list(combo) + [cc.ctx.delta]
                    if all(degree(cc, x, y) == 0
                           for x, y in combinations(base, 2)):
                        found = True
                        break
                assert found or cc.n == 2, (label, a, b)


def _real_witness(cc, pool, a, b):
    from itertools import combinations

    shared = [r for r in pool
              if r not in (a, b) and r != cc.ctx.delta
              and degree(cc, r, a) == 0 and degree(cc, r, b) == 0]
    for combo in combinations(shared, cc.n - 1):
        ok = all(degree(cc, x, y) == 0 for x, y in combinations(combo, 2))
        if ok:
            return combo
    return None


def test_weight_map_values():
    cc = cc_for("A1(1)")
    assert nu(cc, (-1, 0)) == (1, 0)
    assert nu(cc, (0, -1)) == (0, 1)
    assert nu(cc, (1, 0)) == (-1, 2)


def test_weight_map_inverse_round_trip():
    rng = random.Random(43)
    for label in ("A1(1)", "D3(2)", "G2(1)"):
        cc = cc_for(label)
        for _ in range(100):
            v = vec(Fraction(rng.randint(-8, 8), rng.randint(1, 3))
                    for _ in range(cc.n))
            for flag in (False, True):
                w = nu(cc, v, inverse_element=flag)
                assert nu_inverse(cc, w, inverse_element=flag) == v


def test_weight_map_conjugation_identity():
    # composing the inverse-element map with negation realizes the deformed
    # rotation on the almost-positive set
    from aproots import almost_positive as ap

    for label in ("A1(1)", "D3(2)", "A4(2)"):
        cc = cc_for(label)
        for beta in ap.enumerate_phi_c(cc, 2):
            lhs = nu_inverse(cc, tuple(-x for x in nu(cc, beta)),
                             inverse_element=True)
            assert lhs == cc.tau(beta), (label, beta)


def test_rank2_face_intersection_example():
    cc = cc_for("A1(1)")
    c1 = neg_pi(2)
    c2 = ((0, -1), (1, 0))
    assert cones_intersect_in_face(cc, c1, c2)
    # they share exactly the ray of the common root
    assert cone_contains(cc, [list(r) for r in c1], (0, -1))
    assert cone_contains(cc, [list(r) for r in c2], (0, -1))


def test_fan_consistency_report():
    cc = cc_for("D3(2)")
    real, imag = enumerate_clusters(cc, 3)
    rng = random.Random(47)
    samples = [vec(rng.randint(-4, 4) for _ in range(3)) for _ in range(10)]
    report = fan_consistency(cc, sorted(real) + sorted(imag), samples)
    assert report["bad_pairs"] == []
    assert report["real_determinants_unimodular"]
    for probe in report["probes"]:
        assert probe["support"] is not None


def test_rescaled_pair_has_matching_fans():
    cc1 = cc_for("C2(1)")
    cc2 = cc_for("D3(2)")
    mu = (1, 2, 1)

    def convert(r):
        out = vec(Fraction(x) / m for x, m in zip(r, mu))
        for t in (1, 2, Fraction(1, 2), 3, Fraction(1, 3)):
            cand = vec(t * x for x in out)
            if cc2.phi_c_class(cand) is not None:
                return cand
        raise AssertionError(r)

    real1, imag1 = enumerate_clusters(cc1, 3)
    real2, imag2 = enumerate_clusters(cc2, 3)
    mapped = {tuple(sorted(convert(r) for r in cl)) for cl in real1}
    assert mapped == real2
    mapped_imag = {tuple(sorted(convert(r) for r in cl)) for cl in imag1}
    assert mapped_imag == imag2
