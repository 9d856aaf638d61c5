import math
from fractions import Fraction

import pytest

from copotensor.oracle import barycentric_grid_min, simplex_grid_min
from copotensor.partition import (Partition, Simplex, Verdict,
                                  bisect_longest_edge, certify_copositivity,
                                  diameter, grid_partition, inner_test_full,
                                  member_I_P, member_O_P, refine, refine_once,
                                  standard_simplex, trivial_partition)
from copotensor.tensor import SymTensorBuilder, eval_form, from_matrix
from conftest import (rand_diag_dominant_tensor, rand_nonneg_tensor,
                      rand_rational_tensor)

F = Fraction


class TestSimplex:
    def test_standard_simplex_n2(self):
        s = standard_simplex(2)
        assert s.vertices == ((F(1), F(0)), (F(0), F(1)))

    def test_standard_simplex_n3_pairwise_distance(self):
        s = standard_simplex(3)
        for i in range(3):
            for j in range(i + 1, 3):
                d2 = sum((a - b) ** 2 for a, b in zip(s.vertices[i], s.vertices[j]))
                assert d2 == 2

    def test_vertex_outside_simplex_rejected(self):
        with pytest.raises(ValueError):
            Simplex(((F(1, 2), F(1, 4)),))


class TestBisection:
    def test_standard_2simplex_children(self):
        c1, c2 = bisect_longest_edge(standard_simplex(2))
        sets = {frozenset(c1.vertices), frozenset(c2.vertices)}
        mid = (F(1, 2), F(1, 2))
        assert sets == {frozenset({(F(1), F(0)), mid}),
                        frozenset({(F(0), F(1)), mid})}
        assert c1.depth == c2.depth == 1

    def test_child_diameters_do_not_grow(self, rng):
        P = trivial_partition(3)
        prev = diameter(P)
        for _ in range(6):
            P = refine_once(P)
            cur = diameter(P)
            assert cur <= prev + 1e-12
            prev = cur

    def test_dyadic_denominators(self):
        P = trivial_partition(2)
        for k in range(1, 6):
            P = refine_once(P)
            for v in P.vertex_set:
                for c in v:
                    assert (2 ** k) % c.denominator == 0


class TestDiameter:
    def test_trivial_n2(self):
        assert diameter(trivial_partition(2)) == pytest.approx(math.sqrt(2))

    def test_one_bisection_n2(self):
        assert diameter(refine_once(trivial_partition(2))) == \
            pytest.approx(math.sqrt(2) / 2)

    def test_standard_simplex_diameter(self):
        for n in (2, 3, 4):
            assert diameter(trivial_partition(n)) == pytest.approx(math.sqrt(2))


class TestGridPartition:
    def test_n2_structure(self):
        P = grid_partition(2, 4)
        assert len(P.simplices) == 4
        assert len(P.vertex_set) == 5
        assert all(c.denominator in (1, 2, 4) for v in P.vertex_set for c in v)

    def test_n3_structure(self):
        for m in (1, 2, 3, 4):
            P = grid_partition(3, m)
            assert len(P.simplices) == m * m
            assert len(P.vertex_set) == math.comb(m + 2, 2)

    def test_n3_covers_simplex(self, rng):
        # every random simplex point lies in at least one cell (barycentric
        # coordinates non-negative for some triangle)
        P = grid_partition(3, 3)
        for _ in range(20):
            a = F(rng.randint(0, 6), 6)
            b = F(rng.randint(0, int(6 * (1 - a))), 6)
            x = (a, b, 1 - a - b)
            covered = False
            for s in P.simplices:
                v1, v2, v3 = s.vertices
                det = ((v2[0] - v1[0]) * (v3[1] - v1[1])
                       - (v3[0] - v1[0]) * (v2[1] - v1[1]))
                l2 = ((x[0] - v1[0]) * (v3[1] - v1[1])
                      - (v3[0] - v1[0]) * (x[1] - v1[1])) / det
                l3 = ((v2[0] - v1[0]) * (x[1] - v1[1])
                      - (x[0] - v1[0]) * (v2[1] - v1[1])) / det
                if l2 >= 0 and l3 >= 0 and l2 + l3 <= 1:
                    covered = True
                    break
            assert covered

    def test_coefficient_cone_embeds(self):
        # a level-1 coefficient-cone member with a negative entry fails the
        # pairwise test on the trivial partition but passes on the
        # denominator-(r+d) grid partition
        from copotensor.polycone import member_C_r
        A = from_matrix([[F(1), F(-1, 4)], [F(-1, 4), F(1)]])
        assert member_C_r(A, 1).member
        assert not member_I_P(A, trivial_partition(2))
        assert member_I_P(A, grid_partition(2, 3))


class TestInnerTestFull:
    def test_nonnegative_tensor_true(self, rng):
        A = rand_nonneg_tensor(rng, 3, 3)
        assert inner_test_full(A, standard_simplex(3))

    def test_mixed_negative_false(self):
        A = from_matrix([[1, -2], [-2, 1]])
        assert not inner_test_full(A, standard_simplex(2))

    def test_true_implies_barycentric_min_nonneg(self, rng):
        # Lemma: passing the full vertex-tuple test bounds the form below
        # by 0 on the simplex
        hits = 0
        for _ in range(12):
            A = rand_diag_dominant_tensor(rng, 2, 2, off_scale=4)
            P = refine(trivial_partition(2), 2)
            for s in P.simplices:
                if inner_test_full(A, s):
                    hits += 1
                    rep = barycentric_grid_min(A, s.vertices, 8)
                    assert rep.min_value >= 0
        assert hits > 0


class TestMemberIP:
    def test_d2_reduction(self, rng):
        # for matrices the test is exactly u^T A v >= 0 on edges and
        # v^T A v >= 0 on vertices
        A = rand_rational_tensor(rng, 2, 2)
        P = refine(trivial_partition(2), 2)
        expected = True
        for v in P.vertex_set:
            if eval_form(A, v) < 0:
                expected = False
        for u, v in P.edge_set:
            utAv = sum(u[i] * A.get((i + 1, j + 1)) * v[j]
                       for i in range(2) for j in range(2))
            if utAv < 0:
                expected = False
        assert member_I_P(A, P) == expected

    def test_trivial_partition_nonnegative_true(self, rng):
        A = rand_nonneg_tensor(rng, 3, 2)
        assert member_I_P(A, trivial_partition(3))

    def test_refinement_monotonicity(self, rng):
        # member on P implies member on any refinement of P (d = 2 and 3)
        for d in (2, 3):
            for _ in range(10):
                A = rand_diag_dominant_tensor(rng, 2, d, off_scale=4)
                P = trivial_partition(2)
                for _ in range(4):
                    Q = refine_once(P)
                    if member_I_P(A, P):
                        assert member_I_P(A, Q)
                    P = Q


class TestMemberOP:
    def test_trivial_partition_is_diagonal_test(self, rng):
        for _ in range(10):
            A = rand_rational_tensor(rng, 3, 3)
            expected = all(v >= 0 for v in A.diag_vector())
            assert member_O_P(A, trivial_partition(3)) == expected

    def test_midpoint_witness(self):
        A = from_matrix([[0, -1], [-1, 0]])
        P = refine_once(trivial_partition(2))   # contains (1/2, 1/2)
        assert not member_O_P(A, P)
        assert eval_form(A, (F(1, 2), F(1, 2))) == F(-1, 2)

    def test_refinement_anti_monotonicity(self, rng):
        # member on the refinement implies member on the coarser partition
        for d in (2, 3):
            for _ in range(10):
                A = rand_rational_tensor(rng, 2, d)
                P = trivial_partition(2)
                for _ in range(4):
                    Q = refine_once(P)
                    if member_O_P(A, Q):
                        assert member_O_P(A, P)
                    P = Q


class TestCertify:
    def test_strictly_copositive_matrix(self):
        A = from_matrix([[F(1), F(-1, 2)], [F(-1, 2), F(1)]])
        cert = certify_copositivity(A)
        assert cert.verdict is Verdict.COPOSITIVE

    def test_not_copositive_with_witness(self):
        A = from_matrix([[0, -1], [-1, 0]])
        cert = certify_copositivity(A)
        assert cert.verdict is Verdict.NOT_COPOSITIVE
        assert cert.witness == (F(1, 2), F(1, 2))
        assert cert.witness_value == F(-1, 2)
        assert cert.recheck(A)

    def test_example31_depth0(self, example31):
        cert = certify_copositivity(example31)
        assert cert.verdict is Verdict.COPOSITIVE
        assert cert.stats.max_depth_reached == 0

    def test_copositive_soundness_against_oracle(self, rng):
        for _ in range(6):
            A = rand_diag_dominant_tensor(rng, 3, 2, off_scale=4)
            cert = certify_copositivity(A)
            if cert.verdict is Verdict.COPOSITIVE:
                assert simplex_grid_min(A, 50).min_value >= 0

    def test_budget_exhaustion_indeterminate(self):
        # boundary matrix with a zero on the simplex needs unbounded depth
        A = from_matrix([[F(1), F(-1)], [F(-1), F(1)]])
        cert = certify_copositivity(A, max_depth=6)
        assert cert.verdict in (Verdict.COPOSITIVE, Verdict.INDETERMINATE)
        if cert.verdict is Verdict.INDETERMINATE:
            assert cert.stats.diameter_unresolved is not None

    def test_fifo_lifo_same_verdict(self, rng):
        for _ in range(10):
            A = rand_rational_tensor(rng, 3, 2)
            v1 = certify_copositivity(A, max_depth=16, order="fifo").verdict
            v2 = certify_copositivity(A, max_depth=16, order="lifo").verdict
            assert v1 == v2

    def test_d1_shortcut(self):
        pos = SymTensorBuilder(3, 1).set((1,), F(1)).build()
        assert certify_copositivity(pos).verdict is Verdict.COPOSITIVE
        neg = SymTensorBuilder(3, 1).set((2,), F(-1)).build()
        cert = certify_copositivity(neg)
        assert cert.verdict is Verdict.NOT_COPOSITIVE
        assert cert.recheck(neg)

    def test_bad_budgets(self, example31):
        with pytest.raises(ValueError):
            certify_copositivity(example31, max_depth=-1)
        with pytest.raises(ValueError):
            certify_copositivity(example31, simplex_budget=0)
