"""Randomized algebra laws (hypothesis) and structural invariants checked
over the small-graph corpus."""

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from flowalg.circulation import (GF, QQ, ZZ, Circulation, divided_power,
                                 exponential, nilpotence)
from flowalg.graph import complete_graph, cycle_graph
from flowalg.relations import relation_matrix
from flowalg.verify import multiplication_rank_check

RINGS = [QQ, ZZ, GF(2), GF(3), GF(5)]

rings = st.sampled_from(RINGS)
masks = st.integers(min_value=0, max_value=31)
coeffs = st.integers(min_value=-4, max_value=4)


def tables(min_mask=0):
    return st.dictionaries(st.integers(min_value=min_mask, max_value=31),
                           coeffs, max_size=6)


def degree_one_tables():
    return st.dictionaries(st.sampled_from([1, 2, 4, 8, 16]), coeffs,
                           min_size=1, max_size=5)


@settings(max_examples=40)
@given(rings, tables(), tables(), tables())
def test_multiply_associative(ring, a, b, c):
    x, y, z = (Circulation(ring, t) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=40)
@given(rings, tables(), tables())
def test_multiply_commutative(ring, a, b):
    x, y = Circulation(ring, a), Circulation(ring, b)
    assert x * y == y * x


@settings(max_examples=30)
@given(rings, tables())
def test_unit_law(ring, a):
    x = Circulation(ring, a)
    assert Circulation.unit(ring) * x == x


@settings(max_examples=30)
@given(rings, st.dictionaries(st.sampled_from([1, 2, 4]), coeffs, max_size=3),
       st.dictionaries(st.sampled_from([3, 5, 6, 7]), coeffs, max_size=3))
def test_grading(ring, a, b):
    x = Circulation(ring, a)  # degree 1
    y = Circulation(ring, {m: v for m, v in b.items()})  # degree 2 or 3
    prod = x * y
    degrees_x = x.degrees()
    degrees_y = y.degrees()
    if len(degrees_x) == 1 and len(degrees_y) == 1:
        dx, dy = degrees_x.pop(), degrees_y.pop()
        assert prod.is_zero() or prod.degrees() == {dx + dy}


@settings(max_examples=40)
@given(rings, tables(min_mask=1), tables(min_mask=1))
def test_exponential_homomorphism(ring, a, b):
    a.pop(0, None)
    b.pop(0, None)
    phi, theta = Circulation(ring, a), Circulation(ring, b)
    assert exponential(phi + theta) == exponential(phi) * exponential(theta)


@settings(max_examples=40)
@given(degree_one_tables())
def test_nilpotence_characteristic_zero(table):
    for ring in (QQ, ZZ):
        phi = Circulation(ring, table)
        assert nilpotence(phi) == len(phi.table)


@settings(max_examples=40)
@given(st.sampled_from([2, 3, 5]), degree_one_tables())
def test_nilpotence_prime_field(p, table):
    phi = Circulation(GF(p), table)
    assert nilpotence(phi) == min(p - 1, len(phi.table))


@settings(max_examples=40)
@given(rings, degree_one_tables(), st.integers(0, 3), st.integers(0, 3))
def test_divided_power_binomial(ring, table, i, j):
    phi = Circulation(ring, table)
    lhs = divided_power(phi, i) * divided_power(phi, j)
    rhs = divided_power(phi, i + j).scale(comb(i + j, i))
    assert lhs == rhs


@settings(max_examples=30)
@given(degree_one_tables(), st.integers(1, 4))
def test_divided_power_is_scaled_power_over_q(table, j):
    phi = Circulation(QQ, table)
    power = Circulation.unit(QQ)
    fact = 1
    for r in range(1, j + 1):
        power = power * phi
        fact *= r
    assert divided_power(phi, j) == power.scale(Fraction(1, fact))


# -- corpus-level structural invariants --------------------------------------


def _disjoint_splits(m, rng=None, limit=None):
    splits = []
    for code in range(3 ** m):
        sigma, rho = [], []
        c = code
        for i in range(m):
            c, r = divmod(c, 3)
            if r == 1:
                sigma.append(i)
            elif r == 2:
                rho.append(i)
        splits.append((sigma, rho))
    if limit is not None and len(splits) > limit:
        splits = rng.sample(splits, limit)
    return splits


def test_contraction_commutes(corpus5, corpus7):
    rng = random.Random(7)
    six = [g for g in corpus7 if g.num_edges == 6]
    jobs = [(g, None) for g in corpus5] + [(g, 150) for g in six]
    for g, limit in jobs:
        ids = list(g.edge_ids)
        for sig_idx, rho_idx in _disjoint_splits(len(ids), rng, limit):
            sigma = [ids[i] for i in sig_idx]
            rho = [ids[i] for i in rho_idx]
            direct = g.contract(sigma + rho).graph
            stepwise = g.contract(sigma).graph.contract(rho).graph
            assert direct == stepwise


def test_cut_row_sums_over_corpus(corpus5):
    rng = random.Random(11)
    for g in corpus5:
        for _ in range(3):
            inside = {v for v in g.vertices if rng.random() < 0.5}
            total = [0] * g.num_edges
            for v in inside:
                total = [a + b for a, b in zip(total, g.incidence_row(v))]
            for i, (_, tail, head) in enumerate(g.edges):
                expect = (1 if head in inside else 0) - (1 if tail in inside else 0)
                assert total[i] == expect


def test_basic_flows_are_flows(corpus5):
    for g in corpus5:
        forest = g.maximal_forest()
        assert len(forest) == g.num_vertices - g.num_components
        for c in g.chords(forest):
            flow = g.basic_flow(forest, c)
            for v in g.vertices:
                row = g.incidence_row(v)
                assert sum(a * b for a, b in zip(row, flow)) == 0


def test_flow_closure(corpus4):
    # the product of two flows annihilates the degree-2 relations
    for g in corpus4:
        forest = g.maximal_forest()
        chords = g.chords(forest)
        if len(chords) < 2:
            continue
        rel = relation_matrix(g, 2)
        flows = [Circulation.from_edge_vector(ZZ, g.basic_flow(forest, c))
                 for c in chords]
        for a in flows:
            for b in flows:
                assert (a * b).annihilates(rel.sparse_rows(), rel.basis)


def test_multiplication_rank_small_corpus(corpus4):
    for g in corpus4:
        assert multiplication_rank_check(g)
    assert multiplication_rank_check(complete_graph(4))
    assert multiplication_rank_check(cycle_graph(6))


def test_mod_p_rank_matches_exact():
    import numpy as np

    from flowalg.linalg import rank
    from flowalg.verify import _rank_mod_p

    rng = random.Random(17)
    for _ in range(80):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        mat = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        assert _rank_mod_p(np.array(mat, dtype=np.int64)) == rank(mat)
