from math import comb

import pytest

from flowalg.errors import CapacityError, InputError
from flowalg.graph import (bouquet_graph, build, complete_graph, cycle_graph,
                           path_graph)
from flowalg.linalg import det_int, rank_int_rows
from flowalg.relations import (integral_circulations, product_torsion,
                               rank_sequence, relation_matrix, torsion_check)


def test_relation_matrix_degree_zero_is_empty():
    rel = relation_matrix(cycle_graph(3), 0)
    assert rel.rows == ()
    assert rel.num_columns == 1


def test_relation_matrix_triangle_degree_one():
    rel = relation_matrix(cycle_graph(3), 1)
    assert len(rel.rows) == 3
    assert rank_int_rows(rel.sparse_rows(), rel.num_columns) == 2
    # rows for the empty contraction sum to zero
    total = {}
    for row in rel.rows:
        for col, val in row:
            total[col] = total.get(col, 0) + val
    assert all(v == 0 for v in total.values())


def test_relation_matrix_triangle_degree_two():
    rel = relation_matrix(cycle_graph(3), 2)
    assert len(rel.rows) == 6  # three contractions, two vertices each
    assert rank_int_rows(rel.sparse_rows(), rel.num_columns) == 2


def test_relation_rows_supported_on_extensions():
    g = complete_graph(4)
    rel = relation_matrix(g, 3)
    for row, (sigma, _) in zip(rel.rows, rel.row_labels):
        for col, _ in row:
            mask = rel.basis[col]
            assert mask & sigma == sigma  # column contains the contraction set


def test_rank_sequence_examples():
    assert rank_sequence(cycle_graph(3)) == (1, 1, 1, 1)
    assert rank_sequence(complete_graph(4)) == (1, 3, 6, 10, 11, 6, 1)
    assert rank_sequence(path_graph(4)) == (1, 0, 0, 0)


def test_torsion_check():
    assert torsion_check(cycle_graph(3), 2)
    assert torsion_check(cycle_graph(3), 0)
    k4 = complete_graph(4)
    assert all(torsion_check(k4, j) for j in range(7))


def test_integral_circulations_triangle():
    basis = integral_circulations(cycle_graph(3), 1)
    assert len(basis) == 1
    assert [abs(x) for x in basis[0]] == [1, 1, 1]


def test_integral_circulations_forest_and_k4():
    assert integral_circulations(path_graph(3), 1) == []
    basis = integral_circulations(complete_graph(4), 1)
    assert len(basis) == 3
    gram = [[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis]
    assert det_int(gram) == 16


def test_integral_circulations_annihilate_relations():
    g = complete_graph(4)
    for j in (1, 2, 3):
        rel = relation_matrix(g, j)
        for vec in integral_circulations(g, j):
            for row in rel.rows:
                assert sum(val * vec[col] for col, val in row) == 0


def test_product_torsion_cycles():
    for n in range(2, 7):
        g = cycle_graph(n)
        for i in range(1, n):
            for j in range(1, n - i + 1):
                expected = comb(i + j, i)
                factors = product_torsion(g, i, j)
                assert factors == (expected,), (n, i, j, factors)


def test_product_torsion_triangle_instance():
    assert product_torsion(cycle_graph(3), 1, 1) == (2,)


def test_product_torsion_forest_trivial():
    assert product_torsion(path_graph(4), 1, 1) == ()
    assert product_torsion(path_graph(4), 2, 3) == ()


def test_product_torsion_input_validation():
    with pytest.raises(InputError):
        product_torsion(cycle_graph(3), 0, 1)


def test_rank_additivity_on_relation_route():
    # d_j(X) = d_j(X minus e) + d_(j-1)(X contract e) for non-cut edges,
    # measured directly on relation-matrix ranks
    for g in [complete_graph(4), cycle_graph(4), bouquet_graph(2),
              build([(1, 1, 2), (2, 1, 2), (3, 2, 3), (4, 3, 3)])]:
        d = rank_sequence(g)
        for eid in g.edge_ids:
            if g.is_cut_edge(eid):
                deleted = rank_sequence(g.delete([eid]))
                for j in range(len(deleted)):
                    assert d[j] == deleted[j]
                continue
            deleted = rank_sequence(g.delete([eid]))
            contracted = rank_sequence(g.contract([eid]).graph)
            for j in range(g.num_edges + 1):
                dj_del = deleted[j] if j < len(deleted) else 0
                dj_con = contracted[j - 1] if 1 <= j <= len(contracted) else 0
                assert d[j] == dj_del + dj_con


def test_capacity_guard():
    big = build([(i, 1, 2) for i in range(1, 22)])
    with pytest.raises(CapacityError):
        relation_matrix(big, 1)
    with pytest.raises(CapacityError):
        rank_sequence(big)
