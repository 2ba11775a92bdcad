"""Brute-force relation matrices on contractions and everything derived
from them: graded rank sequences, torsion checks, integral circulation
lattices, and product-quotient groups.

This is the definition-level oracle: each degree-j relation matrix is built
literally by contracting every (j-1)-subset of edges and emitting one signed
conservation row per image vertex.  Ranks of these matrices give the rank
sequence independently of the Tutte route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .circulation import Circulation, ZZ, subset_masks
from .errors import InputError, require_capacity
from .graph import Graph
from .linalg import (integer_kernel_basis, rank_int_rows, rref,
                     smith_normal_form)


@dataclass(frozen=True)
class RelationMatrix:
    """Signed incidence relations of all (j-1)-fold contractions, expressed
    over the degree-j subset basis.

    ``rows[i]`` is sparse (column index -> coefficient) and labeled by
    ``row_labels[i] = (sigma mask, image vertex)``; zero rows are kept so
    the generating set matches the definition row for row.
    """
    degree: int
    basis: tuple[int, ...]
    rows: tuple[tuple[tuple[int, int], ...], ...]
    row_labels: tuple[tuple[int, int], ...]

    def sparse_rows(self) -> list[dict[int, int]]:
        return [dict(r) for r in self.rows]

    def dense(self) -> list[list[int]]:
        out = []
        for row in self.rows:
            dense = [0] * len(self.basis)
            for col, val in row:
                dense[col] = val
            out.append(dense)
        return out

    @property
    def num_columns(self) -> int:
        return len(self.basis)


def relation_matrix(g: Graph, j: int) -> RelationMatrix:
    """Degree-j relation matrix; built by contracting each (j-1)-subset and
    writing the conservation row of every image vertex."""
    m = g.num_edges
    require_capacity(m)
    if not 0 <= j <= m:
        raise InputError(f"degree {j} out of range 0..{m}")
    basis = tuple(subset_masks(m, j))
    col = {mask: i for i, mask in enumerate(basis)}
    rows = []
    labels = []
    for sigma in subset_masks(m, j - 1) if j >= 1 else []:
        image = g.contract(g.ids_of(sigma)).graph
        incident: dict[int, dict[int, int]] = {v: {} for v in image.vertices}
        for eid, tail, head in image.edges:
            if tail == head:
                continue
            c = col[sigma | (1 << g.position(eid))]
            incident[head][c] = incident[head].get(c, 0) + 1
            incident[tail][c] = incident[tail].get(c, 0) - 1
        for v in image.vertices:
            entries = tuple(sorted((c, val) for c, val in incident[v].items()
                                   if val != 0))
            rows.append(entries)
            labels.append((sigma, v))
    return RelationMatrix(j, basis, tuple(rows), tuple(labels))


def rank_sequence(g: Graph) -> tuple[int, ...]:
    """d_j = C(m, j) - rank(relations of degree j) for j = 0..m."""
    m = g.num_edges
    require_capacity(m)
    out = []
    for j in range(m + 1):
        rel = relation_matrix(g, j)
        rnk = rank_int_rows(rel.sparse_rows(), rel.num_columns)
        out.append(comb(m, j) - rnk)
    return tuple(out)


def torsion_check(g: Graph, j: int) -> bool:
    """True iff the degree-j quotient is free: every nonzero invariant
    factor of the relation matrix equals 1."""
    rel = relation_matrix(g, j)
    dense = [row for row in rel.dense() if any(row)]
    if not dense:
        return True
    return all(f == 1 for f in smith_normal_form(dense))


def integral_circulations(g: Graph, j: int) -> list[tuple[int, ...]]:
    """Basis of the integer kernel of the degree-j relation matrix, in
    Hermite-style echelon form; coordinates follow the subset basis."""
    rel = relation_matrix(g, j)
    dense = [row for row in rel.dense() if any(row)]
    if not dense:
        basis = [[int(a == b) for a in range(rel.num_columns)]
                 for b in range(rel.num_columns)]
        return [tuple(v) for v in basis]
    return [tuple(v) for v in integer_kernel_basis(dense)]


def circulation_from_coords(g: Graph, j: int,
                            coords, ring=ZZ) -> Circulation:
    """Wrap a coordinate vector over the degree-j subset basis as a
    circulation table."""
    masks = subset_masks(g.num_edges, j)
    return Circulation(ring, {mask: c for mask, c in zip(masks, coords) if c})


def product_torsion(g: Graph, i: int, j: int) -> tuple[int, ...]:
    """Invariant factors (> 1) of the degree-(i+j) integer circulation
    lattice modulo products of degree-i and degree-j lattice elements.

    Degenerate degrees (rank-zero lattice, e.g. any forest) yield the
    trivial group, reported as an empty tuple.
    """
    if i < 1 or j < 1:
        raise InputError("product torsion needs degrees i, j >= 1")
    m = g.num_edges
    require_capacity(m)
    if i + j > m:
        return ()
    basis_hi = integral_circulations(g, i + j)
    if not basis_hi:
        return ()
    low_i = [circulation_from_coords(g, i, v)
             for v in integral_circulations(g, i)]
    low_j = (low_i if i == j else
             [circulation_from_coords(g, j, v)
              for v in integral_circulations(g, j)])
    if not low_i or not low_j:
        return ()
    masks_hi = subset_masks(m, i + j)
    products = []
    for phi in low_i:
        for theta in low_j:
            prod = phi * theta
            products.append([int(prod.value(mask)) for mask in masks_hi])
    coeff_cols = _coordinates_in_basis(basis_hi, products)
    d = len(basis_hi)
    coeff = [[coeff_cols[p][r] for p in range(len(products))]
             for r in range(d)]
    factors = smith_normal_form(coeff)
    if len(factors) != d:
        raise InputError("product subgroup has infinite index; "
                         "the quotient is not a finite group")
    return tuple(f for f in factors if f != 1)


def _coordinates_in_basis(basis: list[tuple[int, ...]],
                          vectors: list[list[int]]) -> list[list[int]]:
    """Integer coordinates of each vector in the given lattice basis."""
    ncols = len(basis[0])
    d = len(basis)
    aug = [[Fraction(basis[r][c]) for r in range(d)]
           + [Fraction(vec[c]) for vec in vectors]
           for c in range(ncols)]
    red, pivots = rref(aug)
    if any(p >= d for p in pivots):
        raise InputError("vector outside the lattice span")
    coords = []
    for pidx in range(len(vectors)):
        coord = [Fraction(0)] * d
        for r, p in enumerate(pivots):
            coord[p] = red[r][d + pidx]
        if any(x.denominator != 1 for x in coord):
            raise InputError("vector not integral in the lattice basis")
        coords.append([int(x) for x in coord])
    return coords
