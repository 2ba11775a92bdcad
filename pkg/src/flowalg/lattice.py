"""The Euclidean lattice of integer flows: Gram data, characteristic flows
and potentials, coset systems, and the theta function by two independent
routes.

The lattice basis is the family of basic flows of the non-forest edges in
ascending id order.  Its Gram determinant equals the number of maximal
forests; that identity, the norm identity for characteristic flows, and the
agreement of the factored theta product with brute-force enumeration are all
asserted where they are cheap and verified corpus-wide by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import CheckError, InputError
from .graph import Graph
from .linalg import det_int, enumerate_by_norm, min_norm_affine
from .series import QSeries, psi_series
from .tutte import complexity, tutte


@dataclass(frozen=True)
class FlowLattice:
    chords: tuple[int, ...]                    # non-forest edge ids, ascending
    basis: tuple[tuple[int, ...], ...]         # basic flows over edge positions
    gram: tuple[tuple[int, ...], ...]
    determinant: int


@dataclass(frozen=True)
class CharacteristicFlow:
    """Minimum-norm rational flow carrying unit value on one edge.

    ``chi`` is expressed in reference coordinates, so ``chi[e]`` equals
    ``direction`` (+1 along the stored arc, -1 against it).  ``potential``
    is the vertex function vanishing at the arc's head whose coboundary
    reproduces ``chi`` off the distinguished edge.
    """
    edge: int
    direction: int
    chi: tuple[Fraction, ...]
    potential: dict[int, Fraction]
    norm: Fraction

    def __post_init__(self):
        object.__setattr__(self, "potential", dict(self.potential))


@dataclass(frozen=True)
class CosetSystem:
    chords: tuple[int, ...]
    char_flows: tuple[tuple[Fraction, ...], ...]  # zero-extended into X
    indices: tuple[int, ...]
    rescaled: tuple[tuple[int, ...], ...]         # phi_i = r_i * chi_i
    weights: tuple[int, ...]                      # w_i = <phi_i, phi_i>
    representatives: tuple[tuple[int, ...], ...]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def characteristic_flow(g: Graph, eid: int, direction: int = 1
                        ) -> CharacteristicFlow:
    """Unit electric current through one edge: the unique minimum-norm
    rational flow with value 1 on the chosen arc.

    Raises ``InputError`` for cut-edges, where every flow vanishes on the
    edge and the constraint is infeasible.
    """
    if direction not in (1, -1):
        raise InputError("direction must be +1 or -1")
    _, tail, head = g.edge(eid)
    if g.is_cut_edge(eid):
        raise InputError(
            f"edge {eid} is a cut-edge: the flow space forces value 0 on it")
    pos = g.position(eid)
    rows = [[Fraction(x) for x in row] for row in g.incidence_rows()]
    chi = min_norm_affine(rows, [(pos, Fraction(direction))],
                          ncols=g.num_edges)
    norm = sum(x * x for x in chi)
    head_a = head if direction == 1 else tail
    tail_a = tail if direction == 1 else head
    potential = _integrate_potential(g, eid, chi, head_a)
    if norm != 1 + potential[tail_a]:
        raise CheckError("potential does not reproduce the flow norm")
    return CharacteristicFlow(eid, direction, tuple(chi), potential, norm)


def _integrate_potential(g: Graph, eid: int, chi, base: int
                         ) -> dict[int, Fraction]:
    """Vertex potential with value 0 at ``base``: integrate chi along edges
    other than ``eid``; verified against every edge afterwards."""
    potential = {v: None for v in g.vertices}
    potential[base] = Fraction(0)
    queue = [base]
    while queue:
        nxt = []
        for u in queue:
            for other_eid, other in g.adjacency[u]:
                if other_eid == eid or potential[other] is not None:
                    continue
                _, t, h = g.edge(other_eid)
                val = chi[g.position(other_eid)]
                potential[other] = (potential[u] + val if other == h
                                    else potential[u] - val)
                nxt.append(other)
        queue = nxt
    for v in g.vertices:
        if potential[v] is None:
            potential[v] = Fraction(0)
    for other_eid, t, h in g.edges:
        if other_eid == eid or t == h:
            continue
        if chi[g.position(other_eid)] != potential[h] - potential[t]:
            raise CheckError("flow is not a potential difference off the edge")
    return potential


def norm_identity_check(g: Graph, eid: int) -> bool:
    """Exact test of <chi, chi> = kappa(X) / kappa(X minus e)."""
    flow = characteristic_flow(g, eid)
    return flow.norm == Fraction(complexity(g), complexity(g.delete([eid])))


def lattice(g: Graph) -> FlowLattice:
    """Basic-flow basis and Gram matrix; the determinant is computed exactly
    and asserted equal to the number of maximal forests."""
    forest = g.maximal_forest()
    chords = g.chords(forest)
    basis = [g.basic_flow(forest, c) for c in chords]
    gram = [[_dot(b1, b2) for b2 in basis] for b1 in basis]
    det = det_int(gram)
    kappa = complexity(g)
    if det != kappa:
        raise CheckError(f"Gram determinant {det} != forest count {kappa}")
    return FlowLattice(chords, tuple(map(tuple, basis)),
                       tuple(map(tuple, gram)), det)


def coset_system(g: Graph) -> CosetSystem:
    """Orthogonal characteristic flows of the chords in successively
    edge-deleted subgraphs, their integrality indices, and explicit coset
    representatives of the subgroup they generate."""
    forest = g.maximal_forest()
    chords = g.chords(forest)
    basis = [g.basic_flow(forest, c) for c in chords]
    char_flows = []
    sub = g
    for idx, c in enumerate(chords):
        flow = characteristic_flow(sub, c)
        extended = [Fraction(0)] * g.num_edges
        for other_eid in sub.edge_ids:
            extended[g.position(other_eid)] = flow.chi[sub.position(other_eid)]
        char_flows.append(tuple(extended))
        sub = sub.delete([c])
    indices = tuple(lcm(*(x.denominator for x in chi)) if chi else 1
                    for chi in char_flows)
    rescaled = []
    weights = []
    for r, chi in zip(indices, char_flows):
        phi = [x * r for x in chi]
        if any(x.denominator != 1 for x in phi):
            raise CheckError("index rescaling did not clear denominators")
        phi = [int(x) for x in phi]
        rescaled.append(tuple(phi))
        weights.append(_dot(phi, phi))
    for h in range(len(rescaled)):
        for k in range(h + 1, len(rescaled)):
            if _dot(rescaled[h], rescaled[k]) != 0:
                raise CheckError("characteristic flows are not orthogonal")
    reps = [tuple(0 for _ in range(g.num_edges))]
    for i, r in enumerate(indices):
        reps = [tuple(x + gi * bi for x, bi in zip(vec, basis[i]))
                for vec in reps for gi in range(r)]
    expected = 1
    for r in indices:
        expected *= r
    if len(set(reps)) != expected:
        raise CheckError("coset representatives are not distinct")
    prod_w = 1
    for w in weights:
        prod_w *= w
    if prod_w != complexity(g) * expected * expected:
        raise CheckError("weight product fails the determinant identity")
    return CosetSystem(chords, tuple(char_flows), indices,
                       tuple(rescaled), tuple(weights), tuple(reps))


def theta_product(g: Graph, bound) -> QSeries:
    """Theta function of the integer flow lattice via the orthogonal coset
    factorization: a sum over coset representatives of products of
    translated one-dimensional theta series."""
    bound = Fraction(bound)
    if bound < 0:
        raise InputError("truncation bound must be nonnegative")
    system = coset_system(g)
    total = QSeries.zero(bound)
    for lam in system.representatives:
        term = QSeries.one(bound)
        for phi, w in zip(system.rescaled, system.weights):
            alpha = Fraction(_dot(lam, phi), w)
            term = term * psi_series(alpha, w, bound)
        total = total + term
    if not total.has_integer_exponents():
        raise CheckError("theta product produced non-integer exponents")
    if total.coefficient(0) != 1:
        raise CheckError("theta product constant term is not 1")
    return total


def theta_enumerate(g: Graph, bound) -> QSeries:
    """Theta function by direct enumeration of all lattice vectors of norm
    up to the bound; the oracle route."""
    bound = Fraction(bound)
    if bound < 0:
        raise InputError("truncation bound must be nonnegative")
    lat = lattice(g)
    gram = [list(row) for row in lat.gram]
    acc: dict[Fraction, int] = {}
    for vec in enumerate_by_norm(gram, bound):
        norm = Fraction(sum(vec[a] * gram[a][b] * vec[b]
                            for a in range(len(vec)) for b in range(len(vec))))
        if norm <= bound:
            acc[norm] = acc.get(norm, 0) + 1
    return QSeries.from_dict(acc, bound)


def flows_of_norm(g: Graph, s: int) -> int:
    """Number of integer flows of squared norm exactly s."""
    if s < 0:
        raise InputError("norm must be nonnegative")
    return theta_enumerate(g, s).coefficient(s)


def codichromatic_compare(g1: Graph, g2: Graph, bound) -> dict:
    """Compare two graphs: equality of Tutte polynomials and the first
    exponent at which their theta series differ (None if they agree up to
    the bound)."""
    t_equal = tutte(g1) == tutte(g2)
    theta1 = theta_enumerate(g1, bound)
    theta2 = theta_enumerate(g2, bound)
    first = theta1.first_difference(theta2)
    return {
        "tutte_equal": t_equal,
        "theta_first_difference": first,
        "theta_left": theta1,
        "theta_right": theta2,
    }
