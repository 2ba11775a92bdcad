"""The graded algebra of circulations on a multigraph.

A circulation is a coefficient functional on edge subsets; the product is
subset convolution, dual to the splitting comultiplication on subsets.  The
module provides the combinatorial exponential and divided powers, nilpotence
degrees, the basic-flow monomial spanning sets whose ranks reproduce the
graded rank sequence, pseudopower (Macaulay) bounds and the structured
inequality verifier.

Coefficients live in Q, Z, or a prime field F_p with p <= 97.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb

from .errors import CapacityError, CheckError, InputError, require_capacity
from .graph import Graph
from .linalg import rank_int_rows
from .report import CheckReport
from .tutte import poincare, tutte


# -- coefficient rings -----------------------------------------------------


class Ring:
    """Arithmetic of one of the supported coefficient rings."""

    __slots__ = ("label", "char")

    def __init__(self, label: str, char: int = 0):
        self.label = label
        self.char = char

    def coerce(self, x):
        if self.char:
            if isinstance(x, Fraction):
                if x.denominator % self.char == 0:
                    raise InputError("denominator not invertible in F_p")
                return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
            return int(x) % self.char
        if self.label == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise InputError("non-integer coefficient in an integer circulation")
            return int(x)
        return int(x)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.label == other.label
                and self.char == other.char)

    def __hash__(self):
        return hash((self.label, self.char))

    def __repr__(self):
        return self.label


QQ = Ring("Q")
ZZ = Ring("Z")

_MAX_PRIME = 97


def GF(p: int) -> Ring:
    if p < 2 or p > _MAX_PRIME or any(p % d == 0 for d in range(2, p)):
        raise InputError(f"GF({p}) unsupported: need a prime p <= {_MAX_PRIME}")
    return Ring(f"F{p}", p)


# -- circulations ----------------------------------------------------------


class Circulation:
    """Coefficient table over edge-subset bit masks; absent keys are zero."""

    __slots__ = ("ring", "table")

    def __init__(self, ring: Ring, table: dict[int, object] | None = None):
        self.ring = ring
        tab = {}
        for mask, val in (table or {}).items():
            val = ring.coerce(val)
            if val != 0:
                tab[mask] = val
        self.table = tab

    @staticmethod
    def unit(ring: Ring) -> "Circulation":
        return Circulation(ring, {0: 1})

    @staticmethod
    def from_edge_vector(ring: Ring, vec) -> "Circulation":
        """Degree-1 circulation from a coefficient vector over edge
        positions."""
        return Circulation(ring, {1 << i: v for i, v in enumerate(vec) if v})

    def value(self, mask: int):
        return self.table.get(mask, self.ring.coerce(0))

    def is_zero(self) -> bool:
        return not self.table

    def degrees(self) -> set[int]:
        return {mask.bit_count() for mask in self.table}

    def is_homogeneous(self, degree: int) -> bool:
        return all(mask.bit_count() == degree for mask in self.table)

    def degree_component(self, degree: int) -> "Circulation":
        return Circulation(self.ring, {m: v for m, v in self.table.items()
                                       if m.bit_count() == degree})

    def support_masks(self) -> set[int]:
        return set(self.table)

    def _require_same_ring(self, other: "Circulation"):
        if self.ring != other.ring:
            raise InputError(
                f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Circulation") -> "Circulation":
        self._require_same_ring(other)
        acc = dict(self.table)
        for m, v in other.table.items():
            acc[m] = self.ring.add(acc.get(m, 0), v)
        return Circulation(self.ring, acc)

    def __sub__(self, other: "Circulation") -> "Circulation":
        self._require_same_ring(other)
        acc = dict(self.table)
        for m, v in other.table.items():
            acc[m] = self.ring.add(acc.get(m, 0), self.ring.neg(v))
        return Circulation(self.ring, acc)

    def scale(self, c) -> "Circulation":
        c = self.ring.coerce(c)
        return Circulation(self.ring,
                           {m: self.ring.mul(c, v) for m, v in self.table.items()})

    def __mul__(self, other: "Circulation") -> "Circulation":
        """Subset-convolution product: the value on a subset is the sum of
        products over its two-block ordered splittings."""
        self._require_same_ring(other)
        ring = self.ring
        acc: dict[int, object] = {}
        for m1, v1 in self.table.items():
            for m2, v2 in other.table.items():
                if m1 & m2:
                    continue
                k = m1 | m2
                acc[k] = ring.add(acc.get(k, 0), ring.mul(v1, v2))
        return Circulation(ring, acc)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Circulation) and self.ring == other.ring
                and self.table == other.table)

    def __repr__(self):
        return f"Circulation({self.ring}, {self.table!r})"

    def annihilates(self, rows, basis_masks) -> bool:
        """Whether every sparse relation row (column index -> coefficient,
        columns indexing ``basis_masks``) pairs to zero with this table."""
        ring = self.ring
        for row in rows:
            acc = ring.coerce(0)
            for col, coef in row.items():
                acc = ring.add(acc, ring.mul(ring.coerce(coef),
                                             self.value(basis_masks[col])))
            if acc != 0:
                return False
        return True


def exponential(phi: Circulation) -> Circulation:
    """Combinatorial exponential: the value on a subset sums, over its
    partitions into nonempty blocks, the products of the argument's block
    values.  Ring-agnostic (no division)."""
    if phi.value(0) != 0:
        raise InputError("exponential requires a vanishing degree-0 part")
    ring = phi.ring
    union = 0
    for m in phi.table:
        union |= m
    if union.bit_count() > 20:
        raise CapacityError("exponential support exceeds 20 edges")
    memo: dict[int, object] = {0: ring.coerce(1)}

    def exp_at(mask: int):
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        rest = mask ^ low
        total = ring.coerce(0)
        # every partition has a unique block through the lowest element
        sub = rest
        while True:
            block = sub | low
            v = phi.table.get(block)
            if v is not None:
                total = ring.add(total, ring.mul(v, exp_at(mask ^ block)))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[mask] = total
        return total

    acc = {}
    sub = union
    while True:
        val = exp_at(sub)
        if val != 0:
            acc[sub] = val
        if sub == 0:
            break
        sub = (sub - 1) & union
    return Circulation(ring, acc)


def divided_power(phi: Circulation, j: int) -> Circulation:
    """Degree-j component of exp(phi) for a homogeneous degree-1 argument;
    over Q this equals phi^j / j!."""
    if not phi.is_homogeneous(1):
        raise InputError("divided powers require a homogeneous degree-1 argument")
    if j < 0:
        raise InputError("divided power degree must be nonnegative")
    if j == 0:
        return Circulation.unit(phi.ring)
    ring = phi.ring
    entries = list(phi.table.items())
    acc = {}
    for chosen in combinations(entries, j):
        mask = 0
        val = ring.coerce(1)
        for m, v in chosen:
            mask |= m
            val = ring.mul(val, v)
        if val != 0:
            acc[mask] = val
    return Circulation(ring, acc)


def nilpotence(phi: Circulation) -> int:
    """Greatest n with phi^n nonzero, for homogeneous degree-1 input."""
    if not phi.is_homogeneous(1):
        raise InputError("nilpotence requires a homogeneous degree-1 argument")
    power = phi
    n = 0
    while not power.is_zero():
        n += 1
        power = power * phi
    return n


# -- monomials of basic flows ----------------------------------------------


def basic_flow_circulations(g: Graph, ring: Ring = ZZ) -> dict[int, Circulation]:
    """Chord id -> degree-1 circulation of its basic flow."""
    forest = g.maximal_forest()
    return {c: Circulation.from_edge_vector(ring, g.basic_flow(forest, c))
            for c in g.chords(forest)}


def _compositions(total: int, caps: list[int]):
    """All tuples j with sum(j) = total and 0 <= j[i] <= caps[i]."""
    if not caps:
        if total == 0:
            yield ()
        return
    for head in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - head, caps[1:]):
            yield (head,) + rest


def monomial_dimensions(g: Graph) -> list[int]:
    """Per-degree rank of the evaluation matrix of capped basic-flow
    divided-power monomials on the subset basis.

    The cap for each chord is the length of its fundamental cycle.  The
    resulting sequence equals the graded rank sequence; it is returned with
    trailing zeros trimmed.
    """
    m = g.num_edges
    require_capacity(m)
    flows = basic_flow_circulations(g)
    chords = sorted(flows)
    caps = []
    power_tables: list[list[Circulation]] = []
    for c in chords:
        beta = flows[c]
        r = len(beta.table)
        caps.append(r)
        power_tables.append([divided_power(beta, k) for k in range(r + 1)])
    dims = []
    for j in range(m + 1):
        cols = {mask: idx
                for idx, mask in enumerate(subset_masks(m, j))}
        rows = []
        for jvec in _compositions(j, caps):
            prod = Circulation.unit(ZZ)
            for idx, power in enumerate(jvec):
                if power:
                    prod = prod * power_tables[idx][power]
            if not prod.is_zero():
                rows.append({cols[mask]: int(v)
                             for mask, v in prod.table.items()})
        dims.append(rank_int_rows(rows, len(cols)))
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims


def subset_masks(m: int, j: int) -> list[int]:
    """All j-element subsets of m positions as bit masks, ascending."""
    if j < 0 or j > m:
        return []
    if j == 0:
        return [0]
    masks = []
    v = (1 << j) - 1
    limit = 1 << m
    while v < limit:
        masks.append(v)
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r
    return masks


# -- pseudopowers ----------------------------------------------------------


def macaulay_representation(a: int, j: int) -> list[tuple[int, int]]:
    """The unique expansion of a as a sum of binomials C(a_j, j) +
    C(a_{j-1}, j-1) + ... with strictly decreasing tops."""
    if a < 0 or j < 1:
        raise InputError("need a >= 0 and j >= 1")
    rep = []
    k = j
    rem = a
    while rem > 0:
        t = k
        while comb(t + 1, k) <= rem:
            t += 1
        rep.append((t, k))
        rem -= comb(t, k)
        k -= 1
    return rep


def pseudopower(a: int, j: int) -> int:
    """Macaulay growth bound: shift every binomial of the representation of
    ``a`` up by one in both arguments and re-sum.  Returns 0 for a = 0."""
    if a == 0:
        return 0
    return sum(comb(t + 1, k + 1) for t, k in macaulay_representation(a, j))


# -- structured verification -----------------------------------------------


def relation_membership_check(g: Graph) -> dict:
    """Verify that the canonical relation generators act as zero.

    Every fundamental-cycle flow, and every {-1,0,1} combination of two of
    them supported on a single cycle, is raised to all powers beyond its
    support size via repeated multiplication; each such power must vanish,
    and the power at the support size must not (over Z).  A dimension
    certificate (total monomial rank against the number of spanning
    subgraphs with full component count) rules out missed relations.
    """
    m = g.num_edges
    require_capacity(m)
    flows = basic_flow_circulations(g)
    chords = sorted(flows)
    gens: list[tuple[str, Circulation]] = []
    for c in chords:
        gens.append((f"beta[{c}]", flows[c]))
    # sign combinations of two or three fundamental flows whose support is a
    # single cycle (covers the symmetric-difference cycles and, e.g., the
    # outer triangle of K4)
    for size in (2, 3):
        for chosen in combinations(chords, size):
            for signs in product((1, -1), repeat=size - 1):
                cand = flows[chosen[0]]
                for c, sign in zip(chosen[1:], signs):
                    cand = cand + flows[c].scale(sign)
                if not cand.table:
                    continue
                if any(abs(v) > 1 for v in cand.table.values()):
                    continue
                if _supports_single_cycle(g, cand):
                    label = "".join(
                        [f"beta[{chosen[0]}]"]
                        + [f"{'+' if s > 0 else '-'}beta[{c}]"
                           for c, s in zip(chosen[1:], signs)])
                    gens.append((label, cand))
    results = []
    all_ok = True
    for label, theta in gens:
        ssize = len(theta.table)
        power = theta
        np_val = 0
        for k in range(1, m + 2):
            if power.is_zero():
                break
            np_val = k
            dp = divided_power(theta, k)
            if dp.scale(_factorial(k)) != power:
                raise CheckError("divided power and repeated product disagree")
            power = power * theta
        vanishes = np_val <= ssize
        tight = np_val == ssize
        ok = vanishes and tight
        all_ok = all_ok and ok
        results.append({"generator": label, "support": ssize,
                        "nilpotence": np_val, "vanishes_beyond_support": vanishes})
    dims = monomial_dimensions(g)
    total = sum(dims)
    expected = int(tutte(g)(1, 2))
    cert_ok = total == expected
    return {
        "generators": results,
        "dimension_total": total,
        "spanning_subgraph_count": expected,
        "dimension_certified": cert_ok,
        "passed": all_ok and cert_ok,
    }


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _supports_single_cycle(g: Graph, theta: Circulation) -> bool:
    """Whether the supporting edges form one cycle: connected with every
    incident vertex of degree exactly two (a loop counts twice)."""
    edges = []
    for mask in theta.table:
        pos = mask.bit_length() - 1
        edges.append(g.edges[pos])
    deg: dict[int, int] = {}
    for _, t, h in edges:
        deg[t] = deg.get(t, 0) + 1
        deg[h] = deg.get(h, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    # connectivity over the used vertices
    used = set(deg)
    adj = {v: set() for v in used}
    for _, t, h in edges:
        adj[t].add(h)
        adj[h].add(t)
    seen = set()
    stack = [next(iter(used))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    return seen == used


def verify_inequalities(g: Graph) -> CheckReport:
    """Numerical consequences of the algebra structure, checked on the
    computed rank sequence.  The log-concavity check is exploratory."""
    require_capacity(g.num_edges)
    raw = poincare(g)
    m = g.num_edges
    n = g.num_vertices
    k = g.num_components
    ell = len(g.cut_edges)
    top = m - ell
    d = list(raw) + [0] * max(0, top + 1 - len(raw))
    rep = CheckReport()

    d1 = d[1] if len(d) > 1 else 0
    rep.add("endpoint-values",
            d[0] == 1 and d1 == m - n + k and d[top] == 1,
            f"d0={d[0]}, d1={d1}, d_top={d[top]}")
    rep.add("support-interval",
            len(raw) == top + 1 and all(x > 0 for x in raw),
            f"nonzero degrees 0..{len(raw) - 1}, expected 0..{top}")
    ok = True
    for j in range(1, top):
        if d[j + 1] > pseudopower(d[j], j):
            ok = False
            break
    rep.add("pseudopower-growth", ok)

    flows = basic_flow_circulations(g)
    bound_poly = [1]
    for beta in flows.values():
        r = len(beta.table)
        bound_poly = _poly_mul(bound_poly, [1] * (r + 1))
    ok = all(d[j] <= (bound_poly[j] if j < len(bound_poly) else 0)
             for j in range(len(d)))
    rep.add("cycle-length-product-bound", ok)

    girth = g.girth()
    limit = top if girth == float("inf") else min(int(girth), top)
    ok = all(d[j] == (1 if j == 0 else comb(d1 + j - 1, j))
             for j in range(limit + 1))
    rep.add("girth-range-binomial", ok, f"girth={girth}")

    half = top // 2
    mono = all(d[j] <= d[j + 1] for j in range(half))
    dual = all(d[j] <= d[top - j] for j in range(half + 1))
    rep.add("front-half-monotone", mono)
    rep.add("duality-bound", dual)

    logc = all(d[j] * d[j] >= d[j - 1] * d[j + 1] for j in range(1, top))
    rep.add("log-concavity", logc, exploratory=True)
    return rep


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out
