"""Cayley digraphs on finite Abelian groups.

Groups are kept in invariant-factor form.  Distances are directed: a step
applies one generator, inverses are never added.  BFS from the identity
gives the diameter because these digraphs are vertex-transitive.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotGenerating
from .lattice import IntMatrix, inverse_unimodular, smith_normal_form

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{s1} + ... + Z_{sn} with s1 | s2 | ... | sn, all si >= 1."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if not factors:
            raise ValueError("group needs at least one factor")
        if any(f < 1 for f in factors):
            raise ValueError("factors must be positive")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"factors must form a divisibility chain: {a} ∤ {b}")
        object.__setattr__(self, "factors", factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    @property
    def is_cyclic_presentation(self) -> bool:
        """True when every factor except the last is trivial."""
        return all(f == 1 for f in self.factors[:-1])

    def canonical(self, element: Sequence[int]) -> GroupElement:
        if len(element) != self.rank:
            raise DimensionMismatch(
                f"element of length {len(element)} in a rank-{self.rank} group"
            )
        return tuple(int(e) % f for e, f in zip(element, self.factors))

    def index(self, element: Sequence[int]) -> int:
        """Mixed-radix rank of a canonical element (row-major)."""
        idx = 0
        for e, f in zip(element, self.factors):
            idx = idx * f + e
        return idx

    def element_at(self, index: int) -> GroupElement:
        coords = []
        for f in reversed(self.factors):
            index, r = divmod(index, f)
            coords.append(r)
        return tuple(reversed(coords))


@dataclass(frozen=True)
class CayleyDigraph:
    """A finite Abelian group with an ordered list of generator elements."""

    group: AbelianGroup
    generators: tuple[GroupElement, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a Cayley digraph needs at least one generator")
        gens = tuple(self.group.canonical(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    @property
    def degree(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return self.group.order

    def validation_report(self) -> list[str]:
        """Advisory findings: duplicate generators, identity generators,
        and failure to generate."""
        findings = []
        seen = Counter(self.generators)
        for g, c in sorted(seen.items()):
            if c > 1:
                findings.append(f"duplicate generator {g} appears {c} times")
        if self.group.identity in seen and self.order > 1:
            findings.append("identity generator contributes only loops")
        try:
            _bfs_distances(self)
        except NotGenerating as exc:
            findings.append(str(exc))
        return findings

    def to_json_dict(self) -> dict:
        return {
            "factors": list(self.group.factors),
            "generators": [list(g) for g in self.generators],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def digraph_from_json_dict(obj: dict) -> CayleyDigraph:
    """Parse {"factors": [...], "generators": [[...], ...]} or the cyclic
    shorthand {"modulus": N, "generators": [a, b, ...]}."""
    if not isinstance(obj, dict):
        raise ValueError("digraph JSON must be an object")
    if "modulus" in obj:
        modulus = obj["modulus"]
        gens = obj.get("generators")
        if not isinstance(modulus, int) or modulus < 1:
            raise ValueError("'modulus' must be a positive integer")
        if not isinstance(gens, list) or not all(isinstance(g, int) for g in gens):
            raise ValueError("cyclic shorthand needs integer 'generators'")
        group = AbelianGroup((modulus,))
        return CayleyDigraph(group, tuple((g,) for g in gens))
    factors = obj.get("factors")
    gens = obj.get("generators")
    if not isinstance(factors, list) or not isinstance(gens, list):
        raise ValueError("digraph JSON needs 'factors' and 'generators'")
    group = AbelianGroup(tuple(factors))
    return CayleyDigraph(group, tuple(tuple(g) for g in gens))


def digraph_from_json(text: str) -> CayleyDigraph:
    return digraph_from_json_dict(json.loads(text))


def group_from_matrix(m: IntMatrix) -> CayleyDigraph:
    """Invariant-factor presentation of the quotient digraph of a matrix.

    Returns the Cayley digraph on Z_{s1}+...+Z_{sn} whose generators are
    the columns of the row transform of the Smith decomposition, reduced
    to canonical residues.  It is isomorphic to the digraph on Z^n / m Z^n
    whose arcs are the canonical basis steps.
    """
    dec = smith_normal_form(m)
    group = AbelianGroup(dec.invariant_factors)
    gens = tuple(group.canonical(dec.u.column(j)) for j in range(m.n))
    return CayleyDigraph(group, gens)


def _bfs_distances(digraph: CayleyDigraph) -> list[int]:
    """Directed distances from the identity, indexed by mixed-radix rank.

    Raises NotGenerating when the generators do not reach every element.
    """
    group = digraph.group
    order = group.order
    dist = [-1] * order
    dist[group.index(group.identity)] = 0

    if group.is_cyclic_presentation:
        mod = group.factors[-1]
        steps = sorted({g[-1] for g in digraph.generators})
        frontier = [0]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for v in frontier:
                for a in steps:
                    w = v + a
                    if w >= mod:
                        w -= mod
                    if dist[w] < 0:
                        dist[w] = level
                        nxt.append(w)
            frontier = nxt
    else:
        factors = group.factors
        gens = sorted(set(digraph.generators))
        frontier = [group.identity]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for v in frontier:
                for g in gens:
                    w = tuple((a + b) % f for a, b, f in zip(v, g, factors))
                    idx = group.index(w)
                    if dist[idx] < 0:
                        dist[idx] = level
                        nxt.append(w)
            frontier = nxt

    reached = sum(1 for d in dist if d >= 0)
    if reached < order:
        raise NotGenerating(
            f"generators reach only {reached} of {order} elements"
        )
    return dist


def diameter_bfs(digraph: CayleyDigraph) -> int:
    """Exact directed diameter via breadth-first search from the identity."""
    return max(_bfs_distances(digraph))


def distance_distribution(digraph: CayleyDigraph) -> dict[int, int]:
    """Histogram distance -> element count; counts sum to the group order."""
    return dict(sorted(Counter(_bfs_distances(digraph)).items()))


def density(order: int, degree: int, diameter: int) -> Fraction:
    """Exact density N / (k + d)^d of a digraph with the given parameters."""
    if order < 1 or degree < 1 or diameter < 0:
        raise ValueError("need order >= 1, degree >= 1, diameter >= 0")
    return Fraction(order, (diameter + degree) ** degree)


def verify_multiplier_isomorphism(
    modulus: int,
    gens_a: Iterable[int],
    gens_b: Iterable[int],
    mult: int,
) -> bool:
    """True iff x -> mult*x maps one cyclic generator multiset onto the other.

    Requires gcd(mult, modulus) = 1; a non-invertible multiplier yields
    False rather than an error.
    """
    a = sorted(g % modulus for g in gens_a)
    b = sorted(g % modulus for g in gens_b)
    if len(a) != len(b):
        raise ValueError("generator lists must have the same length")
    if math.gcd(mult, modulus) != 1:
        return False
    return sorted((mult * g) % modulus for g in a) == b


@dataclass(frozen=True)
class CyclicPresentation:
    """Matrix presentation of a cyclic Cayley digraph with ordered generators.

    The columns of ``matrix`` span the relation lattice of the generator
    map phi(x) = sum x_i g_i mod N, so the quotient digraph of ``matrix``
    is the given digraph with basis step i acting as generator g_i.  When
    ``label_faithful`` is true the transforms satisfy u @ matrix @ v == s
    with s = diag(1, ..., 1, N) and the last row of u congruent to the
    generators, so vertex labels read off through u agree with phi.
    """

    modulus: int
    generators: tuple[int, ...]
    matrix: IntMatrix
    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    label_faithful: bool

    @property
    def digraph(self) -> CayleyDigraph:
        d = len(self.generators)
        group = AbelianGroup((1,) * (d - 1) + (self.modulus,))
        gens = tuple((0,) * (d - 1) + (g,) for g in self.generators)
        return CayleyDigraph(group, gens)

    def label(self, point: Sequence[int]) -> int:
        """phi(point) = sum point_i * g_i mod N."""
        return sum(x * g for x, g in zip(point, self.generators)) % self.modulus


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _content_one_lift(gens: Sequence[int], modulus: int) -> list[int] | None:
    """A lift g' ≡ gens (mod modulus) whose entries have gcd 1, if found."""
    d = len(gens)
    base = [g % modulus for g in gens]
    if math.gcd(*base, modulus) != 1:
        raise NotGenerating("generators do not generate the cyclic group")
    if math.gcd(*base) == 1 if d > 1 else abs(base[0]) == 1:
        return base
    offsets = range(-4, 8)
    for pos0 in range(d):
        for k0 in offsets:
            cand0 = list(base)
            cand0[pos0] += k0 * modulus
            if math.gcd(*cand0) == 1 if d > 1 else abs(cand0[0]) == 1:
                return cand0
            if d == 1:
                continue
            for pos1 in range(d):
                if pos1 == pos0:
                    continue
                for k1 in range(-64, 64):
                    cand = list(cand0)
                    cand[pos1] += k1 * modulus
                    if math.gcd(*cand) == 1:
                        return cand
    return None


def cyclic_presentation(modulus: int, generators: Sequence[int]) -> CyclicPresentation:
    """Present Cay(Z_modulus, generators) as a quotient of Z^d by a matrix.

    The generator order is preserved: basis step i of the quotient acts as
    generator i.  Falls back to an order-agnostic Smith decomposition
    (``label_faithful=False``) in the rare cases where no unimodular row
    transform can carry the generator labels, e.g. a single generator
    other than ±1.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    gens = tuple(int(g) % modulus for g in generators)
    if not gens:
        raise ValueError("need at least one generator")
    d = len(gens)
    if math.gcd(*gens, modulus) != 1:
        raise NotGenerating("generators do not generate the cyclic group")

    lift = _content_one_lift(gens, modulus)
    if lift is None:
        # order-agnostic fallback: relation lattice is still correct
        reduced = _reduce_row_to_gcd([g if g else modulus for g in gens])
        matrix = _kernel_matrix(reduced.v_columns, modulus)
        dec = smith_normal_form(matrix)
        return CyclicPresentation(
            modulus, gens, matrix, dec.u, dec.s, dec.v, label_faithful=False
        )

    reduced = _reduce_row_to_gcd(lift)
    if reduced.gcd != 1:
        raise AssertionError("content-one lift did not reduce to 1")
    matrix = _kernel_matrix(reduced.v_columns, modulus)

    w = inverse_unimodular(IntMatrix.from_rows(reduced.v_columns))
    u_rows = [list(row) for row in w.rows]
    if d > 1:
        u_rows[0], u_rows[-1] = u_rows[-1], u_rows[0]
    u = IntMatrix.from_rows(u_rows)

    b = u @ matrix
    last = b.rows[-1]
    if any(e % modulus for e in last):
        raise AssertionError("kernel construction lost the generator row")
    c_rows = [list(row) for row in b.rows]
    c_rows[-1] = [e // modulus for e in last]
    c = IntMatrix.from_rows(c_rows)
    v2 = inverse_unimodular(c)
    s = IntMatrix.diagonal((1,) * (d - 1) + (modulus,))
    if (u @ matrix) @ v2 != s:
        raise AssertionError("presentation transforms failed self-check")
    if [e % modulus for e in u.rows[-1]] != list(gens):
        raise AssertionError("generator row lost during presentation")
    return CyclicPresentation(modulus, gens, matrix, u, s, v2, label_faithful=True)


@dataclass
class _RowReduction:
    gcd: int
    v_columns: list[list[int]]  # unimodular matrix as row-major lists


def _reduce_row_to_gcd(row: Sequence[int]) -> _RowReduction:
    """Column operations sending ``row`` to (gcd, 0, ..., 0); returns the
    applied unimodular matrix (det +1)."""
    d = len(row)
    r = [int(x) for x in row]
    v = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for j in range(1, d):
        a, b = r[0], r[j]
        if b == 0:
            continue
        g, x, y = _extended_gcd(a, b)
        p, q = b // g, a // g
        for i in range(d):
            c0, cj = v[i][0], v[i][j]
            v[i][0] = x * c0 + y * cj
            v[i][j] = -p * c0 + q * cj
        r[0], r[j] = g, 0
    if r[0] < 0:
        for i in range(d):
            v[i][0] = -v[i][0]
        r[0] = -r[0]
    return _RowReduction(gcd=r[0], v_columns=v)


def _kernel_matrix(v: list[list[int]], modulus: int) -> IntMatrix:
    """Basis of the relation lattice: first column scaled by the modulus."""
    d = len(v)
    return IntMatrix.from_rows(
        [[v[i][j] * (modulus if j == 0 else 1) for j in range(d)] for i in range(d)]
    )
