"""Exact integer lattice algebra.

Square integer matrices with unbounded entries, Smith normal form with
unimodular transforms, exact determinants, and congruence of integer
vectors modulo a nonsingular matrix.  No floating point is used anywhere
in this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable square matrix of exact integers, stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have dimension >= 1")
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def row(self, i: int) -> IntVector:
        return self.rows[i]

    def column(self, j: int) -> IntVector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def scale(self, t: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(t * e for e in row) for row in self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise DimensionMismatch(f"cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        cols = other.transpose().rows
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
        )

    def mat_vec(self, x: Sequence[int]) -> IntVector:
        if len(x) != self.n:
            raise DimensionMismatch(f"vector of length {len(x)} against {self.n}x{self.n} matrix")
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.rows)

    def diagonal_entries(self) -> IntVector:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_diagonal(self) -> bool:
        return all(e == 0 for i, row in enumerate(self.rows) for j, e in enumerate(row) if i != j)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "IntMatrix":
        if not isinstance(obj, dict) or "rows" not in obj:
            raise ValueError("matrix JSON must be an object with a 'rows' field")
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("'rows' must be a list of lists")
        for r in rows:
            for e in r:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise ValueError("matrix entries must be exact integers")
        m = cls.from_rows(rows)
        if "n" in obj and obj["n"] != m.n:
            raise ValueError(f"declared dimension {obj['n']} does not match {m.n} rows")
        return m

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        return cls.from_json_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = m.n
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    """True iff |det m| = 1."""
    return abs(determinant(m)) == 1


def adjugate(m: IntMatrix) -> IntMatrix:
    """Adjugate matrix; satisfies m @ adjugate(m) == det(m) * identity."""
    n = m.n
    if n == 1:
        return IntMatrix(((1,),))
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                tuple(
                    tuple(m.rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
            )
            out[j][i] = (-1) ** (i + j) * determinant(minor)
    return IntMatrix.from_rows(out)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (integer entries)."""
    d = determinant(m)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    return adjugate(m).scale(d)


@dataclass(frozen=True)
class SmithDecomposition:
    """Triple (u, s, v) with u @ source @ v == s.

    s is diagonal with nonnegative entries forming a divisibility chain
    s1 | s2 | ... | sn, and u, v are unimodular.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    source: IntMatrix

    @property
    def invariant_factors(self) -> IntVector:
        return self.s.diagonal_entries()

    def verify(self) -> None:
        """Raise ValueError unless all defining identities hold exactly."""
        if (self.u @ self.source) @ self.v != self.s:
            raise ValueError("u @ source @ v != s")
        if not is_unimodular(self.u):
            raise ValueError("u is not unimodular")
        if not is_unimodular(self.v):
            raise ValueError("v is not unimodular")
        if not self.s.is_diagonal():
            raise ValueError("s is not diagonal")
        diag = self.s.diagonal_entries()
        if any(d < 0 for d in diag):
            raise ValueError("s has a negative diagonal entry")
        for a, b in zip(diag, diag[1:]):
            if a == 0:
                if b != 0:
                    raise ValueError("zero entry precedes a nonzero one")
            elif b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")
        prod = 1
        for d in diag:
            prod *= d
        if prod != abs(determinant(self.source)):
            raise ValueError("product of invariant factors != |det source|")


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms for a nonsingular square matrix.

    Elementary row/column reduction, pivoting on the entry of minimal
    nonzero absolute value.  The returned decomposition is self-checked
    against all of its defining identities before being returned.
    """
    n = m.n
    if determinant(m) == 0:
        raise SingularMatrix("smith_normal_form requires det != 0")
    a = [list(row) for row in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        arow, srow = a[dst], a[src]
        for c in range(n):
            arow[c] += k * srow[c]
        urow, usrc = u[dst], u[src]
        for c in range(n):
            urow[c] += k * usrc[c]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for s in range(n):
        while True:
            pivot = None
            best = None
            for i in range(s, n):
                for j in range(s, n):
                    e = a[i][j]
                    if e and (best is None or abs(e) < best):
                        best = abs(e)
                        pivot = (i, j)
            if pivot is None:
                raise SingularMatrix("unexpected zero block in a nonsingular matrix")
            pi, pj = pivot
            if pi != s:
                swap_rows(s, pi)
            if pj != s:
                swap_cols(s, pj)
            p = a[s][s]
            clean = True
            for r in range(s + 1, n):
                q = a[r][s] // p
                if q:
                    add_row(r, s, -q)
                if a[r][s]:
                    clean = False
            for c in range(s + 1, n):
                q = a[s][c] // p
                if q:
                    add_col(c, s, -q)
                if a[s][c]:
                    clean = False
            if not clean:
                continue
            offender = None
            for i in range(s + 1, n):
                for j in range(s + 1, n):
                    if a[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into the pivot row so the next pass
            # shrinks the pivot to a common divisor
            add_row(s, offender, 1)

    for i in range(n):
        if a[i][i] < 0:
            for c in range(n):
                a[i][c] = -a[i][c]
                u[i][c] = -u[i][c]

    dec = SmithDecomposition(
        u=IntMatrix.from_rows(u),
        s=IntMatrix.from_rows(a),
        v=IntMatrix.from_rows(v),
        source=m,
    )
    dec.verify()
    return dec


def reduce_mod_group(x: Sequence[int], s: IntMatrix) -> IntVector:
    """Coordinatewise canonical residue of x modulo a positive diagonal s."""
    if len(x) != s.n:
        raise DimensionMismatch(f"vector of length {len(x)} against {s.n}x{s.n} matrix")
    if not s.is_diagonal():
        raise ValueError("reduce_mod_group needs a diagonal matrix")
    diag = s.diagonal_entries()
    if any(d <= 0 for d in diag):
        raise ValueError("reduce_mod_group needs a positive diagonal")
    return tuple(xi % di for xi, di in zip(x, diag))


def congruent_mod(a: Sequence[int], b: Sequence[int], m: IntMatrix) -> bool:
    """True iff a - b lies in the lattice m @ Z^n."""
    if len(a) != len(b):
        raise DimensionMismatch("vectors of different lengths")
    if len(a) != m.n:
        raise DimensionMismatch(f"vectors of length {len(a)} against {m.n}x{m.n} matrix")
    dec = smith_normal_form(m)
    diff = tuple(x - y for x, y in zip(a, b))
    image = dec.u.mat_vec(diff)
    return all(r == 0 for r in reduce_mod_group(image, dec.s))
