"""Hyper-L diagrams and minimum distance diagrams.

A hyper-L for an n-dimensional quotient matrix is a downward-closed set of
unit cubes in N^n whose anchors represent every congruence class exactly
once.  A minimum distance diagram additionally picks, in every class, an
anchor of minimal l1 norm; its maximal norm equals the digraph diameter.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .cayley import GroupElement
from .errors import (
    DimensionMismatch,
    EmptyDiagram,
    InvalidDilation,
    SingularMatrix,
)
from .lattice import IntMatrix, determinant, smith_normal_form

UnitCube = tuple[int, ...]


def cube_norm(cube: UnitCube) -> int:
    """l1 norm of an anchor with nonnegative coordinates."""
    return sum(cube)


@dataclass(frozen=True)
class HyperL:
    """A finite set of unit-cube anchors tied to its defining matrix."""

    matrix: IntMatrix
    cubes: frozenset[UnitCube]

    def __post_init__(self):
        cubes = frozenset(tuple(int(c) for c in cube) for cube in self.cubes)
        n = self.matrix.n
        for cube in cubes:
            if len(cube) != n:
                raise DimensionMismatch(f"cube {cube} in dimension {n}")
            if any(c < 0 for c in cube):
                raise ValueError(f"cube {cube} has a negative coordinate")
        object.__setattr__(self, "cubes", cubes)

    @property
    def dim(self) -> int:
        return self.matrix.n

    @property
    def cube_count(self) -> int:
        return len(self.cubes)

    def sorted_cubes(self) -> list[UnitCube]:
        return sorted(self.cubes)


@dataclass(frozen=True)
class MddCertificate:
    """A validated minimum distance diagram with its per-class norms.

    ``class_norms`` maps each canonical group element (in the invariant
    factor coordinates fixed by ``u`` and ``s``) to the minimal norm of
    its class, which equals the digraph distance of that element.
    """

    hyperl: HyperL
    u: IntMatrix
    s: IntMatrix
    class_norms: Mapping[GroupElement, int]
    diameter: int


@dataclass(frozen=True)
class HyperLReport:
    """Validation findings for a candidate hyper-L against a matrix."""

    expected_count: int
    actual_count: int
    duplicate_groups: tuple[tuple[UnitCube, ...], ...]
    missing_classes: tuple[GroupElement, ...]
    closure_gaps: tuple[tuple[UnitCube, UnitCube], ...]

    @property
    def is_valid(self) -> bool:
        return (
            self.expected_count == self.actual_count
            and not self.duplicate_groups
            and not self.missing_classes
            and not self.closure_gaps
        )

    def issues(self) -> list[str]:
        out = []
        if self.actual_count != self.expected_count:
            out.append(
                f"cube count {self.actual_count} != |det| = {self.expected_count}"
            )
        for group in self.duplicate_groups:
            out.append("congruent anchors: " + ", ".join(map(str, group)))
        if self.missing_classes:
            shown = ", ".join(map(str, self.missing_classes[:8]))
            more = "" if len(self.missing_classes) <= 8 else ", ..."
            out.append(f"{len(self.missing_classes)} classes unrepresented: {shown}{more}")
        for cube, missing in self.closure_gaps:
            out.append(f"downward-closure gap: {cube} present but {missing} missing")
        return out


def _class_key(cube: Sequence[int], u_rows, diag) -> GroupElement:
    return tuple(
        sum(uij * aj for uij, aj in zip(row, cube)) % d for row, d in zip(u_rows, diag)
    )


def _compositions(total: int, parts: int) -> Iterator[UnitCube]:
    """All nonnegative tuples with the given coordinate sum, in lex order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def build_mdd(m: IntMatrix) -> MddCertificate:
    """Minimum distance diagram of the quotient digraph of ``m``.

    Lattice points of N^n are visited in increasing (norm, lex) order and
    an anchor is kept iff its congruence class is still unrepresented.
    That order makes the selection downward closed and minimal-norm per
    class; both properties are re-validated before returning.
    """
    dec = smith_normal_form(m)
    n = m.n
    order = 1
    for d in dec.invariant_factors:
        order *= d
    u_rows = dec.u.rows
    diag = dec.invariant_factors

    chosen: dict[GroupElement, UnitCube] = {}
    cubes = []
    norm = 0
    while len(chosen) < order:
        if norm > n * order:
            raise RuntimeError(
                "enumeration bound exceeded; selection order is broken"
            )
        for cube in _compositions(norm, n):
            key = _class_key(cube, u_rows, diag)
            if key not in chosen:
                chosen[key] = cube
                cubes.append(cube)
        norm += 1

    hyperl = HyperL(matrix=m, cubes=frozenset(cubes))
    report = validate_hyperl(hyperl, m)
    if not report.is_valid:
        raise RuntimeError(
            "constructed diagram failed validation: " + "; ".join(report.issues())
        )
    class_norms = {key: cube_norm(cube) for key, cube in chosen.items()}
    return MddCertificate(
        hyperl=hyperl,
        u=dec.u,
        s=dec.s,
        class_norms=class_norms,
        diameter=max(class_norms.values()),
    )


def validate_hyperl(l: HyperL, m: IntMatrix) -> HyperLReport:
    """Check the two hyper-L conditions plus cardinality, reporting every
    violation with witnesses rather than raising."""
    if l.dim != m.n:
        raise DimensionMismatch(f"diagram dimension {l.dim} vs matrix {m.n}")
    det = determinant(m)
    if det == 0:
        raise SingularMatrix("validation needs a nonsingular matrix")
    expected = abs(det)

    dec = smith_normal_form(m)
    u_rows = dec.u.rows
    diag = dec.invariant_factors
    buckets: dict[GroupElement, list[UnitCube]] = {}
    for cube in l.sorted_cubes():
        buckets.setdefault(_class_key(cube, u_rows, diag), []).append(cube)

    duplicates = tuple(
        tuple(group) for _, group in sorted(buckets.items()) if len(group) > 1
    )
    missing = []
    if len(buckets) < expected:
        for idx in range(expected):
            coords = []
            rem = idx
            for d in reversed(diag):
                rem, r = divmod(rem, d)
                coords.append(r)
            key = tuple(reversed(coords))
            if key not in buckets:
                missing.append(key)

    gaps = []
    cubes = l.cubes
    for cube in l.sorted_cubes():
        for i, c in enumerate(cube):
            if c:
                pred = cube[:i] + (c - 1,) + cube[i + 1 :]
                if pred not in cubes:
                    gaps.append((cube, pred))
    return HyperLReport(
        expected_count=expected,
        actual_count=l.cube_count,
        duplicate_groups=duplicates,
        missing_classes=tuple(missing),
        closure_gaps=tuple(gaps),
    )


def dilate(l: HyperL, t: int) -> HyperL:
    """Replace every unit cube by a t x ... x t block of unit cubes.

    The result is a diagram for ``t * matrix`` with t^n times as many
    cubes; dilating a valid diagram preserves validity and maps diameter
    k to t*(k + n) - n.
    """
    if not isinstance(t, int) or t < 1:
        raise InvalidDilation(f"dilation factor must be an integer >= 1, got {t!r}")
    if t == 1:
        return HyperL(matrix=l.matrix, cubes=l.cubes)
    n = l.dim
    offsets = [()]
    for _ in range(n):
        offsets = [o + (a,) for o in offsets for a in range(t)]
    cubes = frozenset(
        tuple(t * c + o for c, o in zip(cube, off))
        for cube in l.cubes
        for off in offsets
    )
    return HyperL(matrix=l.matrix.scale(t), cubes=cubes)


def hyperl_diameter(l: HyperL) -> int:
    """Maximal l1 norm over the anchors."""
    if not l.cubes:
        raise EmptyDiagram("diagram has no cubes")
    return max(cube_norm(c) for c in l.cubes)


def max_norm_cubes(l: HyperL) -> list[UnitCube]:
    """All cubes attaining the diagram diameter, sorted lexicographically."""
    k = hyperl_diameter(l)
    return sorted(c for c in l.cubes if cube_norm(c) == k)


def check_tessellation(l: HyperL, m: IntMatrix) -> bool:
    """True iff the diagram tiles R^n under translations by the columns
    of ``m``: cube count equals |det m| and anchors are pairwise
    incongruent modulo ``m``."""
    if l.dim != m.n:
        raise DimensionMismatch(f"diagram dimension {l.dim} vs matrix {m.n}")
    det = determinant(m)
    if det == 0:
        raise SingularMatrix("tessellation needs a nonsingular matrix")
    if l.cube_count != abs(det):
        return False
    dec = smith_normal_form(m)
    u_rows = dec.u.rows
    diag = dec.invariant_factors
    keys = {_class_key(cube, u_rows, diag) for cube in l.cubes}
    return len(keys) == l.cube_count


def vertex_of_cube(cube: Sequence[int], u: IntMatrix, s: IntMatrix) -> GroupElement:
    """Group element of an anchor: a1*u1 + ... + an*un reduced modulo the
    diagonal of ``s``, where ui are the columns of ``u``."""
    if len(cube) != u.n or u.n != s.n:
        raise DimensionMismatch(
            f"cube of length {len(cube)} with {u.n}x{u.n} and {s.n}x{s.n} matrices"
        )
    if not s.is_diagonal():
        raise ValueError("vertex_of_cube needs a diagonal second matrix")
    diag = s.diagonal_entries()
    if any(d <= 0 for d in diag):
        raise ValueError("vertex_of_cube needs a positive diagonal")
    return _class_key(tuple(cube), u.rows, diag)


def _format_vertex(element: GroupElement, diag: Sequence[int]) -> str:
    if all(d == 1 for d in diag[:-1]):
        return str(element[-1])
    return ":".join(str(c) for c in element)


def diagram_to_csv(cert: MddCertificate) -> str:
    """CSV rows ``a1,...,an,norm,vertex`` in lex anchor order."""
    n = cert.hyperl.dim
    diag = cert.s.diagonal_entries()
    header = ",".join(f"a{i + 1}" for i in range(n)) + ",norm,vertex"
    lines = [header]
    for cube in cert.hyperl.sorted_cubes():
        vertex = vertex_of_cube(cube, cert.u, cert.s)
        lines.append(
            ",".join(str(c) for c in cube)
            + f",{cube_norm(cube)},{_format_vertex(vertex, diag)}"
        )
    return "\n".join(lines) + "\n"


_CUBE_FACES = (
    ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),  # z = a3
    ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),  # z = a3 + 1
    ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),  # y = a2
    ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),  # y = a2 + 1
    ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),  # x = a1
    ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),  # x = a1 + 1
)


def diagram_to_obj(l: HyperL) -> str:
    """Wavefront OBJ voxel mesh: one axis-aligned unit cube per anchor,
    shared corner vertices deduplicated.  Only 3-dimensional diagrams."""
    if l.dim != 3:
        raise ValueError("OBJ export is only defined for 3-dimensional diagrams")
    vertex_index: dict[tuple[int, int, int], int] = {}
    vertex_lines: list[str] = []
    face_lines: list[str] = []

    def corner_id(p: tuple[int, int, int]) -> int:
        idx = vertex_index.get(p)
        if idx is None:
            idx = len(vertex_index) + 1
            vertex_index[p] = idx
            vertex_lines.append(f"v {p[0]} {p[1]} {p[2]}")
        return idx

    for cube in l.sorted_cubes():
        for face in _CUBE_FACES:
            ids = [
                corner_id((cube[0] + dx, cube[1] + dy, cube[2] + dz))
                for dx, dy, dz in face
            ]
            face_lines.append("f " + " ".join(str(i) for i in ids))
    return "\n".join(vertex_lines + face_lines) + "\n"


def diagram_to_json_dict(l: HyperL) -> dict:
    return {
        "matrix": l.matrix.to_json_dict(),
        "dim": l.dim,
        "cube_count": l.cube_count,
        "cubes": [list(c) for c in l.sorted_cubes()],
        "diameter": hyperl_diameter(l),
        "max_norm_cubes": [list(c) for c in max_norm_cubes(l)],
    }


def diagram_from_json_dict(obj: dict) -> HyperL:
    if not isinstance(obj, dict) or "matrix" not in obj or "cubes" not in obj:
        raise ValueError("diagram JSON needs 'matrix' and 'cubes'")
    matrix = IntMatrix.from_json_dict(obj["matrix"])
    cubes = obj["cubes"]
    if not isinstance(cubes, list) or not all(isinstance(c, list) for c in cubes):
        raise ValueError("'cubes' must be a list of coordinate lists")
    return HyperL(matrix=matrix, cubes=frozenset(tuple(c) for c in cubes))


def diagram_from_json(text: str) -> HyperL:
    return diagram_from_json_dict(json.loads(text))
