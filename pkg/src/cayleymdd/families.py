"""Parameterized digraph families with predicted order, diameter, density,
and leading density coefficient, plus the general degree/diameter bounds.

Diameter predictions are flagged exact or upper bound; bounds are never
asserted as exact values anywhere downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cayley import AbelianGroup, CayleyDigraph, density, group_from_matrix
from .errors import NotAvailable, OutOfFamily
from .lattice import IntMatrix

ASZ = "asz"
CYCLIC_X = "cyclic_x"
DILATED84 = "dilated84"
GENERAL_D = "general_d"
DEGREE2 = "degree2"

FAMILY_PARAMS = {
    ASZ: ("m", "n"),
    CYCLIC_X: ("x",),
    DILATED84: ("t",),
    GENERAL_D: ("d", "t"),
    DEGREE2: ("t",),
}


@dataclass(frozen=True)
class FamilySpec:
    """Predicted invariants of one family member.

    ``diameter`` is exact when ``diameter_is_exact`` is true, otherwise an
    upper bound; ``density`` is derived from the predicted diameter and
    carries the same status.  ``alpha`` is the leading coefficient of the
    order as a polynomial in the diameter, or None when the family has no
    closed form for it.
    """

    family: str
    params: tuple[tuple[str, int], ...]
    order: int
    diameter: int
    diameter_is_exact: bool
    density: Fraction
    alpha: Fraction | None
    note: str = ""

    @property
    def params_dict(self) -> dict[str, int]:
        return dict(self.params)

    def params_label(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params)


def matrix_mn(m: int, n: int) -> IntMatrix:
    """The 3x3 family matrix with |det| = m^3 + 12 m^2 n + 14 m n^2."""
    if m < 1 or n < 1:
        raise OutOfFamily(f"matrix_mn needs m, n >= 1, got m={m}, n={n}")
    return IntMatrix.from_rows(
        [
            [n, m, -2 * m - 2 * n],
            [3 * n + m, m, m + 2 * n],
            [2 * n, -m, m + n],
        ]
    )


def family_asz(m: int, n: int) -> tuple[CayleyDigraph, FamilySpec]:
    """Degree-3 family presented by matrix_mn(m, n).

    The diameter prediction max(m+8n-3, 3m+4n-3, 5m-3) is only an upper
    bound, so alpha has no closed form over (m, n).
    """
    digraph = group_from_matrix(matrix_mn(m, n))
    order = m**3 + 12 * m**2 * n + 14 * m * n**2
    if digraph.order != order:
        raise AssertionError("order formula disagrees with the matrix")
    bound = max(m + 8 * n - 3, 3 * m + 4 * n - 3, 5 * m - 3)
    spec = FamilySpec(
        family=ASZ,
        params=(("m", m), ("n", n)),
        order=order,
        diameter=bound,
        diameter_is_exact=False,
        density=density(order, 3, bound),
        alpha=None,
        note="diameter is an upper bound",
    )
    return digraph, spec


def family_cyclic_x(x: int) -> tuple[CayleyDigraph, FamilySpec]:
    """Cyclic degree-3 family of order 84x^3 + 74x^2 + 18x + 1.

    Diameter is bounded by 10x + 2; numerically the bound is attained for
    x >= 2, which reports treat as an expectation rather than a fact.
    """
    if x < 1:
        raise OutOfFamily(f"family_cyclic_x needs x >= 1, got {x}")
    modulus = 84 * x**3 + 74 * x**2 + 18 * x + 1
    raw = (
        -21 * x**2 - 15 * x - 2,
        21 * x**2 + 8 * x,
        -42 * x**2 - 23 * x - 3,
    )
    gens = tuple(g % modulus for g in raw)
    digraph = CayleyDigraph(AbelianGroup((modulus,)), tuple((g,) for g in gens))
    bound = 10 * x + 2
    spec = FamilySpec(
        family=CYCLIC_X,
        params=(("x", x),),
        order=modulus,
        diameter=bound,
        diameter_is_exact=False,
        density=density(modulus, 3, bound),
        alpha=Fraction(21, 250),
        note="diameter is an upper bound; equality expected for x >= 2",
    )
    return digraph, spec


def family_dilated84(t: int) -> tuple[CayleyDigraph, FamilySpec]:
    """Constant-density 0.084 degree-3 family on Z_t + Z_t + Z_84t.

    Order 84 t^3 and diameter exactly 10t - 3 for every t >= 1; the t-th
    member is the t-dilate of the order-84 initial digraph.
    """
    if t < 1:
        raise OutOfFamily(f"family_dilated84 needs t >= 1, got {t}")
    group = AbelianGroup((t, t, 84 * t))
    gens = tuple(
        group.canonical(g) for g in ((1, 10, -38), (0, 1, -3), (0, -2, 7))
    )
    digraph = CayleyDigraph(group, gens)
    diameter = 10 * t - 3
    spec = FamilySpec(
        family=DILATED84,
        params=(("t", t),),
        order=84 * t**3,
        diameter=diameter,
        diameter_is_exact=True,
        density=density(84 * t**3, 3, diameter),
        alpha=Fraction(21, 250),
    )
    return digraph, spec


def family_general(d: int, t: int) -> tuple[CayleyDigraph, FamilySpec]:
    """Degree-d family on Z_t + Z_{t(d+1)}^(d-1) for any degree d >= 2.

    Generators: the all-ones vector and its d-1 single-coordinate bumps.
    Diameter is exactly t*C(d+1, 2) - d; order is t^d (d+1)^(d-1).
    """
    if d < 2 or t < 1:
        raise OutOfFamily(f"family_general needs d >= 2 and t >= 1, got d={d}, t={t}")
    group = AbelianGroup((t,) + (t * (d + 1),) * (d - 1))
    ones = (1,) * d
    gens = [ones]
    for i in range(1, d):
        g = list(ones)
        g[i] = 2
        gens.append(tuple(g))
    digraph = CayleyDigraph(group, tuple(gens))
    order = t**d * (d + 1) ** (d - 1)
    diameter = t * math.comb(d + 1, 2) - d
    spec = FamilySpec(
        family=GENERAL_D,
        params=(("d", d), ("t", t)),
        order=order,
        diameter=diameter,
        diameter_is_exact=True,
        density=density(order, d, diameter),
        alpha=Fraction(2**d, (d + 1) * d**d),
    )
    return digraph, spec


def family_degree2(t: int) -> tuple[CayleyDigraph, FamilySpec]:
    """Density-optimal degree-2 family on Z_t + Z_3t.

    Order 3t^2 with diameter exactly 3t - 2, so the density is exactly
    1/3 for every t, which is the degree-2 optimum.
    """
    if t < 1:
        raise OutOfFamily(f"family_degree2 needs t >= 1, got {t}")
    group = AbelianGroup((t, 3 * t))
    gens = (group.canonical((1, -1)), group.canonical((0, 1)))
    digraph = CayleyDigraph(group, gens)
    diameter = 3 * t - 2
    spec = FamilySpec(
        family=DEGREE2,
        params=(("t", t),),
        order=3 * t**2,
        diameter=diameter,
        diameter_is_exact=True,
        density=density(3 * t**2, 2, diameter),
        alpha=Fraction(1, 3),
    )
    return digraph, spec


FAMILY_BUILDERS = {
    ASZ: family_asz,
    CYCLIC_X: family_cyclic_x,
    DILATED84: family_dilated84,
    GENERAL_D: family_general,
    DEGREE2: family_degree2,
}


def alpha_of_family(spec: FamilySpec) -> Fraction:
    """Closed-form leading coefficient of order in terms of diameter.

    Raises NotAvailable for the asz family, whose diameter over (m, n) has
    no single closed form.
    """
    if spec.family == ASZ:
        raise NotAvailable("no closed-form alpha over (m, n) for the asz family")
    if spec.family in (DILATED84, CYCLIC_X):
        return Fraction(21, 250)
    if spec.family == GENERAL_D:
        d = spec.params_dict["d"]
        return Fraction(2**d, (d + 1) * d**d)
    if spec.family == DEGREE2:
        return Fraction(1, 3)
    raise NotAvailable(f"unknown family {spec.family!r}")


@dataclass(frozen=True)
class BoundsReport:
    """Exact degree/diameter bounds for Abelian Cayley digraphs.

    ``order_upper_bound`` is the binomial ball size C(k+d, d): no digraph
    of degree d and diameter k can have more vertices, and equality needs
    a perfect ball cover.  For degree 2 with a known order N the tight
    diameter lower bound ceil(sqrt(3N)) - 2 is evaluated as well.
    """

    degree: int
    diameter: int
    order_upper_bound: int
    order: int | None = None
    degree2_diameter_lower_bound: int | None = None


def bounds(d: int, k: int, order: int | None = None) -> BoundsReport:
    """Evaluate the exact bounds for degree d and diameter k."""
    if d < 1 or k < 0:
        raise ValueError("need degree >= 1 and diameter >= 0")
    lb2 = None
    if d == 2 and order is not None:
        if order < 1:
            raise ValueError("order must be >= 1")
        lb2 = ceil_sqrt(3 * order) - 2
    return BoundsReport(
        degree=d,
        diameter=k,
        order_upper_bound=math.comb(k + d, d),
        order=order,
        degree2_diameter_lower_bound=lb2,
    )


def ceil_sqrt(x: int) -> int:
    if x < 0:
        raise ValueError("negative input")
    if x == 0:
        return 0
    return math.isqrt(x - 1) + 1


def satisfies_order_bound(order: int, degree: int, diameter: int) -> bool:
    """Strict ball bound: order < C(k+d, d).

    Perfect covers (the ball itself tiles the group) attain equality, so
    degenerate members like order 3 at degree 2, diameter 1 return False
    while still satisfying the non-strict bound.
    """
    return order < math.comb(diameter + degree, degree)


def asymptotic_lower_bound(d: int, k: int, c: float) -> float:
    """Asymptotic existence lower bound with caller-supplied constant c.

    Evaluates c / (d (ln d)^(1 + log2 e)) * k^d / d! as a float; this is
    an asymptotic estimate, not an exact quantity, and is exposed only
    because the constant c is not pinned down by any known construction.
    """
    if d < 2:
        raise ValueError("asymptotic bound needs degree >= 2")
    expo = 1.0 + math.log2(math.e)
    return c / (d * math.log(d) ** expo) * k**d / math.factorial(d)


FAMILY_CSV_HEADER = "family,params,N,k_predicted,k_bfs,density,alpha"


def _format_fraction(x: Fraction | None) -> str:
    if x is None:
        return "n/a"
    return f"{x.numerator}/{x.denominator}={float(x):.6g}"


def family_csv_row(spec: FamilySpec, k_bfs: int | None) -> str:
    """One table row; the predicted diameter carries a <= marker when it
    is only an upper bound."""
    k_pred = ("" if spec.diameter_is_exact else "<=") + str(spec.diameter)
    return ",".join(
        [
            spec.family,
            spec.params_label(),
            str(spec.order),
            k_pred,
            "" if k_bfs is None else str(k_bfs),
            _format_fraction(spec.density),
            _format_fraction(spec.alpha),
        ]
    )
