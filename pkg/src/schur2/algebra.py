"""The truncated algebra: an exact model of the Schur algebra S(2,d).

For a fixed nonnegative integer d, the algebra is the quotient of the
enveloping algebra of gl2 by H1 + H2 = d and the single truncation relation
H1(H1-1)...(H1-d) = 0. Its dimension is binom(d+3,3), with integral basis the
truncated Kostant monomials f^(a) binom(H2,b) e^(c), a+b+c <= d (FHE flavor;
EHF mirrors with e..H1..f).

The workhorse is the reduction formula: for s = a+b+c-d >= 1,

    f^(a) binom(H2,b) e^(c)
        = sum_{k=s}^{min(a,c)} (-1)^(k-s) binom(k-1,s-1) binom(b+k,k)
              f^(a-k) binom(H2,b+k) e^(c-k),

an empty sum (min(a,c) < s) being zero. Every output term has degree
a+b+c-k <= d, so a single pass puts any monomial into the span of the basis;
the code asserts that instead of looping.

Products are assembled from a cached normal form of the collision
binom(H,b) e^(c) * f^(a') binom(H,b') computed by the U-mode straightening
engine, then reduced term by term. That this equals normalize(mul(x,y)) is a
tested property (normalize is a quotient map), and the structure constants
are independently checked against the matrix oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import matrices
from .elements import (
    Element,
    Flavor,
    Scalar,
    _as_scalar,
    mul,
    substitute_offvar,
)
from .ivpoly import binom, values_to_coeffs
from .qpoly import Poly, pfrom_roots, pmonic, ptrim

Monomial = tuple[int, int, int]


@dataclass(frozen=True)
class SchurContext:
    """The algebra parameter d and the working flavor."""

    d: int
    flavor: Flavor = Flavor.FHE

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError("d must be nonnegative")


def dimension(d: int) -> int:
    return comb(d + 3, 3)


def basis(ctx: SchurContext) -> list[Monomial]:
    """All (a,b,c) with a+b+c <= d, lexicographic; length binom(d+3,3)."""
    d = ctx.d
    return [
        (a, b, c)
        for a in range(d + 1)
        for b in range(d + 1 - a)
        for c in range(d + 1 - a - b)
    ]


@lru_cache(maxsize=None)
def _reduce_table(d: int, a: int, b: int, c: int) -> tuple[tuple[Monomial, int], ...]:
    s = a + b + c - d
    if s <= 0:
        return (((a, b, c), 1),)
    if min(a, c) < s:
        return ()
    out = []
    for k in range(s, min(a, c) + 1):
        coef = (-1) ** (k - s) * binom(k - 1, s - 1) * binom(b + k, k)
        term = (a - k, b + k, c - k)
        assert sum(term) <= d, "reduction must land inside the basis span"
        out.append((term, coef))
    return tuple(out)


def reduce_monomial(a: int, b: int, c: int, ctx: SchurContext) -> Element:
    """One application of the reduction formula to a single monomial."""
    return Element(
        ctx.flavor,
        {
            _flavor_key(ctx.flavor, *mono): coef
            for mono, coef in _reduce_table(ctx.d, a, b, c)
        },
    )


def _flavor_key(flavor: Flavor, a: int, b: int, c: int) -> tuple[int, int, int, int]:
    return (a, 0, b, c) if flavor is Flavor.FHE else (a, b, 0, c)


def normalize(x: Element, ctx: SchurContext) -> Element:
    """Image in the truncated algebra, expressed over the Kostant basis.

    Collapses the off-flavor variable through H1 + H2 = d, then reduces every
    monomial. Idempotent; the result only has terms with a+b+c <= d.
    """
    if x.flavor is not ctx.flavor:
        raise ValueError("flavor mismatch with context")
    out: dict[tuple[int, int, int, int], Scalar] = {}
    for (a, b, c), q in substitute_offvar(x, ctx.d).single_var_terms().items():
        for mono, coef in _reduce_table(ctx.d, a, b, c):
            key = _flavor_key(ctx.flavor, *mono)
            v = out.get(key, 0) + q * coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return Element(ctx.flavor, out)


@lru_cache(maxsize=None)
def _collision_table(
    flavor: Flavor, d: int, b: int, c: int, a2: int, b2: int
) -> tuple[tuple[int, int, tuple[tuple[int, int], ...]], ...]:
    """Normal form of binom(H,b) R^(c) * L^(a2) binom(H,b2), off-var collapsed.

    Returns tuples (aa, cc, middle) with middle = ((m, coef), ...) meaning
    L^(aa) * sum coef*binom(H,m) * R^(cc). Computed once by the U-mode engine
    and reused for every product with the same inner profile.
    """
    left = Element.monomial(0, b, c, flavor)
    right = Element.monomial(a2, b2, 0, flavor)
    product = substitute_offvar(mul(left, right), d)
    grouped: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (aa, m, cc), q in product.single_var_terms().items():
        assert isinstance(q, int), "collision normal form must be integral"
        grouped.setdefault((aa, cc), []).append((m, q))
    return tuple(
        (aa, cc, tuple(sorted(mids))) for (aa, cc), mids in sorted(grouped.items())
    )


def mul_bd(x: Element, y: Element, ctx: SchurContext) -> Element:
    """Product in the truncated algebra; equals normalize(mul(x, y))."""
    if x.flavor is not ctx.flavor or y.flavor is not ctx.flavor:
        raise ValueError("flavor mismatch with context")
    d, flavor = ctx.d, ctx.flavor
    xs = substitute_offvar(x, d).single_var_terms()
    ys = substitute_offvar(y, d).single_var_terms()
    out: dict[tuple[int, int, int, int], Scalar] = {}
    for (a, b, c), qx in xs.items():
        for (a2, b2, c2), qy in ys.items():
            qxy = qx * qy
            for aa, cc, middle in _collision_table(flavor, d, b, c, a2, b2):
                big_a, big_c = a + aa, cc + c2
                scal = qxy * binom(big_a, a) * binom(big_c, cc)
                if scal == 0:
                    continue
                for m, mc in middle:
                    for mono, coef in _reduce_table(d, big_a, m, big_c):
                        key = _flavor_key(flavor, *mono)
                        v = out.get(key, 0) + scal * mc * coef
                        if v:
                            out[key] = v
                        else:
                            out.pop(key, None)
    return Element(flavor, out)


@dataclass
class StructureTable:
    """Structure constants of the truncated Kostant basis."""

    d: int
    flavor: Flavor
    basis: tuple[Monomial, ...]
    products: dict[tuple[int, int], tuple[tuple[int, Scalar], ...]]

    def is_integral(self) -> bool:
        return all(
            isinstance(q, int) or q.denominator == 1
            for terms in self.products.values()
            for _, q in terms
        )


def structure_constants(ctx: SchurContext) -> StructureTable:
    """mul_bd over all ordered basis pairs, as coefficient lists."""
    monos = basis(ctx)
    index = {mono: k for k, mono in enumerate(monos)}
    elems = [Element.monomial(a, b, c, ctx.flavor) for (a, b, c) in monos]
    products: dict[tuple[int, int], tuple[tuple[int, Scalar], ...]] = {}
    for i, xi in enumerate(elems):
        for j, yj in enumerate(elems):
            prod = mul_bd(xi, yj, ctx)
            entry = sorted(
                (index[mono], q) for mono, q in prod.single_var_terms().items()
            )
            products[(i, j)] = tuple(entry)
    return StructureTable(ctx.d, ctx.flavor, tuple(monos), products)


# -- basis conversions -----------------------------------------------------


@lru_cache(maxsize=None)
def _binom_to_powers(b: int) -> tuple[Fraction, ...]:
    """binom(H,b) as a dense coefficient tuple over 1, H, H^2, ..."""
    poly: tuple[Fraction, ...] = (Fraction(1),)
    for i in range(b):
        poly = tuple(
            (poly[k - 1] if k else Fraction(0)) - i * (poly[k] if k < len(poly) else 0)
            for k in range(len(poly) + 1)
        )
    return tuple(c / factorial(b) for c in poly)


@lru_cache(maxsize=None)
def _power_to_binoms(m: int) -> tuple[int, ...]:
    """H^m as integer coefficients over binom(H,0), binom(H,1), ..."""
    return values_to_coeffs([j**m for j in range(m + 1)])


def to_power_basis(x: Element, ctx: SchurContext) -> dict[Monomial, Fraction]:
    """Coefficients over the plain-power monomials f^a H^b e^c, a+b+c <= d.

    H is the flavor's own variable (H2 for FHE, H1 for EHF). The change of
    basis is triangular: divided powers contribute 1/(a! c!), binomials expand
    through falling factorials.
    """
    out: dict[Monomial, Fraction] = {}
    for (a, b, c), q in normalize(x, ctx).single_var_terms().items():
        scale = Fraction(q) / (factorial(a) * factorial(c))
        for m, cm in enumerate(_binom_to_powers(b)):
            if cm == 0:
                continue
            key = (a, m, c)
            v = out.get(key, Fraction(0)) + scale * cm
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def from_power_basis(coeffs: dict[Monomial, Fraction | int], ctx: SchurContext) -> Element:
    """Inverse of to_power_basis."""
    acc = Element.zero(ctx.flavor)
    for (a, m, c), q in coeffs.items():
        scale = Fraction(q) * factorial(a) * factorial(c)
        for b, cb in enumerate(_power_to_binoms(m)):
            if cb:
                acc = acc + Element.monomial(a, b, c, ctx.flavor, coeff=scale * cb)
    return normalize(acc, ctx)


def to_h_basis(x: Element, ctx: SchurContext) -> dict[Monomial, Fraction]:
    """Coefficients over f^a h^b e^c, a+b+c <= d, via H2 = (d-h)/2 (FHE).

    EHF uses H1 = (d+h)/2; either way the substitution is triangular in the
    power basis and invertible over Q.
    """
    d = ctx.d
    sign = -1 if ctx.flavor is Flavor.FHE else 1
    out: dict[Monomial, Fraction] = {}
    for (a, m, c), q in to_power_basis(x, ctx).items():
        # H^m = ((d + sign*h)/2)^m expanded in powers of h.
        for i in range(m + 1):
            coef = q * comb(m, i) * d ** (m - i) * sign**i / Fraction(2**m)
            if coef == 0:
                continue
            key = (a, i, c)
            v = out.get(key, Fraction(0)) + coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def from_h_basis(coeffs: dict[Monomial, Fraction | int], ctx: SchurContext) -> Element:
    """Inverse of to_h_basis."""
    d = ctx.d
    sign = -1 if ctx.flavor is Flavor.FHE else 1
    power: dict[Monomial, Fraction] = {}
    for (a, i, c), q in coeffs.items():
        # h^i = (sign*(2H - d))^i expanded in powers of H.
        for t in range(i + 1):
            coef = Fraction(q) * sign**i * comb(i, t) * 2**t * (-d) ** (i - t)
            if coef == 0:
                continue
            key = (a, t, c)
            v = power.get(key, Fraction(0)) + coef
            if v:
                power[key] = v
            else:
                power.pop(key, None)
    return from_power_basis(power, ctx)


# -- minimal polynomials ----------------------------------------------------


def left_multiplication_matrix(x: Element, ctx: SchurContext) -> np.ndarray:
    """Matrix of y -> x*y on the Kostant basis (columns indexed by basis)."""
    monos = basis(ctx)
    index = {mono: k for k, mono in enumerate(monos)}
    n = len(monos)
    mat = matrices.zeros(n, n)
    for j, mono in enumerate(monos):
        prod = mul_bd(x, Element.monomial(*mono, ctx.flavor), ctx)
        for out_mono, q in prod.single_var_terms().items():
            mat[index[out_mono], j] = q
    return mat


def min_poly(x: Element, ctx: SchurContext) -> Poly:
    """Exact minimal polynomial of left multiplication by normalize(x).

    Left multiplication is faithful and unital, so its minimal polynomial is
    witnessed entirely by the identity seed: the first linear dependency among
    the basis coordinates of 1, x, x^2, ... is the answer. Powers are taken
    with mul_bd, dependencies found by exact elimination.
    """
    monos = basis(ctx)
    index = {mono: k for k, mono in enumerate(monos)}
    n = len(monos)
    y = normalize(x, ctx)
    reduced: list[tuple[int, list[Fraction], list[Fraction]]] = []
    power = Element.one(ctx.flavor)
    k = 0
    while True:
        vec = [Fraction(0)] * n
        for mono, q in power.single_var_terms().items():
            vec[index[mono]] = Fraction(q)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for piv, row, row_combo in reduced:
            fac = vec[piv]
            if fac:
                for i in range(n):
                    if row[i]:
                        vec[i] -= fac * row[i]
                for i in range(len(row_combo)):
                    if row_combo[i]:
                        combo[i] -= fac * row_combo[i]
        piv = next((i for i in range(n) if vec[i]), None)
        if piv is None:
            return pmonic(ptrim(combo))
        inv = 1 / vec[piv]
        reduced.append((piv, [v * inv for v in vec], [q * inv for q in combo]))
        assert k <= n, "regular action Krylov failed to terminate"
        power = mul_bd(power, y, ctx)
        k += 1


def expected_h_var_min_poly(d: int) -> Poly:
    """T(T-1)...(T-d): the minimal polynomial of H1 and of H2."""
    return pfrom_roots(list(range(d + 1)))


def expected_h_min_poly(d: int) -> Poly:
    """(T-d)(T-d+2)...(T+d): the minimal polynomial of h = H1-H2."""
    return pfrom_roots(sorted({d - 2 * k for k in range(d + 1)}))


# -- relation checking -------------------------------------------------------


@dataclass
class RelationCheck:
    name: str
    residual: Element

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass
class RelationReport:
    d: int
    flavor: Flavor
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]


def presentation_relations(ctx: SchurContext) -> list[tuple[str, Element]]:
    """LHS-RHS of every defining relation, as untruncated elements.

    Covers the three presentations (generators e,f,h / e,f,H1 / e,f,H2 with
    their truncation relations), the gl2 commutation relations, the vanishing
    products binom(H1,b1) binom(H2,b2) with b1+b2 = d+1, and the recursion
    h*binom(H,b) = (d-2b) binom(H,b) - (2b+2) binom(H,b+1) for both variables.
    """
    d, flavor = ctx.d, ctx.flavor
    e = Element.generator("e", flavor)
    f = Element.generator("f", flavor)
    h = Element.generator("h", flavor)
    h1 = Element.generator("H1", flavor)
    h2 = Element.generator("H2", flavor)
    one = Element.one(flavor)

    def hb(var: str, b: int) -> Element:
        return Element.h_binomial(var, b, flavor)

    def product_over(base: Element, shifts: list[int]) -> Element:
        acc = one
        for s in shifts:
            acc = mul(acc, base - Element.scalar(s, flavor))
        return acc

    rels: list[tuple[str, Element]] = [
        ("h,e,f: he-eh = 2e", mul(h, e) - mul(e, h) - 2 * e),
        ("h,e,f: ef-fe = h", mul(e, f) - mul(f, e) - h),
        ("h,e,f: hf-fh = -2f", mul(h, f) - mul(f, h) + 2 * f),
        (
            "h,e,f: (h+d)(h+d-2)...(h-d) = 0",
            product_over(h, [d - 2 * k for k in range(d + 1)]),
        ),
        ("H1,e,f: H1e-eH1 = e", mul(h1, e) - mul(e, h1) - e),
        ("H1,e,f: ef-fe = 2H1-d", mul(e, f) - mul(f, e) - 2 * h1 + Element.scalar(d, flavor)),
        ("H1,e,f: H1f-fH1 = -f", mul(h1, f) - mul(f, h1) + f),
        ("H1,e,f: H1(H1-1)...(H1-d) = 0", product_over(h1, list(range(d + 1)))),
        ("H2,e,f: H2e-eH2 = -e", mul(h2, e) - mul(e, h2) + e),
        ("H2,e,f: ef-fe = d-2H2", mul(e, f) - mul(f, e) + 2 * h2 - Element.scalar(d, flavor)),
        ("H2,e,f: H2f-fH2 = f", mul(h2, f) - mul(f, h2) - f),
        ("H2,e,f: H2(H2-1)...(H2-d) = 0", product_over(h2, list(range(d + 1)))),
        ("gl2: H1H2 = H2H1", mul(h1, h2) - mul(h2, h1)),
        ("gl2: H1+H2 = d", h1 + h2 - Element.scalar(d, flavor)),
    ]
    for b1 in range(d + 2):
        b2 = d + 1 - b1
        rels.append(
            (f"binom(H1,{b1})*binom(H2,{b2}) = 0", mul(hb("H1", b1), hb("H2", b2)))
        )
    for b in range(d + 1):
        rels.append(
            (
                f"h*binom(H2,{b}) recursion",
                mul(h, hb("H2", b))
                - (d - 2 * b) * hb("H2", b)
                + (2 * b + 2) * hb("H2", b + 1),
            )
        )
        rels.append(
            (
                f"(-h)*binom(H1,{b}) recursion",
                mul(-1 * h, hb("H1", b))
                - (d - 2 * b) * hb("H1", b)
                + (2 * b + 2) * hb("H1", b + 1),
            )
        )
    return rels


def check_relations(ctx: SchurContext) -> RelationReport:
    """Normalize LHS-RHS of every defining relation; all must vanish."""
    report = RelationReport(ctx.d, ctx.flavor)
    for name, rel in presentation_relations(ctx):
        report.checks.append(RelationCheck(name, normalize(rel, ctx)))
    return report


def quotient_map_check(ctx: SchurContext) -> bool:
    """Do the defining relations of the (d+2)-algebra die in this one?

    The generator-preserving map (e,f,h fixed) is a quotient map iff every
    relation of the larger presentation normalizes to zero here; the only
    nontrivial one is the degree-(d+3) truncation product for h.
    """
    d, flavor = ctx.d, ctx.flavor
    e = Element.generator("e", flavor)
    f = Element.generator("f", flavor)
    h = Element.generator("h", flavor)
    rels = [
        mul(h, e) - mul(e, h) - 2 * e,
        mul(e, f) - mul(f, e) - h,
        mul(h, f) - mul(f, h) + 2 * f,
    ]
    acc = Element.one(flavor)
    for k in range(d + 3):
        acc = mul(acc, h - Element.scalar(d + 2 - 2 * k, flavor))
    rels.append(acc)
    return all(normalize(r, ctx).is_zero() for r in rels)
