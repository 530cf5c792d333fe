"""Dense univariate polynomials over exact rationals.

Coefficient tuples run from the constant term upward and drop trailing zeros.
Just enough arithmetic for minimal-polynomial work: product, division, gcd,
lcm, evaluation, construction from roots, and deterministic rendering.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def ptrim(coeffs: Sequence[Fraction | int]) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pdegree(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return ptrim(
        [
            (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
            for i in range(n)
        ]
    )


def pscale(p: Poly, s: Fraction | int) -> Poly:
    return ptrim([c * s for c in p])


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pmonic(p: Poly) -> Poly:
    if not p:
        return ()
    lead = p[-1]
    return tuple(c / lead for c in p)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq, lead = len(q) - 1, q[-1]
    while len(rem) - 1 >= dq and any(rem):
        shift = len(rem) - 1 - dq
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return ptrim(quo), ptrim(rem)


def pgcd(p: Poly, q: Poly) -> Poly:
    a, b = p, q
    while b:
        _, a, b = None, b, pdivmod(a, b)[1]
    return pmonic(a)


def plcm(p: Poly, q: Poly) -> Poly:
    if not p:
        return pmonic(q)
    if not q:
        return pmonic(p)
    g = pgcd(p, q)
    return pmonic(pdivmod(pmul(p, q), g)[0])


def peval(p: Poly, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pfrom_roots(roots: Sequence[int]) -> Poly:
    out: Poly = (Fraction(1),)
    for r in roots:
        out = pmul(out, (Fraction(-r), Fraction(1)))
    return out


def prender(p: Poly, var: str = "T") -> str:
    """Deterministic descending-power rendering, e.g. "T^3 - 4*T"."""
    if not p:
        return "0"
    parts: list[tuple[bool, str]] = []
    for power in range(len(p) - 1, -1, -1):
        c = p[power]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if power == 0:
            body = mag_s
        else:
            head = var if power == 1 else f"{var}^{power}"
            body = head if mag == 1 else f"{mag_s}*{head}"
        parts.append((neg, body))
    pieces = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)
