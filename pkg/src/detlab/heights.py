"""Relative heights H_K of projective points, polynomials, and lifts.

Every height is stored as the exact rational H_K = H^{d_K}; the absolute
height H is exposed only as a float.  All three supported fields have a
single infinite place, so for a primitive integral coordinate vector
H_K is simply the maximum of the archimedean norms of the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mpoly import MPoly, ring_to_field_poly


@dataclass(frozen=True)
class HeightValue:
    """Exact H_K plus a float approximation of the absolute height H."""

    hk: Fraction
    d_K: int = 1

    @property
    def h(self):
        return float(self.hk) ** (1.0 / self.d_K)

    def __le__(self, other):
        return self.hk <= other.hk

    def __lt__(self, other):
        return self.hk < other.hk

    def __repr__(self):
        return f"HeightValue(H_K={self.hk}, H~{self.h:.6g})"


class ProjPointK:
    """Projective point with primitive integral canonical coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords, normalized=False):
        if normalized:
            self.field = field
            self.coords = tuple(coords)
            return
        self.field = field
        self.coords = tuple(normalize_coords(field, coords))

    def height(self):
        hk = max(self.field.arch_norm(c) for c in self.coords)
        return HeightValue(Fraction(hk), self.field.d_K)

    def __eq__(self, other):
        return isinstance(other, ProjPointK) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        inner = " : ".join(self.field.format_ring(c) for c in self.coords)
        return f"({inner})"


def normalize_coords(field, coords):
    """Primitive integral canonical representative of a K-coordinate tuple.

    Accepts ring or field elements; clears denominators, divides out the
    gcd content, and fixes the unit so the first nonzero coordinate is
    canonical (positive / monic / first quadrant).
    """
    coords = list(coords)
    if not coords:
        raise ValueError("empty coordinate vector")
    ring = all(_is_ring_element(field, c) for c in coords)
    if not ring:
        coords = [c if not _is_ring_element(field, c) else field.ring_to_elem(c) for c in coords]
        den = field.ring_one()
        for c in coords:
            _, d = field.as_integer_ratio(c)
            g = field.ring_gcd(den, d)
            den = field.ring_exact_div(den * d, g)
        out = []
        for c in coords:
            n, d = field.as_integer_ratio(c)
            out.append(n * field.ring_exact_div(den, d))
        coords = out
    if all(field.ring_is_zero(c) for c in coords):
        raise ValueError("zero coordinate vector")
    content = field.ring_zero()
    for c in coords:
        content = field.ring_gcd(content, c)
    if not field.ring_is_unit(content):
        coords = [field.ring_exact_div(c, content) for c in coords]
    first = next(c for c in coords if not field.ring_is_zero(c))
    u = field.canonical_unit(first)
    if not field.ring_is_unit(u):  # pragma: no cover - canonical_unit is a unit
        raise AssertionError("canonical unit is not a unit")
    coords = [field.ring_exact_div(c, u) for c in coords]
    return coords


def _is_ring_element(field, c):
    return isinstance(c, type(field.ring_one()))


def relative_height_proj(field, coords):
    """H_K of the projective point with the given K-coordinates."""
    return ProjPointK(field, coords).height()


def serre_lift(field, point_or_coords):
    """Integral primitive coordinates with archimedean size <= H_K^(1/d_K).

    For the three PID instances the lift constants are all 1: the lift is
    gcd-normalization plus the canonical unit choice.
    """
    if isinstance(point_or_coords, ProjPointK):
        return list(point_or_coords.coords)
    return list(normalize_coords(field, point_or_coords))


def poly_height(field, poly, mode="projective"):
    """Height of a nonzero polynomial: projective or affine.

    projective -- H_K of the coefficient vector as a projective point.
    affine     -- (prod_v max(1, |f|_v))^{d_K}: the archimedean part is
    clipped below at 1 and each finite place contributes the denominator
    content; integral inputs are used as given.
    """
    if poly.is_zero():
        raise ValueError("height of the zero polynomial")
    coeffs = list(poly.terms.values())
    if mode == "projective":
        return relative_height_proj(field, coeffs)
    if mode != "affine":
        raise ValueError(f"unknown mode {mode!r}")
    ring = all(_is_ring_element(field, c) for c in coeffs)
    if ring:
        arch = max(Fraction(field.arch_norm(c)) for c in coeffs)
        return HeightValue(max(Fraction(1), arch), field.d_K)
    arch = max(Fraction(field.arch_norm_elem(c)) for c in coeffs)
    den = field.ring_one()
    for c in coeffs:
        _, d = field.as_integer_ratio(c)
        g = field.ring_gcd(den, d)
        den = field.ring_exact_div(den * d, g)
    finite = Fraction(field.norm(den))
    return HeightValue(max(Fraction(1), arch) * finite, field.d_K)


def eval_height_bound_check(field, poly_list, point_coords):
    """Check H_K(phi_0(x) : ... : phi_r(x)) <= R^{d_K} H_K(c) H_K(x)^m.

    The polynomials must be homogeneous of a common degree m and not all
    vanish at the point; R is the largest number of monomials in any one
    of them and c is the projective point of all their coefficients.
    """
    if not poly_list:
        raise ValueError("empty polynomial list")
    degs = {p.degree for p in poly_list}
    if len(degs) != 1 or not all(p.is_homogeneous() for p in poly_list):
        raise ValueError("polynomials must be homogeneous of a common degree")
    m = degs.pop()
    point = ProjPointK(field, point_coords)
    lift = [field.ring_to_elem(c) for c in point.coords]
    values = []
    for p in poly_list:
        pk = _as_field(field, p)
        values.append(pk.eval(lift, field.zero()))
    if all(field.is_zero(v) for v in values):
        raise ValueError("all polynomials vanish at the point")
    lhs = relative_height_proj(field, values)
    R = max(p.num_terms() for p in poly_list)
    coeff_vec = [c for p in poly_list for c in _as_field(field, p).terms.values()]
    hc = relative_height_proj(field, coeff_vec)
    hx = point.height()
    rhs = HeightValue(Fraction(R) ** field.d_K * hc.hk * hx.hk**m, field.d_K)
    return lhs, rhs, lhs.hk <= rhs.hk


def _as_field(field, p):
    sample = next(iter(p.terms.values()), None)
    if sample is None or not _is_ring_element(field, sample):
        return p
    return ring_to_field_poly(field, p)
