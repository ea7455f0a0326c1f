"""Exact linear algebra over K and O_K.

Rank and determinants use fraction-free Bareiss elimination over the ring;
kernels come from field Gaussian elimination plus a Hermite-normal-form
saturation step (all three rings of integers are Euclidean, so one HNF
routine serves Z, Fq[T], and Z[i]).  Size reduction is an exact LLL-style
pass over Z, a degree-reduction (weak Popov) pass over Fq[T], and an
optional restriction of scalars to Z^2 for Z[i].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from . import constants
from .errors import CheckError
from .fields import FunctionField, GaussianField, RationalField, Zi
from .heights import HeightValue, normalize_coords, relative_height_proj


@dataclass
class ExactMatrix:
    """Rectangular matrix with exact K entries."""

    field: object
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("matrix must be rectangular and nonempty")
        self.rows = rows

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    def ring_rows(self):
        """Entries scaled by one global denominator into O_K."""
        K = self.field
        sample = K.ring_one()
        if all(isinstance(e, type(sample)) for r in self.rows for e in r):
            return [list(r) for r in self.rows]
        den = K.ring_one()
        elems = [[e if not isinstance(e, type(sample)) else K.ring_to_elem(e) for e in r] for r in self.rows]
        for r in elems:
            for e in r:
                _, d = K.as_integer_ratio(e)
                g = K.ring_gcd(den, d)
                den = K.ring_exact_div(den * d, g)
        out = []
        for r in elems:
            row = []
            for e in r:
                n, d = K.as_integer_ratio(e)
                row.append(n * K.ring_exact_div(den, d))
            out.append(row)
        return out


@dataclass
class KernelBasis:
    """Primitive integral vectors spanning ker(A) ∩ O_K^n."""

    field: object
    vectors: list
    heights: list = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.heights:
            self.heights = [
                relative_height_proj(self.field, v) for v in self.vectors
            ]

    def height_product(self):
        out = Fraction(1)
        for h in self.heights:
            out *= h.hk
        return out


# ---------------------------------------------------------------------------
# Core eliminations


def bareiss_echelon(field, rows):
    """Fraction-free elimination over O_K; returns (rank, det_or_None, rows).

    det is reported only for square input (None otherwise); the input rows
    must be ring elements (use ExactMatrix.ring_rows first).
    """
    m = [list(r) for r in rows]
    if not m:
        return 0, None, m
    nr, nc = len(m), len(m[0])
    prev = field.ring_one()
    sign = 1
    r = 0
    pivots = []
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if not field.ring_is_zero(m[i][c])), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                num = m[i][j] * piv - m[i][c] * m[r][j]
                m[i][j] = field.ring_exact_div(num, prev)
            m[i][c] = field.ring_zero()
        prev = piv
        pivots.append(c)
        r += 1
    det = None
    if nr == nc:
        if r < nr:
            det = field.ring_zero()
        else:
            det = m[nr - 1][nc - 1]
            if sign < 0:
                det = -det
    return r, det, m


def det_bareiss(field, rows):
    """Exact determinant of a square O_K matrix."""
    _, det, _ = bareiss_echelon(field, rows)
    return det


def field_echelon(zero_one, rows):
    """Gaussian elimination over any field-like object with zero()/one().

    Returns (rank, pivot_cols, reduced rows).  Entries must support the
    arithmetic operators including division.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0, [], m
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv_piv = zero_one.one() / m[r][c]
        m[r] = [e * inv_piv for e in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return r, pivots, m


def kernel_basis_field(field, rows):
    """Kernel basis of A x = 0 over K from reduced row echelon form."""
    rank, pivots, ech = field_echelon(field, rows)
    nc = len(rows[0]) if rows else 0
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero()] * nc
        v[fcol] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = -ech[r][fcol]
        basis.append(v)
    return rank, basis


def hnf_kernel(field, rows):
    """Saturated integral kernel {x in O_K^n : A x = 0} via row HNF.

    Runs on [A^T | I_n] with unimodular row operations over the Euclidean
    ring; the rows whose left block becomes zero form a basis of the full
    kernel lattice.
    """
    mtx = ExactMatrix(field, rows)
    ring_rows = mtx.ring_rows()
    nr, nc = len(ring_rows), len(ring_rows[0])
    zero, one = field.ring_zero(), field.ring_one()
    work = []
    for i in range(nc):  # rows of [A^T | I]
        left = [ring_rows[j][i] for j in range(nr)]
        right = [one if k == i else zero for k in range(nc)]
        work.append(left + right)
    r = 0
    for c in range(nr):
        while True:
            live = [i for i in range(r, len(work)) if not field.ring_is_zero(work[i][c])]
            if not live:
                break
            live.sort(key=lambda i: field.norm(work[i][c]))
            i0 = live[0]
            work[r], work[i0] = work[i0], work[r]
            done = True
            for i in range(r + 1, len(work)):
                if field.ring_is_zero(work[i][c]):
                    continue
                q, _ = divmod(work[i][c], work[r][c])
                if not field.ring_is_zero(q):
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                if not field.ring_is_zero(work[i][c]):
                    done = False
            if done:
                r += 1
                break
    kernel = []
    for i in range(len(work)):
        if all(field.ring_is_zero(e) for e in work[i][:nr]):
            vec = work[i][nr:]
            kernel.append(normalize_coords(field, vec))
    return kernel


# ---------------------------------------------------------------------------
# Module operations


def rank_kernel(field, rows):
    """(rank, KernelBasis) with primitive integral kernel vectors."""
    mtx = ExactMatrix(field, rows)
    ring_rows = mtx.ring_rows()
    rank, _, _ = bareiss_echelon(field, ring_rows)
    if rank == mtx.ncols:
        return rank, KernelBasis(field, [])
    vectors = hnf_kernel(field, rows)
    if len(vectors) != mtx.ncols - rank:
        raise CheckError("kernel dimension mismatch")
    for v in vectors:
        for row in ring_rows:
            acc = field.ring_zero()
            for a, b in zip(row, v):
                acc = acc + a * b
            if not field.ring_is_zero(acc):
                raise CheckError("kernel vector fails A b = 0")
    return rank, KernelBasis(field, vectors)


def maximal_minor_gcd(field, rows):
    """Gcd of all maximal minors of a full-row-rank O_K matrix."""
    mtx = ExactMatrix(field, rows)
    ring_rows = mtx.ring_rows()
    m, n = mtx.nrows, mtx.ncols
    if m >= n:
        raise ValueError("need more columns than rows")
    rank, _, _ = bareiss_echelon(field, ring_rows)
    if rank != m:
        raise ValueError("matrix is rank-deficient")
    delta = field.ring_zero()
    for cols in combinations(range(n), m):
        sub = [[ring_rows[i][j] for j in cols] for i in range(m)]
        d = det_bareiss(field, sub)
        delta = field.ring_gcd(delta, d)
    return delta


def arakelov_height_sq(field, rows):
    """Exact H_Ar(A)^2 for full-row-rank A over Z or Fq[T]."""
    if isinstance(field, GaussianField):
        raise ValueError("arakelov_height_sq supports Q and Fq(T) instances")
    mtx = ExactMatrix(field, rows)
    ring_rows = mtx.ring_rows()
    m, n = mtx.nrows, mtx.ncols
    delta = maximal_minor_gcd(field, rows)
    if isinstance(field, RationalField):
        gram = [
            [sum(ring_rows[i][k] * ring_rows[j][k] for k in range(n)) for j in range(m)]
            for i in range(m)
        ]
        det = det_bareiss(field, gram)
        return Fraction(det, delta * delta)
    # function field: q^(2 max_J deg det(A_J)) / N(Delta)^2
    best = None
    for cols in combinations(range(n), m):
        sub = [[ring_rows[i][j] for j in cols] for i in range(m)]
        d = det_bareiss(field, sub)
        if not field.ring_is_zero(d):
            deg = d.degree
            best = deg if best is None else max(best, deg)
    return Fraction(field.q) ** (2 * best) / Fraction(field.norm(delta)) ** 2


def matrix_height_aff(field, rows):
    """Affine height of the entry vector (>= the projective matrix height)."""
    mtx = ExactMatrix(field, rows)
    ring_rows = mtx.ring_rows()
    arch = max(Fraction(field.arch_norm(e)) for r in ring_rows for e in r)
    return max(Fraction(1), arch)


# ---------------------------------------------------------------------------
# Size reduction


def _lll_reduce_int(vectors, delta=Fraction(3, 4)):
    """Exact LLL over Z with rational Gram-Schmidt; returns new vectors."""
    basis = [list(map(int, v)) for v in vectors]
    n = len(basis)
    if n <= 1:
        return basis

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def gso():
        ortho, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            vi = [Fraction(x) for x in basis[i]]
            for j in range(i):
                denom = dot(ortho[j], ortho[j])
                mu[i][j] = Fraction(dot([Fraction(x) for x in basis[i]], ortho[j]), 1) / denom if denom else Fraction(0)
                vi = [a - mu[i][j] * b for a, b in zip(vi, ortho[j])]
            ortho.append(vi)
        return ortho, mu

    ortho, mu = gso()
    k = 1
    guard = 0
    while k < n and guard < 10_000:
        guard += 1
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = int((mu[k][j] + Fraction(1, 2)).__floor__())
                basis[k] = [a - r * b for a, b in zip(basis[k], basis[j])]
                ortho, mu = gso()
        nk = dot(ortho[k], ortho[k])
        nk1 = dot(ortho[k - 1], ortho[k - 1])
        if nk >= (delta - mu[k][k - 1] ** 2) * nk1:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            ortho, mu = gso()
            k = max(k - 1, 1)
    return basis


def _popov_reduce_ff(field, vectors):
    """Degree-reduction pass over Fq[T]: distinct leading positions."""
    rows = [list(v) for v in vectors]

    def pivot(row):
        deg = max((e.degree for e in row if e), default=-1)
        for j in range(len(row) - 1, -1, -1):
            if row[j] and row[j].degree == deg:
                return j, deg
        return -1, -1

    changed = True
    guard = 0
    while changed and guard < 1000:
        changed = False
        guard += 1
        info = [pivot(r) for r in rows]
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                (pi, di), (pj, dj) = info[i], info[j]
                if pi == pj and pi >= 0 and di >= dj:
                    c = rows[i][pi].leading() * pow(rows[j][pj].leading(), field.q - 2, field.q)
                    shift = di - dj
                    factor = rows[j]
                    from .fields import FqPoly

                    mono = FqPoly(field.q, [0] * shift + [c])
                    rows[i] = [a - mono * b for a, b in zip(rows[i], factor)]
                    if all(not e for e in rows[i]):
                        rows[i] = factor  # degenerate; keep basis size
                    else:
                        changed = True
                        info[i] = pivot(rows[i])
    return rows


def size_reduced_kernel(field, rows, restrict_scalars=False):
    """Integral kernel basis after the field-appropriate reduction pass."""
    vectors = hnf_kernel(field, rows)
    if not vectors:
        return []
    if isinstance(field, RationalField):
        reduced = _lll_reduce_int(vectors)
    elif isinstance(field, FunctionField):
        reduced = _popov_reduce_ff(field, vectors)
    elif restrict_scalars:
        reduced = _gaussian_restricted_lll(vectors)
    else:
        reduced = vectors
    out = [normalize_coords(field, v) for v in reduced]
    out.sort(key=lambda v: max(field.arch_norm(c) for c in v))
    return out


def _gaussian_restricted_lll(vectors):
    """LLL on the Z^2n image of a Z[i] basis (each v contributes v and iv)."""
    lifted = []
    for v in vectors:
        lifted.append([x for z in v for x in (z.re, z.im)])
        iv = [Zi(0, 1) * z for z in v]
        lifted.append([x for z in iv for x in (z.re, z.im)])
    reduced = _lll_reduce_int(lifted)
    out = []
    for row in reduced:
        z = [Zi(row[2 * i], row[2 * i + 1]) for i in range(len(row) // 2)]
        if any(c for c in z):
            out.append(z)
    return out[: len(vectors)]


def small_kernel_solution(field, rows, restrict_scalars=False):
    """Shortest found integral kernel vector plus the Cor-2.6-shaped bound.

    Returns (vector, HeightValue of (1:x), bound float, ok).  The height
    comparison against C (n^{dK/2} H_K(A))^{r/(n-r)} is done exactly on
    2(n-r)-th powers.
    """
    mtx = ExactMatrix(field, rows)
    n = mtx.ncols
    ring_rows = mtx.ring_rows()
    r, _, _ = bareiss_echelon(field, ring_rows)
    if r >= n:
        raise ValueError("matrix has full column rank; no kernel")
    reduced = size_reduced_kernel(field, rows, restrict_scalars)
    best = min(
        reduced, key=lambda v: max(Fraction(1), max(field.arch_norm(c) for c in v))
    )
    hk = max(Fraction(1), max(Fraction(field.arch_norm(c)) for c in best))
    height = HeightValue(hk, field.d_K)
    HA = matrix_height_aff(field, rows)
    C = Fraction(constants.SMALL_SOLUTION_C)
    # exact comparison: hk^{2(n-r)} <= C^{2(n-r)} n^{r dK} HA^{2r}
    lhs = hk ** (2 * (n - r))
    rhs = C ** (2 * (n - r)) * Fraction(n) ** (r * field.d_K) * HA ** (2 * r)
    ok = lhs <= rhs
    bound = float(C) * (n ** (field.d_K / 2.0) * float(HA)) ** (r / (n - r))
    return best, height, bound, ok


def padic_val_det(field, rows, prime):
    """ord_p(det A) for square A over O_K; math.inf when det = 0."""
    mtx = ExactMatrix(field, rows)
    if mtx.nrows != mtx.ncols:
        raise ValueError("determinant needs a square matrix")
    det = det_bareiss(field, mtx.ring_rows())
    if field.ring_is_zero(det):
        return math.inf
    return field.ord(prime, field.ring_to_elem(det))


def modular_rank(field, rows, prime):
    """Rank of the reduction mod p (consistency oracle for Bareiss)."""
    mtx = ExactMatrix(field, rows)
    ff = field.residue_field(prime)
    red = [[field.reduce_ring(prime, e, ff) for e in r] for r in mtx.ring_rows()]
    rank, _, _ = field_echelon(ff, red)
    return rank
