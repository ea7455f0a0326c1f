"""Exact arithmetic for the three supported global fields.

Supported instances: Q (rationals), Fq(T) with q prime (rational function
field), and Qi (Gaussian rationals).  All three have principal rings of
integers (Z, Fq[T], Z[i]), so lifts reduce to gcd-normalization plus a
canonical choice of unit, and the lift constants are all 1.

Ring elements are int, FqPoly, or Zi; field elements are Fraction, FqRat,
or ZiRat.  All values are immutable and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ParseError

# ---------------------------------------------------------------------------
# Fq[T], q prime


class FqPoly:
    """Polynomial over F_p, p prime, stored as a coefficient tuple (low first)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        self.p = p
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, p, c):
        return cls(p, (c,))

    @classmethod
    def gen(cls, p):
        return cls(p, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self):
        return len(self.coeffs) == 1

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (
            isinstance(other, FqPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __neg__(self):
        return FqPoly(self.p, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return FqPoly(self.p, out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return FqPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FqPoly(self.p, out)

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        dl = other.degree
        lead_inv = pow(other.coeffs[-1], p - 2, p)
        quot = [0] * max(0, len(rem) - dl)
        for i in range(len(rem) - 1, dl - 1, -1):
            c = rem[i] % p
            if c:
                f = c * lead_inv % p
                quot[i - dl] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dl + j] -= f * b
                rem[i] = 0
        return FqPoly(p, quot), FqPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return FqPoly(self.p, tuple(c * inv for c in self.coeffs))

    def shift(self, k):
        """Multiply by T^k."""
        if not self.coeffs:
            return self
        return FqPoly(self.p, (0,) * k + self.coeffs)

    def __repr__(self):
        return f"FqPoly(p={self.p}, {format_fqpoly(self)!r})"


def format_fqpoly(f, var="t"):
    if not f.coeffs:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" if i == 1 else f"{head}{var}^{i}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Gaussian integers


class Zi:
    """Gaussian integer a + b*i."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re
        self.im = im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def is_unit(self):
        return self.norm() == 1

    def norm(self):
        return self.re * self.re + self.im * self.im

    def conj(self):
        return Zi(self.re, -self.im)

    def __eq__(self, other):
        return isinstance(other, Zi) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return Zi(-self.re, -self.im)

    def __add__(self, other):
        return Zi(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Zi(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return Zi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __divmod__(self, other):
        # Gaussian rounding keeps Nm(remainder) <= Nm(other)/2.
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        t = self * other.conj()
        qr = (2 * t.re + n) // (2 * n)
        qi = (2 * t.im + n) // (2 * n)
        q = Zi(qr, qi)
        return q, self - q * other

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __repr__(self):
        return f"Zi({self.re}, {self.im})"


def format_zi(z):
    if z.im == 0:
        return str(z.re)
    im = f"{abs(z.im)}*i" if abs(z.im) != 1 else "i"
    if z.re == 0:
        return im if z.im > 0 else f"-{im}"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{im}"


ZI_UNITS = (Zi(1, 0), Zi(0, 1), Zi(-1, 0), Zi(0, -1))


def zi_canonical_unit(z):
    """Unit u with z/u in the first quadrant (re > 0, im >= 0)."""
    if z.is_zero():
        return Zi(1, 0)
    for u in ZI_UNITS:
        q, r = divmod(z, u)
        if q.re > 0 and q.im >= 0:
            return u
    raise AssertionError("no canonical unit found")  # unreachable


# ---------------------------------------------------------------------------
# Field element fractions


class FqRat:
    """Element of Fq(T): reduced ratio of FqPoly with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = FqPoly.const(num.p, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = euclid_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if not den.is_monic():
                inv = pow(den.leading(), den.p - 2, den.p)
                c = FqPoly.const(den.p, inv)
                num, den = num * c, den * c
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, FqRat) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return FqRat(-self.num, self.den, reduce=False)

    def __add__(self, other):
        return FqRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return FqRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return FqRat(self.num * other.den, self.den * other.num)

    def __repr__(self):
        if self.den.is_unit():
            return format_fqpoly(self.num)
        return f"({format_fqpoly(self.num)})/({format_fqpoly(self.den)})"


class ZiRat:
    """Element of Q(i): reduced Gaussian fraction with canonical denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Zi(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = euclid_gcd(num, den)
            if g.norm() > 1:
                num, den = num // g, den // g
            u = zi_canonical_unit(den)
            if u != Zi(1):
                num, den = num // u, den // u
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, ZiRat) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return ZiRat(-self.num, self.den, reduce=False)

    def __add__(self, other):
        return ZiRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ZiRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return ZiRat(self.num * other.den, self.den * other.num)

    def __repr__(self):
        if self.den == Zi(1):
            return format_zi(self.num)
        return f"({format_zi(self.num)})/({format_zi(self.den)})"


def euclid_gcd(a, b):
    """Gcd in any ring with __divmod__ (Z, Fq[T], Z[i])."""
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Finite fields F_{p^k}


class FFElem:
    """Element of F_{p^k} as a residue tuple of length k (low first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, FFElem)
            and self.field.key == other.field.key
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-c) % p for c in self.coeffs))

    def __add__(self, other):
        p = self.field.p
        return FFElem(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        p = self.field.p
        return FFElem(
            self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self * self.field.inv(other)

    def __pow__(self, e):
        return self.field.pow(self, e)

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.coeffs[0]}@F{self.field.p}"
        return f"{list(self.coeffs)}@F{self.field.p}^{self.field.k}"


class FiniteField:
    """F_{p^k} = F_p[x]/(modulus); modulus is an irreducible FqPoly over F_p."""

    def __init__(self, p, modulus=None):
        self.p = p
        if modulus is None:
            self.k = 1
            self.modulus = None
        elif modulus.degree == 1:
            self.k = 1
            self.modulus = modulus  # kept so from_coeffs can reduce long tuples
        else:
            if not modulus.is_monic():
                raise ValueError("modulus must be monic")
            self.k = modulus.degree
            self.modulus = modulus
        self.order = p**self.k
        # any degree-1 quotient is canonically F_p, so k == 1 keys collapse
        self.key = (p, self.modulus.coeffs if self.k > 1 else None)

    def zero(self):
        return FFElem(self, (0,) * self.k)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return FFElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def from_coeffs(self, cs):
        cs = [c % self.p for c in cs]
        if len(cs) > self.k:
            r = FqPoly(self.p, cs) % self.modulus
            cs = list(r.coeffs)
        cs += [0] * (self.k - len(cs))
        return FFElem(self, tuple(cs))

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return FFElem(self, (a.coeffs[0] * b.coeffs[0] % p,))
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        r = FqPoly(p, out) % self.modulus
        cs = list(r.coeffs) + [0] * (self.k - len(r.coeffs))
        return FFElem(self, tuple(cs))

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        if self.k == 1:
            return FFElem(self, (pow(a.coeffs[0], p - 2, p),))
        # extended Euclid in F_p[x]
        r0, r1 = self.modulus, FqPoly(p, a.coeffs)
        s0, s1 = FqPoly(p, ()), FqPoly(p, (1,))
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        lead_inv = pow(r0.leading(), p - 2, p)
        s0 = s0 * FqPoly.const(p, lead_inv)
        cs = list(s0.coeffs) + [0] * (self.k - len(s0.coeffs))
        return FFElem(self, tuple(cs[: self.k]))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self):
        """All field elements, deterministic order (small fields only)."""

        def rec(i, acc):
            if i == self.k:
                yield FFElem(self, tuple(acc))
                return
            for c in range(self.p):
                yield from rec(i + 1, acc + [c])

        yield from rec(0, [])

    def random(self, rng):
        return FFElem(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def __repr__(self):
        return f"FiniteField({self.p}^{self.k})"


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def sieve_primes(limit):
    """All rational primes <= limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i in range(2, limit + 1) if flags[i]]


def find_irreducible(p, k, rng=None):
    """A monic irreducible of degree k over F_p (deterministic search)."""
    if k == 1:
        return FqPoly(p, (0, 1))
    # iterate lexicographically over monic polynomials of degree k
    total = p**k
    for code in range(total):
        cs = []
        c = code
        for _ in range(k):
            cs.append(c % p)
            c //= p
        f = FqPoly(p, cs + [1])
        if fqpoly_is_irreducible(f):
            return f
    raise AssertionError("no irreducible found")  # unreachable


def fqpoly_is_irreducible(f):
    """Irreducibility over F_p via x^(p^d) = x and gcd conditions."""
    p, d = f.p, f.degree
    if d < 1:
        return False
    if f.coeffs[0] == 0 and d > 1:
        return False
    x = FqPoly(p, (0, 1))
    # x^(p^d) mod f must equal x
    h = x
    for _ in range(d):
        h = _fq_powmod_p(h, f)
    if h != x % f:
        return False
    for ell in set(_prime_divisors(d)):
        e = d // ell
        h = x
        for _ in range(e):
            h = _fq_powmod_p(h, f)
        if euclid_gcd((h - x) % f, f).degree != 0:
            return False
    return True


def _fq_powmod_p(h, f):
    """h^p mod f."""
    p = f.p
    out = FqPoly(p, (1,))
    base = h
    e = p
    while e:
        if e & 1:
            out = out * base % f
        base = base * base % f
        e >>= 1
    return out


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Primes and field descriptors


@dataclass(frozen=True)
class PrimeId:
    """A finite prime of O_K: generator (canonical), norm, residue degree."""

    gen: object
    norm: int
    degree: int = 1

    def __repr__(self):
        return f"PrimeId({self.gen!r}, norm={self.norm})"


@dataclass(frozen=True)
class FieldSpec:
    variant: str  # "Q" | "Fq(T)" | "Qi"
    q: int = 0  # function-field constant field size (prime in v1)
    d_K: int = 1
    c1: Fraction = Fraction(1)
    c2: Fraction = Fraction(1)
    c3: Fraction = Fraction(1)


_SPEC_RE = re.compile(r"^Fq\(T\):q=(\d+)$")


def make_field(spec_string):
    """Parse a field spec string: Q | Fq(T):q=<p> | Qi."""
    s = spec_string.strip()
    if s == "Q":
        return RationalField()
    if s == "Qi":
        return GaussianField()
    m = _SPEC_RE.match(s)
    if m:
        q = int(m.group(1))
        if not _is_prime(q):
            raise ParseError(f"q = {q} is not prime (prime powers not supported in v1)")
        return FunctionField(q)
    raise ParseError(f"unparsable field spec {spec_string!r}")


class RationalField:
    """K = Q, O_K = Z."""

    name = "Q"
    d_K = 1
    char = 0

    def __init__(self):
        self.spec = FieldSpec("Q", d_K=1)
        self._prime_cache = (0, [])

    # --- elements ------------------------------------------------------
    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def elem(self, num, den=1):
        return Fraction(num if isinstance(num, int) else num, den)

    def is_zero(self, x):
        return x == 0

    # --- ring O_K ------------------------------------------------------
    def ring_zero(self):
        return 0

    def ring_one(self):
        return 1

    def ring_from_int(self, n):
        return n

    def ring_is_zero(self, a):
        return a == 0

    def ring_is_unit(self, a):
        return a in (1, -1)

    def ring_gcd(self, a, b):
        g = euclid_gcd(abs(a), abs(b))
        return abs(g)

    def canonical_unit(self, a):
        return -1 if a < 0 else 1

    def ring_exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ValueError("not an exact division")
        return q

    def norm(self, a):
        return abs(a)

    def arch_norm(self, a):
        """|a|_{v_inf}^{d_K} for an integral a, as an exact int/Fraction."""
        return abs(a)

    def arch_norm_elem(self, x):
        return abs(x)

    def as_integer_ratio(self, x):
        return x.numerator, x.denominator

    def integral(self, x):
        return x.denominator == 1

    def to_ring(self, x):
        if x.denominator != 1:
            raise ValueError(f"{x} is not integral")
        return x.numerator

    def ring_to_elem(self, a):
        return Fraction(a)

    # --- places --------------------------------------------------------
    def primes_upto(self, Q):
        Q = int(Q)
        if Q < 2:
            return []
        if Q > self._prime_cache[0]:
            self._prime_cache = (Q, sieve_primes(Q))
        return [PrimeId(p, p, 1) for p in self._prime_cache[1] if p <= Q]

    def ord(self, prime, x):
        if isinstance(x, Fraction):
            if x == 0:
                raise ZeroDivisionError("ord of zero")
            return self._ord_int(prime.gen, x.numerator) - self._ord_int(
                prime.gen, x.denominator
            )
        if x == 0:
            raise ZeroDivisionError("ord of zero")
        return self._ord_int(prime.gen, x)

    @staticmethod
    def _ord_int(p, n):
        n = abs(n)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        return e

    def factor_ring(self, a):
        """Prime factorization of a nonzero integer as [(PrimeId, exp)]."""
        n = abs(a)
        if n == 0:
            raise ZeroDivisionError("factor of zero")
        out = []
        for p in _trial_factor(n):
            out.append((PrimeId(p[0], p[0], 1), p[1]))
        return out

    def residue_field(self, prime):
        return FiniteField(prime.gen)

    def reduce_ring(self, prime, a, ff=None):
        ff = ff or self.residue_field(prime)
        return ff.from_int(a % prime.gen)

    def reduce_elem(self, prime, x, ff=None):
        ff = ff or self.residue_field(prime)
        p = prime.gen
        den = x.denominator
        if den % p == 0:
            raise ValueError(f"{x} is not integral at {p}")
        return ff.from_int(x.numerator * pow(den, -1, p) % p)

    # --- boxes, formatting, randomness ----------------------------------
    def box_elements(self, B):
        """Integers |x| <= B in the deterministic order 0, 1, -1, 2, -2, ..."""
        B = int(B)
        out = [0]
        for k in range(1, B + 1):
            out.append(k)
            out.append(-k)
        return out

    def box_size(self, B):
        return 2 * int(B) + 1

    def format_ring(self, a):
        return str(a)

    def format_elem(self, x):
        return str(x)

    def random_ring(self, rng, size):
        return rng.randint(-size, size)

    def random_nonzero(self, rng, size):
        while True:
            n = rng.randint(-size, size)
            d = rng.randint(1, size)
            if n != 0:
                return Fraction(n, d)

    def __repr__(self):
        return "Field(Q)"


def _trial_factor(n):
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    while d * d <= n:
        for step in (d, d + 2):
            e = 0
            while n % step == 0:
                n //= step
                e += 1
            if e:
                out.append((step, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


class FunctionField:
    """K = Fq(T) with q prime, O_K = Fq[T]; the place at infinity is 1/T."""

    def __init__(self, q):
        if not _is_prime(q):
            raise ParseError(f"q = {q} is not prime")
        self.q = q
        self.name = f"Fq(T):q={q}"
        self.d_K = 1
        self.char = q
        self.spec = FieldSpec("Fq(T)", q=q, d_K=1)
        self._irr_cache = []  # irreducibles by degree, 1-indexed

    # --- elements ------------------------------------------------------
    def zero(self):
        return FqRat(FqPoly(self.q, ()))

    def one(self):
        return FqRat(FqPoly(self.q, (1,)))

    def from_int(self, n):
        return FqRat(FqPoly.const(self.q, n))

    def elem(self, num, den=None):
        return FqRat(num, den)

    def is_zero(self, x):
        return x.is_zero()

    # --- ring ------------------------------------------------------------
    def ring_zero(self):
        return FqPoly(self.q, ())

    def ring_one(self):
        return FqPoly(self.q, (1,))

    def ring_from_int(self, n):
        return FqPoly.const(self.q, n)

    def T(self):
        return FqPoly.gen(self.q)

    def ring_is_zero(self, a):
        return a.is_zero()

    def ring_is_unit(self, a):
        return a.is_unit()

    def ring_gcd(self, a, b):
        return euclid_gcd(a, b).monic() if (a or b) else self.ring_zero()

    def canonical_unit(self, a):
        return FqPoly.const(self.q, a.leading()) if a else self.ring_one()

    def ring_exact_div(self, a, b):
        qt, r = divmod(a, b)
        if r:
            raise ValueError("not an exact division")
        return qt

    def norm(self, a):
        if a.is_zero():
            return 0
        return self.q**a.degree

    def arch_norm(self, a):
        if a.is_zero():
            return Fraction(0)
        return Fraction(self.q) ** a.degree

    def arch_norm_elem(self, x):
        if x.is_zero():
            return Fraction(0)
        return Fraction(self.q) ** (x.num.degree - x.den.degree)

    def as_integer_ratio(self, x):
        return x.num, x.den

    def integral(self, x):
        return x.den.is_unit()

    def to_ring(self, x):
        if not x.den.is_unit():
            raise ValueError(f"{x!r} is not integral")
        return x.num

    def ring_to_elem(self, a):
        return FqRat(a)

    # --- places ----------------------------------------------------------
    def irreducibles_of_degree(self, d):
        """All monic irreducibles of degree d, lexicographic order."""
        while len(self._irr_cache) < d:
            k = len(self._irr_cache) + 1
            found = []
            for code in range(self.q**k):
                cs = []
                c = code
                for _ in range(k):
                    cs.append(c % self.q)
                    c //= self.q
                f = FqPoly(self.q, cs + [1])
                if k == 1 or all(
                    f % g
                    for deg in range(1, k // 2 + 1)
                    for g in self._irr_cache[deg - 1]
                ):
                    found.append(f)
            self._irr_cache.append(found)
        return self._irr_cache[d - 1]

    def primes_upto(self, Q):
        """All primes of norm <= Q; Q is snapped down to a power of q."""
        if Q < self.q:
            return []
        h = 0
        qq = 1
        while qq * self.q <= Q:
            qq *= self.q
            h += 1
        out = []
        for d in range(1, h + 1):
            for f in self.irreducibles_of_degree(d):
                out.append(PrimeId(f, self.q**d, d))
        return out

    def ord(self, prime, x):
        if isinstance(x, FqRat):
            if x.is_zero():
                raise ZeroDivisionError("ord of zero")
            return self._ord_poly(prime.gen, x.num) - self._ord_poly(prime.gen, x.den)
        if x.is_zero():
            raise ZeroDivisionError("ord of zero")
        return self._ord_poly(prime.gen, x)

    @staticmethod
    def _ord_poly(g, f):
        e = 0
        while True:
            qt, r = divmod(f, g)
            if r:
                return e
            f = qt
            e += 1

    def factor_ring(self, a):
        if a.is_zero():
            raise ZeroDivisionError("factor of zero")
        out = []
        f = a.monic()
        d = 1
        while f.degree > 0:
            if 2 * d > f.degree:
                out.append((PrimeId(f, self.q**f.degree, f.degree), 1))
                break
            for g in self.irreducibles_of_degree(d):
                e = 0
                while True:
                    qt, r = divmod(f, g)
                    if r:
                        break
                    f = qt
                    e += 1
                if e:
                    out.append((PrimeId(g, self.q**d, d), e))
            d += 1
        return out

    def residue_field(self, prime):
        if prime.degree == 1:
            return FiniteField(self.q)
        return FiniteField(self.q, prime.gen)

    def reduce_ring(self, prime, a, ff=None):
        ff = ff or self.residue_field(prime)
        if prime.degree == 1:
            # evaluate at the root -c0 of T + c0
            root = (-prime.gen.coeffs[0]) % self.q
            v = 0
            for c in reversed(a.coeffs):
                v = (v * root + c) % self.q
            return ff.from_int(v)
        r = a % prime.gen
        return ff.from_coeffs(r.coeffs)

    def reduce_elem(self, prime, x, ff=None):
        ff = ff or self.residue_field(prime)
        dz = self.reduce_ring(prime, x.den, ff)
        if dz.is_zero():
            raise ValueError(f"{x!r} is not integral at {prime!r}")
        return self.reduce_ring(prime, x.num, ff) / dz

    # --- boxes, formatting, randomness ----------------------------------
    def box_elements(self, B):
        """Polynomials of degree <= floor(log_q B), lexicographic by degree."""
        if B < 1:
            return []
        h = 0
        qq = 1
        while qq * self.q <= B:
            qq *= self.q
            h += 1
        out = []
        for code in range(self.q ** (h + 1)):
            cs = []
            c = code
            for _ in range(h + 1):
                cs.append(c % self.q)
                c //= self.q
            out.append(FqPoly(self.q, cs))
        return out

    def box_size(self, B):
        if B < 1:
            return 0
        h = 0
        qq = 1
        while qq * self.q <= B:
            qq *= self.q
            h += 1
        return self.q ** (h + 1)

    def format_ring(self, a):
        return format_fqpoly(a)

    def format_elem(self, x):
        return repr(x)

    def random_ring(self, rng, size):
        deg = rng.randint(0, size)
        return FqPoly(self.q, [rng.randrange(self.q) for _ in range(deg + 1)])

    def random_nonzero(self, rng, size):
        while True:
            num = self.random_ring(rng, size)
            den = self.random_ring(rng, size)
            if num and den:
                return FqRat(num, den)

    def __repr__(self):
        return f"Field(Fq(T), q={self.q})"


class GaussianField:
    """K = Q(i), O_K = Z[i]; one complex place, d_K = 2."""

    name = "Qi"
    d_K = 2
    char = 0

    def __init__(self):
        self.spec = FieldSpec("Qi", d_K=2)
        self._rat = RationalField()

    # --- elements ------------------------------------------------------
    def zero(self):
        return ZiRat(Zi(0))

    def one(self):
        return ZiRat(Zi(1))

    def from_int(self, n):
        return ZiRat(Zi(n))

    def elem(self, num, den=None):
        return ZiRat(num, den)

    def is_zero(self, x):
        return x.is_zero()

    # --- ring ------------------------------------------------------------
    def ring_zero(self):
        return Zi(0)

    def ring_one(self):
        return Zi(1)

    def ring_from_int(self, n):
        return Zi(n)

    def i(self):
        return Zi(0, 1)

    def ring_is_zero(self, a):
        return a.is_zero()

    def ring_is_unit(self, a):
        return a.is_unit()

    def ring_gcd(self, a, b):
        g = euclid_gcd(a, b)
        if g.is_zero():
            return g
        return g // zi_canonical_unit(g)

    def canonical_unit(self, a):
        return zi_canonical_unit(a)

    def ring_exact_div(self, a, b):
        qt, r = divmod(a, b)
        if r:
            raise ValueError("not an exact division")
        return qt

    def norm(self, a):
        return a.norm()

    def arch_norm(self, a):
        # |a|_v^{d_K} at the complex place equals Nm(a)
        return Fraction(a.norm())

    def arch_norm_elem(self, x):
        return Fraction(x.num.norm(), x.den.norm())

    def as_integer_ratio(self, x):
        return x.num, x.den

    def integral(self, x):
        return x.den.is_unit()

    def to_ring(self, x):
        if not x.den.is_unit():
            raise ValueError(f"{x!r} is not integral")
        return x.num // x.den

    def ring_to_elem(self, a):
        return ZiRat(a)

    # --- places ----------------------------------------------------------
    def primes_upto(self, Q):
        """One canonical representative per unit orbit, sorted by norm."""
        out = []
        for p in sieve_primes(int(Q)):
            if p == 2:
                out.append(PrimeId(Zi(1, 1), 2, 1))
            elif p % 4 == 1:
                pi = self._split_prime(p)
                out.append(PrimeId(pi, p, 1))
                pj = pi.conj()
                out.append(PrimeId(pj // zi_canonical_unit(pj), p, 1))
            else:
                if p * p <= Q:
                    out.append(PrimeId(Zi(p), p * p, 2))
        out.sort(key=lambda pr: (pr.norm, pr.gen.re, pr.gen.im))
        return out

    @staticmethod
    def _split_prime(p):
        # c with c^2 = -1 mod p via a quadratic non-residue
        for x in range(2, p):
            if pow(x, (p - 1) // 2, p) == p - 1:
                c = pow(x, (p - 1) // 4, p)
                break
        else:  # pragma: no cover
            raise AssertionError("no non-residue found")
        g = euclid_gcd(Zi(p), Zi(c, 1))
        return g // zi_canonical_unit(g)

    def ord(self, prime, x):
        if isinstance(x, ZiRat):
            if x.is_zero():
                raise ZeroDivisionError("ord of zero")
            return self._ord_zi(prime.gen, x.num) - self._ord_zi(prime.gen, x.den)
        if x.is_zero():
            raise ZeroDivisionError("ord of zero")
        return self._ord_zi(prime.gen, x)

    @staticmethod
    def _ord_zi(g, z):
        e = 0
        while True:
            qt, r = divmod(z, g)
            if r:
                return e
            z = qt
            e += 1

    def factor_ring(self, a):
        if a.is_zero():
            raise ZeroDivisionError("factor of zero")
        out = []
        n = a.norm()
        for p, _ in _trial_factor(n) if n > 1 else []:
            if p == 2:
                pr = PrimeId(Zi(1, 1), 2, 1)
                out.append((pr, self._ord_zi(pr.gen, a)))
            elif p % 4 == 1:
                pi = self._split_prime(p)
                for g in (pi, pi.conj() // zi_canonical_unit(pi.conj())):
                    e = self._ord_zi(g, a)
                    if e:
                        out.append((PrimeId(g, p, 1), e))
            else:
                e = self._ord_zi(Zi(p), a)
                if e:
                    out.append((PrimeId(Zi(p), p * p, 2), e))
        return out

    def residue_field(self, prime):
        if prime.degree == 1:
            return FiniteField(prime.norm)
        return FiniteField(prime.gen.re, FqPoly(prime.gen.re, (1, 0, 1)))  # x^2+1

    def reduce_ring(self, prime, a, ff=None):
        ff = ff or self.residue_field(prime)
        if prime.degree == 1:
            p = prime.norm
            g = prime.gen
            if g.im == 0:  # pragma: no cover - split/ramified primes have im != 0
                return ff.from_int(a.re % p)
            c = (-g.re * pow(g.im, -1, p)) % p  # image of i
            return ff.from_int((a.re + a.im * c) % p)
        p = prime.gen.re
        return ff.from_coeffs((a.re % p, a.im % p))

    def reduce_elem(self, prime, x, ff=None):
        ff = ff or self.residue_field(prime)
        dz = self.reduce_ring(prime, x.den, ff)
        if dz.is_zero():
            raise ValueError(f"{x!r} is not integral at {prime!r}")
        return self.reduce_ring(prime, x.num, ff) / dz

    # --- boxes, formatting, randomness ----------------------------------
    def box_elements(self, B):
        """Gaussian integers of norm <= B, sorted by (norm, re, im)."""
        B = int(B)
        out = []
        r = isqrt(B)
        for a in range(-r, r + 1):
            rem = B - a * a
            s = isqrt(rem)
            for b in range(-s, s + 1):
                out.append(Zi(a, b))
        out.sort(key=lambda z: (z.norm(), z.re, z.im))
        return out

    def box_size(self, B):
        return len(self.box_elements(B))

    def format_ring(self, a):
        return format_zi(a)

    def format_elem(self, x):
        return repr(x)

    def random_ring(self, rng, size):
        return Zi(rng.randint(-size, size), rng.randint(-size, size))

    def random_nonzero(self, rng, size):
        while True:
            num = self.random_ring(rng, size)
            den = self.random_ring(rng, size)
            if num and den:
                return ZiRat(num, den)

    def __repr__(self):
        return "Field(Qi)"


# ---------------------------------------------------------------------------
# Operations of the field-core surface


def abs_value_exponent(field, prime, elem):
    """ord_p(x); |x|_p is then N(p)^(-ord/d_K)."""
    return field.ord(prime, elem)


def product_formula_check(field, elem):
    """Exact product of |x|_v^{d_K} over all places; must equal 1."""
    if field.is_zero(elem):
        raise ZeroDivisionError("product formula needs a nonzero element")
    num, den = field.as_integer_ratio(elem)
    total = field.arch_norm_elem(elem)
    for part, sign in ((num, -1), (den, 1)):
        if field.ring_is_unit(part):
            continue
        for prime, e in field.factor_ring(part):
            total *= Fraction(prime.norm) ** (sign * e)
    return total


def primes_up_to(field, Q):
    """All finite primes of norm <= Q, sorted by norm, no duplicates."""
    return field.primes_upto(Q)


def reduce_mod(field, value, prime):
    """Reduce an element (or, see mpoly.reduce_mpoly, a polynomial) mod p."""
    if isinstance(value, (Fraction, FqRat, ZiRat)):
        return field.reduce_elem(prime, value)
    return field.reduce_ring(prime, value)
