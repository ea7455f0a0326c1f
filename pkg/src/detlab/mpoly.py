"""Sparse multivariate polynomials with exact coefficients.

MPoly is generic over the coefficient type: ring elements (int, FqPoly, Zi),
field elements (Fraction, FqRat, ZiRat), or finite-field residues (FFElem).
All coefficient types support +, -, *, bool; no zero coefficient is stored.

The text grammar (variables x0..x9, operators + - * / ^, parenthesised
coefficient expressions, `t` for the function-field indeterminate, `i` for
the Gaussian unit) is shared by polynomial and element literals.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .fields import (
    FFElem,
    FqPoly,
    FqRat,
    FunctionField,
    GaussianField,
    RationalField,
    Zi,
    ZiRat,
    format_fqpoly,
    format_zi,
)


class MPoly:
    """Map exponent-vector -> nonzero coefficient, with cached degree."""

    __slots__ = ("nvars", "terms", "_degree")

    def __init__(self, nvars, terms=None, prune=True):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif prune:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = terms
        self._degree = None

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i, one):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): one})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self):
        if self._degree is None:
            self._degree = max((sum(e) for e in self.terms), default=-1)
        return self._degree

    def var_degree(self, i):
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def num_terms(self):
        return len(self.terms)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()}, prune=False)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return MPoly(self.nvars, out, prune=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in out:
                    s = out[e] + prod
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                elif prod:
                    out[e] = prod
        return MPoly(self.nvars, out, prune=False)

    def scale(self, c):
        if not c:
            return MPoly(self.nvars)
        return MPoly(self.nvars, {e: c * t for e, t in self.terms.items()})

    def mul_monomial(self, exps, c):
        out = {}
        for e, t in self.terms.items():
            prod = c * t
            if prod:
                out[tuple(a + b for a, b in zip(e, exps))] = prod
        return MPoly(self.nvars, out, prune=False)

    def eval(self, point, zero):
        """Evaluate at a point whose entries multiply with the coefficients."""
        acc = zero
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * point[i]
            acc = acc + term
        return acc

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            d = _mul_int(c, k)
            if d:
                out[tuple(ne)] = d
        return MPoly(self.nvars, out, prune=False)

    def coefficient_of(self, exps):
        return self.terms.get(tuple(exps))

    def compose(self, images, one):
        """Substitute variable i -> images[i] (each an MPoly)."""
        nv = images[0].nvars
        acc = MPoly(nv)
        for e, c in self.terms.items():
            term = MPoly.constant(nv, c * one)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * images[i]
            acc = acc + term
        return acc

    def leading_term(self, order):
        """(exponent, coefficient) maximal under the given monomial order."""
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def __repr__(self):
        return f"MPoly({len(self.terms)} terms, nvars={self.nvars})"


def _mul_int(c, n):
    """coefficient times a Python int, for any supported coefficient type."""
    if isinstance(c, (int, Fraction)):
        return c * n
    if isinstance(c, FqPoly):
        return c * FqPoly.const(c.p, n)
    if isinstance(c, Zi):
        return c * Zi(n)
    if isinstance(c, FFElem):
        return c * c.field.from_int(n)
    if isinstance(c, FqRat):
        return c * FqRat(FqPoly.const(c.num.p, n))
    if isinstance(c, ZiRat):
        return c * ZiRat(Zi(n))
    raise TypeError(f"unsupported coefficient type {type(c)}")


# ---------------------------------------------------------------------------
# Parsing


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.toks = []
        self._tokenize()
        self.idx = 0

    def _tokenize(self):
        s = self.text
        i = 0
        while i < len(s):
            ch = s[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*/^()":
                self.toks.append((ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                self.toks.append((("num", int(s[i:j])), i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                    j += 1
                self.toks.append((("name", s[i:j]), i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r} at position {i}")

    def peek(self):
        return self.toks[self.idx][0] if self.idx < len(self.toks) else None

    def next(self):
        tok = self.toks[self.idx]
        self.idx += 1
        return tok

    def expect(self, t):
        if self.peek() != t:
            pos = self.toks[self.idx][1] if self.idx < len(self.toks) else len(self.text)
            raise ParseError(f"expected {t!r} at position {pos}")
        self.next()


class _Parser:
    """Recursive descent over K[x0..x9]; result coefficients live in K."""

    def __init__(self, field, text, nvars=None):
        self.field = field
        self.toks = _Tokens(text)
        self.max_var = -1
        self.forced_nvars = nvars

    def parse(self):
        poly = self._expr()
        if self.toks.peek() is not None:
            pos = self.toks.toks[self.toks.idx][1]
            raise ParseError(f"trailing input at position {pos}")
        nv = self.forced_nvars if self.forced_nvars is not None else self.max_var + 1
        return _resize(poly, max(nv, 1))

    # expr := term (("+"|"-") term)*
    def _expr(self):
        acc = self._term()
        while self.toks.peek() in ("+", "-"):
            op, _ = self.toks.next()
            rhs = self._term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    # term := factor (("*"|"/") factor)*
    def _term(self):
        acc = self._factor()
        while self.toks.peek() in ("*", "/"):
            op, _ = self.toks.next()
            rhs = self._factor()
            if op == "*":
                acc = _mixed_mul(acc, rhs)
            else:
                acc = _mixed_div(acc, rhs, self.field)
        return acc

    # factor := ("-")* atom ("^" num)?
    def _factor(self):
        neg = False
        while self.toks.peek() in ("+", "-"):
            op, _ = self.toks.next()
            if op == "-":
                neg = not neg
        atom = self._atom()
        if self.toks.peek() == "^":
            self.toks.next()
            tok, pos = self.toks.next()
            if not (isinstance(tok, tuple) and tok[0] == "num"):
                raise ParseError(f"expected integer exponent at position {pos}")
            e = tok[1]
            out = MPoly.constant(_nv(atom), self.field.one())
            for _ in range(e):
                out = _mixed_mul(out, atom)
            atom = out
        return -atom if neg else atom

    def _atom(self):
        tok = self.toks.peek()
        if tok == "(":
            self.toks.next()
            inner = self._expr()
            self.toks.expect(")")
            return inner
        if tok is None:
            raise ParseError("unexpected end of input")
        kind_tok, pos = self.toks.next()
        if isinstance(kind_tok, tuple):
            kind, val = kind_tok
            if kind == "num":
                return MPoly.constant(1, self.field.from_int(val))
            if kind == "name":
                return self._name(val, pos)
        raise ParseError(f"unexpected token at position {pos}")

    def _name(self, name, pos):
        if name.startswith("x") and name[1:].isdigit():
            idx = int(name[1:])
            if idx > 9:
                raise ParseError(f"unknown variable {name!r} (x0..x9 allowed)")
            self.max_var = max(self.max_var, idx)
            return MPoly.variable(10, idx, self.field.one())
        if name in ("t", "T"):
            if not isinstance(self.field, FunctionField):
                raise ParseError(f"variable {name!r} needs a function field")
            return MPoly.constant(1, self.field.elem(self.field.T()))
        if name in ("i", "I"):
            if not isinstance(self.field, GaussianField):
                raise ParseError(f"{name!r} needs the Gaussian field")
            return MPoly.constant(1, self.field.elem(self.field.i()))
        raise ParseError(f"unknown name {name!r} at position {pos}")


def _nv(p):
    return p.nvars


def _resize(p, nvars):
    if p.nvars == nvars:
        return p
    out = {}
    for e, c in p.terms.items():
        if any(e[nvars:]):
            raise ParseError("polynomial uses a variable beyond the requested count")
        out[tuple(e[:nvars]) + (0,) * max(0, nvars - len(e))] = c
    return MPoly(nvars, out, prune=False)


def _mixed_mul(a, b):
    nv = max(a.nvars, b.nvars)
    return _resize(a, nv) * _resize(b, nv)


def _mixed_div(a, b, field):
    if b.degree > 0:
        raise ParseError("division only by constant expressions")
    if b.is_zero():
        raise ZeroDivisionError("division by zero in literal")
    c = next(iter(b.terms.values()))
    inv = field.one() / c
    return a.scale(inv)


def parse_poly(field, text, nvars=None):
    """Parse a polynomial literal into an MPoly with coefficients in K."""
    return _Parser(field, text, nvars).parse()


def parse_element(field, text):
    """Parse a field element literal (a 0-degree polynomial expression)."""
    p = _Parser(field, text, nvars=1).parse()
    if p.degree > 0:
        raise ParseError(f"{text!r} is not a scalar")
    if p.is_zero():
        return field.zero()
    return next(iter(p.terms.values()))


# ---------------------------------------------------------------------------
# Formatting


def format_coeff(c):
    if isinstance(c, (int, Fraction)):
        return str(c)
    if isinstance(c, FqPoly):
        return format_fqpoly(c)
    if isinstance(c, Zi):
        return format_zi(c)
    if isinstance(c, (FqRat, ZiRat)):
        return repr(c)
    if isinstance(c, FFElem):
        return repr(c)
    raise TypeError(f"unsupported coefficient type {type(c)}")


def _coeff_is_one(c):
    if isinstance(c, (int, Fraction)):
        return c == 1
    if isinstance(c, FqPoly):
        return c.is_unit() and c.coeffs[0] == 1
    if isinstance(c, Zi):
        return c == Zi(1)
    if isinstance(c, FqRat):
        return c.den.is_unit() and _coeff_is_one(c.num)
    if isinstance(c, ZiRat):
        return c.den == Zi(1) and c.num == Zi(1)
    return False


def _coeff_is_minus_one(c):
    if isinstance(c, (int, Fraction)):
        return c == -1
    if isinstance(c, Zi):
        return c == Zi(-1)
    if isinstance(c, ZiRat):
        return c.den == Zi(1) and c.num == Zi(-1)
    return False


def _coeff_needs_parens(c):
    text = format_coeff(c)
    return any(ch in text for ch in "+-/* ") and not (
        text.startswith("-") and text[1:].isdigit()
    )


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def format_poly(p):
    """Canonical text form; parse(format(p)) == p for K-coefficient polys."""
    if p.is_zero():
        return "0"
    out = []
    for e in sorted(p.terms, key=grevlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            piece = format_coeff(c)
            if _coeff_needs_parens(c):
                piece = f"({piece})"
        elif _coeff_is_one(c):
            piece = mono
        elif _coeff_is_minus_one(c):
            piece = f"-{mono}"
        else:
            cs = format_coeff(c)
            if _coeff_needs_parens(c):
                cs = f"({cs})"
            piece = f"{cs}*{mono}"
        out.append(piece)
    text = out[0]
    for piece in out[1:]:
        if piece.startswith("-"):
            text += f" - {piece[1:]}"
        else:
            text += f" + {piece}"
    return text


# ---------------------------------------------------------------------------
# Coefficient domain changes


def to_integral(field, poly):
    """Scale a K-coefficient MPoly to O_K coefficients with unit content.

    Returns the scaled polynomial (ring coefficients, canonical leading
    unit under grevlex) -- heights and reductions assume this form.
    """
    if poly.is_zero():
        return MPoly(poly.nvars)
    # common denominator
    den = field.ring_one()
    for c in poly.terms.values():
        _, d = field.as_integer_ratio(c)
        g = field.ring_gcd(den, d)
        den = field.ring_exact_div(den * d, g)
    ring_terms = {}
    for e, c in poly.terms.items():
        n, d = field.as_integer_ratio(c)
        ring_terms[e] = n * field.ring_exact_div(den, d)
    # content
    content = field.ring_zero()
    for c in ring_terms.values():
        content = field.ring_gcd(content, c)
    if not field.ring_is_unit(content):
        ring_terms = {e: field.ring_exact_div(c, content) for e, c in ring_terms.items()}
    lead = max(ring_terms, key=grevlex_key)
    u = field.canonical_unit(ring_terms[lead])
    if not _coeff_is_one(u):
        ring_terms = {e: field.ring_exact_div(c, u) for e, c in ring_terms.items()}
    return MPoly(poly.nvars, ring_terms, prune=False)


def ring_to_field_poly(field, poly):
    """Reinterpret O_K coefficients as elements of K."""
    return MPoly(
        poly.nvars, {e: field.ring_to_elem(c) for e, c in poly.terms.items()}, prune=False
    )


def reduce_mpoly(field, poly, prime, ff=None):
    """Coefficientwise reduction of an O_K- or K-coefficient MPoly mod p."""
    ff = ff or field.residue_field(prime)
    sample = next(iter(poly.terms.values()), None)
    out = {}
    for e, c in poly.terms.items():
        if isinstance(sample, (Fraction, FqRat, ZiRat)):
            img = field.reduce_elem(prime, c, ff)
        else:
            img = field.reduce_ring(prime, c, ff)
        if img:
            out[e] = img
    return MPoly(poly.nvars, out, prune=False)


def divides(f, g, field):
    """True iff f | g in K[X] (multivariate division by the single poly f)."""
    if f.is_zero():
        return g.is_zero()
    if g.is_zero():
        return True
    fK = _as_field_poly(f, field)
    gK = _as_field_poly(g, field)
    lead_e, lead_c = fK.leading_term(_GrevlexOrder)
    rem = gK
    inv = field.one() / lead_c
    while rem:
        re, rc = rem.leading_term(_GrevlexOrder)
        diff = tuple(a - b for a, b in zip(re, lead_e))
        if any(d < 0 for d in diff):
            return False
        rem = rem - fK.mul_monomial(diff, rc * inv)
    return True


def exact_quotient(f, g, field):
    """g / f in K[X]; raises ValueError when f does not divide g."""
    fK = _as_field_poly(f, field)
    gK = _as_field_poly(g, field)
    lead_e, lead_c = fK.leading_term(_GrevlexOrder)
    inv = field.one() / lead_c
    quo = MPoly(gK.nvars)
    rem = gK
    while rem:
        re, rc = rem.leading_term(_GrevlexOrder)
        diff = tuple(a - b for a, b in zip(re, lead_e))
        if any(d < 0 for d in diff):
            raise ValueError("not divisible")
        c = rc * inv
        quo = quo + MPoly(gK.nvars, {diff: c})
        rem = rem - fK.mul_monomial(diff, c)
    return quo


class _GrevlexOrder:
    @staticmethod
    def key(e):
        return grevlex_key(e)


def _as_field_poly(p, field):
    sample = next(iter(p.terms.values()), None)
    if isinstance(sample, (Fraction, FqRat, ZiRat)) or sample is None:
        return p
    return ring_to_field_poly(field, p)
