"""Exact arithmetic for every coefficient ring used in this package.

Supported rings: the integers Z, the rationals Q, the fields F2 and
F4 = F2[x]/(x^2+x+1), Laurent rings in one variable T over Z or a field,
the universal ring Z[U^(1/N) and its inverse, T, T^-1] with fractional
U-exponents, the char-2 Laurent rings in T1,T2,T3 (and T0..T3), and the
polynomial extension of any of these by a nonnegative-degree variable x.

A value is an immutable :class:`LaurentPoly`: a ring descriptor together
with a finite dictionary of terms keyed by the exponent triple
``(x_exp, u_exp, t_exps)``.  No two terms share a key, no coefficient is
zero, and U-exponent denominators divide the ring's bound N.  All
arithmetic is exact; nothing in this module touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class RingError(Exception):
    """Base class for ring-level failures."""


class RingMismatchError(RingError):
    """Operands belong to different rings."""


class ParseError(RingError):
    """A polynomial string does not conform to the textual format."""


# ---------------------------------------------------------------------------
# coefficient domains
#
# Base coefficients are plain Python values: int for Z, Fraction for Q,
# 0/1 for F2 and 0..3 for F4 (bit 0 is the 1-part, bit 1 the x-part,
# with x^2 = x + 1).

_BASES = ("Z", "Q", "F2", "F4")


def _cadd(base, a, b):
    if base == "Z" or base == "Q":
        return a + b
    return a ^ b


def _cneg(base, a):
    if base == "Z" or base == "Q":
        return -a
    return a


def _cmul(base, a, b):
    if base == "Z" or base == "Q":
        return a * b
    if base == "F2":
        return a & b
    a0, a1 = a & 1, a >> 1
    b0, b1 = b & 1, b >> 1
    c = a1 & b1
    lo = (a0 & b0) ^ c
    hi = (a0 & b1) ^ (a1 & b0) ^ c
    return lo | (hi << 1)


_F4_INV = {1: 1, 2: 3, 3: 2}


def _cinv(base, a):
    """Multiplicative inverse, or None when a is not a unit."""
    if base == "Z":
        return a if a in (1, -1) else None
    if base == "Q":
        return None if a == 0 else 1 / a
    if base == "F2":
        return 1 if a == 1 else None
    return _F4_INV.get(a)


def _cdiv(base, a, b):
    """Exact quotient a/b in the base domain, or None."""
    if b == 0:
        raise ZeroDivisionError("division by zero coefficient")
    if base == "Z":
        q, r = divmod(a, b)
        return q if r == 0 else None
    inv = _cinv(base, b)
    return None if inv is None else _cmul(base, a, inv)


def _cis_unit(base, a):
    return _cinv(base, a) is not None


def _cfrom_int(base, n):
    if base == "Z":
        return n
    if base == "Q":
        return Fraction(n)
    return n & 1


def _cstr(base, a, in_product):
    if base == "F4":
        s = {0: "0", 1: "1", 2: "x", 3: "x+1"}[a]
        return f"({s})" if in_product and a == 3 else s
    return str(a)


# ---------------------------------------------------------------------------
# ring descriptors


@dataclass(frozen=True)
class Ring:
    """Descriptor of a supported coefficient ring.

    ``base`` names the coefficient domain, ``tvars`` the Laurent variables,
    ``udenom`` the denominator bound N of U-exponents (0 when there is no
    U), and ``has_x`` whether a polynomial variable x is adjoined.
    """

    tag: str
    base: str
    tvars: tuple = ()
    udenom: int = 0
    has_x: bool = False

    def variables(self):
        names = []
        if self.udenom:
            names.append("U")
        names.extend(self.tvars)
        if self.has_x:
            names.append("x")
        return names

    @property
    def is_field(self):
        return self.tag in ("Q", "F2", "F4")

    @property
    def is_domain(self):
        return True

    @property
    def char_two(self):
        return self.base in ("F2", "F4")

    def __repr__(self):
        return f"Ring({self.tag})"


Z = Ring("Z", "Z")
Q = Ring("Q", "Q")
F2 = Ring("F2", "F2")
F4 = Ring("F4", "F4")
ZT = Ring("ZT", "Z", ("T",))
QT = Ring("QT", "Q", ("T",))
F2T = Ring("F2T", "F2", ("T",))
F4T = Ring("F4T", "F4", ("T",))
S_BN = Ring("S_BN", "F2", ("T1", "T2", "T3"))
R_SHARP = Ring("R_SHARP", "F2", ("T0", "T1", "T2", "T3"))


def laurent_T(base):
    """The one-variable Laurent ring over the named base domain."""
    try:
        return {"Z": ZT, "Q": QT, "F2": F2T, "F4": F4T}[base]
    except KeyError:
        raise RingError(f"no Laurent T-ring over base {base!r}")


def universal(n):
    """Z[U^(1/n)-Laurent, T-Laurent]; Chern-Simons exponents live in (1/n)Z."""
    if n < 1:
        raise RingError("U-denominator bound must be positive")
    return Ring("UNIV", "Z", ("T",), udenom=n)


def poly_x(inner):
    """Adjoin a nonnegative-degree variable x to ``inner``.

    Refused over F4-based rings: there the symbol x already names the
    field generator and serialized polynomials would be ambiguous.
    """
    if inner.has_x:
        raise RingError("ring already has an x variable")
    if inner.base == "F4":
        raise RingError("x variable collides with the F4 generator")
    return Ring(f"POLY_X({inner.tag})", inner.base, inner.tvars,
                inner.udenom, True)


def inner_ring(ring):
    """The ring obtained by forgetting the x variable."""
    if not ring.has_x:
        raise RingError("ring has no x variable")
    for cand in (Z, Q, F2, ZT, QT, F2T, S_BN, R_SHARP):
        if (cand.base, cand.tvars, cand.udenom) == (ring.base, ring.tvars,
                                                    ring.udenom):
            return cand
    if ring.tvars == ("T",) and ring.udenom:
        return universal(ring.udenom)
    raise RingError(f"cannot strip x from {ring}")


_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Immutable exact polynomial over one of the supported rings.

    >>> t = var(ZT, "T")
    >>> p = t**2 - t**-2
    >>> str(p * p)
    'T^4 - 2 + T^-4'
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms):
        cleaned = {}
        nt = len(ring.tvars)
        for key, c in terms.items():
            x, u, ts = key
            if ring.base == "F2":
                c &= 1
            elif ring.base == "F4":
                c &= 3
            if c == 0:
                continue
            if not isinstance(u, Fraction):
                u = Fraction(u)
            if u and not ring.udenom:
                raise RingError(f"{ring} has no U variable")
            if ring.udenom and ring.udenom % u.denominator:
                raise RingError(
                    f"U-exponent {u} not a multiple of 1/{ring.udenom}")
            if x and not ring.has_x:
                raise RingError(f"{ring} has no x variable")
            if x < 0:
                raise RingError("x-exponents must be nonnegative")
            if len(ts) != nt:
                raise RingError(f"expected {nt} T-exponents, got {len(ts)}")
            k = (x, u, tuple(ts))
            if k in cleaned:
                c = _cadd(ring.base, cleaned[k], c)
                if c == 0:
                    del cleaned[k]
                    continue
            cleaned[k] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- inspection ---------------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: lexicographic on (x, u, ts), descending."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_one(self):
        return self == one(self.ring)

    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        """Units are single terms with x-degree 0 and a unit coefficient."""
        if len(self._terms) != 1:
            return False
        (x, _u, _ts), c = next(iter(self._terms.items()))
        return x == 0 and _cis_unit(self.ring.base, c)

    def unit_inverse(self):
        if not self.is_unit():
            raise RingError(f"{self} is not a unit")
        (x, u, ts), c = next(iter(self._terms.items()))
        inv = _cinv(self.ring.base, c)
        return LaurentPoly(self.ring, {(x, -u, tuple(-e for e in ts)): inv})

    def const_value(self):
        """Coefficient of the constant term (all exponents zero)."""
        nt = len(self.ring.tvars)
        return self._terms.get((0, _ZERO, (0,) * nt),
                               _cfrom_int(self.ring.base, 0))

    def coefficient(self, key):
        return self._terms.get(key, _cfrom_int(self.ring.base, 0))

    def terms_dict(self):
        return dict(self._terms)

    def x_degree(self):
        if not self._terms:
            return None
        return max(k[0] for k in self._terms)

    def x_coefficient(self, i, target_ring):
        """The coefficient of x^i, as a polynomial of the x-less ring."""
        out = {}
        for (x, u, ts), c in self._terms.items():
            if x == i:
                out[(0, u, ts)] = c
        return LaurentPoly(target_ring, out)

    def t_span(self):
        """max - min of the T-exponent (one-variable Laurent rings only)."""
        if len(self.ring.tvars) != 1:
            raise RingError("t_span needs exactly one T variable")
        if not self._terms:
            return None
        exps = [k[2][0] for k in self._terms]
        return max(exps) - min(exps)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other)!r}")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        base = self.ring.base
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = _cadd(base, out.get(k, _cfrom_int(base, 0)), c)
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return LaurentPoly(self.ring, out)

    def __neg__(self):
        base = self.ring.base
        return LaurentPoly(self.ring,
                           {k: _cneg(base, c) for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = from_int(self.ring, other)
        self._check(other)
        base = self.ring.base
        out = {}
        for (x1, u1, t1), c1 in self._terms.items():
            for (x2, u2, t2), c2 in other._terms.items():
                k = (x1 + x2, u1 + u2, tuple(a + b for a, b in zip(t1, t2)))
                c = _cmul(base, c1, c2)
                s = _cadd(base, out.get(k, _cfrom_int(base, 0)), c)
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return LaurentPoly(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return from_int(self.ring, other) * self
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("polynomial powers must be integers")
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = one(self.ring)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, coeff):
        """Multiply by a raw base-domain coefficient."""
        base = self.ring.base
        return LaurentPoly(self.ring,
                           {k: _cmul(base, c, coeff)
                            for k, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, tuple(self.sorted_terms())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- printing -----------------------------------------------------------

    def to_str(self):
        if not self._terms:
            return "0"
        base = self.ring.base
        parts = []
        for i, (key, c) in enumerate(self.sorted_terms()):
            factors = self._var_factors(key)
            if base in ("Z", "Q"):
                negative = c < 0
                mag = -c if negative else c
            else:
                negative = False
                mag = c
            if factors and mag == _cfrom_int(base, 1) and base != "F4":
                coeff_str = None
            elif factors and base == "F4" and mag == 1:
                coeff_str = None
            else:
                coeff_str = _cstr(base, mag, in_product=bool(factors))
            body = "*".join(([coeff_str] if coeff_str else []) + factors)
            if i == 0:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append((" - " if negative else " + ") + body)
        return "".join(parts)

    def _var_factors(self, key):
        x, u, ts = key
        ring = self.ring
        factors = []
        if u:
            if u.denominator == 1:
                factors.append("U" if u == 1 else f"U^{u.numerator}")
            else:
                factors.append(f"U^{{{u}}}")
        for name, e in zip(ring.tvars, ts):
            if e:
                factors.append(name if e == 1 else f"{name}^{e}")
        if x:
            factors.append("x" if x == 1 else f"x^{x}")
        return factors

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"<{self.ring.tag}: {self.to_str()}>"


# ---------------------------------------------------------------------------
# constructors


def zero(ring):
    return LaurentPoly(ring, {})


def one(ring):
    return from_int(ring, 1)


def from_int(ring, n):
    c = _cfrom_int(ring.base, n)
    if c == 0:
        return LaurentPoly(ring, {})
    return LaurentPoly(ring, {(0, _ZERO, (0,) * len(ring.tvars)): c})


def monomial(ring, coeff=1, u=0, t=None, x=0):
    """Build coeff * U^u * T^t * x^x; ``coeff`` is an int (or Fraction for Q)."""
    if t is None:
        t = (0,) * len(ring.tvars)
    elif isinstance(t, int):
        t = (t,) + (0,) * (len(ring.tvars) - 1)
    if isinstance(coeff, int):
        coeff = _cfrom_int(ring.base, coeff)
    if coeff == 0:
        return zero(ring)
    return LaurentPoly(ring, {(x, Fraction(u), tuple(t)): coeff})


def f4_scalar(ring, bits):
    """The F4 constant with the given bit value 0..3 (2 means x)."""
    if ring.base != "F4":
        raise RingError("f4_scalar needs an F4-based ring")
    return LaurentPoly(ring, {(0, _ZERO, (0,) * len(ring.tvars)): bits})


def var(ring, name, exp=1):
    """The variable ``name`` of ``ring`` raised to an integer power.

    For U a Fraction exponent is accepted.  In F4-based rings the name
    ``x`` denotes the field generator.
    """
    if name == "U":
        if not ring.udenom:
            raise RingError(f"{ring} has no U variable")
        return monomial(ring, 1, u=Fraction(exp))
    if name in ring.tvars:
        idx = ring.tvars.index(name)
        t = [0] * len(ring.tvars)
        t[idx] = exp
        return monomial(ring, 1, t=tuple(t))
    if name == "x":
        if ring.has_x:
            if exp < 0:
                raise RingError("x-exponents must be nonnegative")
            return monomial(ring, 1, x=exp)
        if ring.base == "F4":
            return f4_scalar(ring, 2) ** exp
    raise RingError(f"{ring} has no variable {name!r}")


# ---------------------------------------------------------------------------
# base change


def base_change(p, assignment, target):
    """Apply a ring homomorphism determined by a variable assignment.

    ``assignment`` maps every variable name of ``p``'s ring to a
    LaurentPoly of ``target``; coefficients are carried along the unique
    map of base domains (Z to anything, Q to Q, F2 into F2 or F4, F4 to
    F4).  Fractional U-exponents require the image of U to be 1 or an
    exact N-th power; x must land where nonnegative degrees make sense.
    """
    src = p.ring
    for name in src.variables():
        if name not in assignment:
            raise RingError(f"assignment misses variable {name!r}")
    for name, val in assignment.items():
        if isinstance(val, LaurentPoly) and val.ring != target:
            raise RingMismatchError(
                f"image of {name!r} lies in {val.ring}, not {target}")
    result = zero(target)
    for (x, u, ts), c in p._terms.items():
        term = _convert_scalar(c, src.base, target)
        if u:
            term = term * _pow_rational(assignment["U"], u)
        for name, e in zip(src.tvars, ts):
            if e:
                term = term * _pow_int(assignment[name], e)
        if x:
            term = term * _pow_int(assignment["x"], x)
        result = result + term
    return result


def _convert_scalar(c, src_base, target):
    if src_base == "Z":
        return from_int(target, c)
    if src_base == target.base:
        if c == 0:
            return zero(target)
        return LaurentPoly(target, {(0, _ZERO, (0,) * len(target.tvars)): c})
    if src_base == "F2" and target.base == "F4":
        return from_int(target, c)
    if src_base == "Q" and target.base == "Q":
        return LaurentPoly(target, {(0, _ZERO, (0,) * len(target.tvars)): c})
    raise RingError(f"no coefficient map {src_base} -> {target.base}")


def _pow_int(p, e):
    if e >= 0:
        return p ** e
    return p.unit_inverse() ** (-e)


def _pow_rational(p, fr):
    if fr.denominator == 1:
        return _pow_int(p, fr.numerator)
    if not p.is_monomial():
        raise RingError(
            f"cannot raise non-monomial to fractional power {fr}")
    (x, u, ts), c = next(iter(p._terms.items()))
    if c != _cfrom_int(p.ring.base, 1):
        raise RingError(
            f"fractional power of monomial with coefficient {c!r}")
    nu = u * fr
    nts = []
    for e in ts:
        s = Fraction(e) * fr
        if s.denominator != 1:
            raise RingError(f"fractional power leaves T-exponent {s}")
        nts.append(s.numerator)
    nx = Fraction(x) * fr
    if nx.denominator != 1 or nx < 0:
        raise RingError(f"fractional power leaves x-exponent {nx}")
    return LaurentPoly(p.ring, {(int(nx), nu, tuple(nts)): c})


# ---------------------------------------------------------------------------
# division, units, gcd


def divide(a, b):
    """Exact quotient q with a == q*b, or None when b does not divide a.

    Raises ZeroDivisionError when b is zero.  The ring must be one of the
    supported integral domains.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if a.is_zero():
        return zero(a.ring)
    if b.is_unit():
        return a * b.unit_inverse()
    ring = a.ring
    if not ring.tvars and not ring.has_x and not ring.udenom:
        q = _cdiv(ring.base, a.const_value(), b.const_value())
        return None if q is None else LaurentPoly(ring, {(0, _ZERO, ()): q})
    return _divide_general(a, b)


def _divide_general(a, b):
    # Greedy leading-term division in the canonical monomial order.  When
    # the quotient exists each step peels off its leading term, so the
    # loop runs len(q) times; an iteration cap guards the inexact case.
    ring = a.ring
    base = ring.base
    r = a
    q_terms = {}
    bkey, bc = b.sorted_terms()[0]
    cap = 16 * (len(a._terms) + 1) * (len(b._terms) + 1) + 64
    for _ in range(cap):
        if r.is_zero():
            return LaurentPoly(ring, q_terms)
        rkey, rc = r.sorted_terms()[0]
        x = rkey[0] - bkey[0]
        u = rkey[1] - bkey[1]
        ts = tuple(p - qq for p, qq in zip(rkey[2], bkey[2]))
        if x < 0:
            return None
        if ring.udenom and ring.udenom % u.denominator:
            return None
        c = _cdiv(base, rc, bc)
        if c is None:
            return None
        k = (x, u, ts)
        q_terms[k] = c
        r = r - LaurentPoly(ring, {k: c}) * b
    return None


def divmod_euclid(a, b):
    """Euclidean division step used by Smith reduction.

    Supported Euclidean rings: Z, the constant fields, and one-variable
    Laurent rings over a field (norm = T-degree span after clearing
    units).  Returns (q, r) with a == q*b + r and either r == 0 or
    enorm(r) < enorm(b).
    """
    ring = a.ring
    if b.is_zero():
        raise ZeroDivisionError("Euclidean division by zero")
    if ring.tag == "Z":
        q, r = divmod(a.const_value(), b.const_value())
        return from_int(ring, q), from_int(ring, r)
    if ring.is_field:
        q = b.unit_inverse() * a
        return q, zero(ring)
    if ring.tag in ("QT", "F2T", "F4T"):
        q = zero(ring)
        r = a
        nb = b.t_span()
        bkey, bc = max(b._terms.items(), key=lambda kv: kv[0][2][0])
        while not r.is_zero() and r.t_span() >= nb:
            rkey, rc = max(r._terms.items(), key=lambda kv: kv[0][2][0])
            c = _cdiv(ring.base, rc, bc)
            t = LaurentPoly(ring,
                            {(0, _ZERO, (rkey[2][0] - bkey[2][0],)): c})
            q = q + t
            r = r - t * b
        return q, r
    raise RingError(f"{ring} is not a supported Euclidean ring")


def enorm(p):
    """Euclidean norm: |n| over Z, 1 for field constants, degree span + 1
    for one-variable Laurent rings over a field."""
    ring = p.ring
    if p.is_zero():
        return 0
    if ring.tag == "Z":
        return abs(p.const_value())
    if ring.is_field:
        return 1
    if ring.tag in ("QT", "F2T", "F4T"):
        return p.t_span() + 1
    raise RingError(f"{ring} is not a supported Euclidean ring")


def is_euclidean(ring):
    return ring.tag in ("Z", "Q", "F2", "F4", "QT", "F2T", "F4T")


def normalizing_unit(p):
    """A unit u such that u*p is the canonical associate of p.

    Laurent exponents are shifted so every variable's minimum exponent is
    zero; the coefficient of the canonical leading term is made positive
    (over Z and Q) or 1 (over fields, when invertible).
    """
    ring = p.ring
    if p.is_zero():
        return one(ring)
    keys = list(p._terms)
    umin = min(k[1] for k in keys) if ring.udenom else _ZERO
    tmins = tuple(min(k[2][i] for k in keys)
                  for i in range(len(ring.tvars)))
    shifted = LaurentPoly(ring, {(0, -umin, tuple(-m for m in tmins)):
                                 _cfrom_int(ring.base, 1)})
    q = p * shifted
    lead_c = q.sorted_terms()[0][1]
    cinv = _cinv(ring.base, lead_c)
    if cinv is not None:
        return shifted.scale(cinv)
    if ring.base in ("Z", "Q") and lead_c < 0:
        return -shifted
    return shifted


def normalize_associate(p):
    return normalizing_unit(p) * p


def gcd(a, b):
    """Greatest common divisor up to units (Z, fields, and F[T-Laurent])."""
    ring = a.ring
    if a.is_zero():
        return normalize_associate(b)
    if b.is_zero():
        return normalize_associate(a)
    if not is_euclidean(ring):
        raise RingError(f"gcd unsupported over {ring}")
    x, y = a, b
    while not y.is_zero():
        _, r = divmod_euclid(x, y)
        x, y = y, r
    return normalize_associate(x)


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z][A-Za-z0-9]*|[{}()^*/+-])")


def _tokenize(s):
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"bad character at {s[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return t

    def parse(self):
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.toks[self.i:]!r}")
        return p

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.next() == "-"
        p = self.term()
        if neg:
            p = -p
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            p = p - t if op == "-" else p + t
        return p

    def term(self):
        p = self.factor()
        while self.peek() == "*":
            self.next()
            p = p * self.factor()
        return p

    def factor(self):
        tok = self.next()
        if tok == "(":
            p = self.expr()
            if self.next() != ")":
                raise ParseError("expected ')'")
            return p
        if tok.isdigit():
            n = int(tok)
            if self.ring.base == "Q" and self.peek() == "/":
                self.next()
                d = self.next()
                if not d.isdigit():
                    raise ParseError("expected denominator digits")
                return monomial(self.ring, Fraction(n, int(d)))
            return from_int(self.ring, n)
        if tok[0].isalpha():
            exp = 1
            if self.peek() == "^":
                self.next()
                exp = self.exponent()
            try:
                if tok == "U":
                    return var(self.ring, "U", exp)
                return var(self.ring, tok, exp) if not isinstance(exp, Fraction) \
                    else var(self.ring, tok, exp)
            except RingError as e:
                raise ParseError(str(e))
        raise ParseError(f"unexpected token {tok!r}")

    def exponent(self):
        tok = self.next()
        if tok == "{":
            num = self.signed_int()
            if self.peek() == "/":
                self.next()
                den = self.signed_int()
                val = Fraction(num, den)
            else:
                val = Fraction(num)
            if self.next() != "}":
                raise ParseError("expected '}'")
            return val if val.denominator != 1 else val.numerator
        if tok == "-":
            d = self.next()
            if not d.isdigit():
                raise ParseError("expected digits after '-'")
            return -int(d)
        if tok.isdigit():
            return int(tok)
        raise ParseError(f"bad exponent token {tok!r}")

    def signed_int(self):
        tok = self.next()
        if tok == "-":
            tok = self.next()
            if not tok.isdigit():
                raise ParseError("expected digits")
            return -int(tok)
        if not tok.isdigit():
            raise ParseError("expected digits")
        return int(tok)


def parse(ring, s):
    """Parse the textual polynomial format, e.g. ``U^{1/3}*T^2 - U^{1/3}*T^-2``."""
    toks = _tokenize(s)
    if not toks:
        raise ParseError("empty polynomial string")
    return _Parser(ring, toks).parse()


# ---------------------------------------------------------------------------
# ring descriptor (de)serialization


_SIMPLE_TAGS = {"Z": Z, "Q": Q, "F2": F2, "F4": F4, "ZT": ZT, "QT": QT,
                "F2T": F2T, "F4T": F4T, "S_BN": S_BN, "R_SHARP": R_SHARP}


def ring_to_dict(ring):
    if ring.has_x:
        return {"tag": "POLY_X", "inner": ring_to_dict(inner_ring(ring))}
    if ring.tag == "UNIV":
        return {"tag": "UNIV", "denom": ring.udenom}
    return {"tag": ring.tag}


def ring_from_dict(d):
    tag = d.get("tag")
    if tag == "POLY_X":
        return poly_x(ring_from_dict(d["inner"]))
    if tag == "UNIV":
        return universal(int(d["denom"]))
    if tag in _SIMPLE_TAGS:
        return _SIMPLE_TAGS[tag]
    raise RingError(f"unknown ring tag {tag!r}")
