"""Base valued fields: coefficient series and twisted p-adic digit rings.

Two element models share one interface (val, residue, ring arithmetic,
restricted division):

* equal characteristic: finite sums  sum c_gamma * t^gamma  with residue
  field coefficients and exponents in a fixed rank-1 group;
* mixed characteristic: digit strings in a uniformizer w with w^E = s*p
  (s = +-1), so v(w) = 1/E when v(p) = 1.  Digits are integers, or sparse
  integer polynomials in u for Gauss-extended rings.  Digit strings are
  kept unnormalized; a lazy carry walk produces reduced digits on demand.

Precision is a position bound: coefficients at value >= prec (series) or
digit position >= prec (p-adic) are unknown.  INFINITE prec means exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionError, ValidationError
from .ogroup import OGroup, contains as group_contains, ogroup
from .resfield import RElem, ResField
from .values import INFINITE, Indeterminate, fr

_MAX_DIV_STEPS = 400


@dataclass(frozen=True)
class Precision:
    """Caps for construction runs; None means exact/unbounded."""

    series_cap: object = None
    padic_cap: object = None

    def __post_init__(self):
        for v in (self.series_cap, self.padic_cap):
            if v is not None and not (v == INFINITE or v > 0):
                raise ValidationError("precision caps must be positive")


# ---------------------------------------------------------------------------
# equal characteristic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EqBase:
    """F((t^Gamma)) with residue field F and exponent group Gamma."""

    p: int
    res: ResField
    group: OGroup
    name: str = "t"

    def __post_init__(self):
        if self.group.rank != 1:
            raise ValidationError("series exponent group must have rank 1")
        if self.res.char != self.p:
            raise ValidationError("residue characteristic mismatch")

    @property
    def eq_char(self) -> bool:
        return True

    @property
    def value_group(self) -> OGroup:
        return self.group

    @property
    def residue_field(self) -> ResField:
        return self.res

    def _coeff(self, c) -> RElem:
        if isinstance(c, RElem):
            return c
        return self.res.elem(c)

    def zero(self, prec=INFINITE) -> "SeriesElem":
        return SeriesElem(self, {}, prec)

    def one(self) -> "SeriesElem":
        return self.monomial(fr(0))

    def from_int(self, n: int) -> "SeriesElem":
        return self.monomial(fr(0), n)

    def monomial(self, gamma, coeff=1) -> "SeriesElem":
        gamma = fr(gamma)
        if not group_contains(self.group, (gamma,)):
            raise ValidationError("exponent %s outside the value group" % (gamma,))
        c = self._coeff(coeff)
        return SeriesElem(self, {gamma: c} if not c.is_zero() else {}, INFINITE)

    def series(self, terms: dict, prec=INFINITE) -> "SeriesElem":
        out = {}
        for g, c in terms.items():
            g = fr(g)
            c = self._coeff(c)
            if not c.is_zero() and (prec == INFINITE or g < prec):
                out[g] = c
        return SeriesElem(self, out, prec)

    def with_group(self, group: OGroup) -> "EqBase":
        return EqBase(self.p, self.res, group, self.name)

    def describe(self) -> str:
        res = "F_%d" % self.p if not self.res.has_variable() else \
            "F_%d(u)" % self.p if self.res.level == 0 else \
            "F_%d(u^(1/%d))" % (self.p, self.p ** self.res.level)
        return "%s((%s^G))" % (res, self.name)


class SeriesElem:
    __slots__ = ("base", "terms", "prec")

    def __init__(self, base: EqBase, terms: dict, prec):
        self.base = base
        self.terms = {g: c for g, c in terms.items()
                      if not c.is_zero() and (prec == INFINITE or g < prec)}
        self.prec = prec

    # -- valuation data ------------------------------------------------------

    def val(self):
        if self.terms:
            return min(self.terms)
        if self.prec == INFINITE:
            return INFINITE
        return Indeterminate(self.prec)

    def is_zero(self) -> bool:
        return not self.terms and self.prec == INFINITE

    def residue(self) -> RElem:
        v = self.val()
        if v == INFINITE or isinstance(v, Indeterminate):
            raise ValidationError("residue of (indistinguishable from) zero")
        if v != 0:
            raise ValidationError("residue requires value exactly 0, got %s" % (v,))
        return self.terms[fr(0)]

    def leading(self):
        """(value, leading coefficient); value must be determinate."""
        v = self.val()
        if isinstance(v, Indeterminate) or v == INFINITE:
            raise PrecisionError("leading term is below the precision cap")
        return v, self.terms[v]

    # -- arithmetic ----------------------------------------------------------

    def _binop_prec(self, other):
        return min(self.prec, other.prec)

    def __add__(self, other):
        other = _as_series(self.base, other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g, self.base.res.zero()) + c
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return SeriesElem(self.base, out, self._binop_prec(other))

    def __neg__(self):
        return SeriesElem(self.base, {g: -c for g, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-_as_series(self.base, other))

    def __mul__(self, other):
        other = _as_series(self.base, other)
        va, vb = self.val(), other.val()
        prec = _prec_of_product(va, self.prec, vb, other.prec)
        out = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = g1 + g2
                if prec != INFINITE and g >= prec:
                    continue
                s = out.get(g, self.base.res.zero()) + c1 * c2
                if s.is_zero():
                    out.pop(g, None)
                else:
                    out[g] = s
        return SeriesElem(self.base, out, prec)

    def __pow__(self, n: int):
        if n < 0:
            return (self.base.one() / self) ** (-n)
        out = self.base.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __truediv__(self, other):
        other = _as_series(self.base, other)
        vy = other.val()
        if isinstance(vy, Indeterminate) or vy == INFINITE:
            raise PrecisionError("division by (indistinguishable from) zero")
        target = _prec_of_quotient(self.val(), self.prec, vy, other.prec)
        q = {}
        r = self
        steps = 0
        while True:
            vr = r.val()
            if vr == INFINITE:
                return SeriesElem(self.base, q, target)
            if isinstance(vr, Indeterminate):
                return SeriesElem(self.base, q, min(target, vr.bound - vy))
            if target != INFINITE and vr - vy >= target:
                return SeriesElem(self.base, q, target)
            steps += 1
            if steps > _MAX_DIV_STEPS:
                raise PrecisionError(
                    "series division did not terminate; set a finite precision cap")
            cq = r.terms[vr] / other.terms[vy]
            q[vr - vy] = cq
            r = r - SeriesElem(self.base, {vr - vy: cq}, INFINITE) * other

    def __eq__(self, other):
        """Indistinguishability: no determinate term separates the two."""
        if not isinstance(other, SeriesElem):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None  # approximate elements do not hash consistently

    # -- characteristic-p structure -------------------------------------------

    def pth_root(self) -> "SeriesElem":
        """Termwise p-th root; coefficients may climb one perfection level."""
        p = self.base.p
        terms = {g / p: c.pth_root_extend() for g, c in self.terms.items()}
        prec = INFINITE if self.prec == INFINITE else self.prec / p
        return SeriesElem(self.base, terms, prec)

    def frobenius(self) -> "SeriesElem":
        p = self.base.p
        terms = {g * p: c.frobenius() for g, c in self.terms.items()}
        prec = INFINITE if self.prec == INFINITE else self.prec * p
        return SeriesElem(self.base, terms, prec)

    def rebase(self, base: EqBase) -> "SeriesElem":
        if base.p != self.base.p:
            raise ValidationError("characteristic mismatch in rebase")
        for g in self.terms:
            if not group_contains(base.group, (g,)):
                raise ValidationError("exponent %s outside the target group" % (g,))
        return SeriesElem(base, dict(self.terms), self.prec)

    # -- display ---------------------------------------------------------------

    def to_text(self) -> str:
        name = self.base.name
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            ct = c.to_text()
            if not ct.lstrip("-").isdigit():
                ct = "(%s)" % ct
            if g == 0:
                parts.append(ct)
            elif ct == "1":
                parts.append(_pow_text(name, g))
            else:
                parts.append("%s*%s" % (ct, _pow_text(name, g)))
        body = " + ".join(parts) if parts else "0"
        if self.prec == INFINITE:
            return body
        return "%s + O(%s)" % (body, _pow_text(name, self.prec))

    def __repr__(self):
        return self.to_text()


def _pow_text(name: str, g) -> str:
    if g == 1:
        return name
    if getattr(g, "denominator", 1) == 1 and g >= 0:
        return "%s^%s" % (name, g)
    return "%s^(%s)" % (name, g)


def _as_series(base: EqBase, x) -> SeriesElem:
    if isinstance(x, SeriesElem):
        return x
    if isinstance(x, int):
        return base.from_int(x)
    if isinstance(x, RElem):
        return base.monomial(fr(0), x)
    raise ValidationError("cannot coerce %r into the series ring" % (x,))


def _prec_of_product(va, pa, vb, pb):
    if pa == INFINITE and pb == INFINITE:
        return INFINITE
    terms = []
    if pb != INFINITE:
        terms.append((pb + va) if not isinstance(va, Indeterminate) else pb + va.bound)
    if pa != INFINITE:
        terms.append((pa + vb) if not isinstance(vb, Indeterminate) else pa + vb.bound)
    terms = [t for t in terms if t != INFINITE]
    return min(terms) if terms else INFINITE


def _prec_of_quotient(va, pa, vy, py):
    # x/y: d(x/y) = (dx*y - x*dy)/y^2 -> error terms at pa - vy and va + py - 2vy
    terms = []
    if pa != INFINITE:
        terms.append(pa - vy)
    if py != INFINITE:
        v = va.bound if isinstance(va, Indeterminate) else va
        if v != INFINITE:
            terms.append(v + py - 2 * vy)
    return min(terms) if terms else INFINITE


# ---------------------------------------------------------------------------
# mixed characteristic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicBase:
    """Digit ring in w with w^E = twist * p, normalized so v(p) = 1.

    gauss=True adjoins a transcendental residue u: digits become sparse
    integer polynomials in u (Laurent exponents allowed).
    """

    p: int
    E: int
    twist: int = 1
    gauss: bool = False
    name: str = "w"

    def __post_init__(self):
        if self.twist not in (1, -1):
            raise ValidationError("twist must be +1 or -1")
        if self.E < 1:
            raise ValidationError("ramification exponent must be positive")

    @property
    def eq_char(self) -> bool:
        return False

    @property
    def value_group(self) -> OGroup:
        return ogroup([Fraction(1, self.E)])

    @property
    def residue_field(self) -> ResField:
        return ResField(self.p, "ratfun") if self.gauss else ResField(self.p)

    # digits: int, or dict {u-exponent: int} when gauss

    def _as_digit(self, c):
        if isinstance(c, dict):
            if not self.gauss:
                raise ValidationError("polynomial digits need a Gauss ring")
            return {e: int(x) for e, x in c.items() if int(x)}
        if isinstance(c, RElem):
            return _relem_to_digit(self, c)
        return int(c)

    def zero(self, prec=INFINITE) -> "PadicElem":
        return PadicElem(self, {}, prec)

    def one(self) -> "PadicElem":
        return self.from_int(1)

    def from_int(self, n: int) -> "PadicElem":
        d = {0: n} if not self.gauss else {0: {0: n}}
        return PadicElem(self, d if n else {}, INFINITE)

    def from_digits(self, digits: dict, prec=INFINITE) -> "PadicElem":
        out = {}
        for k, c in digits.items():
            c = self._as_digit(c)
            if _digit_nonzero(c):
                out[int(k)] = c
        return PadicElem(self, out, prec)

    def monomial(self, value, coeff=1) -> "PadicElem":
        value = fr(value)
        pos = value * self.E
        if pos.denominator != 1:
            raise ValidationError("value %s outside the value group" % (value,))
        return self.from_digits({int(pos): coeff})

    def u_elem(self, j: int = 1) -> "PadicElem":
        if not self.gauss:
            raise ValidationError("no transcendental digit in this ring")
        return self.from_digits({0: {j: 1}})

    def describe(self) -> str:
        core = "Z_%d[u]" % self.p if self.gauss else "Z_%d" % self.p
        return "%s[%s]/(%s^%d %s %d)" % (core, self.name, self.name, self.E,
                                         "-" if self.twist == 1 else "+", self.p)


def _digit_nonzero(c) -> bool:
    return bool(c) if isinstance(c, dict) else c != 0


def _digit_add(a, b):
    if isinstance(a, dict) or isinstance(b, dict):
        out = dict(a) if isinstance(a, dict) else ({0: a} if a else {})
        bb = b if isinstance(b, dict) else ({0: b} if b else {})
        for e, c in bb.items():
            out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}
    return a + b


def _digit_neg(a):
    if isinstance(a, dict):
        return {e: -c for e, c in a.items()}
    return -a


def _digit_mul(a, b):
    if isinstance(a, dict) and isinstance(b, dict):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}
    if isinstance(a, dict):
        return {e: c * b for e, c in a.items()} if b else {}
    if isinstance(b, dict):
        return {e: c * a for e, c in b.items()} if a else {}
    return a * b


def _relem_to_digit(base: PadicBase, r: RElem):
    """A residue field element as a digit lift (ints mod p, monomial dens)."""
    den = dict(r.den)
    num = dict(r.num)
    if list(den.values()) != [1] or len(den) != 1:
        raise ValidationError("only monomial-denominator residues lift to digits")
    shift = next(iter(den))
    if not base.gauss:
        if any(e for e in num) or shift:
            raise ValidationError("transcendental residue in a plain ring")
        return num.get(0, 0)
    if r.level() != 0:
        raise ValidationError("residue lift must live at perfection level 0")
    return {e - shift: c for e, c in num.items()}


class PadicElem:
    __slots__ = ("base", "digits", "prec")

    def __init__(self, base: PadicBase, digits: dict, prec):
        self.base = base
        self.digits = {k: d for k, d in digits.items()
                       if _digit_nonzero(d) and (prec == INFINITE or k < prec)}
        self.prec = prec

    # -- normalization -------------------------------------------------------

    def _norm_iter(self):
        """Yield (position, reduced digit) ascending, carrying base-p."""
        p, E, s = self.base.p, self.base.E, self.base.twist
        wd = {}
        for k, d in self.digits.items():
            wd[k] = _digit_add(wd.get(k, 0 if not isinstance(d, dict) else {}), d)
        while wd:
            k = min(wd)
            if self.prec != INFINITE and k >= self.prec:
                return
            c = wd.pop(k)
            if isinstance(c, dict):
                r = {e: x % p for e, x in c.items() if x % p}
                q = {e: s * ((x - x % p) // p) for e, x in c.items()}
                q = {e: x for e, x in q.items() if x}
                if q:
                    wd[k + E] = _digit_add(wd.get(k + E, {}), q)
                if r:
                    yield k, r
            else:
                r = c % p
                q = s * ((c - r) // p)
                if q:
                    wd[k + E] = _digit_add(wd.get(k + E, 0), q)
                if r:
                    yield k, r

    def normalized_digits(self, limit: int):
        """Reduced digits at positions < limit (and < prec)."""
        out = []
        for k, d in self._norm_iter():
            if k >= limit:
                break
            out.append((k, d))
        return out

    def _first(self):
        for k, d in self._norm_iter():
            return k, d
        return None

    # -- valuation data --------------------------------------------------------

    def val(self):
        first = self._first()
        if first is not None:
            return Fraction(first[0], self.base.E)
        if self.prec == INFINITE:
            return INFINITE
        return Indeterminate(Fraction(self.prec, self.base.E))

    def is_zero(self) -> bool:
        return self.prec == INFINITE and self._first() is None

    def residue(self) -> RElem:
        v = self.val()
        if v == INFINITE or isinstance(v, Indeterminate):
            raise ValidationError("residue of (indistinguishable from) zero")
        if v != 0:
            raise ValidationError("residue requires value exactly 0, got %s" % (v,))
        d = self._first()[1]
        f = self.base.residue_field
        return f.elem(d if isinstance(d, dict) else d % self.base.p)

    def leading(self):
        first = self._first()
        if first is None:
            raise PrecisionError("leading digit is below the precision cap")
        return Fraction(first[0], self.base.E), first[1]

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = _as_padic(self.base, other)
        out = dict(self.digits)
        for k, d in other.digits.items():
            out[k] = _digit_add(out.get(k, 0 if not isinstance(d, dict) else {}), d)
        return PadicElem(self.base, out, min(self.prec, other.prec))

    def __neg__(self):
        return PadicElem(self.base, {k: _digit_neg(d) for k, d in self.digits.items()},
                         self.prec)

    def __sub__(self, other):
        return self + (-_as_padic(self.base, other))

    def __mul__(self, other):
        other = _as_padic(self.base, other)
        E = self.base.E
        va, vb = self.val(), other.val()
        pa = INFINITE if self.prec == INFINITE else Fraction(self.prec, E)
        pb = INFINITE if other.prec == INFINITE else Fraction(other.prec, E)
        prec = _prec_of_product(va, pa, vb, pb)
        pos_cap = INFINITE if prec == INFINITE else math.floor(prec * E) + \
            (0 if (prec * E).denominator == 1 else 1)
        out = {}
        for k1, d1 in self.digits.items():
            for k2, d2 in other.digits.items():
                k = k1 + k2
                if pos_cap != INFINITE and k >= pos_cap:
                    continue
                out[k] = _digit_add(out.get(k, 0 if not (isinstance(d1, dict)
                                                         or isinstance(d2, dict)) else {}),
                                    _digit_mul(d1, d2))
        return PadicElem(self.base, out, pos_cap)

    def __pow__(self, n: int):
        if n < 0:
            return (self.base.one() / self) ** (-n)
        out = self.base.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __truediv__(self, other):
        other = _as_padic(self.base, other)
        E = self.base.E
        raw = [(k, d) for k, d in other.digits.items() if _digit_nonzero(d)]
        if len(raw) == 1 and other.prec == INFINITE:
            # single-term divisor with a +-1 coefficient: exact shift,
            # no digit stream to walk (the quotient keeps raw digits)
            inv = _exact_inverse_digit(raw[0][1])
            if inv is not None:
                k0 = raw[0][0]
                digits = {k - k0: _digit_mul(d, inv)
                          for k, d in self.digits.items()}
                prec = self.prec if self.prec == INFINITE else self.prec - k0
                return PadicElem(self.base, digits, prec)
        lead = other._first()
        if lead is None:
            raise PrecisionError("division by (indistinguishable from) zero")
        k0, d0 = lead
        inv = _digit_inverse(d0, self.base.p)
        va = self.val()
        pa = INFINITE if self.prec == INFINITE else Fraction(self.prec, E)
        py = INFINITE if other.prec == INFINITE else Fraction(other.prec, E)
        target_v = _prec_of_quotient(va, pa, Fraction(k0, E), py)
        target = INFINITE if target_v == INFINITE else int(math.floor(target_v * E))
        q = {}
        r = self
        steps = 0
        while True:
            first = r._first()
            if first is None:
                if r.prec == INFINITE:
                    return PadicElem(self.base, q, target)
                return PadicElem(self.base, q, min(target, r.prec - k0))
            vr, dr = first
            if target != INFINITE and vr - k0 >= target:
                return PadicElem(self.base, q, target)
            steps += 1
            if steps > _MAX_DIV_STEPS:
                raise PrecisionError(
                    "digit division did not terminate; set a finite precision cap")
            qd = _digit_reduce(_digit_mul(dr, inv), self.base.p)
            q[vr - k0] = _digit_add(q.get(vr - k0, 0 if not isinstance(qd, dict) else {}), qd)
            r = r - PadicElem(self.base, {vr - k0: qd}, INFINITE) * other

    def __eq__(self, other):
        """Indistinguishability: no determinate digit separates the two."""
        if not isinstance(other, PadicElem):
            return NotImplemented
        return (self - other)._first() is None

    __hash__ = None  # approximate elements do not hash consistently

    # -- display ------------------------------------------------------------------

    def to_text(self, limit: int = 24) -> str:
        name = self.base.name
        cap = limit if self.prec == INFINITE else min(limit, self.prec)
        floor = min(self.digits) if self.digits else 0
        cap = max(cap, floor + limit)
        parts = []
        exhausted = True
        for k, d in self._norm_iter():
            if k >= cap:
                exhausted = False
                break
            dt = _digit_text(d)
            if k == 0:
                parts.append(dt)
            else:
                pw = _pow_text(name, k)
                parts.append(pw if dt == "1" else "%s*%s" % (dt, pw))
        body = " + ".join(parts) if parts else "0"
        if self.prec != INFINITE:
            return "%s + O(%s)" % (body, _pow_text(name, self.prec))
        if not exhausted:
            return body + " + ..."
        return body

    def __repr__(self):
        return self.to_text()


def _digit_text(d) -> str:
    if not isinstance(d, dict):
        return str(d)
    if set(d) <= {0}:
        return str(d.get(0, 0))
    parts = []
    for e in sorted(d):
        c = d[e]
        if e == 0:
            parts.append(str(c))
        else:
            ue = "u" if e == 1 else "u^%d" % e if e > 0 else "u^(%d)" % e
            parts.append(ue if c == 1 else "%d*%s" % (c, ue))
    return "(%s)" % " + ".join(parts)


def _digit_reduce(d, p):
    if isinstance(d, dict):
        return {e: c % p for e, c in d.items() if c % p}
    return d % p


def _digit_inverse(d, p):
    """Inverse of a reduced digit; ints always, polynomials only monomials."""
    if not isinstance(d, dict):
        return pow(d % p, p - 2, p)
    if len(d) != 1:
        raise ValidationError(
            "division by a non-monomial leading digit is not supported")
    (e, c), = d.items()
    return {-e: pow(c % p, p - 2, p)}


def _exact_inverse_digit(d):
    """Inverse of a digit that inverts over Z: +-1, or a single +-1 u-term."""
    if isinstance(d, dict):
        if len(d) == 1:
            (e, c), = d.items()
            if c in (1, -1):
                return {-e: c}
        return None
    return d if d in (1, -1) else None


def _as_padic(base: PadicBase, x) -> PadicElem:
    if isinstance(x, PadicElem):
        if x.base != base:
            raise ValidationError("mixed digit rings")
        return x
    if isinstance(x, int):
        return base.from_int(x)
    raise ValidationError("cannot coerce %r into the digit ring" % (x,))


# ---------------------------------------------------------------------------
# cyclotomic uniformizer
# ---------------------------------------------------------------------------


def zeta_lambda(base: PadicBase, prec: int) -> PadicElem:
    """lambda = zeta_p - 1 in the digit ring, to `prec` digit positions.

    Solves Phi_p(1+X) = 0 greedily one digit at a time.  Requires
    (p-1) | E so the root's value 1/(p-1) lands on a digit position.
    """

    p, E = base.p, base.E
    if p == 2:
        return base.from_int(-2)  # zeta_2 = -1 exactly
    if E % (p - 1):
        raise ValidationError("ring cannot host zeta_%d (need (p-1) | E)" % p)
    coeffs = [math.comb(p, j + 1) for j in range(p)]  # Phi_p(1+X) = sum c_j X^j

    def g_at(x):
        acc = base.zero(prec)
        xp = base.one()
        for c in coeffs:
            acc = acc + xp * c
            xp = xp * x
        return acc

    x = base.zero(prec)
    guard = 0
    while True:
        r = g_at(x)
        vr = r.val()
        if isinstance(vr, Indeterminate) or vr == INFINITE:
            return x
        guard += 1
        if guard > 4 * prec + 16:
            raise PrecisionError("cyclotomic digit search stalled")
        pos_r = int(vr * E)
        # candidate increment value: best slope over the divided derivatives
        best = None
        for k in range(1, p):
            gk = base.zero(prec)
            xp = base.one()
            for j in range(k, p):
                gk = gk + xp * (math.comb(j, k) * coeffs[j])
                xp = xp * x
            vk = gk.val()
            if vk == INFINITE or isinstance(vk, Indeterminate):
                continue
            gamma = Fraction(pos_r - int(vk * E), k)
            if gamma.denominator == 1 and gamma > 0 and (best is None or gamma > best):
                best = gamma
        if best is None:
            raise PrecisionError("no admissible digit slope at position %d" % pos_r)
        placed = False
        for c in range(1, p):
            cand = x + base.from_digits({int(best): c})
            vv = g_at(cand).val()
            if isinstance(vv, Indeterminate) or vv == INFINITE or vv > vr:
                x = cand
                placed = True
                break
        if not placed:
            raise PrecisionError("no digit advances the cyclotomic residual")


_lambda_cache = {}


def cached_zeta_lambda(base: PadicBase, prec: int) -> PadicElem:
    key = (base, prec)
    if key not in _lambda_cache:
        _lambda_cache[key] = zeta_lambda(base, prec)
    lam = _lambda_cache[key]
    return PadicElem(base, dict(lam.digits), lam.prec)


# ---------------------------------------------------------------------------
# parsing (round-trip for report text)
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:\((?P<cpar>[^()]*)\)|(?P<cnum>-?\d+))?"
                      r"(?:\*?(?P<var>[A-Za-z]+)"
                      r"(?:\^(?:\((?P<epar>-?[\d/]+)\)|(?P<enum>-?\d+)))?)?$")

_VAR_RE = re.compile(r"^(?:\*?(?P<var>[A-Za-z]+)"
                     r"(?:\^(?:\((?P<epar>-?[\d/]+)\)|(?P<enum>-?\d+)))?)?$")


def _split_depth0(text: str, sep: str = " + "):
    parts, cur, depth, i = [], [], 0, 0
    while i < len(text):
        if depth == 0 and text.startswith(sep, i):
            parts.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        ch = text[i]
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def _parse_chunk(chunk: str):
    chunk = chunk.strip()
    if chunk.startswith("("):
        depth = 0
        for i, ch in enumerate(chunk):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        coeff, rest = chunk[1:i], chunk[i + 1:]
    else:
        m = re.match(r"-?\d+", chunk)
        coeff = m.group(0) if m else None
        rest = chunk[m.end():] if m else chunk
    m = _VAR_RE.match(rest)
    if not m:
        raise ValidationError("cannot parse term %r" % chunk)
    exp = Fraction(0)
    if m.group("var"):
        if m.group("epar") is not None:
            exp = Fraction(m.group("epar"))
        elif m.group("enum") is not None:
            exp = Fraction(m.group("enum"))
        else:
            exp = Fraction(1)
    return exp, coeff if coeff is not None else "1"


def _parse_terms(text: str):
    text = text.strip()
    prec = INFINITE
    m = re.search(r"\+\s*O\(([A-Za-z]+)(?:\^\(?(-?[\d/]+)\)?)?\)\s*$", text)
    if m:
        prec = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        text = text[: m.start()].strip()
    if text in ("", "0"):
        return [], prec
    return [_parse_chunk(c) for c in _split_depth0(text)], prec


def _parse_u_poly(text: str) -> dict:
    out = {}
    for chunk in text.split(" + "):
        m = _TERM_RE.match(chunk.strip())
        if not m or (m.group("var") not in (None, "u")):
            raise ValidationError("cannot parse digit %r" % chunk)
        c = int(m.group("cnum") if m.group("cnum") is not None else 1)
        e = 0
        if m.group("var"):
            e = int(m.group("epar") or m.group("enum") or 1)
        out[e] = out.get(e, 0) + c
    return out


def series_from_text(base: EqBase, text: str) -> SeriesElem:
    terms, prec = _parse_terms(text)
    out = {}
    for exp, coeff in terms:
        if coeff.lstrip("-").isdigit():
            c = base.res.elem(int(coeff))
        else:
            c = base.res.elem(_parse_u_poly(coeff))
        out[exp] = out.get(exp, base.res.zero()) + c
    return base.series(out, prec)


def padic_from_text(base: PadicBase, text: str) -> PadicElem:
    terms, prec = _parse_terms(text)
    digits = {}
    for exp, coeff in terms:
        if exp.denominator != 1:
            raise ValidationError("digit positions must be integers")
        if coeff.lstrip("-").isdigit():
            d = int(coeff)
        else:
            d = _parse_u_poly(coeff)
        digits[int(exp)] = _digit_add(digits.get(int(exp), 0 if not isinstance(d, dict)
                                                 else {}), d)
    pp = INFINITE if prec == INFINITE else int(prec)
    return base.from_digits(digits, pp)
