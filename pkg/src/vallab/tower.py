"""Symbolic root towers over a valued base with exact valuation rules.

A tower adjoins degree-p roots one at a time, each defined by a relation

    gen^p = gen + a   (additive kind, "as")
    gen^p = a         (multiplicative kind, "kummer")

with a an element of the tower built so far.  Elements are finite sums
c * gen_1^{e_1} ... gen_n^{e_n} with base coefficients and 0 <= e_i < p;
the relations rewrite any p-th power exactly, so arithmetic is exact.

Values are computed by four rules:
  R1  every monomial gives the lower bound v(c) + sum e_i * v(gen_i);
  R2  a unique minimal monomial decides the value;
  R3  residues multiply through stored (mu, rho) data per generator;
  R4  ties fall back to v(x) = v(x^p)/p, iterated within a budget.

Adjoining a root first classifies the step from the Newton polygon and
the residue equation.  When neither a value jump nor a residue jump is
forced, the root is attached *pending* and the caller must resolve the
step with a witness element (the defect-style constructions do exactly
that).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError, ValidationError
from .newton import single_slope
from .ogroup import contains as group_contains, index as group_index, join
from .resfield import RElem
from .values import INFINITE, Indeterminate, fr


@dataclass(frozen=True)
class GenInfo:
    name: str
    relation: str                   # "as" or "kummer"
    rhs: tuple                      # coords of gen^p over the previous tower
    value: Fraction
    mu: object = None               # base monomial of the same value, if any
    rho: RElem = None               # residue of gen/mu, if known
    minpoly_text: str = ""


@dataclass(frozen=True)
class TowerStep:
    name: str
    minpoly: str
    kind: str                       # "ramified" or "residue"
    degree: int
    e: int
    f: int
    m: int
    new_value: Fraction = None
    new_residue: str = None
    witness: str = None


def ostrowski_m(degree: int, e: int, f: int, p: int) -> int:
    """The p-exponent m with degree = e * f * p^m; raises when violated."""
    if e * f > degree:
        raise ValidationError(
            "fundamental inequality violated: e*f = %d exceeds degree %d"
            % (e * f, degree))
    q, m = degree // (e * f), 0
    if q * e * f != degree:
        raise ValidationError(
            "defect quotient %s/%d is not an integer" % (degree, e * f))
    while q % p == 0:
        q //= p
        m += 1
    if q != 1:
        raise ValidationError(
            "defect %d is not a power of the residue characteristic %d"
            % (degree // (e * f), p))
    return m


class Tower:
    """Immutable-by-convention chain of root adjunctions."""

    def __init__(self, base, gens=(), steps=(), group=None, res_desc=None):
        self.base = base
        self.gens = tuple(gens)
        self.steps = tuple(steps)
        self.group = group if group is not None else base.value_group
        self.res_desc = res_desc if res_desc is not None else base.residue_field
        if len(self.steps) not in (len(self.gens), len(self.gens) - 1):
            raise ValidationError("steps out of sync with generators")

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def pending(self) -> bool:
        return len(self.steps) == len(self.gens) - 1

    def res_level(self) -> int:
        return self.res_desc.level if self.res_desc.kind == "perflevel" else 0

    # -- element constructors -----------------------------------------------

    def from_base(self, c) -> "TElem":
        zero = (0,) * len(self.gens)
        if c.is_zero():
            return TElem(self, {})
        return TElem(self, {zero: c})

    def from_int(self, n: int) -> "TElem":
        return self.from_base(self.base.from_int(n))

    def one(self) -> "TElem":
        return self.from_int(1)

    def zero(self) -> "TElem":
        return TElem(self, {})

    def gen_elem(self, i: int) -> "TElem":
        e = tuple(1 if j == i else 0 for j in range(len(self.gens)))
        return TElem(self, {e: self.base.from_int(1)})

    def lift(self, x: "TElem") -> "TElem":
        """Re-home an element of a shorter prefix tower."""
        pad = len(self.gens) - len(x.tower.gens)
        if pad < 0 or x.tower.gens != self.gens[: len(x.tower.gens)]:
            raise ValidationError("element does not come from a prefix tower")
        return TElem(self, {e + (0,) * pad: c for e, c in x.coords.items()})

    def describe(self) -> str:
        return "%s with %s" % (self.base.describe(),
                               ", ".join(g.name for g in self.gens) or "no roots")


class TElem:
    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: dict):
        self.tower = tower
        self.coords = {e: c for e, c in coords.items() if not c.is_zero()}

    # -- ring structure ------------------------------------------------------

    def _join(self, other) -> "TElem":
        if isinstance(other, int):
            other = self.tower.from_int(other)
        if other.tower is not self.tower:
            if len(other.tower.gens) < len(self.tower.gens):
                other = self.tower.lift(other)
            elif len(other.tower.gens) > len(self.tower.gens):
                raise ValidationError("element from a taller tower")
        return other

    def __add__(self, other):
        other = self._join(other)
        out = dict(self.coords)
        for e, c in other.coords.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return TElem(self.tower, out)

    def __neg__(self):
        return TElem(self.tower, {e: -c for e, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._join(other))

    def __mul__(self, other):
        other = self._join(other)
        out = {}
        for e1, c1 in self.coords.items():
            for e2, c2 in other.coords.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                _reduce_into(self.tower, e, c1 * c2, out)
        return TElem(self.tower, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative tower powers are not supported")
        out = self.tower.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __truediv__(self, other):
        """Division by a base element (or base-constant tower element)."""
        if isinstance(other, TElem):
            if any(any(e) for e in other.coords):
                raise ValidationError("tower division only by base elements")
            other = next(iter(other.coords.values())) if other.coords else None
            if other is None:
                raise ZeroDivisionError("division by zero")
        return TElem(self.tower, {e: c / other for e, c in self.coords.items()})

    def __eq__(self, other):
        other = self._join(other)
        return not (self - other).coords

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coords

    def map_coeffs(self, fn) -> "TElem":
        return TElem(self.tower, {e: fn(c) for e, c in self.coords.items()})

    def __repr__(self):
        return to_text(self)


def _reduce_into(tower: Tower, e: tuple, c, out: dict):
    p = tower.p
    for i, ei in enumerate(e):
        if ei >= p:
            low = tuple(x - p if j == i else x for j, x in enumerate(e))
            for re_, rc in tower.gens[i].rhs:
                # rhs tuples are as long as the tower was at attach time
                ee = tuple(a + (re_[j] if j < len(re_) else 0)
                           for j, a in enumerate(low))
                _reduce_into(tower, ee, c * rc, out)
            return
    s = out.get(e)
    s = c if s is None else s + c
    if s.is_zero():
        out.pop(e, None)
    else:
        out[e] = s


def to_text(x: TElem) -> str:
    parts = []
    for e in sorted(x.coords):
        c = x.coords[e]
        factors = []
        ct = c.to_text()
        if " " in ct or "+" in ct:
            ct = "(%s)" % ct
        if ct != "1" or not any(e):
            factors.append(ct)
        for i, ei in enumerate(e):
            if ei == 1:
                factors.append(x.tower.gens[i].name)
            elif ei:
                factors.append("%s^%d" % (x.tower.gens[i].name, ei))
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# valuation rules
# ---------------------------------------------------------------------------


def _monomial_bounds(x: TElem):
    """[(bound, determinate, exps, coeff_val)] per monomial, R1."""
    out = []
    for e, c in x.coords.items():
        cv = c.val()
        shift = sum((fr(ei) * x.tower.gens[i].value for i, ei in enumerate(e)
                     if ei), fr(0))
        if cv == INFINITE:
            continue
        if isinstance(cv, Indeterminate):
            out.append((cv.bound + shift, False, e, cv))
        else:
            out.append((cv + shift, True, e, cv))
    return out


def vlb(x: TElem):
    """R1 lower bound for the value (INFINITE for the zero element)."""
    bounds = _monomial_bounds(x)
    if not bounds:
        return INFINITE
    return min(b for b, _, _, _ in bounds)


def val(x: TElem, budget: int = None):
    """Exact value via R2 (unique minimum) with R4 fallback (p-th powers)."""
    if budget is None:
        budget = len(x.tower.gens) + 4
    bounds = _monomial_bounds(x)
    if not bounds:
        return INFINITE
    m = min(b for b, _, _, _ in bounds)
    at_min = [t for t in bounds if t[0] == m]
    if any(not t[1] for t in at_min):
        raise PrecisionError(
            "value tied with an indeterminate coefficient at %s" % (m,))
    if len(at_min) == 1:
        return m
    if budget <= 0:
        raise PrecisionError(
            "value tie between %d monomials not resolved within the p-power "
            "budget" % len(at_min))
    return val(x ** x.tower.p, budget - 1) / x.tower.p


def residue(x: TElem, budget: int = None) -> RElem:
    """Residue of a value-0 element, via R3 on stored (mu, rho) data.

    Monomials of positive value drop out; if any monomial sits below 0
    the p-power rule applies first (residues of p-th powers pull back
    along the Frobenius, which is injective here).
    """
    if budget is None:
        budget = len(x.tower.gens) + 4
    v = val(x, budget)
    if v != 0:
        raise ValidationError("residue requires value exactly 0, got %s" % (v,))
    bounds = _monomial_bounds(x)
    if all(b >= 0 for b, _, _, _ in bounds):
        total = None
        for e, c in x.coords.items():
            term = _monomial_residue(x.tower, e, c)
            if term is None:
                continue
            total = term if total is None else total + term
        if total is None or total.is_zero():
            raise ValidationError("residue computation cancelled to zero")
        return total
    if budget <= 0:
        raise PrecisionError("residue tie not resolved within the p-power budget")
    r = residue(x ** x.tower.p, budget - 1)
    return r.pth_root_extend()


def _monomial_residue(tower: Tower, e: tuple, c):
    """Residue of c * prod gen^e when its value is >= 0 (None if > 0)."""
    scaled = c
    rho_part = None
    for i, ei in enumerate(e):
        if not ei:
            continue
        g = tower.gens[i]
        if g.mu is None or g.rho is None:
            raise ValidationError(
                "generator %s carries no residue data" % (g.name,))
        for _ in range(ei):
            scaled = scaled * g.mu
        rp = g.rho ** ei
        rho_part = rp if rho_part is None else rho_part * rp
    v = scaled.val()
    if v == INFINITE or (not isinstance(v, Indeterminate) and v > 0):
        return None
    if isinstance(v, Indeterminate):
        if v.bound > 0:
            return None
        raise PrecisionError("monomial residue below the precision cap")
    if v < 0:
        raise ValidationError("negative monomial in a residue computation")
    base_res = scaled.residue()
    return base_res if rho_part is None else base_res * rho_part


# ---------------------------------------------------------------------------
# adjunction
# ---------------------------------------------------------------------------


@dataclass
class Adjunction:
    outcome: str       # ramified | residue | no_step_detected |
    #                    unsupported_step | not_single_slope
    tower: Tower = None
    value: Fraction = None
    residue_root: RElem = None
    note: str = ""


def _minpoly_text(relation: str, p: int, a: TElem) -> str:
    at = to_text(a)
    if relation == "as":
        return "X^%d - X - (%s)" % (p, at)
    return "X^%d - (%s)" % (p, at)


def adjoin_root(tower: Tower, relation: str, a: TElem, name: str) -> Adjunction:
    """Classify and attach a root of the degree-p relation over the tower."""
    if relation not in ("as", "kummer"):
        raise ValidationError("unknown relation kind %r" % (relation,))
    if tower.pending:
        raise ValidationError("resolve the pending step before adjoining")
    a = tower.zero()._join(a) if not isinstance(a, TElem) else a
    p = tower.p
    va = val(a)
    if va == INFINITE:
        raise ValidationError("relation right-hand side must be nonzero")

    # Newton polygon of the minimal polynomial
    one_val = fr(0)
    vals = [va] + [one_val if relation == "as" else INFINITE] + \
        [INFINITE] * (p - 2) + [one_val]
    ss = single_slope(vals)
    if ss is None:
        return Adjunction("not_single_slope",
                          note="polygon of %s has several slopes"
                          % _minpoly_text(relation, p, a))
    beta, mult = ss
    assert mult == p
    mp_text = _minpoly_text(relation, p, a)

    if not group_contains(tower.group, (beta,)):
        new = _attach(tower, relation, a, name, beta, None, None, mp_text)
        step = TowerStep(name, mp_text, "ramified", p, p, 1, 0, new_value=beta)
        return Adjunction("ramified", _finalize(new, step), value=beta)

    # beta already in the group: probe the residue equation through a base
    # monomial of the same value, when one exists
    if not group_contains(tower.base.value_group, (beta,)):
        new = _attach(tower, relation, a, name, beta, None, None, mp_text)
        return Adjunction("unsupported_step", new, value=beta,
                          note="value %s is only realized by tower monomials"
                          % (beta,))
    mu = tower.base.monomial(beta)
    # substitute X = mu*Y and normalize: Y^p - mu^{1-p} Y - a/mu^p ("as")
    #                                    Y^p - a/mu^p            ("kummer")
    rbar = residue(a / (mu ** p))
    if relation == "as" and beta == 0:
        # middle coefficient survives reduction: a separable residue
        # equation leaves the representable residue fields
        raise ValidationError(
            "separable residue equation is outside the supported fields")
    # solve y^p = rbar in the *current* residue field of the tower
    if rbar.field.has_variable():
        rbar = rbar.at_level(max(tower.res_level(), rbar.level()))
    root = rbar.pth_root()
    if root is None:
        # residue jump: f = p via the inseparable equation y^p = rbar
        rho = rbar.pth_root_extend()
        new = _attach(tower, relation, a, name, beta, mu, rho, mp_text)
        step = TowerStep(name, mp_text, "residue", p, 1, p, 0,
                         new_residue=rho.to_text())
        return Adjunction("residue", _finalize(new, step), value=beta,
                          residue_root=rho)
    # the residue equation already has a root: nothing is forced
    new = _attach(tower, relation, a, name, beta, mu, root, mp_text)
    return Adjunction("no_step_detected", new, value=beta, residue_root=root,
                      note="residue equation y^%d = %s has the root %s"
                      % (p, rbar.to_text(), root.to_text()))


def _attach(tower: Tower, relation: str, a: TElem, name: str,
            beta, mu, rho, mp_text: str) -> Tower:
    """Tower with the new generator attached and the step left open."""
    n = len(tower.gens)
    rhs = {e + (0,): c for e, c in a.coords.items()}
    if relation == "as":
        gen_exp = tuple(1 if i == n else 0 for i in range(n + 1))
        rhs[gen_exp] = tower.base.from_int(1)
    gi = GenInfo(name, relation, tuple(rhs.items()), beta, mu, rho, mp_text)
    return Tower(tower.base, tower.gens + (gi,), tower.steps,
                 tower.group, tower.res_desc)


def _finalize(tower: Tower, step: TowerStep) -> Tower:
    """Attach the step of the last generator, updating group and residue."""
    if not tower.pending:
        raise ValidationError("no pending generator to finalize")
    gi = tower.gens[-1]
    group = tower.group
    res_desc = tower.res_desc
    e = f = 1
    values = [gi.value]
    if step.new_value is not None:
        values.append(step.new_value)
    bigger = join(group, [(v,) for v in values])
    idx = group_index(bigger, group)
    if idx == INFINITE:
        raise ValidationError("ramification index is not finite")
    e = int(idx)
    if step.kind == "residue":
        f = tower.p
        res_desc = res_desc.at_level(tower.res_level() + 1) \
            if res_desc.has_variable() else res_desc
    m = ostrowski_m(step.degree, e, f, tower.p)
    if (e, f, m) != (step.e, step.f, step.m):
        raise ValidationError(
            "step bookkeeping (e=%d, f=%d, m=%d) disagrees with the group and "
            "residue computation (e=%d, f=%d, m=%d)"
            % (step.e, step.f, step.m, e, f, m))
    return Tower(tower.base, tower.gens, tower.steps + (step,), bigger, res_desc)


def resolve_pending(tower: Tower, witness: TElem, witness_text: str,
                    divisor=None) -> Tower:
    """Decide a pending step from a witness element.

    A witness value outside the current group finalizes a ramified step;
    otherwise the residue of witness/divisor must land outside the current
    residue field, finalizing a residue jump.
    """
    if not tower.pending:
        raise ValidationError("tower has no pending step")
    gi = tower.gens[-1]
    p = tower.p
    v = val(witness)
    if v == INFINITE:
        raise ValidationError("witness vanishes")
    mp_text = gi.minpoly_text
    if not group_contains(tower.group, (v,)):
        step = TowerStep(gi.name, mp_text, "ramified", p, p, 1, 0,
                         new_value=v, witness=witness_text)
        return _finalize(tower, step)
    if divisor is None:
        raise ValidationError(
            "witness value %s stays in the group; need a divisor to read a "
            "residue" % (v,))
    r = residue(witness / divisor)
    lvl = r._canonical()[0]
    if lvl <= tower.res_level():
        raise ValidationError(
            "witness residue %s lies in the current residue field" % (r,))
    step = TowerStep(gi.name, mp_text, "residue", p, 1, p, 0,
                     new_residue=r.to_text(), witness=witness_text)
    return _finalize(tower, step)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class DefectCertificate:
    construction: str
    p: int
    params: dict
    rows: list
    absorption: list
    limit_claim: str
    precision: dict

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "construction": self.construction,
            "p": self.p,
            "params": self.params,
            "rows": self.rows,
            "absorption": self.absorption,
            "limit_claim": self.limit_claim,
            "precision": self.precision,
        }


def step_row(n: int, step: TowerStep) -> dict:
    row = {
        "n": n,
        "name": step.name,
        "minpoly": step.minpoly,
        "kind": step.kind,
        "degree": step.degree,
        "e": step.e,
        "f": step.f,
        "m": step.m,
    }
    if step.new_value is not None:
        row["new_value"] = str(step.new_value)
    if step.new_residue is not None:
        row["new_residue"] = step.new_residue
    if step.witness is not None:
        row["witness"] = step.witness
    return row


def certificate(tower: Tower, construction: str, params: dict,
                absorption: list, limit_claim: str,
                precision: dict) -> DefectCertificate:
    if tower.pending:
        raise ValidationError("cannot certify a tower with a pending step")
    rows = [step_row(i + 1, s) for i, s in enumerate(tower.steps)]
    return DefectCertificate(construction, tower.p, params, rows,
                             list(absorption), limit_claim, precision)


# ---------------------------------------------------------------------------
# closed-form expansions (independent cross-checks)
# ---------------------------------------------------------------------------


def as_expansion_terms(c, count: int):
    """Truncated root of X^p - X = c as explicit base elements.

    For v(c) < 0 the terms are c^{1/p}, c^{1/p^2}, ...; for v(c) > 0 they
    are -c, -c^p, -c^{p^2}, ...  (both verify g(theta) -> 0).  The base
    must support the needed exponents (p-divisible group in the first
    case).
    """
    vc = c.val()
    if vc == INFINITE or isinstance(vc, Indeterminate):
        raise ValidationError("expansion needs a determinate nonzero value")
    out = []
    if vc < 0:
        t = c
        for _ in range(count):
            t = t.pth_root()
            out.append(t)
        return out
    if vc > 0:
        t = c
        for _ in range(count):
            out.append(-t)
            t = t.frobenius() if hasattr(t, "frobenius") else t ** c.base.p
        return out
    raise ValidationError("value-0 relations do not have a canonical expansion")


def eval_expansion(x: TElem, gen_series: list, exp_base) -> object:
    """Substitute explicit base expansions for the generators.

    gen_series[i] is an element of exp_base standing for gen_i.  The
    result is exact arithmetic in exp_base (use capped series to keep it
    finite); useful as an independent check of engine values.
    """
    total = exp_base.zero()
    for e, c in x.coords.items():
        term = c.rebase(exp_base) if hasattr(c, "rebase") else c
        for i, ei in enumerate(e):
            for _ in range(ei):
                term = term * gen_series[i]
        total = total + term
    return total
