"""Named tower families with verified defect certificates.

Each builder assembles a concrete valued base, runs the degree-p
adjunctions through the classifier, resolves pending steps from explicit
witness elements, and re-checks the key identities before handing back a
certificate.  Anything that fails to verify raises ValidationError: a
certificate is only produced when the arithmetic actually worked out.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionError, ValidationError
from .ogroup import contains, ogroup
from .resfield import ResField
from .tower import (DefectCertificate, Tower, adjoin_root, residue,
                    resolve_pending, step_row, val, vlb)
from .values import INFINITE, fr
from .vbase import EqBase, PadicBase, PadicElem, cached_zeta_lambda


@dataclass
class BuildResult:
    certificate: DefectCertificate
    towers: list
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return self.certificate.to_json()


def _check(cond: bool, msg: str):
    if not cond:
        raise ValidationError("construction self-check failed: " + msg)


def _require_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValidationError("p must be a prime, got %r" % (p,))


def required_padic_positions(depth: int) -> int:
    """Digit positions needed to separate witness values at this depth."""
    return depth + 3


# ---------------------------------------------------------------------------
# equal characteristic, growing value group
# ---------------------------------------------------------------------------


def build_as_valgp(p: int, depth: int = 3) -> BuildResult:
    """x^p = x + t^(-1) over F_p((t^(1/p^n Z))) for n = 0..depth.

    Every level meets the same relation; the root's value -1/p^(n+1)
    always escapes the level-n exponents, so each step is ramified with
    e = p, f = 1.  In the union the value group is p-divisible and the
    relation degenerates to an immediate extension: defect p.
    """
    _require_prime(p)
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    rows, absorb, towers, witnesses = [], [], [], []
    for n in range(depth + 1):
        base = EqBase(p, ResField(p), ogroup([Fraction(1, p ** n)], prime=p))
        t0 = Tower(base)
        a = t0.from_base(base.monomial(-1))
        adj = adjoin_root(t0, "as", a, "x")
        if n == 0:
            _check(adj.outcome == "ramified", "level 0 should ramify")
            done = adj.tower
            w = done.gen_elem(0)
        else:
            _check(adj.outcome == "no_step_detected",
                   "level %d polygon should stay in the group" % n)
            tw = adj.tower
            w = tw.gen_elem(0)
            for k in range(1, n + 1):
                w = w - tw.from_base(base.monomial(Fraction(-1, p ** k)))
            text = "b%d = x - sum_(k=1..%d) t^(-1/p^k)" % (n, n)
            done = resolve_pending(tw, w, text)
        step = done.steps[-1]
        val_n = Fraction(-1, p ** (n + 1))
        _check(val(w) == val_n, "witness value at level %d" % n)
        rhs = base.monomial(Fraction(-1, p ** n))
        _check((w ** p - w - done.from_base(rhs)).is_zero(),
               "witness relation at level %d" % n)
        _check((step.e, step.f, step.m) == (p, 1, 0),
               "level %d should be (e, f, m) = (p, 1, 0)" % n)
        next_group = ogroup([Fraction(1, p ** (n + 1))], prime=p)
        absorb.append(contains(next_group, (val_n,)))
        rows.append(step_row(n, step))
        towers.append(done)
        witnesses.append(w)
    cert = DefectCertificate(
        "as-valgp", p, {"depth": depth}, rows, absorb,
        "every finite level repeats the ramified step e = p, f = 1 and its "
        "root value is absorbed one level up; over the union (exponents "
        "Z[1/p]) the same relation becomes immediate with defect p",
        {"mode": "exact"})
    return BuildResult(cert, towers, {"witnesses": witnesses})


def build_lemma_3_3(p: int, vd: int = -1) -> BuildResult:
    """x^p = x + d^p u with v(d) = vd < 0 over F_p(u)((t)): one residue jump.

    The twist d moves the relation to value p*vd while the residue
    equation stays y^p = u, which has no root in F_p(u); hence e = 1,
    f = p and no defect.
    """
    _require_prime(p)
    vd = int(vd)
    if vd == 0:
        raise ValidationError(
            "vd = 0 leaves a separable residue equation; the twist needs a "
            "negative value")
    if vd > 0:
        raise ValidationError(
            "vd > 0 gives a two-slope polygon (no single root value); use "
            "vd < 0")
    base = EqBase(p, ResField(p, "ratfun"), ogroup([fr(1)], prime=p))
    t0 = Tower(base)
    a = t0.from_base(base.monomial(p * vd, base.res.gen()))
    adj = adjoin_root(t0, "as", a, "x")
    _check(adj.outcome == "residue", "twisted relation should jump the residue")
    done = adj.tower
    step = done.steps[0]
    _check((step.e, step.f, step.m) == (1, p, 0), "step shape")
    _check(adj.residue_root == base.res.gen().pth_root_extend(),
           "residue root should be u^(1/p)")
    cert = DefectCertificate(
        "lemma33", p, {"vd": vd}, [step_row(1, step)], [True],
        "a single inseparable residue jump: e = 1, f = p, m = 0; the root "
        "u^(1/p) lies in the perfect hull of the residue field",
        {"mode": "exact"})
    return BuildResult(cert, [done], {"residue_root": adj.residue_root})


def build_as_resf(p: int, depth: int = 2) -> BuildResult:
    """x^p = x + u t^(-1) over F_p(u)((t^Z[1/p])) after `depth` floors.

    The floors adjoin u^(1/p^i) through Kummer relations (each a residue
    jump, f = p).  On top of them the main relation no longer forces a
    step on its own; the witness b = x - sum u^(1/p^k) t^(-1/p^k) reads
    off one more residue jump.  In the union the residue field is the
    perfect hull and the relation becomes immediate: defect p.
    """
    _require_prime(p)
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    res = ResField(p, "ratfun")
    base = EqBase(p, res, ogroup([fr(1)], closed={0}, prime=p))
    tw = Tower(base)
    rows, absorb, roots = [], [], []
    for i in range(1, depth + 1):
        rhs = tw.from_base(base.monomial(0, res.gen())) if i == 1 \
            else tw.gen_elem(i - 2)
        adj = adjoin_root(tw, "kummer", rhs, "c%d" % i)
        _check(adj.outcome == "residue", "floor %d should jump the residue" % i)
        tw = adj.tower
        step = tw.steps[-1]
        _check((step.e, step.f, step.m) == (1, p, 0), "floor %d shape" % i)
        rows.append(step_row(i, step))
        absorb.append(True)
        roots.append(adj.residue_root)
    a = tw.from_base(base.monomial(-1, res.gen()))
    adj = adjoin_root(tw, "as", a, "x")
    if depth == 0:
        _check(adj.outcome == "residue", "depth 0 should jump directly")
        done = adj.tower
        w = done.gen_elem(0)
        wres = adj.residue_root
    else:
        _check(adj.outcome == "no_step_detected",
               "with floors the relation alone forces nothing")
        tw = adj.tower
        w = tw.gen_elem(depth)
        coeff = res.gen()
        for k in range(1, depth + 1):
            coeff = coeff.pth_root_extend()
            w = w - tw.from_base(base.monomial(Fraction(-1, p ** k), coeff))
        divisor = tw.from_base(base.monomial(Fraction(-1, p ** (depth + 1))))
        text = "b%d = x - sum_(k=1..%d) u^(1/p^k) t^(-1/p^k)" % (depth, depth)
        done = resolve_pending(tw, w, text, divisor)
        wres = residue(done.lift(w) / done.lift(divisor))
    step = done.steps[-1]
    _check((step.e, step.f, step.m) == (1, p, 0), "top step shape")
    _check(val(w) == Fraction(-1, p ** (depth + 1)), "witness value")
    if depth:
        mtop = base.monomial(Fraction(-1, p ** depth), coeff)
        _check((w ** p - w - done.from_base(mtop)).is_zero(),
               "witness relation at depth %d" % depth)
    _check(wres._canonical()[0] == depth + 1,
           "witness residue should sit one perfection level up")
    rows.append(step_row(depth + 1, step))
    absorb.append(True)
    cert = DefectCertificate(
        "as-resf", p, {"depth": depth}, rows, absorb,
        "each level adds one inseparable residue jump e = 1, f = p and the "
        "witness residue u^(1/p^(depth+1)) is absorbed one level up; over "
        "the perfect hull the relation becomes immediate with defect p",
        {"mode": "exact"})
    return BuildResult(cert, [done],
                       {"witness": w, "witness_residue": wres,
                        "floor_roots": roots})


# ---------------------------------------------------------------------------
# mixed characteristic
# ---------------------------------------------------------------------------


def _cyclo_base(p: int, extra_p_power: int = 0, gauss: bool = False) -> PadicBase:
    """Totally ramified base containing zeta_p, coarsened by p^extra."""
    if p == 2:
        return PadicBase(2, 2 ** extra_p_power if extra_p_power else 1,
                         1, gauss)
    return PadicBase(p, (p - 1) * p ** extra_p_power, -1, gauss)


def build_kummer_valgp(p: int, depth: int = 2, padic_cap: int = None) -> BuildResult:
    """x^p = lambda^(-1) over Q_p(zeta_p) plus Artin-Schreier floors.

    lambda = zeta_p - 1 has value 1/(p-1); the floors a_1, a_2, ... chase
    the value of lambda^(-1/p^i) without ever reaching the base group, so
    all steps are ramified with e = p, f = 1.  The witness
    b_k = a - sum a_i ties the top Kummer relation to the floors.
    """
    _require_prime(p)
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    need = required_padic_positions(depth)
    if padic_cap is None:
        padic_cap = need
    if padic_cap < need:
        raise PrecisionError(
            "p-adic cap %d is below the %d digit positions needed at depth %d"
            % (padic_cap, need, depth))
    base = _cyclo_base(p)
    lam = cached_zeta_lambda(base, padic_cap)
    if lam.prec == INFINITE:
        # exact lambda (p = 2): cap it so the inversion terminates
        lam = PadicElem(base, dict(lam.digits), padic_cap)
    a0 = base.one() / lam
    alpha = Fraction(-1, p - 1)
    _check(a0.val() == alpha, "v(1/lambda) should be -1/(p-1)")

    tw = Tower(base)
    rows, absorb, avals = [], [], []
    for i in range(1, depth + 1):
        rhs = tw.from_base(a0) if i == 1 else -tw.gen_elem(i - 2)
        adj = adjoin_root(tw, "as", rhs, "a%d" % i)
        _check(adj.outcome == "ramified", "floor %d should ramify" % i)
        tw = adj.tower
        step = tw.steps[-1]
        _check((step.e, step.f, step.m) == (p, 1, 0), "floor %d shape" % i)
        _check(step.new_value == alpha / p ** i, "floor %d value" % i)
        rows.append(step_row(i, step))
        avals.append(alpha / p ** i)
    adj = adjoin_root(tw, "kummer", tw.from_base(a0), "a")
    _check(adj.outcome == "unsupported_step",
           "the top value is only reached by tower monomials")
    tw = adj.tower
    w = tw.gen_elem(depth)
    for i in range(depth):
        w = w - tw.gen_elem(i)
    ak = tw.gen_elem(depth - 1)
    bound = vlb(w ** p + ak)
    _check(bound >= 0, "v(b_k^p + a_k) >= 0 fails: bound %s" % (bound,))
    done = resolve_pending(tw, w, "b%d = a - sum_(i=1..%d) a_i" % (depth, depth))
    step = done.steps[-1]
    _check((step.e, step.f, step.m) == (p, 1, 0), "top step shape")
    top_val = alpha / p ** (depth + 1)
    _check(step.new_value == top_val, "top witness value")
    rows.append(step_row(depth + 1, step))
    avals.append(top_val)
    for v in avals:
        absorb.append(contains(done.group, (v,)))
    cert = DefectCertificate(
        "kummer-valgp", p, {"depth": depth}, rows, absorb,
        "all steps are ramified with e = p, f = 1 and the witness value "
        "-1/((p-1) p^(depth+1)) is reached by the next floor; in the union "
        "the exponent group is p-divisible and the Kummer relation becomes "
        "immediate with defect p",
        {"mode": "p-adic", "padic_positions": padic_cap, "required": need})
    return BuildResult(cert, [done], {"witness": w, "witness_value": top_val,
                                      "a0": a0, "lam": lam})


def build_2ext(p: int) -> BuildResult:
    """Two independent residue jumps whose compositum forces a third.

    Over a Gauss-extended cyclotomic base with v(w) = 1/((p-1)p^2), the
    relations x^p = a/w^(p^2) (Kummer) and y^p = y + a/w^(p^2)
    (Artin-Schreier) each adjoin u^(1/p).  Over the first one the second
    relation forces nothing by itself; the witness e = y - x has value
    -v(w) and e/w^(-1) has residue u^(1/p^2): a third jump.
    """
    _require_prime(p)
    base = _cyclo_base(p, 2, gauss=True)
    E = base.E
    d = base.monomial(Fraction(-1, E))
    rhs0 = base.u_elem() * d ** (p * p)

    t0 = Tower(base)
    tK = adjoin_root(t0, "kummer", t0.from_base(rhs0), "x")
    _check(tK.outcome == "residue", "Kummer side should jump the residue")
    t1 = Tower(base)
    tA = adjoin_root(t1, "as", t1.from_base(rhs0), "y")
    _check(tA.outcome == "residue", "Artin-Schreier side should jump too")
    u_p = base.residue_field.gen().pth_root_extend()
    _check(tK.residue_root == u_p and tA.residue_root == u_p,
           "both residue roots should be u^(1/p)")
    for adj in (tK, tA):
        s = adj.tower.steps[0]
        _check((s.degree, s.e, s.f, s.m) == (p, 1, p, 0), "side step shape")

    comp = adjoin_root(tK.tower, "as", tK.tower.from_base(rhs0), "y")
    _check(comp.outcome == "no_step_detected",
           "over the first jump the second relation forces nothing alone")
    tw = comp.tower
    e_el = tw.gen_elem(1) - tw.gen_elem(0)
    _check(val(e_el) == Fraction(-1, E), "witness value should be -v(w)")
    done = resolve_pending(tw, e_el, "e = y - x", tw.from_base(d))
    step = done.steps[-1]
    _check((step.e, step.f, step.m) == (1, p, 0), "composite step shape")
    wres = residue(done.lift(e_el) / done.from_base(d))
    _check(wres == u_p.pth_root_extend(), "composite residue should be u^(1/p^2)")

    xK = tK.tower.gen_elem(0)
    rK = residue(xK / tK.tower.from_base(d ** p))
    yA = tA.tower.gen_elem(0)
    rA = residue(yA / tA.tower.from_base(d ** p))
    _check(rK == u_p and rA == u_p, "unit residues x/d^p and y/d^p")

    rows = [step_row(1, tK.tower.steps[0]), step_row(2, tA.tower.steps[0]),
            step_row(3, step)]
    cert = DefectCertificate(
        "two-ext", p, {}, rows, [True, True, True],
        "each side adjoins u^(1/p) with e = 1, f = p; over either side the "
        "other relation is trivial on its own, yet the compositum still "
        "jumps: the witness e = y - x has residue u^(1/p^2) after dividing "
        "by w^(-1)",
        {"mode": "p-adic", "padic_positions": None, "required": 0})
    return BuildResult(cert, [tK.tower, tA.tower, done],
                       {"witness": e_el, "unit_residues": [rK, rA],
                        "witness_residue": wres})


def build_kummer_resf(p: int, depth: int = 2) -> BuildResult:
    """x^p = u/p over a Gauss ring plus Artin-Schreier floors.

    With rho^(p^m) = p available in the base (m = depth + 1), the scaled
    witnesses b_i / rho^(-p^(m-i)) have residues generating the perfect
    hull of F_p(u) step by step; every level is a residue jump with f = p
    and the top relation's witness c_k = x - sum b_i reads off one more.
    """
    _require_prime(p)
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    m = depth + 1
    base = _cyclo_base(p, m, gauss=True)
    rho = base.from_digits({p - 1: -1}) if p > 2 else base.from_digits({1: 1})
    _check((rho ** (p ** m) - base.from_int(p)).is_zero(),
           "rho^(p^m) should equal p exactly")
    dd = [base.one() / rho ** (p ** (m - i)) for i in range(m + 1)]
    b0 = base.u_elem() * dd[0]
    _check(b0.val() == fr(-1), "v(u/p) should be -1")

    tw = Tower(base)
    rows, absorb, unit_res = [], [], []
    for i in range(1, depth + 1):
        rhs = tw.from_base(b0) if i == 1 else -tw.gen_elem(i - 2)
        adj = adjoin_root(tw, "as", rhs, "b%d" % i)
        _check(adj.outcome == "residue", "floor %d should jump the residue" % i)
        tw = adj.tower
        step = tw.steps[-1]
        _check((step.e, step.f, step.m) == (1, p, 0), "floor %d shape" % i)
        bi = tw.gen_elem(i - 1)
        _check(val(bi) == Fraction(-1, p ** i), "floor %d value" % i)
        ri = residue(bi / tw.from_base(dd[i]))
        _check(ri._canonical()[0] == i,
               "residue of b%d/d%d should sit at perfection level %d" % (i, i, i))
        unit_res.append(ri)
        rows.append(step_row(i, step))
        absorb.append(True)
    adj = adjoin_root(tw, "kummer", tw.from_base(b0), "b")
    _check(adj.outcome == "no_step_detected",
           "with floors the top relation forces nothing alone")
    tw = adj.tower
    w = tw.gen_elem(depth)
    for i in range(depth):
        w = w - tw.gen_elem(i)
    bk = tw.gen_elem(depth - 1)
    bound = vlb(w ** p + bk)
    _check(bound >= 0, "v(c_k^p + b_k) >= 0 fails: bound %s" % (bound,))
    _check(val(w) == Fraction(-1, p ** (depth + 1)), "witness value")
    done = resolve_pending(
        tw, w, "c%d = x - sum_(i=1..%d) b_i" % (depth, depth),
        tw.from_base(dd[depth + 1]))
    step = done.steps[-1]
    _check((step.e, step.f, step.m) == (1, p, 0), "top step shape")
    wres = residue(done.lift(w) / done.from_base(dd[depth + 1]))
    _check(wres._canonical()[0] == depth + 1,
           "witness residue should sit one perfection level up")
    rows.append(step_row(depth + 1, step))
    absorb.append(True)
    cert = DefectCertificate(
        "kummer-resf", p, {"depth": depth}, rows, absorb,
        "every level is an inseparable residue jump e = 1, f = p and the "
        "witness residue at the top sits one perfection level up, absorbed "
        "by the next stage; over the perfect hull the relation becomes "
        "immediate with defect p",
        {"mode": "p-adic", "padic_positions": None, "required": 0})
    return BuildResult(cert, [done],
                       {"witness": w, "witness_residue": wres,
                        "unit_residues": unit_res, "b0": b0})


BUILDERS = {
    "as-valgp": build_as_valgp,
    "lemma33": build_lemma_3_3,
    "as-resf": build_as_resf,
    "kummer-valgp": build_kummer_valgp,
    "two-ext": build_2ext,
    "kummer-resf": build_kummer_resf,
}

# descriptor-level construction, defined next to the classifier it feeds
from .classify import build_counterexample_descriptor  # noqa: E402,F401
