"""Verification suites shared by the CLI and the test suite.

Each suite runs a batch of independent cross-checks and returns a
SuiteResult with pass/fail counts and one line per failed case (plus a
summary line per block).  All randomness comes from a seeded
random.Random, so a fixed seed gives byte-identical reports.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .constructions import (build_2ext, build_as_resf, build_as_valgp,
                            build_kummer_resf, build_kummer_valgp,
                            build_lemma_3_3)
from .corpus import shipped_corpus
from .classify import audit_implications
from .newton import root_values
from .ogroup import contains, index, ogroup
from .values import INFINITE, Indeterminate
from .vbase import PadicBase


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    lines: list = field(default_factory=list)

    def ok(self) -> bool:
        return self.failed == 0

    def tally(self, good: bool, line: str):
        if good:
            self.passed += 1
        else:
            self.failed += 1
            self.lines.append("FAIL " + line)


# ---------------------------------------------------------------------------
# ostrowski: every shipped construction is defectless at every finite step


_OSTROWSKI_CASES = (
    ("as-valgp", build_as_valgp, {"p": 2, "depth": 2}),
    ("as-valgp", build_as_valgp, {"p": 3, "depth": 2}),
    ("lemma33", build_lemma_3_3, {"p": 2}),
    ("lemma33", build_lemma_3_3, {"p": 3}),
    ("as-resf", build_as_resf, {"p": 2, "depth": 1}),
    ("as-resf", build_as_resf, {"p": 3, "depth": 1}),
    ("kummer-valgp", build_kummer_valgp, {"p": 2, "depth": 1}),
    ("kummer-valgp", build_kummer_valgp, {"p": 3, "depth": 1}),
    ("two-ext", build_2ext, {"p": 2}),
    ("two-ext", build_2ext, {"p": 3}),
    ("kummer-resf", build_kummer_resf, {"p": 2, "depth": 1}),
    ("kummer-resf", build_kummer_resf, {"p": 3, "depth": 1}),
)


def suite_ostrowski(seed: int = 0) -> SuiteResult:
    res = SuiteResult("ostrowski")
    for name, builder, params in _OSTROWSKI_CASES:
        label = name + " " + " ".join("%s=%s" % kv for kv in params.items())
        built = builder(**params)
        cert = built.certificate
        for row in cert.rows:
            good = row["m"] == 0 and row["degree"] == row["e"] * row["f"]
            res.tally(good, "%s row %s: (deg,e,f,m)=(%s,%s,%s,%s)"
                      % (label, row["n"], row["degree"], row["e"],
                         row["f"], row["m"]))
        res.tally(all(cert.absorption),
                  "%s: absorption flags %s" % (label, cert.absorption))
    return res


# ---------------------------------------------------------------------------
# congruence: (c_1 + ... + c_n)^p = c_1^p + ... + c_n^p modulo positive value


def _random_padic(rng: random.Random, base: PadicBase):
    digits = {}
    for _ in range(rng.randint(1, 3)):
        pos = rng.randint(-1, 3)
        coeff = rng.randint(1, base.p - 1) if base.p > 2 else 1
        digits[pos] = digits.get(pos, 0) + coeff
    return base.from_digits(digits)


def suite_congruence(seed: int = 0, trials: int = 200) -> SuiteResult:
    res = SuiteResult("congruence")
    rng = random.Random(seed)
    for p in (2, 3, 5):
        base = PadicBase(p, p)
        for t in range(trials):
            terms = [_random_padic(rng, base)
                     for _ in range(rng.randint(2, 4))]
            total = base.zero()
            powers = base.zero()
            for c in terms:
                total = total + c
                powers = powers + c ** p
            diff = total ** p - powers
            v = diff.val()
            good = v == INFINITE or \
                (not isinstance(v, Indeterminate) and v >= 0)
            res.tally(good, "p=%d trial %d: val=%s" % (p, t, v))
    return res


# ---------------------------------------------------------------------------
# newton: sum of root values against the coefficient values


def suite_newton(seed: int = 0, trials: int = 100) -> SuiteResult:
    res = SuiteResult("newton")
    rng = random.Random(seed)
    for t in range(trials):
        deg = rng.randint(1, 6)
        vals = []
        for i in range(deg + 1):
            if i < deg and rng.random() < 0.2:
                vals.append(INFINITE)
            else:
                vals.append(Fraction(rng.randint(-8, 8),
                                     rng.randint(1, 4)))
        rv = root_values(vals)
        # independent bookkeeping: first finite coefficient index k gives
        # k roots of infinite value; the finite values sum to v(c_k)-v(c_deg)
        k = next(i for i, v in enumerate(vals) if v != INFINITE)
        inf_mult = sum(m for v, m in rv if v == INFINITE)
        fin_sum = sum(v * m for v, m in rv if v != INFINITE)
        fin_mult = sum(m for v, m in rv if v != INFINITE)
        good = (inf_mult == k and fin_mult == deg - k
                and fin_sum == vals[k] - vals[deg])
        res.tally(good, "trial %d: vals=%s roots=%s" % (t, vals, rv))
    return res


# ---------------------------------------------------------------------------
# ogroup: membership and index against naive arithmetic


def _rank1_member(free, closed, p, x, kcap=24):
    """Membership in a rank-1 group by gcd arithmetic."""
    x = Fraction(x)
    for k in range(kcap if closed else 1):
        gens = [Fraction(g) for g in free]
        gens += [Fraction(h) / p ** k for h in closed]
        if not gens:
            return x == 0
        d = lcm(x.denominator, *(g.denominator for g in gens))
        ints = [int(g * d) for g in gens]
        g0 = ints[0]
        for n in ints[1:]:
            g0 = gcd(g0, n)
        g0 = abs(g0)
        if g0 == 0:
            if x == 0:
                return True
        elif int(x * d) % g0 == 0:
            return True
    return False


def _tri_member(u, v, x, p=0, closed_v=False):
    """Membership in Zu + Zv (v optionally Z[1/p]-scaled), u triangular."""
    a = Fraction(x[0]) / u[0]
    if a.denominator != 1:
        return False
    b = Fraction(x[1]) - a * u[1]
    if v is None:
        return b == 0
    b = b / v[1]
    if closed_v:
        den = b.denominator
        while den % p == 0:
            den //= p
        return den == 1
    return b.denominator == 1


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _coset_count(m, cap=200):
    """Order of Z^2 / mZ^2 by breadth-first enumeration.

    Membership in the image lattice is decided by inverting m over the
    rationals; representatives are kept verbatim and compared pairwise,
    which is fine at the suite's determinant sizes.
    """
    det = _det2(m)
    inv = ((Fraction(m[1][1], det), Fraction(-m[0][1], det)),
           (Fraction(-m[1][0], det), Fraction(m[0][0], det)))

    def in_lattice(y):
        a = inv[0][0] * y[0] + inv[0][1] * y[1]
        b = inv[1][0] * y[0] + inv[1][1] * y[1]
        return a.denominator == 1 and b.denominator == 1

    reps = [(0, 0)]
    queue = [(0, 0)]
    while queue:
        cur = queue.pop()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nxt = (cur[0] + dx, cur[1] + dy)
            if any(in_lattice((nxt[0] - r[0], nxt[1] - r[1]))
                   for r in reps):
                continue
            reps.append(nxt)
            queue.append(nxt)
            if len(reps) > cap:
                raise RuntimeError("coset enumeration exceeded the cap")
    return len(reps)


def suite_ogroup(seed: int = 0, trials: int = 100) -> SuiteResult:
    res = SuiteResult("ogroup")
    rng = random.Random(seed)
    for t in range(trials):
        p = rng.choice((2, 3))
        if t % 2 == 0:
            # rank 1, possibly with a p-divisibly closed generator
            free = [Fraction(rng.randint(1, 5), rng.randint(1, 4))]
            closed = [Fraction(rng.randint(1, 5), rng.randint(1, 4))] \
                if rng.random() < 0.5 else []
            gens = free + closed
            g = ogroup(gens, closed=tuple(range(len(free), len(gens))),
                       prime=p if closed else 1)
            for _ in range(4):
                x = sum((rng.randint(-4, 4) * f for f in free), Fraction(0))
                x += sum((Fraction(rng.randint(-4, 4), p ** rng.randint(0, 2))
                          * c for c in closed), Fraction(0))
                if rng.random() < 0.4:
                    x += Fraction(1, 7)
                want = _rank1_member(free, closed, p, x)
                got = contains(g, x)
                res.tally(got == want,
                          "t=%d rank1 contains %s: got %s want %s"
                          % (t, x, got, want))
            if not closed:
                m = rng.randint(1, 6)
                h = ogroup([m * f for f in free])
                got = index(g, h)
                res.tally(got == m,
                          "t=%d rank1 index: got %s want %s" % (t, got, m))
        else:
            # rank 2 lattice from a triangular basis, presented redundantly
            u = (Fraction(rng.randint(1, 4)), Fraction(rng.randint(-3, 3)))
            v = (Fraction(0), Fraction(rng.randint(1, 4)))
            closed_v = rng.random() < 0.4
            gens = [u, v, (u[0] + 2 * v[0], u[1] + 2 * v[1])]
            g = ogroup(gens, closed=(1,) if closed_v else (),
                       prime=p if closed_v else 1)
            for _ in range(4):
                a, b = rng.randint(-4, 4), rng.randint(-4, 4)
                x = [a * u[0] + b * v[0], a * u[1] + b * v[1]]
                if closed_v and rng.random() < 0.5:
                    q = Fraction(rng.randint(1, 3), p ** rng.randint(1, 2))
                    x[0] += q * v[0]
                    x[1] += q * v[1]
                if rng.random() < 0.4:
                    x[rng.randint(0, 1)] += Fraction(1, 7)
                want = _tri_member(u, v, x, p, closed_v)
                got = contains(g, tuple(x))
                res.tally(got == want,
                          "t=%d rank2 contains %s: got %s want %s"
                          % (t, x, got, want))
            if not closed_v:
                while True:
                    m = ((rng.randint(-3, 3), rng.randint(-3, 3)),
                         (rng.randint(-3, 3), rng.randint(-3, 3)))
                    if _det2(m) != 0:
                        break
                hg = [(m[0][0] * u[0] + m[0][1] * v[0],
                       m[0][0] * u[1] + m[0][1] * v[1]),
                      (m[1][0] * u[0] + m[1][1] * v[0],
                       m[1][0] * u[1] + m[1][1] * v[1])]
                h = ogroup(hg)
                want = _coset_count(m)
                got = index(g, h)
                res.tally(got == want,
                          "t=%d rank2 index: got %s want %s"
                          % (t, got, want))
            else:
                # the closed direction makes any plain sublattice infinite
                h = ogroup([u, (2 * v[0], 2 * v[1])])
                got = index(g, h)
                res.tally(got == INFINITE,
                          "t=%d rank2 index vs closed: got %s want INFINITE"
                          % (t, got))
    return res


# ---------------------------------------------------------------------------
# implications: the corpus audit


def suite_implications(seed: int = 0) -> SuiteResult:
    res = SuiteResult("implications")
    report = audit_implications(shipped_corpus())
    bad = {}
    for v in report["violations"]:
        bad.setdefault(v["descriptor"], []).append(v["implication"])
    for name in report["verdicts"]:
        res.tally(name not in bad, "%s: %s" % (name, bad.get(name)))
    for note in report["notices"]:
        res.lines.append("note " + note)
    return res


SUITES = {
    "ostrowski": suite_ostrowski,
    "congruence": suite_congruence,
    "newton": suite_newton,
    "ogroup": suite_ogroup,
    "implications": suite_implications,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError("unknown suite %r (have: %s)"
                       % (name, ", ".join(sorted(SUITES))))
    return fn(seed=seed)
