"""Field-class verdicts for symbolic valued-field descriptors.

A FieldDescriptor records what is known about a valued field: the
characteristics, the value group, the value of p, the residue field
(concrete or abstract) and oracle flags for the properties that cannot
be decided from this data alone.  check() evaluates the tame, roughly
tame, semitame and rdr conditions and returns a ClassReport whose
verdicts are "true", "false" or "unknown", each backed by an evidence
string naming the computation, oracle flag or derivation behind it.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import ValidationError
from .ogroup import (OGroup, contains, convex_core, cyclic, is_p_divisible,
                     is_roughly_p_divisible, lex_compose, ogroup,
                     project_trailing, same_group)
from .ogroup import from_json as group_from_json
from .ogroup import to_json as group_to_json
from .resfield import ResField, resfield_from_json

TRUE = "true"
FALSE = "false"
UNKNOWN = "unknown"

FLAG_NAMES = (
    "henselian",
    "defectless",
    "frobenius_surjective_on_completion_mod_p",
    "independent_defect",
    "tame",
)

VERDICT_KEYS = ("TF1", "TF2", "TF3", "tame", "RTF1", "RTF2", "RTF3",
                "roughly_tame", "semitame", "rdr_1", "rdr_2", "rdr")


def tv(flag) -> str:
    """Three-valued verdict from an oracle flag (None = unknown)."""
    if flag is True:
        return TRUE
    if flag is False:
        return FALSE
    if flag is None:
        return UNKNOWN
    raise ValidationError("oracle flag must be True, False or None, got %r"
                          % (flag,))


def and3(*vals: str) -> str:
    if FALSE in vals:
        return FALSE
    if UNKNOWN in vals:
        return UNKNOWN
    return TRUE


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class AbstractResidue:
    """A residue field known only through its perfectness flag."""

    perfect: bool

    def to_json(self) -> dict:
        return {"kind": "abstract", "perfect": self.perfect}


def _residue_from_json(d: dict):
    if d.get("kind") == "abstract":
        return AbstractResidue(perfect=bool(d["perfect"]))
    return resfield_from_json(d)


def _residue_text(rf) -> str:
    if isinstance(rf, AbstractResidue):
        return "abstract (%s)" % ("perfect" if rf.perfect else "imperfect")
    if rf.kind == "finite":
        return "F_%d" % rf.q
    if rf.kind == "ratfun":
        return "F_%d(u)" % rf.char
    return "F_%d(u^(1/%d))" % (rf.char, rf.char ** rf.level)


def _coerce_vec(x, rank: int):
    if isinstance(x, (tuple, list)):
        vec = tuple(Fraction(c) for c in x)
    else:
        vec = (Fraction(x),)
    if len(vec) != rank:
        raise ValidationError("vp has %d coordinates, the group has rank %d"
                              % (len(vec), rank))
    return vec


def _lex_sign(vec) -> int:
    for c in vec:
        if c != 0:
            return 1 if c > 0 else -1
    return 0


def _group_text(g: OGroup) -> str:
    parts = []
    for i, gen in enumerate(g.gens):
        s = "(" + ", ".join(str(c) for c in gen) + ")" if g.rank > 1 \
            else str(gen[0])
        if i in g.p_closed:
            s += "/%d^inf" % g.prime
        parts.append(s)
    return "<" + ("; ".join(parts) if parts else "0") + ">"


@dataclass
class FieldDescriptor:
    """Symbolic description of a valued field.

    vp is the value of the rational prime p = res_char; it is None in
    equal characteristic (where v(p) = v(0) is infinite) and in residue
    characteristic 0.  composition, when present, is the pair (outer,
    core) splitting the valuation into a residue-characteristic-0 head
    and the induced valuation on its residue field.
    """

    name: str
    char: int
    res_char: int
    value_group: OGroup
    vp: object = None
    residue_field: object = None
    oracle_flags: dict = field(default_factory=dict)
    composition: object = None
    note: str = ""

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValidationError("char must be 0 or a prime")
        if self.res_char != 0 and not _is_prime(self.res_char):
            raise ValidationError("res_char must be 0 or a prime")
        if self.char > 0 and self.res_char != self.char:
            raise ValidationError(
                "positive characteristic forces res_char = char")
        if not isinstance(self.residue_field, (ResField, AbstractResidue)):
            raise ValidationError("residue_field must be a ResField or an "
                                  "AbstractResidue")
        if isinstance(self.residue_field, ResField):
            if self.res_char != self.residue_field.char:
                raise ValidationError("residue field characteristic %d does "
                                      "not match res_char %d"
                                      % (self.residue_field.char,
                                         self.res_char))
        flags = dict(self.oracle_flags)
        for k in flags:
            if k not in FLAG_NAMES:
                raise ValidationError("unknown oracle flag %r" % (k,))
            if flags[k] not in (True, False, None):
                raise ValidationError("oracle flag %r must be True, False or "
                                      "None" % (k,))
        for k in FLAG_NAMES:
            flags.setdefault(k, None)
        self.oracle_flags = flags
        if self.char == 0 and self.res_char > 0:
            if self.vp is None:
                raise ValidationError("mixed characteristic needs vp")
            vec = _coerce_vec(self.vp, self.value_group.rank)
            self.vp = vec
            if not contains(self.value_group, vec):
                raise ValidationError("vp must lie in the value group")
            if _lex_sign(vec) <= 0:
                raise ValidationError("vp must be positive")
        elif self.vp is not None:
            raise ValidationError("vp only applies when char = 0 and "
                                  "res_char = p > 0")
        if self.composition is not None:
            self._check_composition()

    def _check_composition(self):
        try:
            outer, core = self.composition
        except (TypeError, ValueError):
            raise ValidationError("composition must be a pair (outer, core)")
        if not isinstance(outer, FieldDescriptor) or \
                not isinstance(core, FieldDescriptor):
            raise ValidationError("composition parts must be descriptors")
        self.composition = (outer, core)
        if outer.res_char != 0:
            raise ValidationError("the outer part of a composition must have "
                                  "residue characteristic 0")
        if self.char != 0 or outer.char != 0 or core.char != 0:
            raise ValidationError("composed descriptors live in "
                                  "characteristic 0")
        if self.res_char != core.res_char:
            raise ValidationError("res_char must match the core's")
        if self.residue_field != core.residue_field:
            raise ValidationError("a composed descriptor has the core's "
                                  "residue field")
        expected = lex_compose(outer.value_group, core.value_group)
        if expected.rank != self.value_group.rank or \
                not same_group(self.value_group, expected):
            raise ValidationError("value group is not the lexicographic "
                                  "composition of the parts")
        if core.res_char > 0:
            head = self.vp[:outer.value_group.rank]
            tail = self.vp[outer.value_group.rank:]
            if any(c != 0 for c in head):
                raise ValidationError("vp must vanish on the outer "
                                      "coordinates")
            if tail != _coerce_vec(core.vp, core.value_group.rank):
                raise ValidationError("vp must restrict to the core's vp")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def enc_vp(vp, rank):
            if vp is None:
                return None
            if rank == 1:
                return [vp[0].numerator, vp[0].denominator]
            return [[c.numerator, c.denominator] for c in vp]

        out = {
            "schema": 1,
            "name": self.name,
            "char": self.char,
            "res_char": self.res_char,
            "value_group": group_to_json(self.value_group),
            "vp": enc_vp(self.vp, self.value_group.rank),
            "residue_field": self.residue_field.to_json(),
            "oracle_flags": dict(self.oracle_flags),
            "note": self.note,
        }
        if self.composition is not None:
            outer, core = self.composition
            out["composition"] = {"outer": outer.to_json(),
                                  "core": core.to_json()}
        return out


def descriptor_from_json(d: dict) -> FieldDescriptor:
    group = group_from_json(d["value_group"])
    vp = d.get("vp")
    if vp is not None:
        if vp and isinstance(vp[0], (list, tuple)):
            vp = tuple(Fraction(int(a), int(b)) for a, b in vp)
        else:
            vp = Fraction(int(vp[0]), int(vp[1]))
    comp = None
    if d.get("composition"):
        comp = (descriptor_from_json(d["composition"]["outer"]),
                descriptor_from_json(d["composition"]["core"]))
    return FieldDescriptor(
        name=d.get("name", "descriptor"),
        char=int(d["char"]),
        res_char=int(d["res_char"]),
        value_group=group,
        vp=vp,
        residue_field=_residue_from_json(d["residue_field"]),
        oracle_flags={k: v for k, v in d.get("oracle_flags", {}).items()},
        composition=comp,
        note=d.get("note", ""),
    )


@dataclass
class ClassReport:
    name: str
    verdicts: dict
    evidence: dict

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "descriptor": self.name,
            "verdicts": {k: self.verdicts[k] for k in VERDICT_KEYS},
            "evidence": {k: self.evidence[k] for k in VERDICT_KEYS},
        }


# ---------------------------------------------------------------------------
# core fields


def core_field(d: FieldDescriptor) -> FieldDescriptor:
    """The residue field of the finest coarsening with res char 0.

    In equal characteristic and residue characteristic 0 the coarsening
    is trivial and the core is the field itself; likewise when vp is
    archimedean-equivalent to the largest values (cut index 0).  For a
    composed descriptor the core part is returned, with henselian and
    defectless flags passed down from the composed field when the core
    leaves them open.
    """
    if d.res_char == 0 or d.char == d.res_char:
        return d
    part = convex_core(d.value_group, d.vp, d.res_char)
    if part.cut_index == 0:
        return d
    if d.composition is None:
        raise ValidationError("descriptor has a proper coarsening but no "
                              "composition data to name its core")
    outer, core = d.composition
    flags = dict(core.oracle_flags)
    passed = [k for k in ("henselian", "defectless")
              if d.oracle_flags[k] is True and flags[k] is None]
    for k in passed:
        flags[k] = True
    out = core
    if passed:
        note = core.note
        extra = "%s passed down from the composed field" % " and ".join(passed)
        out = replace(core, oracle_flags=flags,
                      note=(note + "; " + extra) if note else extra)
    if part.cut_index == outer.value_group.rank:
        return out
    # vp sits deeper than the outer block: the core splits further
    return core_field(out)


# ---------------------------------------------------------------------------
# the class checks


def _vp_not_smallest(g: OGroup, vec, p: int):
    """Decide whether some group element lies strictly between 0 and vp.

    Everything below vp lives in the convex core of vp, so project that
    core onto its own coordinates; a nonzero part below the leading
    coordinate settles it, otherwise compare the leading-coordinate
    image with the cyclic group on vp's leading entry.
    """
    part = convex_core(g, vec, p)
    ell = part.cut_index
    tail = project_trailing(g, ell)
    if tail.rank >= 2:
        deeper = project_trailing(tail, 1)
        if not deeper.is_trivial():
            return True, ("a positive element below the leading coordinate "
                          "of v(p): convex part %s" % _group_text(deeper))
    q = vec[ell]
    gens, closed = [], set()
    for i, gen in enumerate(tail.gens):
        if gen[0] != 0:
            if i in tail.p_closed:
                closed.add(len(gens))
            gens.append((gen[0],))
    head = ogroup(gens, closed=closed,
                  prime=tail.prime if closed else 1, rank=1)
    if same_group(head, cyclic(q)):
        return False, ("the convex core of v(p) maps onto <%s> with v(p) "
                       "minimal positive" % q)
    return True, ("the leading-coordinate image %s of the convex core is "
                  "strictly finer than <%s>" % (_group_text(head), q))


def check(d: FieldDescriptor) -> ClassReport:
    """Evaluate TF1-TF3, RTF1-RTF3, tame, roughly tame, semitame, rdr."""
    v, ev = {}, {}
    p = d.res_char
    flags = d.oracle_flags

    # residue perfectness (TF2 = RTF2)
    if isinstance(d.residue_field, ResField):
        perfect = d.residue_field.is_perfect()
        v["TF2"] = tv(perfect)
        ev["TF2"] = "computed: residue field %s is %s" % (
            _residue_text(d.residue_field),
            "perfect" if perfect else "imperfect")
    else:
        v["TF2"] = tv(d.residue_field.perfect)
        ev["TF2"] = "oracle: abstract residue field declared %s" % (
            "perfect" if d.residue_field.perfect else "imperfect")

    v["TF3"] = tv(flags["defectless"])
    ev["TF3"] = "oracle: defectless flag = %s" % flags["defectless"]

    if p == 0:
        v["TF1"] = TRUE
        ev["TF1"] = ("derived: residue characteristic 0, there is no prime "
                     "to divide by")
        v["RTF1"] = TRUE
        ev["RTF1"] = ev["TF1"]
        v["rdr_1"] = tv(flags["frobenius_surjective_on_completion_mod_p"])
        ev["rdr_1"] = ("oracle: frobenius flag = %s"
                       % flags["frobenius_surjective_on_completion_mod_p"])
        v["rdr_2"] = TRUE
        ev["rdr_2"] = ("derived: vacuous in residue characteristic 0")
        v["semitame"] = TRUE
        v["rdr"] = TRUE
        ev["semitame"] = ev["rdr"] = (
            "derived: every nontrivially valued field of residue "
            "characteristic 0 is semitame and rdr")
    else:
        r = is_p_divisible(d.value_group, p)
        v["TF1"] = tv(r)
        ev["TF1"] = "computed: %s %s %d-divisible" % (
            _group_text(d.value_group), "is" if r else "is not", p)
        if d.char == p:
            rr = is_roughly_p_divisible(d.value_group, None, p)
            v["RTF1"] = tv(rr)
            ev["RTF1"] = ("computed: equal characteristic, the convex core "
                          "is the whole group; %s %s %d-divisible" % (
                              _group_text(d.value_group),
                              "is" if rr else "is not", p))
        else:
            rr = is_roughly_p_divisible(d.value_group, d.vp, p)
            core = convex_core(d.value_group, d.vp, p)
            v["RTF1"] = tv(rr)
            ev["RTF1"] = ("computed: convex core of v(p) (cut %d) %s "
                          "%d-divisible" % (core.cut_index,
                                            "is" if rr else "is not", p))
        v["rdr_1"] = tv(flags["frobenius_surjective_on_completion_mod_p"])
        ev["rdr_1"] = ("oracle: frobenius flag = %s"
                       % flags["frobenius_surjective_on_completion_mod_p"])
        if d.char == p:
            v["rdr_2"] = TRUE
            ev["rdr_2"] = ("derived: v(p) is infinite in equal "
                           "characteristic, so it is not the smallest "
                           "positive element")
        else:
            hit, why = _vp_not_smallest(d.value_group, d.vp, p)
            v["rdr_2"] = tv(hit)
            ev["rdr_2"] = "computed: " + why
        v["semitame"] = and3(v["rdr_1"], v["TF1"])
        ev["semitame"] = "derived: rdr_1=%s and TF1=%s" % (v["rdr_1"],
                                                           v["TF1"])
        v["rdr"] = and3(v["rdr_1"], v["rdr_2"])
        ev["rdr"] = "derived: rdr_1=%s and rdr_2=%s" % (v["rdr_1"],
                                                        v["rdr_2"])

    v["RTF2"] = v["TF2"]
    ev["RTF2"] = ev["TF2"]
    v["RTF3"] = v["TF3"]
    ev["RTF3"] = ev["TF3"]

    hen = flags["henselian"]
    for key, parts in (("tame", ("TF1", "TF2", "TF3")),
                       ("roughly_tame", ("RTF1", "RTF2", "RTF3"))):
        if hen is False:
            v[key] = FALSE
            ev[key] = ("not applicable: %s is defined for henselian fields "
                       "and the henselian flag is false" % key)
        elif hen is None:
            v[key] = UNKNOWN
            ev[key] = "oracle: henselian flag unknown"
        else:
            v[key] = and3(*(v[k] for k in parts))
            ev[key] = "derived: %s under the henselian oracle" % \
                " and ".join("%s=%s" % (k, v[k]) for k in parts)

    return ClassReport(name=d.name, verdicts=v, evidence=ev)


IMPLICATIONS = (
    ("tame implies semitame", ("tame",), "semitame"),
    ("semitame and roughly_tame imply tame", ("semitame", "roughly_tame"),
     "tame"),
    ("roughly_tame implies rdr", ("roughly_tame",), "rdr"),
    ("tame implies roughly_tame", ("tame",), "roughly_tame"),
)


def audit_implications(corpus) -> dict:
    """Check the class implications over a corpus of descriptors.

    Members with an unknown verdict among the audited keys are skipped
    with a notice; the returned report lists violations (expected none)
    and, for equal characteristic, enforces roughly_tame = tame.
    """
    violations, notices, reports = [], [], []
    for d in corpus:
        rep = check(d)
        reports.append(rep)
        v = rep.verdicts
        audited = ("tame", "roughly_tame", "semitame", "rdr")
        if any(v[k] == UNKNOWN for k in audited):
            hazy = [k for k in audited if v[k] == UNKNOWN]
            notices.append("%s: skipped (unknown: %s)"
                           % (d.name, ", ".join(hazy)))
            continue
        for label, premises, conclusion in IMPLICATIONS:
            if all(v[k] == TRUE for k in premises) and \
                    v[conclusion] != TRUE:
                violations.append({"descriptor": d.name,
                                   "implication": label})
        if d.char > 0 and d.char == d.res_char and \
                v["roughly_tame"] != v["tame"]:
            violations.append({"descriptor": d.name,
                               "implication":
                               "equal characteristic: roughly_tame iff tame"})
    return {
        "schema": 1,
        "checked": len(corpus),
        "violations": violations,
        "notices": notices,
        "verdicts": {r.name: dict(r.verdicts) for r in reports},
    }


# ---------------------------------------------------------------------------
# the composed counterexample


def build_counterexample_descriptor(core: FieldDescriptor) -> FieldDescriptor:
    """Compose an x-adic rank-1 head over a tame core.

    Describes the henselization of core(x) under the x-adic valuation
    composed with the core valuation: the value group picks up a
    lexicographic Z in front, the residue field stays the core's.  The
    head is henselian of residue characteristic 0, so henselian and
    defectless transfer from the core, while the leading Z factor
    destroys p-divisibility of the whole group without touching the
    convex core of v(p).
    """
    if core.oracle_flags["tame"] is not True:
        raise ValidationError("core must be flagged tame")
    if core.char != 0:
        raise ValidationError("a positive-characteristic core makes the "
                              "residue-characteristic-0 coarsening trivial; "
                              "the core must have characteristic 0")
    for k in ("henselian", "defectless"):
        if core.oracle_flags[k] is False:
            raise ValidationError("a tame core must be %s" % k)
    outer = FieldDescriptor(
        name=core.name + "-xadic-head",
        char=0,
        res_char=0,
        value_group=cyclic(1),
        vp=None,
        residue_field=AbstractResidue(perfect=True),
        oracle_flags={"henselian": True, "defectless": True,
                      "frobenius_surjective_on_completion_mod_p": True,
                      "independent_defect": True, "tame": True},
        note="x-adic head over the core: henselized rational function "
             "field, residue field is the core field itself",
    )
    group = lex_compose(outer.value_group, core.value_group)
    vp = None
    if core.res_char > 0:
        vp = (Fraction(0),) + _coerce_vec(core.vp, core.value_group.rank)
    frob = core.oracle_flags["frobenius_surjective_on_completion_mod_p"]
    flags = {
        "henselian": True,
        "defectless": True,
        "frobenius_surjective_on_completion_mod_p": frob,
        "independent_defect": True,
        "tame": True if core.res_char == 0 else False,
    }
    return FieldDescriptor(
        name="xadic-over-" + core.name,
        char=0,
        res_char=core.res_char,
        value_group=group,
        vp=vp,
        residue_field=core.residue_field,
        oracle_flags=flags,
        composition=(outer, core),
        note="composition of the x-adic head with the tame core %r: "
             "henselian and defectless pass through the composition, the "
             "p-th power map mod p only sees the core's coefficients"
             % core.name,
    )
