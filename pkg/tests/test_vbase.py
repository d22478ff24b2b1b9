import random
from fractions import Fraction as F

import pytest

from vallab.errors import PrecisionError, ValidationError
from vallab.ogroup import ogroup
from vallab.resfield import ResField
from vallab.values import INFINITE, Indeterminate
from vallab.vbase import (EqBase, PadicBase, Precision, cached_zeta_lambda,
                          padic_from_text, series_from_text, zeta_lambda)


def laurent(p, closed=False, level=0):
    res = ResField(p) if level is None else ResField(p, "ratfun").at_level(level) \
        if level else ResField(p, "ratfun")
    grp = ogroup([F(1)], closed={0}, prime=p) if closed else ogroup([F(1)])
    return EqBase(p, res, grp)


def plain_laurent(p, closed=False):
    grp = ogroup([F(1)], closed={0}, prime=p) if closed else ogroup([F(1)])
    return EqBase(p, ResField(p), grp)


# -- series ------------------------------------------------------------------


def test_series_val_and_zero():
    b = plain_laurent(3)
    t = b.monomial(1)
    assert t.val() == 1
    assert (t - t).is_zero()
    assert (t - t).val() == INFINITE
    x = b.zero(prec=F(4))
    v = x.val()
    assert isinstance(v, Indeterminate) and v.bound == 4


def test_series_monomial_group_check():
    b = plain_laurent(3)
    with pytest.raises(ValidationError):
        b.monomial(F(1, 3))
    bc = plain_laurent(3, closed=True)
    assert bc.monomial(F(1, 9)).val() == F(1, 9)


def test_series_residue_frozen():
    # residue of u*t^0 + t^{1/3} is u
    b = EqBase(3, ResField(3, "ratfun"), ogroup([F(1)], closed={0}, prime=3))
    x = b.series({0: b.res.gen(), F(1, 3): 1})
    assert x.residue() == b.res.gen()
    with pytest.raises(ValidationError):
        b.monomial(1).residue()


def test_series_pth_root_frozen():
    # (u^3 t^3)^{1/3} = u t over F_3(u)
    b = laurent(3)
    x = b.monomial(3, b.res.elem({3: 1}))
    r = x.pth_root()
    assert r == b.monomial(1, b.res.gen())
    # coefficient climbs a perfection level when needed
    r2 = b.monomial(1, b.res.gen()).pth_root()
    assert r2.val() == F(1, 3)
    c = r2.terms[F(1, 3)]
    assert c.field.level == 1 and c.to_text() == "u^(1/3)"


def test_series_root_twice_value():
    # two successive p-th roots of t^{-1} sit at value -1/9
    b = plain_laurent(3, closed=True)
    a0 = b.monomial(-1)
    a2 = a0.pth_root().pth_root()
    assert a2.val() == F(-1, 9)
    assert (a2 ** 9) == a0


def test_series_mul_precision():
    b = plain_laurent(5)
    x = b.series({0: 1}, prec=F(2))
    y = b.monomial(5)
    z = x * y
    assert z.val() == 5
    assert z.prec == 7
    assert (x * b.zero()).is_zero()


def test_series_division_exact():
    b = plain_laurent(3)
    t = b.monomial(1)
    q = (t ** 2 + t ** 3) / (t ** 2)
    assert q == b.one() + t
    assert q.prec == INFINITE


def test_series_division_truncated():
    b = plain_laurent(3)
    t = b.monomial(1)
    x = b.series({0: 1}, prec=F(6))
    q = x / (b.one() + t)
    # alternating geometric series mod t^6
    want = b.series({k: (-1) ** k for k in range(6)}, prec=F(6))
    assert (q - want).val().bound >= 6
    r = q * (b.one() + t) - x
    assert isinstance(r.val(), Indeterminate)


def test_series_division_needs_cap():
    b = plain_laurent(3)
    t = b.monomial(1)
    with pytest.raises(PrecisionError):
        b.one() / (b.one() + t)


def test_series_ring_axioms_sampled():
    rng = random.Random(3)
    b = plain_laurent(3)
    elems = []
    for _ in range(8):
        terms = {rng.randrange(-3, 4): rng.randrange(3) for _ in range(3)}
        elems.append(b.series(terms))
    for _ in range(30):
        x, y, z = rng.choice(elems), rng.choice(elems), rng.choice(elems)
        assert (x + y) * z == x * z + y * z
        assert x * y == y * x
        vx, vy = x.val(), (x * y).val()
        if vx != INFINITE and y.val() != INFINITE:
            assert vy == vx + y.val()


def test_series_text_roundtrip():
    b = laurent(3, closed=True)
    x = b.series({-1: 2, 0: b.res.gen(), F(1, 3): b.res.elem({1: 1, 0: 1})},
                 prec=F(5, 3))
    assert series_from_text(b, x.to_text()) == x
    assert "O(t^(5/3))" in x.to_text()
    y = b.monomial(-1)
    assert series_from_text(b, y.to_text()) == y


# -- p-adic digits -------------------------------------------------------------


def q3():
    return PadicBase(3, 2, twist=-1)  # w^2 = -3


def test_padic_val_frozen():
    b = q3()
    assert b.from_int(10).val() == 0
    assert b.from_int(9).val() == 2
    assert b.from_int(-3).val() == 1
    assert b.monomial(F(1, 2)).val() == F(1, 2)
    with pytest.raises(ValidationError):
        b.monomial(F(1, 3))


def test_padic_alternate_representations():
    b = q3()
    # -1 = 2 + w^2 since w^2 = -3
    assert b.from_digits({0: -1}) == b.from_digits({0: 2, 2: 1})
    assert (b.from_int(7) - b.from_int(7)).is_zero()


def test_padic_residue():
    b = q3()
    assert b.from_int(5).residue() == ResField(3).elem(2)
    with pytest.raises(ValidationError):
        b.from_int(3).residue()
    g = PadicBase(3, 2, twist=-1, gauss=True)
    x = g.u_elem() + g.from_int(3)
    assert x.residue() == g.residue_field.gen()


def test_padic_mul_val_additive():
    rng = random.Random(9)
    b = q3()
    for _ in range(40):
        x = b.from_digits({rng.randrange(-2, 3): rng.randrange(1, 9)
                           for _ in range(2)})
        y = b.from_digits({rng.randrange(-2, 3): rng.randrange(1, 9)
                           for _ in range(2)})
        if x.is_zero() or y.is_zero():
            continue
        assert (x * y).val() == x.val() + y.val()
        assert (x + y) * y == x * y + y * y


def test_padic_monomial_division_exact():
    g = PadicBase(3, 2, twist=-1, gauss=True)
    x = g.u_elem() * g.monomial(F(-3, 2))
    q = x / g.monomial(F(-3, 2))
    assert q == g.u_elem()
    assert q.prec == INFINITE


def test_padic_unit_division_truncated():
    b = q3()
    x = b.from_digits({0: 1}, prec=8)
    y = b.from_int(4)  # 1 + 3
    q = x / y
    chk = q * y - x
    v = chk.val()
    assert isinstance(v, Indeterminate) and v.bound >= 3


def test_padic_division_needs_cap():
    b = q3()
    with pytest.raises(PrecisionError):
        b.one() / b.from_int(4)


def test_padic_nonmonomial_digit_division_rejected():
    g = PadicBase(3, 2, twist=-1, gauss=True)
    y = g.u_elem() + g.one()
    with pytest.raises(ValidationError):
        g.one() / y


def test_padic_text_roundtrip():
    b = q3()
    x = b.from_digits({-1: 2, 0: 1, 3: 2}, prec=6)
    assert padic_from_text(b, x.to_text()) == x
    g = PadicBase(3, 2, twist=-1, gauss=True)
    y = g.from_digits({-2: {1: 1}, 0: {0: 2, -1: 1}}, prec=4)
    assert padic_from_text(g, y.to_text()) == y


# -- cyclotomic uniformizer ------------------------------------------------------


def test_lambda_p2_exact():
    b = PadicBase(2, 1, twist=1)
    lam = zeta_lambda(b, 8)
    assert lam == b.from_int(-2)
    # Phi_2(1+X) = 2 + X vanishes exactly
    assert (lam + b.from_int(2)).is_zero()


def val_at_least(v, bound):
    if v == INFINITE:
        return True
    if isinstance(v, Indeterminate):
        return v.bound >= bound
    return v >= bound


def test_lambda_p3_frozen_product():
    b = q3()
    lam = cached_zeta_lambda(b, 10)
    assert lam.val() == F(1, 2)
    # Phi_3(1 + lam) = 0 to working precision
    phi = lam * lam + lam * 3 + 3
    assert val_at_least(phi.val(), 4)
    # (zeta - 1)(zeta^2 - 1) = Phi_3(1) = 3, with value exactly 1
    zeta = lam + 1
    prod = lam * (zeta * zeta - 1)
    assert prod.val() == 1
    d = prod - 3
    assert val_at_least(d.val(), 4)


def test_lambda_p5():
    b = PadicBase(5, 4, twist=-1)
    lam = zeta_lambda(b, 12)
    assert lam.val() == F(1, 4)
    phi = b.zero(12)
    x = b.one()
    for c in (5, 10, 10, 5, 1):
        phi = phi + x * c
        x = x * lam
    assert val_at_least(phi.val(), 2)


def test_lambda_requires_compatible_ring():
    with pytest.raises(ValidationError):
        zeta_lambda(PadicBase(3, 3, twist=-1), 6)


def test_precision_holder():
    Precision(series_cap=F(5), padic_cap=12)
    Precision()
    with pytest.raises(ValidationError):
        Precision(series_cap=0)
