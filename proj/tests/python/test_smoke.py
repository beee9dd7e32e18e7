import math

import mpmath
import pytest

import ballquad as bq

mpmath.mp.prec = 300


def contains_mp(ball, value):
    return ball.contains(mpmath.nstr(value, 120, strip_zeros=False))


def test_real_ball_roundtrip():
    x = bq.RealBall("[0.5 +/- 1e-10]")
    assert abs(x.mid - 0.5) < 1e-15
    assert x.rad >= 1e-10
    y = bq.RealBall(str(x), prec=128)
    assert y.contains(x)
    assert str(bq.RealBall(3)) == "3"


def test_complex_arithmetic_encloses_mpmath():
    z = bq.ComplexBox("0.3", "-1.25", prec=128)
    w = bq.exp(z.mul(z, prec=128), prec=128)
    ref = mpmath.exp(mpmath.mpc("0.3", "-1.25") ** 2)
    assert contains_mp(w.re, ref.real)
    assert contains_mp(w.im, ref.imag)
    s = bq.sqrt(bq.ComplexBox(-1, 0.5), prec=64)
    ref = mpmath.sqrt(mpmath.mpc(-1, 0.5))
    assert contains_mp(s.re, ref.real) and contains_mp(s.im, ref.imag)


def test_piecewise_flags():
    box = bq.ComplexBox("[0 +/- 1]")
    assert not bq.abs_ext(box, True).is_finite()
    wide = bq.abs_ext(box, False)
    assert wide.is_finite() and wide.contains(1)
    assert str(bq.floor_ext(bq.ComplexBox("[2.5 +/- 0.4]"), True).re) == "2"


def test_integrate_python_callable():
    r = bq.integrate(lambda z, d, p: bq.exp(z, p), 0, 1, prec=128)
    assert r.converged
    assert contains_mp(r.value.re, mpmath.e - 1)
    assert r.value.rad < 2.0**-110

    inv = lambda z, d, p: bq.ComplexBox(1).div(bq.ComplexBox(1).add(z.mul(z, p), p), p)
    r = bq.integrate(inv, 0, 1, prec=64)
    assert contains_mp(r.value.re, mpmath.pi / 4)
    assert r.subs <= 8


def test_integrate_piecewise_and_limits():
    r = bq.integrate(lambda z, d, p: bq.ceil_ext(z, d), 0, 100, prec=64)
    assert r.value.contains(5050)
    r = bq.integrate(lambda z, d, p: bq.abs_ext(z, d), -1, 2, prec=64, eval_limit=50)
    assert not r.converged
    assert r.value.is_finite() and r.value.contains(2.5)


def test_tolerance_forms():
    f = lambda z, d, p: bq.sin(z, p)
    for tol in (1e-5, "2^-20", bq.RealBall("1e-6")):
        r = bq.integrate(f, 0, 3, prec=64, abs_tol=tol, rel_tol=tol)
        assert contains_mp(r.value.re, 1 - mpmath.cos(3))


def test_integrand_errors_propagate():
    def bad(z, d, p):
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        bq.integrate(bad, 0, 1)
    with pytest.raises(ValueError):
        bq.integrate(lambda z, d, p: z, 0, "nan")


def test_bench():
    ids = [c[0] for c in bq.bench_cases()]
    assert ids[0] == "I0" and len(ids) == 16
    row = bq.bench_run("I0", 64)
    assert row["verified"] and row["converged"]
    assert math.isclose(float(row["value"].re), math.pi / 4, rel_tol=1e-15)
    with pytest.raises(ValueError):
        bq.bench_run("nope")
