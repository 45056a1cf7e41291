import random
from fractions import Fraction

import pytest

from rieszmv import (
    Affine,
    MaxMin,
    RangeViolationError,
    candidate_vertices,
    constant,
    decompose_unit_summands,
    evaluate,
    is_valid,
    maxmin_eval,
    parse,
    projection,
    reassemble,
    semantic_equiv,
    synth_pwl,
    synth_trunc_affine,
    term_pwl,
    trunc,
)

from helpers import clamp, grid_points, rand_affine, rand_formula, rand_maxmin, rand_point

F = Fraction


def test_decompose_examples():
    dec = decompose_unit_summands(Affine(1, (F(3, 2), F(0))))
    assert dec == ((F(3, 4), None), (F(3, 4), None))
    dec = decompose_unit_summands(Affine(1, (F(0), F(-1, 2))))
    assert dec == ((F(-1, 2), 1),)
    dec = decompose_unit_summands(Affine(1, (F(0), F(1))))
    assert dec == ((F(1), 1),)
    assert decompose_unit_summands(Affine(2, (F(0), F(0), F(0)))) == ()


def test_decompose_reassembles_randomly():
    rng = random.Random(107)
    for _ in range(200):
        n = rng.randint(1, 3)
        f = rand_affine(rng, n)
        dec = decompose_unit_summands(f)
        assert all(r != 0 and abs(r) <= 1 for r, _ in dec)
        assert all(y is None or 1 <= y <= n for _, y in dec)
        assert reassemble(dec, n) == f


def test_synth_constant_half():
    phi = synth_trunc_affine(Affine(1, (F(1, 2), F(0))))
    for x in grid_points(1, 8):
        assert evaluate(phi, x) == F(1, 2)


def test_synth_x_minus_one_is_zero():
    phi = synth_trunc_affine(Affine(1, (F(-1), F(1))))
    for x in grid_points(1):
        assert evaluate(phi, x) == 0


def test_synth_one_minus_x_is_negation():
    phi = synth_trunc_affine(Affine(1, (F(1), F(-1))))
    assert semantic_equiv(phi, parse("!v1"))


def test_synth_affine_round_trip_random():
    rng = random.Random(109)
    for _ in range(60):
        n = rng.randint(1, 3)
        f = rand_affine(rng, n)
        phi = synth_trunc_affine(f)
        clamped = trunc(MaxMin(n, ((f,),)))
        for v in candidate_vertices(clamped):
            assert evaluate(phi, v) == maxmin_eval(clamped, v)
        for _ in range(30):
            x = rand_point(rng, n)
            want = clamp(sum(c * xi for c, xi in zip(f.coeffs[1:], x)) + f.coeffs[0])
            assert evaluate(phi, x) == want


def test_synth_pwl_examples():
    hat = MaxMin(1, ((Affine(1, (F(0), F(1))),), (Affine(1, (F(1), F(-1))),)))
    assert semantic_equiv(synth_pwl(hat), parse("v1 \\/ !v1"))
    assert semantic_equiv(synth_pwl(projection(1, 1)), parse("v1"))
    assert is_valid(synth_pwl(constant(1, 1)))


def test_synth_pwl_range_check():
    with pytest.raises(RangeViolationError) as err:
        synth_pwl(constant(1, 2))
    assert err.value.value == 2
    with pytest.raises(RangeViolationError) as err:
        synth_pwl(MaxMin(1, ((Affine(1, (F(-1, 4), F(1, 2))),),)))
    assert maxmin_eval(MaxMin(1, ((Affine(1, (F(-1, 4), F(1, 2))),),)), err.value.point) < 0


def test_synth_pwl_round_trip_random():
    rng = random.Random(113)
    for _ in range(25):
        n = rng.randint(1, 2)
        f = trunc(rand_maxmin(rng, n))
        phi = synth_pwl(f)
        for v in candidate_vertices(f):
            assert evaluate(phi, v) == maxmin_eval(f, v)
        for _ in range(30):
            x = rand_point(rng, n)
            assert evaluate(phi, x) == maxmin_eval(f, x)


def test_free_algebra_round_trip_random():
    # synthesizing the term function of a formula gives back an equivalent one
    rng = random.Random(127)
    for _ in range(15):
        n = rng.randint(1, 2)
        phi = rand_formula(rng, n, 3)
        f = term_pwl(phi, n)
        assert semantic_equiv(synth_pwl(f), phi)
