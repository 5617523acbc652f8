"""Quotient-ring arithmetic, angle-sum expansions, and sign automorphisms."""

import random
from fractions import Fraction

import pytest

from flowerlab.mixedring import (
    MixedElement,
    SignVector,
    angle_sum_cos_sin,
    angle_sum_cos_sin_direct,
    apply_sign,
    cos_sin_over_slots,
    mixed_from_obj,
    mixed_to_obj,
    poly_at_mixed,
    sign_vectors,
)
from flowerlab.ratpoly import SparsePoly

F = Fraction


def x(n, i):
    return MixedElement.x_var(n, i)


def y(n, i):
    return MixedElement.y_var(n, i)


def random_mixed(rng, n, terms=4):
    out = MixedElement.zero(n)
    for _ in range(rng.randrange(terms + 1)):
        exps = tuple(rng.randrange(3) for _ in range(n))
        ybits = rng.randrange(1 << n)
        coeff = F(rng.randrange(-5, 6), rng.randrange(1, 4))
        out = out + MixedElement(n, {(exps, ybits): coeff})
    return out


def test_sine_square_reduces():
    one_minus_x2 = MixedElement.one(1) - x(1, 0) * x(1, 0)
    assert y(1, 0) * y(1, 0) == one_minus_x2
    assert y(1, 0) ** 2 == one_minus_x2
    assert y(1, 0) ** 3 == one_minus_x2 * y(1, 0)


def test_multiplicative_identity():
    ec2 = angle_sum_cos_sin(2)[0]
    assert ec2 * MixedElement.one(2) == ec2


def test_conjugate_pair_product_reduces():
    n = 2
    a = x(n, 0) * x(n, 1) - y(n, 0) * y(n, 1)
    b = x(n, 0) * x(n, 1) + y(n, 0) * y(n, 1)
    xx = SparsePoly.variable(n, 0) * SparsePoly.variable(n, 1)
    want = xx * xx - (SparsePoly.one(n) - SparsePoly.variable(n, 0) ** 2) * (
        SparsePoly.one(n) - SparsePoly.variable(n, 1) ** 2
    )
    assert (a * b).to_poly() == want


def test_angle_sum_base_cases():
    ec1, es1 = angle_sum_cos_sin(1)
    assert ec1 == x(1, 0) and es1 == y(1, 0)
    ec2, es2 = angle_sum_cos_sin(2)
    assert ec2 == x(2, 0) * x(2, 1) - y(2, 0) * y(2, 1)
    assert es2 == x(2, 1) * y(2, 0) + x(2, 0) * y(2, 1)
    ec3 = angle_sum_cos_sin(3)[0]
    expect = (
        x(3, 0) * x(3, 1) * x(3, 2)
        - x(3, 0) * y(3, 1) * y(3, 2)
        - y(3, 0) * x(3, 1) * y(3, 2)
        - y(3, 0) * y(3, 1) * x(3, 2)
    )
    assert ec3 == expect


def test_direct_construction_agrees_with_recursive():
    for n in range(1, 7):
        assert angle_sum_cos_sin(n) == angle_sum_cos_sin_direct(n)


def test_pythagorean_identity_in_quotient():
    for n in range(1, 6):
        ec, es = angle_sum_cos_sin(n)
        assert ec * ec + es * es == MixedElement.one(n)


def test_term_parity_of_expansions():
    for n in range(1, 7):
        ec, es = angle_sum_cos_sin(n)
        assert all(bin(ybits).count("1") % 2 == 0 for (_, ybits), _ in ec.items())
        assert all(bin(ybits).count("1") % 2 == 1 for (_, ybits), _ in es.items())


def test_recursion_index_freedom():
    for n in range(2, 5):
        slots = tuple(range(n))
        base = cos_sin_over_slots(n, slots, pick=0)
        for pick in range(1, n):
            assert cos_sin_over_slots(n, slots, pick=pick) == base


def test_generator_flips_adjacent_pair():
    n = 2
    sigma = SignVector.generator(2, 0)
    assert apply_sign(sigma, y(n, 0) * y(n, 1)) == -(y(n, 0) * y(n, 1))
    n = 3
    pure = x(n, 0) * x(n, 1) * x(n, 2)
    for sv in sign_vectors(3):
        assert apply_sign(sv, pure) == pure


def test_sign_action_on_three_angle_expansion():
    # The generator on the (2,3) pair fixes y1*y2 and flips the other two.
    n = 3
    ec3 = angle_sum_cos_sin(3)[0]
    flipped = apply_sign(SignVector.generator(3, 1), ec3)
    expect = (
        x(n, 0) * x(n, 1) * x(n, 2)
        + x(n, 0) * y(n, 1) * y(n, 2)
        + y(n, 0) * x(n, 1) * y(n, 2)
        - y(n, 0) * y(n, 1) * x(n, 2)
    )
    assert flipped == expect


def test_sign_vectors_form_a_group():
    rng = random.Random(7)
    vectors = list(sign_vectors(4))
    assert len(vectors) == 8
    for sv in vectors:
        assert sv.compose(sv).is_identity()
        for other in vectors:
            assert sv.compose(other) == other.compose(sv)
    for _ in range(100):
        a = random_mixed(rng, 4)
        b = random_mixed(rng, 4)
        sv = rng.choice(vectors)
        assert apply_sign(sv, a * b) == apply_sign(sv, a) * apply_sign(sv, b)
        assert apply_sign(sv, apply_sign(sv, a)) == a


def test_sign_vector_validation():
    with pytest.raises(ValueError):
        SignVector(3, (True,))
    with pytest.raises(ValueError):
        apply_sign(SignVector.identity(3), MixedElement.one(4))


def test_to_poly_extraction_and_error():
    n = 1
    elem = MixedElement.one(1) - y(n, 0) * y(n, 0) - x(n, 0) * x(n, 0)
    assert elem.to_poly() == SparsePoly.zero(1)
    with pytest.raises(ValueError, match="residual sine"):
        y(1, 0).to_poly()


def test_closure_product_for_two_angles():
    # prod over the sign group of (cos expansion - 1) collapses to (x1-x2)^2
    ec2 = angle_sum_cos_sin(2)[0]
    prod = MixedElement.one(2)
    for sv in sign_vectors(2):
        prod = prod * (apply_sign(sv, ec2) - 1)
    x1 = SparsePoly.variable(2, 0)
    x2 = SparsePoly.variable(2, 1)
    assert prod.to_poly() == (x1 - x2) * (x1 - x2)


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        MixedElement.one(2) + MixedElement.one(3)
    with pytest.raises(ValueError):
        MixedElement.one(2) * MixedElement.one(3)


def test_poly_at_mixed_substitution():
    # Replacing the last variable of (x2 - x1) by the two-angle cosine
    # expansion and multiplying the conjugates gives the 3-petal polynomial.
    p2 = SparsePoly(2, {(0, 1): 1, (1, 0): -1})
    n = 3
    w = cos_sin_over_slots(n, (1, 2))[0]
    a = poly_at_mixed(p2, [x(n, 0), w])
    b = apply_sign(SignVector.generator(n, 1), a)
    p3 = SparsePoly(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1, (1, 1, 1): -2, (0, 0, 0): -1})
    assert (a * b).to_poly() == p3


def test_json_round_trip():
    rng = random.Random(8)
    for _ in range(50):
        elem = random_mixed(rng, 3)
        assert mixed_from_obj(mixed_to_obj(elem)) == elem
    obj = mixed_to_obj(y(2, 0) * y(2, 1) * 3)
    assert obj["terms"][0]["ys"] == [1, 2]
