"""Generalized Pythagorean triples against the brute-force oracle."""

import pytest

from flowerlab.pythag import (
    brute_force_triples,
    coprime_square_split,
    generate_triples,
    is_squarefree,
)


def test_is_squarefree():
    assert is_squarefree(1)
    assert is_squarefree(6)
    assert not is_squarefree(12)
    assert not is_squarefree(9)
    assert is_squarefree(2 * 3 * 5 * 7)
    with pytest.raises(ValueError):
        is_squarefree(0)


def test_coprime_square_split():
    assert coprime_square_split(4, 9) == (2, 3)
    assert coprime_square_split(1, 25) == (1, 5)
    assert coprime_square_split(49, 64) == (7, 8)
    with pytest.raises(ValueError):
        coprime_square_split(8, 2)  # common factor
    with pytest.raises(ValueError):
        coprime_square_split(2, 3)  # product not a square
    with pytest.raises(ValueError):
        coprime_square_split(0, 4)


def test_classic_triples():
    sols = generate_triples(1, 5)
    assert {s.triple() for s in sols} == {(3, 4, 5), (4, 3, 5)}
    assert brute_force_triples(1, 5) == {(3, 4, 5), (4, 3, 5)}
    assert brute_force_triples(1, 4) == set()
    assert generate_triples(1, 4) == []


def test_small_beta_examples():
    three = {s.triple() for s in generate_triples(3, 2)}
    assert (1, 1, 2) in three
    assert brute_force_triples(7, 4) == {(3, 1, 4)}
    assert {s.triple() for s in generate_triples(7, 4)} == {(3, 1, 4)}


def test_even_beta_same_parity_witness():
    # (1, 2, 3) for beta = 2 only arises from the unhalved formula with
    # m = n = 1; the halved form is non-integral there and is skipped.
    sols = generate_triples(2, 3)
    assert [s.triple() for s in sols] == [(1, 2, 3)]
    witnesses = sols[0].witnesses
    assert witnesses and all(not w.halved for w in witnesses)
    assert {(w.b, w.c) for w in witnesses} == {(1, 2), (2, 1)}


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        generate_triples(12, 10)
    with pytest.raises(ValueError):
        generate_triples(3, 0)
    with pytest.raises(ValueError):
        brute_force_triples(3, 0)


@pytest.mark.parametrize("beta", [1, 2, 3, 5, 6, 7, 10, 11, 13])
def test_generator_matches_oracle(beta):
    sols = generate_triples(beta, 300)
    assert {s.triple() for s in sols} == brute_force_triples(beta, 300)
    for s in sols:
        assert s.verifies()


def test_witness_parity_discipline():
    for beta in (1, 2, 3, 6, 10):
        for s in generate_triples(beta, 200):
            for w in s.witnesses:
                lhs = w.b * w.m * w.m + w.c * w.n * w.n
                if w.halved:
                    assert (w.m - w.n) % 2 == 0
                    assert lhs % 2 == 0
                elif (w.m - w.n) % 2 == 0:
                    # same parity forced into the unhalved branch only when
                    # the halved form is non-integral
                    assert lhs % 2 == 1


def test_solutions_are_sorted_and_merged():
    sols = generate_triples(1, 100)
    keys = [(s.z, s.x, s.y) for s in sols]
    assert keys == sorted(keys)
    assert len({s.triple() for s in sols}) == len(sols)
