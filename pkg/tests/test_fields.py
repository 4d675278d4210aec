import itertools
import random

import pytest
from sympy import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from neglab.errors import ParameterError
from neglab.fields import (
    GF,
    is_prime,
    least_prime_congruent_one,
    parse_field,
    prime_power,
    primitive_root,
)

PRIME_POWERS = [q for q in range(2, 65) if any(
    q == p ** e for p in range(2, 65) if is_prime(p) for e in range(1, 7))]


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(64) == (2, 6)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ParameterError):
            prime_power(bad)


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_field_axioms(q):
    F = GF(*prime_power(q))
    els = list(F.elements())
    assert len(els) == q
    rng = random.Random(q)
    triples = (itertools.product(els, repeat=3) if q <= 9
               else ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(3000)))
    for a, b, c in triples:
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(a, a) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
    g = F.primitive_element()
    assert len({F.pow(g, i) for i in range(q - 1)}) == q - 1


def test_root_of_unity():
    F = GF(7)
    w = F.root_of_unity(3)
    assert F.pow(w, 3) == 1 and w != 1
    with pytest.raises(ParameterError):
        GF(5).root_of_unity(3)


def test_prime_subfield_embedding():
    F = GF(3, 2)
    assert F(4) == 1 and F(-1) == 2


def test_primitive_root_and_primes():
    assert primitive_root(7) == 3
    assert least_prime_congruent_one(3) == 7
    assert least_prime_congruent_one(9) == 19
    assert least_prime_congruent_one(6) == 7


def test_parse_field():
    assert parse_field("2^3") == GF(2, 3)
    assert parse_field("9") == GF(3, 2)
    with pytest.raises(ParameterError):
        parse_field("6")


@pytest.mark.parametrize("p", [2, 3, 5, 7, 19])
def test_rank_mod_p_against_sympy(p):
    rng = random.Random(p)
    F = GF(p)
    for _ in range(40):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randrange(p) if rng.random() < 0.6 else 0 for _ in range(m)]
                for _ in range(n)]
        dm = DomainMatrix([[SymGF(p)(x) for x in row] for row in rows], (n, m), SymGF(p))
        assert F.rank(rows) == dm.rank()


def test_extension_rank_consistency():
    # a matrix over the prime field has the same rank over an extension
    rng = random.Random(3)
    for p, e in [(2, 2), (3, 2), (2, 3)]:
        small, big = GF(p), GF(p, e)
        for _ in range(30):
            rows = [[rng.randrange(p) for _ in range(5)] for _ in range(rng.randint(1, 6))]
            assert small.rank(rows) == big.rank(rows)
