import itertools
import math
import random

import pytest

from spherical_vassiliev.braidcore import Permutation
from spherical_vassiliev.ncalg.pairs import PairAlgebra, dyadic_valuation, filtration_degree
from spherical_vassiliev.ncalg.poly import NCPoly, Series, gen, generators, substitute_series
from spherical_vassiliev.ncalg.presentations import relator_set


def random_pair(rng, pa):
    G = len(generators(pa.N))

    def poly():
        coeffs = {}
        for _ in range(4):
            d = rng.randint(0, pa.m)
            coeffs[tuple(rng.randrange(G) for _ in range(d))] = rng.randint(-5, 5)
        return pa.alg.reduce(NCPoly(pa.N, pa.m, coeffs))

    return pa.pair(poly(), poly())


def test_pair_mul_examples():
    pa = PairAlgebra(3, 3)
    u = pa.unit_plus_x()
    assert pa.mul(u, u) == pa.one()
    P = pa.alg.reduce(NCPoly.generator(3, 3, 1, 2))
    P2 = pa.alg.reduce(NCPoly.generator(3, 3, 1, 3))
    assert pa.mul(pa.pair(P), pa.pair(P2)) == pa.pair(pa.alg.mul(P, P2))
    w = pa.pair(P, P2)
    assert pa.mul(pa.one(), w) == w


def test_x_squared_is_minus_two_x():
    pa = PairAlgebra(3, 3)
    assert pa.mul(pa.x(), pa.x()) == pa.x().scale(-2)


def test_q_moduli_are_dyadic():
    pa = PairAlgebra(4, 3)
    for d, ms in enumerate(pa.q_moduli):
        assert all(t == (2 ** (3 - d) if d < 3 else 1) for t in ms)


@pytest.mark.parametrize("N,m", [(3, 2), (3, 3), (4, 2)])
def test_pair_mul_associative_and_unital(N, m):
    rng = random.Random(N * 10 + m)
    pa = PairAlgebra(N, m)
    for _ in range(15):
        a, b, c = (random_pair(rng, pa) for _ in range(3))
        assert pa.mul(pa.mul(a, b), c) == pa.mul(a, pa.mul(b, c))
        assert pa.mul(a, pa.one()) == a == pa.mul(pa.one(), a)


@pytest.mark.parametrize("N,m", [(3, 3), (4, 2)])
def test_filtration_is_superadditive(N, m):
    rng = random.Random(7)
    pa = PairAlgebra(N, m)
    for _ in range(20):
        a, b = random_pair(rng, pa), random_pair(rng, pa)
        a, b = a - pa.one().scale(a.P.coords[0][0]), b - pa.one().scale(b.P.coords[0][0])
        assert filtration_degree(pa.mul(a, b)) >= filtration_degree(a) + filtration_degree(b)


def test_filtration_examples():
    pa = PairAlgebra(3, 3)
    x12 = pa.alg.reduce(NCPoly.generator(3, 3, 1, 2))
    assert filtration_degree(pa.pair(x12)) == 1
    assert filtration_degree(pa.pair(pa.alg.zero(), pa.alg.one().scale(2))) == 2
    assert filtration_degree(pa.pair(pa.alg.zero())) == math.inf


def test_dyadic_valuation():
    assert [dyadic_valuation(c) for c in (1, 2, 3, 4, 12, -8)] == [0, 1, 0, 2, 2, 3]


def test_perm_act_examples():
    pa = PairAlgebra(3, 2)  # four strands
    x = lambda i, j: pa.alg.reduce(NCPoly.generator(3, 2, i, j))
    swap12 = Permutation.transposition(4, 1, 2)
    assert pa.perm_act(swap12, x(1, 3)) == x(2, 3)
    u = random_pair(random.Random(1), pa)
    assert pa.perm_act(Permutation.identity(4), u) == u
    swap34 = Permutation.transposition(4, 3, 4)
    assert pa.perm_act(swap34, x(1, 3)) == x(1, 2).scale(-1) - x(1, 3)
    with pytest.raises(ValueError):
        pa.perm_act(Permutation.identity(5), u)


@pytest.mark.parametrize("N", [3, 4])
def test_perm_act_is_an_action(N):
    rng = random.Random(N)
    pa = PairAlgebra(N, 2)
    perms = [Permutation(N + 1, p) for p in itertools.permutations(range(1, N + 2))]
    for _ in range(12):
        p, q = rng.choice(perms), rng.choice(perms)
        u = random_pair(rng, pa)
        # with left-to-right products, acting by q then p is acting by q*p
        assert pa.perm_act(p, pa.perm_act(q, u)) == pa.perm_act(q * p, u)


@pytest.mark.parametrize("N", [3, 4])
def test_perm_act_preserves_relators(N):
    rel = relator_set("pm_reduced", N)
    pa = PairAlgebra(N, 2)
    for images in itertools.permutations(range(1, N + 2)):
        M = pa.perm_matrix(Permutation(N + 1, images))
        for r in rel.relators:
            poly = NCPoly(N, 2, r)
            image = substitute_series(Series.from_poly(poly), M, N)
            assert pa.alg.reduce_series(image).is_zero()
        # z goes to plus or minus z
        zpoly = NCPoly(N, 1, {(gen(N, *g),): 1 for g in generators(N)})
        img = substitute_series(Series.from_poly(zpoly), M, N).to_poly()
        assert img in (zpoly, zpoly.scale(-1))
