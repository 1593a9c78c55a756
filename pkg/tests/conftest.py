"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's elimination and Smith
routines: ranks and determinants come from minor expansion, harmonic
chains from exhaustive vector enumeration, so the tests check the code
against arithmetic it does not share.
"""

import itertools
from fractions import Fraction

import pytest

from harmonica import (ChainComplex, ExactMatrix, FieldSpec, ZZ,
                       load_fixture)
from harmonica.matrix import IntegerRing

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime_field(2)
F3 = FieldSpec.prime_field(3)
F5 = FieldSpec.prime_field(5)
F7 = FieldSpec.prime_field(7)


@pytest.fixture(scope="session")
def pinched():
    return load_fixture("pinched-cylinder")


@pytest.fixture(scope="session")
def subdivided():
    return load_fixture("subdivided-cylinder")


@pytest.fixture(scope="session")
def torus7():
    return load_fixture("torus7")


@pytest.fixture(scope="session")
def tetra():
    return load_fixture("tetrahedron-boundary")


@pytest.fixture(scope="session")
def rp2():
    return load_fixture("rp2-6vertex")


def circle3() -> ChainComplex:
    from harmonica import SimplicialComplex
    return SimplicialComplex.from_facets(
        [[0, 1], [1, 2], [0, 2]]).to_chain_complex()


def disk() -> ChainComplex:
    from harmonica import SimplicialComplex
    return SimplicialComplex.from_facets([[0, 1, 2]]).to_chain_complex()


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def all_vectors(p: int, n: int):
    """Every vector of F_p^n."""
    return itertools.product(range(p), repeat=n)


def all_matrices(field: FieldSpec, m: int, n: int):
    """Every m x n matrix over a prime field."""
    p = field.characteristic
    for flat in itertools.product(range(p), repeat=m * n):
        yield ExactMatrix(field, [list(flat[i * n:(i + 1) * n])
                                  for i in range(m)], cols=n)


def laplace_det(rows):
    """Determinant by first-row minor expansion (exact, any ring)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, v in enumerate(rows[0]):
        if v == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = v * laplace_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minor_rank(rows, ncols):
    """Rank as the largest size of a nonsingular square submatrix,
    by exhaustive minor expansion (tiny matrices only)."""
    m = len(rows)
    for size in range(min(m, ncols), 0, -1):
        for ri in itertools.combinations(range(m), size):
            for ci in itertools.combinations(range(ncols), size):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if laplace_det(sub) != 0:
                    return size
    return 0


def brute_harmonic_vectors(fc, k):
    """All chains that are simultaneously cycles and cocycles, by
    exhaustive enumeration (prime fields, small complexes)."""
    p = fc.field.characteristic
    n = fc.num_cells(k)
    down = fc.boundary(k)
    up_t = fc.boundary(k + 1).transpose()
    out = []
    for v in all_vectors(p, n):
        v = list(v)
        if all(x % p == 0 for x in down.apply(v)) and \
           all(x % p == 0 for x in up_t.apply(v)):
            out.append(tuple(v))
    return out


def brute_class_representatives(fc, k, z):
    """All cycles homologous to z, by enumerating the boundary space."""
    p = fc.field.characteristic
    up = fc.boundary(k + 1)
    reps = set()
    for w in all_vectors(p, fc.num_cells(k + 1)):
        shift = up.apply(list(w))
        reps.add(tuple((a + b) % p for a, b in zip(z, shift)))
    return reps


def chain_is_cycle(fc, chain):
    zero = fc.field.zero()
    return all(v == zero for v in
               fc.boundary(chain.degree).apply(list(chain.coefficients)))


def chain_is_cocycle(fc, chain):
    zero = fc.field.zero()
    return all(v == zero for v in
               fc.coboundary(chain.degree + 1).apply(
                   list(chain.coefficients)))


def chains_homologous(fc, a, b):
    diff = a - b
    return fc.boundaries_space(a.degree).solve(
        list(diff.coefficients)) is not None


def random_int_matrix(rng, m, n, lo=-5, hi=5) -> ExactMatrix:
    return ExactMatrix(ZZ, [[rng.randint(lo, hi) for _ in range(n)]
                            for _ in range(m)], cols=n)


def vr_corpus(count=100):
    """Seeded random Vietoris-Rips complexes, at most 12 points, at most
    dimension 2, sizes spread from sparse to nearly complete."""
    from harmonica import vietoris_rips
    from harmonica.datasets import random_cloud

    out = []
    for seed in range(count):
        n = 5 + seed % 8
        radius = Fraction(25 + (seed * 7) % 41, 100)  # 0.25 .. 0.65
        dim = 3 if seed % 5 == 0 else 2
        cloud = random_cloud(n, dim=dim, seed=seed)
        out.append(vietoris_rips(cloud, radius, 2).to_chain_complex())
    return out
