"""Spanning trees and cotrees, their weights, and the invariant that
controls harmonicity over prime fields.

A degree-k spanning cotree is determined by its complement: a set of
k-cells indexing a row basis of d_(k+1).  Its weight is the order of the
finite relative homology group, computable as the product of the nonzero
Smith diagonal of the row-restricted boundary matrix.  The number

    upsilon = (sum of squared weights) * (product of weights)

over all cotrees bounds the denominators of the rational cocycle
projection; primes avoiding it (and the torsion of H_k) are guaranteed
harmonic.  Enumeration walks size-r row subsets in lexicographic order
and rank-tests each; a numba kernel accelerates the rank tests modulo a
31-bit prime whenever a Hadamard bound certifies that modular rank equals
rational rank.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .complexes import Chain, ChainComplex, FieldComplex
from .errors import (CapExceeded, DenominatorDivisibleByP,
                     InternalEquivalenceViolation, NonIntegerDivision,
                     NotARowBasis, NotAColumnBasis, NotASurface,
                     TorsionObstruction)
from .fields import FieldSpec, primes_up_to
from .harmonic import quotient_projection
from .matrix import (ZZ, ExactMatrix, cokernel_order, hadamard_bound,
                     smith_normal_form)

DEFAULT_CAP = 10 ** 6
_MOD_PRIME = 2 ** 31 - 1


def default_cap() -> int:
    env = os.environ.get("HARMONICA_CAP")
    return int(env) if env else DEFAULT_CAP


# ---------------------------------------------------------------------------
# row-basis enumeration
# ---------------------------------------------------------------------------

_kernel_cache = {}


def _numba_basis_kernel():
    """Compile (once) the subset rank-test kernel."""
    if "fn" in _kernel_cache:
        return _kernel_cache["fn"]
    try:
        import numba
        import numpy as np
    except ImportError:
        _kernel_cache["fn"] = None
        return None

    @numba.njit(cache=False)
    def enumerate_bases(mat, r, q, out):
        m, n = mat.shape
        if r == 0:
            out[0] = 0
            return 1
        idx = np.empty(r, dtype=np.int64)
        for i in range(r):
            idx[i] = i
        work = np.empty((r, n), dtype=np.int64)
        count = 0
        while True:
            for i in range(r):
                src = idx[i]
                for j in range(n):
                    work[i, j] = mat[src, j] % q
            rank = 0
            for c in range(n):
                piv = -1
                for i in range(rank, r):
                    if work[i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for j in range(n):
                        tmp = work[rank, j]
                        work[rank, j] = work[piv, j]
                        work[piv, j] = tmp
                # normalize pivot row by the modular inverse
                pv = work[rank, c]
                e = q - 2
                inv = 1
                base = pv
                while e > 0:
                    if e & 1:
                        inv = inv * base % q
                    base = base * base % q
                    e >>= 1
                if inv != 1:
                    for j in range(c, n):
                        work[rank, j] = work[rank, j] * inv % q
                for i in range(rank + 1, r):
                    f = work[i, c]
                    if f != 0:
                        for j in range(c, n):
                            work[i, j] = (work[i, j]
                                          - f * work[rank, j]) % q
                rank += 1
                if rank == r:
                    break
            if rank == r:
                mask = 0
                for i in range(r):
                    mask |= 1 << idx[i]
                out[count] = mask
                count += 1
            # advance the lexicographic odometer
            i = r - 1
            while i >= 0 and idx[i] == m - r + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, r):
                idx[j] = idx[j - 1] + 1
        return count

    _kernel_cache["fn"] = enumerate_bases
    return enumerate_bases


def _row_bases(matrix: ExactMatrix, cap: int):
    """All size-r row subsets of an integer matrix that are row bases,
    in lexicographic order.  r is the rational rank."""
    m = matrix.rows
    r = matrix.rank()
    candidates = comb(m, r)
    if candidates > cap:
        raise CapExceeded(candidates, cap)
    rows = matrix.row_lists()
    kernel = _numba_basis_kernel()
    if (kernel is not None and 0 < m <= 63
            and hadamard_bound(rows) < _MOD_PRIME):
        import numpy as np
        mat = np.array(rows, dtype=np.int64)
        out = np.zeros(candidates, dtype=np.int64)
        count = kernel(mat, r, _MOD_PRIME, out)
        bases = []
        for t in range(count):
            mask = int(out[t])
            bases.append(tuple(i for i in range(m) if mask >> i & 1))
        return bases
    bases = []
    for subset in combinations(range(m), r):
        if matrix.submatrix(row_indices=subset).rank() == r:
            bases.append(subset)
    return bases


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CotreeRecord:
    complement_rows: tuple
    weight: int


@dataclass(frozen=True)
class TreeRecord:
    columns: tuple
    weight: int


@dataclass(frozen=True)
class CotreeCensus:
    """Every degree-k spanning cotree (by complement row set) and every
    degree-(k+1) spanning tree (by column set) of d_(k+1), with weights,
    the upsilon invariant, and the ambient torsion weight."""

    degree: int
    cotrees: tuple
    trees: tuple
    upsilon: int
    theta_x: int

    def cotree_weights(self) -> list[int]:
        return [c.weight for c in self.cotrees]

    def tree_weights(self) -> list[int]:
        return [t.weight for t in self.trees]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cotrees": [{"complement_rows": list(c.complement_rows),
                         "weight": c.weight} for c in self.cotrees],
            "trees": [{"columns": list(t.columns), "weight": t.weight}
                      for t in self.trees],
            "upsilon": self.upsilon,
            "theta_x": self.theta_x,
        }


def cotree_weight(X: ChainComplex, k: int, complement_rows) -> int:
    """|H_k(X, L)| where L omits exactly the given k-cells: the product
    of the nonzero Smith diagonal of d_(k+1) restricted to those rows."""
    X.check_degree(k)
    d_up = X.boundary(k + 1)
    subset = tuple(sorted(complement_rows))
    if len(subset) != d_up.rank():
        raise NotARowBasis(f"{subset} has size {len(subset)}, "
                           f"rank is {d_up.rank()}")
    sub = d_up.submatrix(row_indices=subset)
    order = cokernel_order(sub)
    if order is None:
        raise NotARowBasis(f"rows {subset} are dependent")
    return order


def tree_weight(X: ChainComplex, d: int, columns) -> int:
    """Torsion weight of a degree-d spanning tree: the product of the
    nonzero Smith diagonal of d_d restricted to those columns."""
    bd = X.boundary(d)
    subset = tuple(sorted(columns))
    if len(subset) != bd.rank():
        raise NotAColumnBasis(f"{subset} has size {len(subset)}, "
                              f"rank is {bd.rank()}")
    sub = bd.submatrix(col_indices=subset)
    order = cokernel_order(sub.transpose())
    if order is None:
        raise NotAColumnBasis(f"columns {subset} are dependent")
    return order


def enumerate_cotrees(X: ChainComplex, k: int, cap=None) -> tuple:
    """All degree-k spanning cotrees as CotreeRecords, in lexicographic
    order of their complement row sets."""
    X.check_degree(k)
    cap = default_cap() if cap is None else cap
    d_up = X.boundary(k + 1)
    records = []
    for subset in _row_bases(d_up, cap):
        order = cokernel_order(d_up.submatrix(row_indices=subset))
        if order is None:
            raise InternalEquivalenceViolation(
                "certified row basis has deficient rank")
        records.append(CotreeRecord(tuple(subset), order))
    return tuple(records)


def enumerate_trees(X: ChainComplex, d: int, cap=None) -> tuple:
    """All degree-d spanning trees (column bases of d_d) with weights,
    mirroring the cotree enumeration with rows and columns exchanged."""
    cap = default_cap() if cap is None else cap
    bd = X.boundary(d)
    records = []
    for subset in _row_bases(bd.transpose(), cap):
        order = cokernel_order(
            bd.submatrix(col_indices=subset).transpose())
        if order is None:
            raise InternalEquivalenceViolation(
                "certified column basis has deficient rank")
        records.append(TreeRecord(tuple(subset), order))
    return tuple(records)


def cotree_census(X: ChainComplex, k: int, cap=None) -> CotreeCensus:
    cotrees = enumerate_cotrees(X, k, cap)
    trees = enumerate_trees(X, k + 1, cap)
    sum_sq = sum(c.weight ** 2 for c in cotrees)
    prod = 1
    for c in cotrees:
        prod *= c.weight
    return CotreeCensus(degree=k, cotrees=cotrees, trees=trees,
                        upsilon=sum_sq * prod,
                        theta_x=X.torsion_order(k))


def upsilon(X: ChainComplex, k: int, cap=None) -> int:
    """(sum of squared cotree weights) * (product of cotree weights)."""
    cotrees = enumerate_cotrees(X, k, cap)
    sum_sq = sum(c.weight ** 2 for c in cotrees)
    prod = 1
    for c in cotrees:
        prod *= c.weight
    return sum_sq * prod


# ---------------------------------------------------------------------------
# restricted Laplacian and the surface formula
# ---------------------------------------------------------------------------

def boundary_lattice_basis(X: ChainComplex, k: int) -> ExactMatrix:
    """Columns form an integer lattice basis of B_k(X; Z), derived from
    the Smith decomposition of d_(k+1): the image lattice is spanned by
    d_i * (S^-1 e_i) over the nonzero diagonal entries d_i."""
    d_up = X.boundary(k + 1)
    snf = smith_normal_form(d_up)
    diag = snf.nonzero_diagonal()
    s_inv = snf.S.to_rationals().inverse()
    cols = []
    for i, d in enumerate(diag):
        col = [v * d for v in s_inv.column_values(i)]
        if any(v.denominator != 1 for v in col):
            raise InternalEquivalenceViolation("unimodular inverse not "
                                               "integral")
        cols.append([v.numerator for v in col])
    return ExactMatrix.from_columns(ZZ, cols, rows=d_up.rows)


def restricted_laplacian_det(X: ChainComplex, k: int) -> int:
    """Determinant of the degree-k Laplacian restricted to the integer
    boundary lattice (1 when there are no boundaries: empty product)."""
    X.check_degree(k)
    U = boundary_lattice_basis(X, k)
    if U.cols == 0:
        return 1
    fc = X.instantiate(FieldSpec.rationals())
    lap = fc.boundary(k + 1) @ fc.coboundary(k + 1) \
        + fc.coboundary(k) @ fc.boundary(k)
    Uq = U.to_rationals()
    M = Uq.solve_matrix(lap @ Uq)
    if M is None:
        raise InternalEquivalenceViolation(
            "Laplacian does not preserve the boundary lattice")
    det = M.det()
    if det.denominator != 1 or det < 0:
        raise InternalEquivalenceViolation(
            f"restricted Laplacian determinant {det} not a nonnegative "
            "integer")
    return det.numerator


def check_surface(X: ChainComplex) -> str | None:
    """Name the first violated closed-orientable-surface condition, or
    None when X passes: dimension 2, every edge on exactly two 2-cell
    boundary traversals (with multiplicity), connected, H_2 = Z."""
    if X.top_degree != 2:
        return "top degree is not 2"
    d2 = X.boundary(2)
    for i in range(d2.rows):
        mult = sum(abs(v) for v in d2.row(i))
        if mult != 2:
            return (f"edge {i} appears {mult} times in 2-cell boundaries")
    n0 = X.num_cells(0)
    if n0 == 0 or X.boundary(1).rank() != n0 - 1:
        return "not connected"
    if d2.cols - d2.rank() != 1:
        return "H_2 is not Z (not a closed orientable surface)"
    return None


def surface_upsilon(X: ChainComplex) -> int:
    """The cotree count of a closed orientable surface, computed without
    enumeration as det of the restricted Laplacian divided by the number
    of 2-cells."""
    violation = check_surface(X)
    if violation is not None:
        raise NotASurface(violation)
    det = restricted_laplacian_det(X, 1)
    n2 = X.num_cells(2)
    if det % n2:
        raise NonIntegerDivision(
            f"det {det} not divisible by |X_2| = {n2}; surface check "
            "was insufficient")
    return det // n2


@dataclass(frozen=True)
class MatrixTreeCheck:
    lhs: int
    rhs: Fraction
    equal: bool

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": str(self.rhs), "equal": self.equal}


def matrix_tree_check(X: ChainComplex, k: int, cap=None) -> MatrixTreeCheck:
    """det of the restricted Laplacian against
    (1/theta_X^2) (sum of cotree weights^2) (sum of tree weights^2),
    both sides exact."""
    census = cotree_census(X, k, cap)
    lhs = restricted_laplacian_det(X, k)
    sum_a = sum(w ** 2 for w in census.cotree_weights())
    sum_t = sum(w ** 2 for w in census.tree_weights())
    rhs = Fraction(sum_a * sum_t, census.theta_x ** 2)
    return MatrixTreeCheck(lhs=lhs, rhs=rhs, equal=(lhs == rhs))


# ---------------------------------------------------------------------------
# the rational cocycle projection and its reduction mod p
# ---------------------------------------------------------------------------

def rational_projection(X: ChainComplex, k: int) -> ExactMatrix:
    """The orthogonal projection of C_k(X; Q) onto the cocycle space:
    pi^+ pi for the quotient projection pi.  Always exists over Q;
    every entry lies in Z[1/upsilon]."""
    X.check_degree(k)
    fc = X.instantiate(FieldSpec.rationals())
    pi, _ = quotient_projection(fc, k)
    pit = pi.transpose()
    gram_inv = (pi @ pit).inverse()
    return pit @ gram_inv @ pi


@dataclass(frozen=True)
class ReducedProjection:
    """Entrywise reduction mod p of the rational cocycle projection:
    symmetric, idempotent, image the mod-p cocycle space, fixing every
    cocycle."""

    p: int
    matrix: ExactMatrix


def reduced_projection(X: ChainComplex, k: int, p: int) -> ReducedProjection:
    """Reduce the rational projection mod p.

    Requires p to avoid every entry denominator and H_k(X) to have no
    p-torsion; the projection laws are re-verified on the reduced matrix
    and any failure is reported as an internal inconsistency."""
    P = rational_projection(X, k)
    field = FieldSpec.prime_field(p)
    if X.has_p_torsion(k, p):
        raise TorsionObstruction(p)
    data = []
    for row in P.row_lists():
        out = []
        for v in row:
            if v.denominator % p == 0:
                raise DenominatorDivisibleByP(
                    f"projection entry {v} has denominator divisible "
                    f"by {p}")
            out.append(field.reduce_fraction(v))
        data.append(out)
    R = ExactMatrix(field, data, cols=P.cols)
    fc = X.instantiate(field)
    Zco = fc.cocycles(k)
    fixes = (R @ Zco) == Zco
    ok = (R.is_symmetric() and (R @ R) == R and fixes
          and R.rank() == Zco.cols
          and (fc.coboundary(k + 1) @ R).is_zero())
    if not ok:
        raise InternalEquivalenceViolation(
            f"reduced projection laws fail at p = {p}")
    return ReducedProjection(p=p, matrix=R)


def apply_reduced_projection(X: ChainComplex, k: int, p: int,
                             z: Chain) -> Chain:
    """Project a mod-p cycle onto the cocycle space via the reduced
    rational projection; on a p-harmonic complex this lands on the same
    chain as the pseudoinverse route."""
    rp = reduced_projection(X, k, p)
    return Chain(rp.matrix.domain, k, rp.matrix.apply(list(z.coefficients)))


# ---------------------------------------------------------------------------
# guaranteed harmonic primes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HarmonicPrimes:
    """Primes up to the bound guaranteed harmonic by the sufficient
    condition (p avoids upsilon and the torsion of H_k); excluded primes
    are not claimed non-harmonic."""

    degree: int
    bound: int
    upsilon: int
    guaranteed: tuple
    excluded: tuple  # (prime, "Torsion" | "DividesUpsilon")

    def to_json(self) -> dict:
        return {"degree": self.degree, "bound": self.bound,
                "upsilon": self.upsilon,
                "guaranteed": list(self.guaranteed),
                "excluded": [[p, reason] for p, reason in self.excluded]}


def harmonic_primes(X: ChainComplex, k: int, bound: int,
                    cap=None) -> HarmonicPrimes:
    """Classify primes <= bound by the sufficient harmonicity condition.

    When enumeration exceeds the cap but X is a closed orientable
    surface in degree 1, upsilon falls back to the surface formula."""
    try:
        ups = upsilon(X, k, cap)
    except CapExceeded:
        if k == 1 and check_surface(X) is None:
            ups = surface_upsilon(X)
        else:
            raise
    torsion = X.torsion_primes(k)
    guaranteed = []
    excluded = []
    for p in primes_up_to(bound):
        if p in torsion:
            excluded.append((p, "Torsion"))
        elif ups % p == 0:
            excluded.append((p, "DividesUpsilon"))
        else:
            guaranteed.append(p)
    return HarmonicPrimes(degree=k, bound=bound, upsilon=ups,
                          guaranteed=tuple(guaranteed),
                          excluded=tuple(excluded))
