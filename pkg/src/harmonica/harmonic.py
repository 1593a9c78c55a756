"""Harmonicity diagnostics and harmonic representatives.

A k-chain is harmonic when it is simultaneously a cycle and a cocycle.
Nine equivalent statements characterize when every homology class has a
unique harmonic representative; this module evaluates them independently
(construction fails loudly if they ever disagree), computes the unique
representative through the pseudoinverse of the quotient projection when
they hold, the full representative set when they do not, and the
three-part orthogonal decomposition of the chain space when both the
complex and its dual are harmonic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complexes import Chain, FieldComplex
from .errors import (DomainMismatch, InternalEquivalenceViolation, NoDecomposition,
                     NotACycle, NotHarmonicComplex)
from .fields import FieldSpec
from .matrix import ExactMatrix, pseudoinverse

STATEMENT_NAMES = (
    "existence_and_uniqueness",   # A1
    "uniqueness",                 # A2
    "unique_at_zero",             # A3
    "homology_isomorphism",       # A4
    "trivial_intersection",       # A5
    "direct_sum",                 # A6
    "kernel_condition",           # A7
    "image_condition",            # A8
    "pseudoinverse_exists",       # A9
)


def _rank_concat(*bases: ExactMatrix) -> int:
    mats = [b for b in bases if b.cols]
    if not mats:
        return 0
    return ExactMatrix.hstack(mats).rank()


def intersection_basis(U: ExactMatrix, V: ExactMatrix) -> ExactMatrix:
    """Deterministic basis of (col U) intersect (col V)."""
    if U.cols == 0 or V.cols == 0:
        return ExactMatrix.zeros(U.domain, U.rows, 0)
    N = ExactMatrix.hstack([U, V]).kernel_basis()
    if N.cols == 0:
        return ExactMatrix.zeros(U.domain, U.rows, 0)
    alpha = N.submatrix(row_indices=range(U.cols))
    return (U @ alpha).image_basis()


def joint_kernel(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Kernel basis of the stacked map x -> (Ax, Bx)."""
    return ExactMatrix.vstack([A, B]).kernel_basis()


def laplacian(fc: FieldComplex, k: int) -> ExactMatrix:
    """The degree-k discrete Laplacian d_(k+1) d*_(k+1) + d*_k d_k."""
    fc.check_degree(k)
    up = fc.boundary(k + 1)
    down = fc.boundary(k)
    return up @ fc.coboundary(k + 1) + fc.coboundary(k) @ down


def harmonic_space(fc: FieldComplex, k: int) -> ExactMatrix:
    """Basis of the harmonic chains: cycles that are also cocycles."""
    fc.check_degree(k)
    return joint_kernel(fc.boundary(k), fc.coboundary(k + 1))


def quotient_projection(fc: FieldComplex, k: int):
    """The projection of C_k onto C_k / B_k, in the standard-cell basis.

    The basis of the quotient is the set of k-cells away from the pivot
    rows of the column echelon form of d_(k+1); the pseudoinverse of the
    projection is basis-independent, but a deterministic choice keeps
    reports reproducible.  Returns (pi, complement_cells)."""
    d_up = fc.boundary(k + 1)
    n = fc.num_cells(k)
    field = fc.field
    # column echelon of d_(k+1) = transposed rref of its transpose
    rows, pivots = fc.coboundary(k + 1).rref()
    pivot_rows = list(pivots)        # rows of d_(k+1) carrying pivots
    pivset = set(pivot_rows)
    complement = [i for i in range(n) if i not in pivset]
    place = {cell: idx for idx, cell in enumerate(complement)}
    zero, one = field.zero(), field.one()
    data = [[zero] * n for _ in range(len(complement))]
    for cell, idx in place.items():
        data[idx][cell] = one
    # pivot cell p_t is congruent mod B_k to minus the complement part of
    # the t-th echelon column
    for t, p in enumerate(pivot_rows):
        col = rows[t]                # echelon column t, as entries over cells
        for cell in complement:
            v = col[cell]
            if v != zero:
                data[place[cell]][p] = field.neg(v)
    pi = ExactMatrix(field, data, cols=n)
    return pi, tuple(complement)


@dataclass(frozen=True)
class HarmonicReport:
    """Outcome of the nine-statement diagnosis at one (degree, field).

    The statements are provably equivalent; they are still evaluated
    separately, so a mixed report indicates an implementation bug and
    construction refuses to produce one.
    """

    degree: int
    field: FieldSpec
    statements: dict
    dims: dict
    witness: tuple
    printed_kernel_condition_degree_k: bool = True

    def __post_init__(self):
        values = set(self.statements.values())
        if len(values) != 1:
            raise InternalEquivalenceViolation(
                f"equivalent statements disagree: {self.statements}")

    @property
    def consensus(self) -> bool:
        return next(iter(self.statements.values()))

    def to_json(self) -> dict:
        f = self.field
        return {
            "degree": self.degree,
            "field": f.name(),
            "statements": {f"A{i+1}": self.statements[name]
                           for i, name in enumerate(STATEMENT_NAMES)},
            "statement_names": {f"A{i+1}": name
                                for i, name in enumerate(STATEMENT_NAMES)},
            "dims": dict(self.dims),
            "witness": [[f.format_value(v) for v in col]
                        for col in self.witness],
            "printed_kernel_condition_degree_k":
                self.printed_kernel_condition_degree_k,
        }


def diagnose(fc: FieldComplex, k: int) -> HarmonicReport:
    """Evaluate the nine equivalent harmonicity statements at degree k.

    Statements 3, 5, 6, 7, 8, 9 are computed independently (rank
    arithmetic on concatenated bases; rank comparisons on composed maps;
    the pseudoinverse existence test for the quotient projection), and
    1, 2, 4 are derived from 5 plus the comparison of the harmonic space
    dimension with the homology dimension.
    """
    fc.check_degree(k)
    field = fc.field
    d_down = fc.boundary(k)
    d_up = fc.boundary(k + 1)
    Z = fc.cycles(k)
    B = fc.boundaries_space(k)
    Zco = fc.cocycles(k)
    Bco = fc.coboundaries_space(k)
    har = harmonic_space(fc, k)

    n = fc.num_cells(k)
    dim_Z, dim_B = Z.cols, B.cols
    dim_Zco, dim_Bco = Zco.cols, Bco.cols
    dim_H = dim_Z - dim_B
    dim_har = har.cols
    torsor = intersection_basis(B, Zco)
    dim_torsor = torsor.cols

    s5 = _rank_concat(B, Zco) == dim_B + dim_Zco
    s6 = _rank_concat(B, Zco) == n
    s3 = _rank_concat(har, B) == dim_har + dim_B
    rank_up = d_up.rank()
    rank_comp = (fc.coboundary(k + 1) @ d_up).rank()
    s7 = rank_comp == rank_up
    s8 = rank_comp == fc.coboundary(k + 1).rank()
    pi, _ = quotient_projection(fc, k)
    pit = pi.transpose()
    s9 = ((pi @ pit).rank() == pi.rows == (pit @ pi).rank())
    s1 = s5 and dim_har == dim_H
    s2 = s5
    s4 = s3 and dim_har == dim_H

    # the degree-k reading of statement 7, reported but not pooled: it is
    # the trivial-intersection condition one degree down, not this one
    printed = (fc.coboundary(k) @ d_down).rank() == d_down.rank()

    statements = dict(zip(STATEMENT_NAMES,
                          (s1, s2, s3, s4, s5, s6, s7, s8, s9)))
    dims = {"C_k": n, "Z_k": dim_Z, "B_k": dim_B, "Zco_k": dim_Zco,
            "Bco_k": dim_Bco, "H_k": dim_H, "harmonic": dim_har,
            "torsor": dim_torsor}
    witness = tuple(tuple(col) for col in torsor.columns())
    return HarmonicReport(degree=k, field=field, statements=statements,
                          dims=dims, witness=witness,
                          printed_kernel_condition_degree_k=printed)


def is_homologically_harmonic(fc: FieldComplex, k: int) -> bool:
    return diagnose(fc, k).consensus


def is_cohomologically_harmonic(fc: FieldComplex, k: int) -> bool:
    """Run the same diagnosis on the dual complex.

    Degree k of the dual-side statements corresponds to degree
    top_degree - k of the regraded dual complex."""
    fc.check_degree(k)
    return diagnose(fc.dual(), fc.top_degree - k).consensus


def _require_cycle(fc: FieldComplex, z: Chain):
    if z.field != fc.field:
        raise DomainMismatch("chain field differs from complex field")
    if len(z.coefficients) != fc.num_cells(z.degree):
        raise ValueError("chain length does not match cell count")
    bd = fc.boundary(z.degree).apply(list(z.coefficients))
    zero = fc.field.zero()
    if any(v != zero for v in bd):
        raise NotACycle(f"input chain has nonzero boundary in degree "
                        f"{z.degree}")


def harmonic_representative(fc: FieldComplex, z: Chain) -> Chain:
    """The unique harmonic representative of [z].

    Only defined when the complex is harmonic at this degree; when
    uniqueness fails this refuses to pick an arbitrary member of the
    representative set (har_set is the non-unique interface).  The
    computation follows the pseudoinverse route: express the projection
    pi onto C_k/B_k in the echelon-complement cell basis, form
    pi* (pi pi*)^(-1), and apply it to the coordinates of [z].
    """
    k = z.degree
    fc.check_degree(k)
    _require_cycle(fc, z)
    report = diagnose(fc, k)
    if not report.consensus:
        raise NotHarmonicComplex(
            f"no unique harmonic representatives over {fc.field.name()} "
            f"in degree {k}", report=report)
    pi, _ = quotient_projection(fc, k)
    pit = pi.transpose()
    gram_inv = (pi @ pit).inverse()
    if gram_inv is None:  # unreachable: consensus implies invertibility
        raise InternalEquivalenceViolation("pi pi* singular on a "
                                           "harmonic complex")
    pi_dagger = pit @ gram_inv
    coords = pi.apply(list(z.coefficients))
    return Chain(fc.field, k, pi_dagger.apply(coords))


@dataclass(frozen=True)
class HarSet:
    """The full set of harmonic representatives of one homology class:
    empty when representative is None, otherwise the affine space
    representative + span(torsor_basis)."""

    representative: object
    torsor_basis: tuple

    def members(self):
        """Enumerate the set (finite fields only)."""
        if self.representative is None:
            return
        rep = self.representative
        p = rep.field.characteristic
        if p == 0:
            raise ValueError("the representative set is infinite over Q "
                             "unless the torsor is trivial")
        basis = list(self.torsor_basis)
        def walk(i, acc):
            if i == len(basis):
                yield acc
                return
            for c in range(p):
                yield from walk(i + 1, acc + basis[i].scaled(c))
        yield from walk(0, rep)


def har_set(fc: FieldComplex, z: Chain) -> HarSet:
    """All harmonic representatives of [z], found by solving the affine
    system d*_(k+1)(z + d_(k+1) w) = 0 and attaching the torsor basis of
    boundary cocycles."""
    k = z.degree
    fc.check_degree(k)
    _require_cycle(fc, z)
    d_up = fc.boundary(k + 1)
    dt = fc.coboundary(k + 1)
    gram = dt @ d_up
    rhs = [fc.field.neg(v) for v in dt.apply(list(z.coefficients))]
    w = gram.solve(rhs)
    rep = None
    if w is not None:
        shift = d_up.apply(w)
        rep = Chain(fc.field, k,
                    [fc.field.add(a, b)
                     for a, b in zip(z.coefficients, shift)])
    torsor = intersection_basis(fc.boundaries_space(k), fc.cocycles(k))
    basis = tuple(Chain(fc.field, k, col) for col in torsor.columns())
    return HarSet(representative=rep, torsor_basis=basis)


@dataclass(frozen=True)
class RepresentableSubspace:
    """Size of the subspace of classes admitting a harmonic
    representative, and its codimension inside homology."""

    dim_qk: int
    codim: int


def representable_subspace(fc: FieldComplex, k: int) -> RepresentableSubspace:
    """dim Q_k = dim(Z_k cap (Z^k + B_k)) - dim B_k and
    codim = dim(Z^k + Z_k) - dim(Z^k + B_k)."""
    fc.check_degree(k)
    Z = fc.cycles(k)
    B = fc.boundaries_space(k)
    Zco = fc.cocycles(k)
    dim_sum_co_b = _rank_concat(Zco, B)
    dim_sum_co_z = _rank_concat(Zco, Z)
    dim_all = _rank_concat(Z, Zco, B)
    dim_intersect = Z.cols + dim_sum_co_b - dim_all
    return RepresentableSubspace(dim_qk=dim_intersect - B.cols,
                                 codim=dim_sum_co_z - dim_sum_co_b)


@dataclass(frozen=True)
class HodgeDecomposition:
    """C_k = ker(Laplacian) + boundaries + coboundaries, orthogonal under
    the cell-basis pairing, with the first part equal to the harmonic
    space."""

    harmonic_basis: ExactMatrix
    boundary_basis: ExactMatrix
    coboundary_basis: ExactMatrix

    def dimension(self) -> int:
        return (self.harmonic_basis.cols + self.boundary_basis.cols
                + self.coboundary_basis.cols)


def _orthogonal(U: ExactMatrix, V: ExactMatrix) -> bool:
    return (U.transpose() @ V).is_zero()


def _lower_kernel_condition(fc: FieldComplex, k: int) -> bool:
    """ker(d*_k d_k) = ker(d_k): the degree-k kernel condition.

    This is exactly the trivial-intersection statement one degree down;
    it governs the down-part of the Laplacian at degree k and is part of
    the hypothesis that makes the decomposition theorem an equivalence.
    """
    d = fc.boundary(k)
    return (fc.coboundary(k) @ d).rank() == d.rank()


def _upper_kernel_condition(fc: FieldComplex, k: int) -> bool:
    """ker(d_(k+1) d*_(k+1)) = ker(d*_(k+1)): the dual-side kernel
    condition governing the up-part of the Laplacian at degree k."""
    dt = fc.coboundary(k + 1)
    return (fc.boundary(k + 1) @ dt).rank() == dt.rank()


def hodge_decomposition(fc: FieldComplex, k: int) -> HodgeDecomposition:
    """The three-part orthogonal decomposition of C_k.

    Succeeds exactly when C_k really is the direct sum of ker(Laplacian),
    the boundaries, and the coboundaries.  Given harmonicity of both the
    complex and its dual at degree k, that happens precisely when
    ker(Laplacian) coincides with the harmonic space; the extra kernel
    conditions ker(d*_k d_k) = ker(d_k) and its dual guarantee it, and
    NoDecomposition reports the side whose condition broke.  On success
    the pieces are verified orthogonal and jointly spanning, and
    ker(Laplacian) is verified equal to the harmonic space.
    """
    fc.check_degree(k)
    if not diagnose(fc, k).consensus:
        raise NoDecomposition("homological")
    if not is_cohomologically_harmonic(fc, k):
        raise NoDecomposition("cohomological")
    lap = laplacian(fc, k)
    har_lap = lap.kernel_basis()
    har = harmonic_space(fc, k)
    if har_lap.cols != har.cols:
        # the Laplacian kernel is inflated beyond the harmonic space;
        # blame the side whose kernel condition fails
        if not _lower_kernel_condition(fc, k):
            raise NoDecomposition(
                "homological",
                f"ker(d*_{k} d_{k}) exceeds ker(d_{k}): the Laplacian "
                "kernel is larger than the harmonic space")
        if not _upper_kernel_condition(fc, k):
            raise NoDecomposition(
                "cohomological",
                f"ker(d_{k+1} d*_{k+1}) exceeds ker(d*_{k+1}): the "
                "Laplacian kernel is larger than the harmonic space")
        raise InternalEquivalenceViolation(
            "Laplacian kernel inflated with both kernel conditions intact")
    B = fc.boundaries_space(k)
    Bco = fc.coboundaries_space(k)
    n = fc.num_cells(k)
    ok = (_rank_concat(har_lap, har) == har.cols
          and har_lap.cols + B.cols + Bco.cols == n
          and _rank_concat(har_lap, B, Bco) == n
          and _orthogonal(har_lap, B) and _orthogonal(har_lap, Bco)
          and _orthogonal(B, Bco))
    if not ok:
        raise InternalEquivalenceViolation(
            "decomposition invariants failed on a doubly harmonic complex")
    dual = fc.dual()
    dim_h_dual = dual.homology_dim(fc.top_degree - k)
    if not (har_lap.cols == fc.homology_dim(k) == dim_h_dual):
        raise InternalEquivalenceViolation(
            "harmonic space dimension disagrees with (co)homology")
    return HodgeDecomposition(harmonic_basis=har_lap, boundary_basis=B,
                              coboundary_basis=Bco)
