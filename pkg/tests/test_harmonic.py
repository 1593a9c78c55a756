import random
from fractions import Fraction

import pytest

from harmonica import (Chain, DomainMismatch, FieldSpec,
                       InternalEquivalenceViolation, NoDecomposition,
                       NotACycle, NotHarmonicComplex, diagnose, har_set,
                       harmonic_representative, harmonic_space,
                       hodge_decomposition, is_cohomologically_harmonic,
                       laplacian, representable_subspace)
from harmonica.fixtures import FIXTURE_NAMES, load_fixture
from harmonica.harmonic import STATEMENT_NAMES, quotient_projection

from conftest import (QQ, F2, F3, F5, F7, all_vectors,
                      brute_class_representatives, brute_harmonic_vectors,
                      chain_is_cocycle, chain_is_cycle, chains_homologous,
                      circle3, disk, vr_corpus)


# ---------------------------------------------------------------------------
# Laplacian
# ---------------------------------------------------------------------------

def test_laplacian_pinched_f3(pinched):
    # d_1 = 0, so the Laplacian is d_2 d_2^T with d_2 = (1,1)^T
    fc = pinched.instantiate(F3)
    assert laplacian(fc, 1).row_lists() == [[1, 1], [1, 1]]


def test_laplacian_kernel_exceeds_harmonic_space(subdivided):
    # the subdividing edge is killed by the Laplacian yet is not a cycle
    fc = subdivided.instantiate(F2)
    e = [0, 0, 0, 0, 1]
    assert laplacian(fc, 1).apply(e) == [0, 0, 0, 0, 0]
    assert fc.boundary(1).apply(e) != [0, 0, 0]


def test_laplacian_empty_degree():
    X = circle3()
    fc = X.instantiate(QQ)
    L = laplacian(fc, 1)
    assert L.is_symmetric()
    # no 2-cells: the up-part is zero; L = d1^T d1
    assert L == fc.coboundary(1) @ fc.boundary(1)


def test_laplacian_symmetric_on_fixtures():
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        for F in (QQ, F2, F3):
            fc = X.instantiate(F)
            for k in range(X.top_degree + 1):
                assert laplacian(fc, k).is_symmetric()


# ---------------------------------------------------------------------------
# harmonic space
# ---------------------------------------------------------------------------

def test_harmonic_space_pinched_f2_exhaustive(pinched):
    fc = pinched.instantiate(F2)
    # oracle: enumerate all of F_2^2
    assert brute_harmonic_vectors(fc, 1) == [(0, 0), (1, 1)]
    H = harmonic_space(fc, 1)
    assert H.columns() == [[1, 1]]


def test_harmonic_space_pinched_f3_exhaustive(pinched):
    fc = pinched.instantiate(F3)
    # oracle: joint kernel of [0] and [1 1] over F_3 = {0, (1,2), (2,1)}
    assert set(brute_harmonic_vectors(fc, 1)) == {(0, 0), (1, 2), (2, 1)}
    H = harmonic_space(fc, 1)
    assert H.cols == 1 and tuple(H.column_values(0)) in {(1, 2), (2, 1)}


def test_harmonic_space_disk_trivial_over_q():
    fc = disk().instantiate(QQ)
    assert harmonic_space(fc, 1).cols == 0


# ---------------------------------------------------------------------------
# diagnose: the nine statements
# ---------------------------------------------------------------------------

def _brute_statement_1(fc, k):
    """Exhaustively check that every homology class has exactly one
    harmonic representative (tiny prime-field complexes only)."""
    p = fc.field.characteristic
    n = fc.num_cells(k)
    harmonic = set(brute_harmonic_vectors(fc, k))
    seen_classes = set()
    for z in all_vectors(p, n):
        if any(v % p for v in fc.boundary(k).apply(list(z))):
            continue
        cls = frozenset(brute_class_representatives(fc, k, z))
        if cls in seen_classes:
            continue
        seen_classes.add(cls)
        if len(cls & harmonic) != 1:
            return False
    return True


def test_diagnose_pinched_f2_all_false(pinched):
    fc = pinched.instantiate(F2)
    report = diagnose(fc, 1)
    assert set(report.statements.values()) == {False}
    assert not _brute_statement_1(fc, 1)
    assert report.witness == ((1, 1),)
    assert report.dims == {"C_k": 2, "Z_k": 2, "B_k": 1, "Zco_k": 1,
                           "Bco_k": 0, "H_k": 1, "harmonic": 1, "torsor": 1}


def test_diagnose_pinched_f3_all_true(pinched):
    fc = pinched.instantiate(F3)
    report = diagnose(fc, 1)
    assert set(report.statements.values()) == {True}
    assert _brute_statement_1(fc, 1)
    assert report.witness == ()


def test_diagnose_torus7_f2_all_true(torus7):
    report = diagnose(torus7.instantiate(F2), 1)
    assert set(report.statements.values()) == {True}


def test_diagnose_matches_brute_force_on_small_complexes(subdivided,
                                                         pinched):
    for X in (pinched, subdivided, circle3(), disk()):
        for F in (F2, F3):
            fc = X.instantiate(F)
            for k in range(X.top_degree + 1):
                if F.characteristic ** fc.num_cells(k) > 3 ** 7:
                    continue  # keep enumeration tiny
                assert diagnose(fc, k).consensus == _brute_statement_1(fc, k)


def test_diagnose_all_true_over_q_everywhere():
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        fc = X.instantiate(QQ)
        for k in range(X.top_degree + 1):
            assert diagnose(fc, k).consensus


def test_report_json_shape(pinched):
    obj = diagnose(pinched.instantiate(F2), 1).to_json()
    assert set(obj["statements"]) == {f"A{i}" for i in range(1, 10)}
    assert obj["witness"] == [["1", "1"]]
    assert obj["field"] == "Fp:2"


def test_mixed_report_fails_loudly():
    from harmonica.harmonic import HarmonicReport
    with pytest.raises(InternalEquivalenceViolation):
        HarmonicReport(degree=1, field=F2,
                       statements=dict(zip(STATEMENT_NAMES,
                                           [True] * 8 + [False])),
                       dims={}, witness=())


def test_printed_item7_flag_tracks_lower_degree(subdivided):
    # the degree-k reading of statement 7 equals the trivial-intersection
    # statement one degree down
    for X in (subdivided, circle3(), load_fixture("rp2-6vertex")):
        for F in (F2, F3, F5):
            fc = X.instantiate(F)
            for k in range(1, X.top_degree + 1):
                lower = diagnose(fc, k - 1)
                here = diagnose(fc, k)
                assert here.printed_kernel_condition_degree_k == \
                    lower.statements["trivial_intersection"]


# ---------------------------------------------------------------------------
# cohomological side
# ---------------------------------------------------------------------------

def test_cohomologically_harmonic_pinched(pinched):
    fc3 = pinched.instantiate(F3)
    assert is_cohomologically_harmonic(fc3, 1)
    # over F_2 the dual-side intersection is B^1 cap Z_1; the coboundary
    # space B^1 = im d_1^T is zero here, so the intersection vanishes and
    # the dual complex is harmonic even though the complex itself is not
    fc2 = pinched.instantiate(F2)
    Bco = fc2.coboundaries_space(1)
    assert Bco.cols == 0
    assert is_cohomologically_harmonic(fc2, 1)
    assert not diagnose(fc2, 1).consensus


def test_cohomologically_harmonic_over_q():
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        fc = X.instantiate(QQ)
        for k in range(X.top_degree + 1):
            assert is_cohomologically_harmonic(fc, k)


def test_cohomological_is_homological_of_dual(subdivided):
    for F in (F2, F3):
        fc = subdivided.instantiate(F)
        dual = fc.dual()
        for k in range(subdivided.top_degree + 1):
            assert is_cohomologically_harmonic(fc, k) == \
                diagnose(dual, subdivided.top_degree - k).consensus


# ---------------------------------------------------------------------------
# harmonic representatives
# ---------------------------------------------------------------------------

def test_representative_pinched_f3(pinched):
    fc = pinched.instantiate(F3)
    # oracle: a + t(a+b) is a cocycle iff (1+t) + t = 0, i.e. t = 1
    h = harmonic_representative(fc, Chain(F3, 1, [1, 0]))
    assert h.coefficients == (2, 1)
    assert chain_is_cycle(fc, h) and chain_is_cocycle(fc, h)


def test_representative_pinched_q(pinched):
    fc = pinched.instantiate(QQ)
    h = harmonic_representative(fc, Chain(QQ, 1, [1, 0]))
    assert h.coefficients == (Fraction(1, 2), Fraction(-1, 2))


def test_representative_circle3_f2_identity():
    X = circle3()
    fc = X.instantiate(F2)
    z = Chain(F2, 1, [1, 1, 1])
    assert harmonic_representative(fc, z) == z


def test_representative_refuses_nonharmonic(pinched):
    fc = pinched.instantiate(F2)
    with pytest.raises(NotHarmonicComplex) as err:
        harmonic_representative(fc, Chain(F2, 1, [1, 0]))
    assert err.value.report is not None
    assert not err.value.report.consensus


def test_representative_rejects_non_cycles():
    X = circle3()
    fc = X.instantiate(QQ)
    with pytest.raises(NotACycle):
        harmonic_representative(fc, Chain(QQ, 1, [1, 0, 0]))
    with pytest.raises(NotACycle):
        har_set(fc, Chain(QQ, 1, [1, 0, 0]))


def test_representative_field_mismatch(pinched):
    fc = pinched.instantiate(F3)
    with pytest.raises(DomainMismatch):
        harmonic_representative(fc, Chain(F5, 1, [1, 0]))


def test_representative_linear_idempotent_class_preserving(torus7):
    fc = torus7.instantiate(F5)
    assert diagnose(fc, 1).consensus
    rng = random.Random(97)
    Z = fc.cycles(1)
    for _ in range(5):
        a = [rng.randrange(5) for _ in range(Z.cols)]
        b = [rng.randrange(5) for _ in range(Z.cols)]
        z1 = Chain(F5, 1, Z.apply(a))
        z2 = Chain(F5, 1, Z.apply(b))
        c = rng.randrange(5)
        h1 = harmonic_representative(fc, z1)
        h2 = harmonic_representative(fc, z2)
        lin = harmonic_representative(fc, z1.scaled(c) + z2)
        assert lin == h1.scaled(c) + h2
        assert harmonic_representative(fc, h1) == h1
        assert chains_homologous(fc, h1, z1)


# ---------------------------------------------------------------------------
# the representative set
# ---------------------------------------------------------------------------

def test_har_set_pinched_trivial_class(pinched):
    fc = pinched.instantiate(F2)
    hs = har_set(fc, Chain(F2, 1, [0, 0]))
    members = sorted(m.coefficients for m in hs.members())
    assert members == [(0, 0), (1, 1)]
    assert [c.coefficients for c in hs.torsor_basis] == [(1, 1)]


def test_har_set_pinched_nontrivial_class_empty(pinched):
    fc = pinched.instantiate(F2)
    hs = har_set(fc, Chain(F2, 1, [1, 0]))
    assert hs.representative is None


def test_har_set_subdivided_two_representatives(subdivided):
    fc = subdivided.instantiate(F2)
    hs = har_set(fc, Chain(F2, 1, [0, 0, 1, 1, 0]))  # z = b + b'
    members = sorted(m.coefficients for m in hs.members())
    # a + b' + e and a' + b + e, in the cell order a, a', b, b', e
    assert members == [(0, 1, 1, 0, 1), (1, 0, 0, 1, 1)]


def test_torsor_law(subdivided):
    fc = subdivided.instantiate(F2)
    hs = har_set(fc, Chain(F2, 1, [0, 0, 1, 1, 0]))
    members = list(hs.members())
    for h in members:
        assert chain_is_cycle(fc, h) and chain_is_cocycle(fc, h)
        for b in hs.torsor_basis:
            shifted = h + b
            assert chain_is_cycle(fc, shifted)
            assert chain_is_cocycle(fc, shifted)
            assert chains_homologous(fc, shifted, h)
    h0, h1 = members[0], members[1]
    diff = h0 - h1
    torsor = [c.coefficients for c in hs.torsor_basis]
    assert diff.coefficients in torsor or diff.is_zero()


def test_har_set_agrees_with_unique_representative(pinched):
    fc = pinched.instantiate(F3)
    z = Chain(F3, 1, [1, 0])
    hs = har_set(fc, z)
    assert hs.torsor_basis == ()
    assert hs.representative == harmonic_representative(fc, z)


# ---------------------------------------------------------------------------
# the representable subspace
# ---------------------------------------------------------------------------

def test_representable_pinched_f2(pinched):
    q = representable_subspace(pinched.instantiate(F2), 1)
    assert (q.dim_qk, q.codim) == (0, 1)


def test_representable_subdivided_f2(subdivided):
    q = representable_subspace(subdivided.instantiate(F2), 1)
    assert q.codim == 0


def test_representable_trivial_over_q():
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        fc = X.instantiate(QQ)
        for k in range(X.top_degree + 1):
            assert representable_subspace(fc, k).codim == 0


def test_representable_dimension_law():
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        for F in (F2, F3, F5):
            fc = X.instantiate(F)
            for k in range(X.top_degree + 1):
                q = representable_subspace(fc, k)
                assert q.dim_qk + q.codim == fc.homology_dim(k)
                assert q.dim_qk >= 0 and q.codim >= 0


# ---------------------------------------------------------------------------
# Hodge decomposition
# ---------------------------------------------------------------------------

def test_hodge_pinched_f3(pinched):
    fc = pinched.instantiate(F3)
    hd = hodge_decomposition(fc, 1)
    assert hd.harmonic_basis.columns() in ([[1, 2]], [[2, 1]])
    assert hd.boundary_basis.columns() == [[1, 1]]
    assert hd.coboundary_basis.cols == 0


def test_hodge_pinched_f2_fails_homologically(pinched):
    with pytest.raises(NoDecomposition) as err:
        hodge_decomposition(pinched.instantiate(F2), 1)
    assert err.value.side == "homological"


def test_hodge_disk_over_q():
    fc = disk().instantiate(QQ)
    hd = hodge_decomposition(fc, 1)
    assert hd.harmonic_basis.cols == 0
    assert hd.dimension() == 3


def _decomposition_exists_oracle(fc, k):
    """Ground truth for the decomposition theorem, straight from the
    definition: ker(Laplacian), the boundaries, and the coboundaries
    jointly span C_k with dimensions adding up (independence included)."""
    from harmonica import ExactMatrix
    kl = laplacian(fc, k).kernel_basis()
    B = fc.boundaries_space(k)
    Bco = fc.coboundaries_space(k)
    n = fc.num_cells(k)
    if kl.cols + B.cols + Bco.cols != n:
        return False
    mats = [m for m in (kl, B, Bco) if m.cols]
    if not mats:
        return n == 0
    return ExactMatrix.hstack(mats).rank() == n


def test_hodge_iff_and_invariants_on_fixtures():
    from harmonica import ExactMatrix
    from harmonica.harmonic import (_lower_kernel_condition,
                                    _upper_kernel_condition)
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        for F in (QQ, F2, F3, F5):
            fc = X.instantiate(F)
            for k in range(X.top_degree + 1):
                hom = diagnose(fc, k).consensus
                coh = is_cohomologically_harmonic(fc, k)
                exists = _decomposition_exists_oracle(fc, k)
                # the decomposition needs both harmonicity flags; with the
                # two kernel conditions on top, it is guaranteed
                if exists:
                    assert hom and coh
                if (hom and coh and _lower_kernel_condition(fc, k)
                        and _upper_kernel_condition(fc, k)):
                    assert exists
                if exists:
                    hd = hodge_decomposition(fc, k)
                    n = fc.num_cells(k)
                    assert hd.dimension() == n
                    parts = [hd.harmonic_basis, hd.boundary_basis,
                             hd.coboundary_basis]
                    for i in range(3):
                        for j in range(i + 1, 3):
                            assert (parts[i].transpose()
                                    @ parts[j]).is_zero()
                    # ker L = harmonic space, both containments via rank
                    har = harmonic_space(fc, k)
                    joined = [m for m in (hd.harmonic_basis, har) if m.cols]
                    if joined:
                        assert ExactMatrix.hstack(joined).rank() == har.cols
                    assert hd.harmonic_basis.cols == har.cols
                else:
                    with pytest.raises(NoDecomposition) as err:
                        hodge_decomposition(fc, k)
                    if not hom:
                        assert err.value.side == "homological"
                    elif not coh:
                        assert err.value.side == "cohomological"
                    else:
                        assert err.value.side in ("homological",
                                                  "cohomological")


# ---------------------------------------------------------------------------
# the nine-way equivalence on a random corpus (small slice; the full
# hundred-complex corpus runs in the acceptance suite)
# ---------------------------------------------------------------------------

def test_equivalence_on_random_vr_slice():
    for X in vr_corpus(12):
        for F in (QQ, F2, F3, F5):
            fc = X.instantiate(F)
            for k in range(X.top_degree + 1):
                report = diagnose(fc, k)  # raises on any disagreement
                if F.characteristic == 0:
                    assert report.consensus


def test_quotient_projection_shape(torus7):
    fc = torus7.instantiate(F2)
    pi, complement = quotient_projection(fc, 1)
    assert pi.rows == len(complement) == 21 - 13
    assert pi.rank() == pi.rows
