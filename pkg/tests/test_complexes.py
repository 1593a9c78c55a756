import json
import random
from fractions import Fraction

import pytest

from harmonica import (Chain, ChainComplex, DegreeOutOfRange,
                       DimensionMismatch, ExactMatrix, FieldSpec,
                       MalformedFacet, PointCloud, SimplicialComplex, ZZ,
                       load_complex_json, load_fixture, vietoris_rips)
from harmonica.datasets import lemniscate_cloud, random_cloud, wedge_cloud
from harmonica.fixtures import FIXTURE_NAMES

from conftest import QQ, F2, F3, F5, circle3, disk, minor_rank


def test_filled_triangle_boundary_signs():
    X = SimplicialComplex.from_facets([[0, 1, 2]]).to_chain_complex()
    # edges sorted: (0,1), (0,2), (1,2); d(0,1,2) = (1,2) - (0,2) + (0,1)
    assert X.boundary(2).columns() == [[1, -1, 1]]
    assert (X.boundary(1) @ X.boundary(2)).is_zero()


def test_circle3_has_one_homology_class():
    X = circle3()
    # oracle: rank H_1 of a connected graph = E - V + 1
    assert X.num_cells(2) == 0
    assert X.betti(1) == 3 - 3 + 1 == 1
    assert X.torsion_primes(1) == set()


def test_malformed_facet():
    with pytest.raises(MalformedFacet):
        SimplicialComplex.from_facets([[0, 0]])


def test_closure_enforced():
    with pytest.raises(MalformedFacet):
        SimplicialComplex([[(0,), (1,)], [(0, 1)], [(0, 1, 2)]])


def test_vr_three_close_points_full_triangle():
    cloud = PointCloud([("0", "0"), ("1", "0"), ("0", "1")])
    sc = vietoris_rips(cloud, Fraction(3, 2), 2)
    assert sc.num_simplices(0) == 3
    assert sc.num_simplices(1) == 3
    assert sc.num_simplices(2) == 1


def test_vr_unit_square_no_diagonals():
    cloud = PointCloud([("0", "0"), ("1", "0"), ("1", "1"), ("0", "1")])
    sc = vietoris_rips(cloud, 1, 2)
    # sqrt(2) > 1 excludes the diagonals, hence no triangles either
    assert sc.num_simplices(1) == 4
    assert sc.num_simplices(2) == 0
    assert sc.to_chain_complex().betti(1) == 1


def test_vr_threshold_is_closed():
    cloud = PointCloud([("0", "0"), ("1", "0")])
    assert vietoris_rips(cloud, 1, 1).num_simplices(1) == 1
    assert vietoris_rips(cloud, "0.999999", 1).num_simplices(1) == 0


def test_vr_empty_cloud():
    sc = vietoris_rips(PointCloud([]), 1, 2)
    assert sc.dim == -1
    assert sc.to_chain_complex().total_cells() == 0


def test_inhomogeneous_points_rejected():
    with pytest.raises(DimensionMismatch):
        PointCloud([("0", "0"), ("1", "0", "0")])


def test_vr_monotone_in_radius():
    for seed in range(6):
        cloud = random_cloud(8, seed=seed)
        small = vietoris_rips(cloud, Fraction(3, 10), 2)
        large = vietoris_rips(cloud, Fraction(5, 10), 2)
        for d in range(len(small.simplices)):
            assert set(small.simplices[d]) <= set(large.simplices[d])


def test_boundary_squared_zero_everywhere():
    fields = (QQ, F2, F3, F5)
    complexes = [load_fixture(n) for n in FIXTURE_NAMES]
    complexes += [circle3(), disk()]
    for seed in range(4):
        cloud = random_cloud(7, seed=seed)
        complexes.append(vietoris_rips(cloud, Fraction(2, 5), 2)
                         .to_chain_complex())
    for X in complexes:
        for k in range(X.top_degree + 2):
            assert (X.boundary(k) @ X.boundary(k + 1)).is_zero()
            for F in fields:
                fc = X.instantiate(F)
                assert (fc.boundary(k) @ fc.boundary(k + 1)).is_zero()


def test_instantiate_examples(pinched, torus7):
    fc2 = pinched.instantiate(F2)
    assert fc2.boundary(2).columns() == [[1, 1]]
    fcq = torus7.instantiate(QQ)
    assert fcq.boundary(2).row_lists() == [
        [Fraction(v) for v in row] for row in torus7.boundary(2).row_lists()]
    f2t = torus7.instantiate(F2)
    assert set(v for row in f2t.boundary(2).row_lists() for v in row) <= {0, 1}


def test_betti_against_snf_free_rank():
    from harmonica import smith_normal_form
    for name in FIXTURE_NAMES:
        X = load_fixture(name)
        for k in range(X.top_degree + 1):
            # integral route: free rank = dim ker d_k - #(nonzero SNF diag
            # of d_(k+1)); must agree with the rational Betti number
            dim_ker = X.num_cells(k) - X.boundary(k).rank()
            nonzero = len(smith_normal_form(X.boundary(k + 1))
                          .nonzero_diagonal())
            assert X.betti(k) == dim_ker - nonzero


def test_rp2_torsion(rp2):
    # classical: H_1 of the projective plane is Z/2
    assert rp2.betti(1) == 0
    assert rp2.torsion_primes(1) == {2}
    assert rp2.has_p_torsion(1, 2)
    assert not rp2.has_p_torsion(1, 3)
    snf_diag = [d for d in
                __import__("harmonica").smith_normal_form(
                    rp2.boundary(2)).nonzero_diagonal() if d != 1]
    assert snf_diag == [2]


def test_top_degree_torsion_empty(torus7):
    assert torus7.torsion_primes(torus7.top_degree) == set()


def test_degree_out_of_range(pinched):
    with pytest.raises(DegreeOutOfRange):
        pinched.betti(3)
    with pytest.raises(DegreeOutOfRange):
        pinched.torsion_primes(-1)


def test_dual_is_involution(pinched, torus7):
    for X in (pinched, torus7):
        D = X.dual().dual()
        assert [X.num_cells(k) for k in range(X.top_degree + 1)] == \
            [D.num_cells(k) for k in range(D.top_degree + 1)]
        for k in range(X.top_degree + 1):
            assert X.boundary(k) == D.boundary(k)


def test_chain_complex_json_round_trip(pinched, subdivided):
    for X in (pinched, subdivided):
        obj = X.to_json()
        Y = ChainComplex.from_json(obj)
        assert [X.num_cells(k) for k in range(X.top_degree + 1)] == \
            [Y.num_cells(k) for k in range(Y.top_degree + 1)]
        for k in range(X.top_degree + 1):
            assert X.boundary(k) == Y.boundary(k)
        assert X.cell_labels == Y.cell_labels
        text = json.dumps(obj)
        Z, _ = load_complex_json(json.loads(text))
        assert Z.boundary(2) == X.boundary(2)


def test_simplicial_json_round_trip(torus7):
    sc = SimplicialComplex.from_facets([[0, 1, 2], [1, 2, 3], [3, 4]])
    obj = sc.to_json()
    assert sorted(map(tuple, obj["facets"])) == [(0, 1, 2), (1, 2, 3), (3, 4)]
    sc2 = SimplicialComplex.from_json(obj)
    assert sc2.simplices == sc.simplices


def test_point_cloud_csv_round_trip():
    text = "0.5,1\n-0.25,3.125\n"
    cloud = PointCloud.from_csv(text)
    assert cloud.points[0] == (Fraction(1, 2), Fraction(1))
    again = PointCloud.from_csv(cloud.to_csv())
    assert again.points == cloud.points


def test_chain_json_round_trip():
    z = Chain(F3, 1, [1, 0, 2])
    obj = z.to_json()
    assert obj == {"degree": 1, "coefficients": {"0": "1", "2": "2"}}
    back = Chain.from_json(obj, F3, 3)
    assert back == z
    q = Chain(QQ, 1, [Fraction(1, 2), 0])
    assert q.to_json()["coefficients"] == {"0": "1/2"}


def test_chain_complex_shape_validation():
    with pytest.raises(ValueError):
        ChainComplex([ExactMatrix(ZZ, [[0, 0]]),
                      ExactMatrix(ZZ, [[1], [1], [1]])])
    with pytest.raises(ValueError):
        # dd != 0
        ChainComplex([ExactMatrix(ZZ, [[1, 0]]),
                      ExactMatrix(ZZ, [[1], [0]])])


def test_labels(pinched):
    assert pinched.labels(1) == ["a", "b"]
    assert pinched.labels(2) == ["E"]


def test_seeded_samplers_are_deterministic():
    a = lemniscate_cloud(seed=5)
    b = lemniscate_cloud(seed=5)
    c = lemniscate_cloud(seed=6)
    assert a.points == b.points
    assert a.points != c.points
    assert len(a) == 50
    w = wedge_cloud(seed=1)
    assert len(w) == 130 and w.dimension == 3
