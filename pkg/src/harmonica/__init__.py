"""Exact harmonic representatives of homology classes over the rationals
and prime fields: diagnostics for when they exist and are unique, the
pseudoinverse construction that computes them, the Hodge-style
decomposition of chain spaces, and the spanning-cotree invariant that
predicts harmonicity prime by prime."""

from .complexes import (Chain, ChainComplex, FieldComplex, PointCloud,
                        SimplicialComplex, load_complex_file,
                        load_complex_json, vietoris_rips)
from .cotrees import (CotreeCensus, HarmonicPrimes, MatrixTreeCheck,
                      ReducedProjection, apply_reduced_projection,
                      cotree_census, cotree_weight, enumerate_cotrees,
                      enumerate_trees, harmonic_primes, matrix_tree_check,
                      rational_projection, reduced_projection,
                      restricted_laplacian_det, surface_upsilon,
                      tree_weight, upsilon)
from .errors import (CapExceeded, DegreeOutOfRange, DenominatorDivisibleByP,
                     DimensionMismatch, DivisionByZero, DomainMismatch,
                     HarmonicaError, InternalEquivalenceViolation,
                     MalformedFacet, NoDecomposition, NonIntegerDivision,
                     NotAColumnBasis, NotACycle, NotARowBasis,
                     NotASurface, NotHarmonicComplex, TorsionObstruction)
from .fields import (FieldSpec, LocalizedRational, Scalar,
                     denominator_divides_power, invert, is_prime,
                     reduce_mod_p)
from .fixtures import FIXTURE_NAMES, load_fixture, load_fixture_simplicial
from .harmonic import (HarSet, HarmonicReport, HodgeDecomposition,
                       RepresentableSubspace, diagnose, har_set,
                       harmonic_representative, harmonic_space,
                       hodge_decomposition, is_cohomologically_harmonic,
                       is_homologically_harmonic, laplacian,
                       quotient_projection, representable_subspace)
from .matrix import (ExactMatrix, SnfResult, ZZ, cokernel_order,
                     pseudoinverse, satisfies_penrose_axioms,
                     smith_normal_form)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
