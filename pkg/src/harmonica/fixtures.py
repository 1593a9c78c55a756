"""Bundled reference complexes.

Five small spaces exercise every failure mode of harmonicity: the pinched
cylinder (existence and uniqueness both fail over F_2), its subdivision
(uniqueness fails, existence does not), the minimal 7-vertex torus
triangulation, the tetrahedron boundary 2-sphere, and the 6-vertex
projective plane (2-torsion).
"""

from __future__ import annotations

import json
from importlib import resources

from .complexes import load_complex_json

FIXTURE_NAMES = (
    "pinched-cylinder",
    "subdivided-cylinder",
    "torus7",
    "tetrahedron-boundary",
    "rp2-6vertex",
)


def fixture_json(name: str) -> dict:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    text = (resources.files("harmonica") / "fixtures" / f"{name}.json").read_text()
    return json.loads(text)


def load_fixture(name: str):
    """The fixture as a ChainComplex (simplicial fixtures are expanded)."""
    chain, _ = load_complex_json(fixture_json(name))
    return chain


def load_fixture_simplicial(name: str):
    """The fixture as (ChainComplex, SimplicialComplex-or-None)."""
    return load_complex_json(fixture_json(name))


# the 3-edge loop on vertices 0,1,2 of torus7: a homologically nontrivial
# 1-cycle used by the examples and the acceptance checks
TORUS7_CYCLE_EDGES = ((0, 1), (0, 2), (1, 2))
