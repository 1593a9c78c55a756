"""Finite chain complexes and their sources.

Three construction routes feed the library: raw integer boundary matrices
(general CW input, e.g. the pinched cylinder), simplicial facet lists with
the standard alternating-sign boundary convention, and Vietoris-Rips
complexes built on point clouds with exact squared-distance comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (DegreeOutOfRange, DimensionMismatch, DomainMismatch,
                     MalformedFacet)
from .fields import FieldSpec, prime_factors
from .matrix import ZZ, ExactMatrix, smith_normal_form


class ChainComplex:
    """A finite chain complex of free Z-modules given by integer boundary
    matrices.  boundary(k) maps k-chains to (k-1)-chains; its rows are
    indexed by (k-1)-cells and its columns by k-cells."""

    def __init__(self, boundaries, num_vertices=None, cell_labels=None):
        """boundaries: list of integer ExactMatrix [d_1, d_2, ..., d_top].

        num_vertices is only needed when there are no boundary matrices at
        all (a complex of isolated vertices).
        """
        boundaries = list(boundaries)
        # trim trailing degrees with no cells
        while boundaries and boundaries[-1].cols == 0:
            boundaries.pop()
        if boundaries:
            n0 = boundaries[0].rows
            if num_vertices is not None and num_vertices != n0:
                raise ValueError("num_vertices disagrees with boundary shape")
        else:
            n0 = num_vertices or 0
        counts = [n0] + [b.cols for b in boundaries]
        for k, b in enumerate(boundaries, start=1):
            if b.domain != ZZ:
                raise DomainMismatch("boundary matrices must be integral")
            if b.rows != counts[k - 1]:
                raise ValueError(
                    f"boundary {k} has {b.rows} rows, expected {counts[k-1]}")
        for k in range(1, len(boundaries)):
            if not (boundaries[k - 1] @ boundaries[k]).is_zero():
                raise ValueError(f"d_{k} o d_{k+1} != 0")
        self._boundaries = boundaries
        self._counts = counts
        self.cell_labels = cell_labels or {}

    @property
    def top_degree(self) -> int:
        return len(self._counts) - 1

    def num_cells(self, k: int) -> int:
        if 0 <= k <= self.top_degree:
            return self._counts[k]
        return 0

    def total_cells(self) -> int:
        return sum(self._counts)

    def check_degree(self, k: int):
        if not 0 <= k <= self.top_degree:
            raise DegreeOutOfRange(
                f"degree {k} outside 0..{self.top_degree}")

    def boundary(self, k: int) -> ExactMatrix:
        """d_k over Z, for any k >= 0 (zero-shaped outside the range)."""
        if 1 <= k <= self.top_degree:
            return self._boundaries[k - 1]
        if k == 0:
            return ExactMatrix.zeros(ZZ, 0, self.num_cells(0))
        return ExactMatrix.zeros(ZZ, self.num_cells(k - 1), self.num_cells(k))

    @property
    def boundaries(self) -> list[ExactMatrix]:
        """[d_0, d_1, ..., d_top]; index k gives d_k."""
        return [self.boundary(k) for k in range(self.top_degree + 1)]

    def labels(self, k: int) -> list[str]:
        if k in self.cell_labels:
            return list(self.cell_labels[k])
        return [f"{k}:{i}" for i in range(self.num_cells(k))]

    # -- integral homology -------------------------------------------------

    def betti(self, k: int) -> int:
        """Rational Betti number: dim ker d_k - rank d_(k+1)."""
        self.check_degree(k)
        return (self.num_cells(k) - self.boundary(k).rank()
                - self.boundary(k + 1).rank())

    def torsion_diagonal(self, k: int) -> list[int]:
        """Nontrivial Smith diagonal entries of d_(k+1): the torsion
        coefficients of H_k."""
        self.check_degree(k)
        snf = smith_normal_form(self.boundary(k + 1))
        return [d for d in snf.nonzero_diagonal() if d != 1]

    def torsion_order(self, k: int) -> int:
        """|torsion subgroup of H_k|."""
        order = 1
        for d in self.torsion_diagonal(k):
            order *= d
        return order

    def torsion_primes(self, k: int) -> set[int]:
        out = set()
        for d in self.torsion_diagonal(k):
            out.update(prime_factors(d))
        return out

    def has_p_torsion(self, k: int, p: int) -> bool:
        return any(d % p == 0 for d in self.torsion_diagonal(k))

    # -- derived complexes ---------------------------------------------------

    def instantiate(self, field: FieldSpec) -> "FieldComplex":
        return FieldComplex(self, field)

    def dual(self) -> "ChainComplex":
        """The dual complex with grading reversed: degree j holds the
        (top - j)-cells and the boundary maps are the transposed
        codifferentials."""
        top = self.top_degree
        bnds = [self.boundary(top - j + 1).transpose()
                for j in range(1, top + 1)]
        labels = {top - k: self.labels(k) for k in range(top + 1)} \
            if self.cell_labels else None
        return ChainComplex(bnds, num_vertices=self.num_cells(top),
                            cell_labels=labels)

    def validate(self) -> dict:
        """Shape chaining and dd = 0 hold by construction; re-verify and
        report, for the command line validate subcommand."""
        for k in range(self.top_degree + 1):
            assert (self.boundary(k) @ self.boundary(k + 1)).is_zero()
        return {"degrees": self.top_degree,
                "cells": [self.num_cells(k)
                          for k in range(self.top_degree + 1)],
                "boundary_squared_zero": True}

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        bnds = []
        for k in range(1, max(self.top_degree, 1) + 1):
            b = self.boundary(k)
            entries = [[i, j, v] for i, row in enumerate(b.row_lists())
                       for j, v in enumerate(row) if v]
            bnds.append({"degree": k, "rows": b.rows, "cols": b.cols,
                         "entries": entries})
        out = {"format": "chain-complex-v1", "boundaries": bnds}
        if self.cell_labels:
            out["cell_labels"] = {str(k): list(v)
                                  for k, v in self.cell_labels.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ChainComplex":
        if obj.get("format") != "chain-complex-v1":
            raise ValueError("not a chain-complex-v1 document")
        by_degree = {b["degree"]: b for b in obj["boundaries"]}
        if not by_degree:
            raise ValueError("no boundary matrices given")
        top = max(by_degree)
        mats = []
        prev_cols = None
        for k in range(1, top + 1):
            spec = by_degree.get(k)
            if spec is None:
                raise ValueError(f"missing boundary of degree {k}")
            data = [[0] * spec["cols"] for _ in range(spec["rows"])]
            for i, j, v in spec["entries"]:
                data[i][j] = int(v)
            mats.append(ExactMatrix(ZZ, data, cols=spec["cols"]))
            prev_cols = spec["cols"]
        labels = None
        if "cell_labels" in obj:
            labels = {int(k): list(v)
                      for k, v in obj["cell_labels"].items()}
        return cls(mats, cell_labels=labels)


class FieldComplex:
    """A chain complex instantiated over a field: the integer boundary
    matrices with entries reduced into the field, plus cached kernels and
    images of each differential and codifferential."""

    def __init__(self, base: ChainComplex, field: FieldSpec):
        self.base = base
        self.field = field
        self._bnd = {}
        self._tr = {}

    @property
    def top_degree(self) -> int:
        return self.base.top_degree

    def num_cells(self, k: int) -> int:
        return self.base.num_cells(k)

    def check_degree(self, k: int):
        self.base.check_degree(k)

    def boundary(self, k: int) -> ExactMatrix:
        if k not in self._bnd:
            self._bnd[k] = self.base.boundary(k).to_field(self.field)
        return self._bnd[k]

    def coboundary(self, k: int) -> ExactMatrix:
        """The transpose of d_k, cached."""
        if k not in self._tr:
            self._tr[k] = self.boundary(k).transpose()
        return self._tr[k]

    # -- the four fundamental subspaces of C_k, as column bases ------------

    def cycles(self, k: int) -> ExactMatrix:
        return self.boundary(k).kernel_basis()

    def boundaries_space(self, k: int) -> ExactMatrix:
        return self.boundary(k + 1).image_basis()

    def cocycles(self, k: int) -> ExactMatrix:
        return self.coboundary(k + 1).kernel_basis()

    def coboundaries_space(self, k: int) -> ExactMatrix:
        return self.coboundary(k).image_basis()

    def homology_dim(self, k: int) -> int:
        return (self.num_cells(k) - self.boundary(k).rank()
                - self.boundary(k + 1).rank())

    def dual(self) -> "FieldComplex":
        return FieldComplex(self.base.dual(), self.field)

    def zero_chain(self, k: int) -> "Chain":
        return Chain(self.field, k,
                     [self.field.zero()] * self.num_cells(k))


@dataclass(frozen=True)
class Chain:
    """A k-chain: exact coefficients over a fixed field, one per k-cell."""

    field: FieldSpec
    degree: int
    coefficients: tuple

    def __init__(self, field, degree, coefficients):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coefficients",
                           tuple(field.of(c) for c in coefficients))

    def __add__(self, other: "Chain") -> "Chain":
        if self.field != other.field or self.degree != other.degree:
            raise DomainMismatch("chain field/degree mismatch")
        f = self.field
        return Chain(f, self.degree,
                     [f.add(a, b) for a, b in
                      zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "Chain") -> "Chain":
        if self.field != other.field or self.degree != other.degree:
            raise DomainMismatch("chain field/degree mismatch")
        f = self.field
        return Chain(f, self.degree,
                     [f.sub(a, b) for a, b in
                      zip(self.coefficients, other.coefficients)])

    def scaled(self, c) -> "Chain":
        f = self.field
        c = f.of(c)
        return Chain(f, self.degree,
                     [f.mul(c, v) for v in self.coefficients])

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(v == z for v in self.coefficients)

    def support(self) -> tuple[int, ...]:
        z = self.field.zero()
        return tuple(i for i, v in enumerate(self.coefficients) if v != z)

    def to_json(self) -> dict:
        f = self.field
        coeffs = {str(i): f.format_value(v)
                  for i, v in enumerate(self.coefficients) if v != f.zero()}
        return {"degree": self.degree, "coefficients": coeffs}

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec, length: int) -> "Chain":
        coeffs = [field.zero()] * length
        for idx, text in obj["coefficients"].items():
            i = int(idx)
            if not 0 <= i < length:
                raise ValueError(f"cell index {i} out of range 0..{length-1}")
            coeffs[i] = field.parse_value(str(text))
        return cls(field, int(obj["degree"]), coeffs)


# ---------------------------------------------------------------------------
# simplicial complexes
# ---------------------------------------------------------------------------

class SimplicialComplex:
    """An abstract simplicial complex: per-dimension sorted tuples of
    strictly increasing vertex labels, closed under faces."""

    def __init__(self, simplices_by_dim, points=None):
        self.simplices = [sorted(set(map(tuple, dim_list)))
                          for dim_list in simplices_by_dim]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()
        for d, simps in enumerate(self.simplices):
            for s in simps:
                if len(s) != d + 1 or list(s) != sorted(set(s)):
                    raise MalformedFacet(f"bad {d}-simplex {s}")
        self._check_closure()
        self.points = points

    def _check_closure(self):
        for d in range(1, len(self.simplices)):
            lower = set(self.simplices[d - 1])
            for s in self.simplices[d]:
                for i in range(len(s)):
                    if s[:i] + s[i + 1:] not in lower:
                        raise MalformedFacet(
                            f"face {s[:i] + s[i+1:]} of {s} is missing")

    @classmethod
    def from_facets(cls, facets, points=None) -> "SimplicialComplex":
        """Downward closure of the given facets.

        Facets must list distinct vertices; repeats are malformed rather
        than silently deduplicated."""
        by_dim: list[set] = []
        for f in facets:
            f = tuple(f)
            if len(set(f)) != len(f):
                raise MalformedFacet(f"facet {f} repeats a vertex")
            f = tuple(sorted(f))
            d = len(f) - 1
            while len(by_dim) <= d:
                by_dim.append(set())
            for size in range(1, len(f) + 1):
                for sub in combinations(f, size):
                    by_dim[size - 1].add(sub)
        return cls([sorted(s) for s in by_dim], points=points)

    @property
    def vertices(self) -> list[int]:
        if not self.simplices:
            return []
        return [v for (v,) in self.simplices[0]]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def num_simplices(self, d: int) -> int:
        if 0 <= d < len(self.simplices):
            return len(self.simplices[d])
        return 0

    def index_of(self, simplex) -> int:
        s = tuple(sorted(simplex))
        d = len(s) - 1
        return self.simplices[d].index(s)

    def facets(self) -> list[tuple]:
        """Maximal simplices."""
        out = []
        for d, simps in enumerate(self.simplices):
            if d + 1 < len(self.simplices):
                faces_above = set()
                for s in self.simplices[d + 1]:
                    for i in range(len(s)):
                        faces_above.add(s[:i] + s[i + 1:])
                out.extend(s for s in simps if s not in faces_above)
            else:
                out.extend(simps)
        return out

    def to_chain_complex(self) -> ChainComplex:
        """Boundary matrices with the alternating-sign convention: the
        column of (v_0 < ... < v_k) has entry (-1)^i in the row of the
        face obtained by dropping v_i."""
        if not self.simplices:
            return ChainComplex([], num_vertices=0)
        index = [{s: i for i, s in enumerate(dim_list)}
                 for dim_list in self.simplices]
        mats = []
        for d in range(1, len(self.simplices)):
            rows = len(self.simplices[d - 1])
            cols = len(self.simplices[d])
            data = [[0] * cols for _ in range(rows)]
            for j, s in enumerate(self.simplices[d]):
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    data[index[d - 1][face]][j] = -1 if i % 2 else 1
            mats.append(ExactMatrix(ZZ, data, cols=cols))
        labels = {d: ["-".join(map(str, s)) for s in dim_list]
                  for d, dim_list in enumerate(self.simplices)}
        return ChainComplex(mats, num_vertices=len(self.simplices[0]),
                            cell_labels=labels)

    def to_json(self) -> dict:
        out = {"format": "simplicial-v1",
               "facets": [list(f) for f in self.facets()]}
        if self.points is not None:
            out["points"] = [[str(c) for c in pt] for pt in self.points]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SimplicialComplex":
        if obj.get("format") != "simplicial-v1":
            raise ValueError("not a simplicial-v1 document")
        points = None
        if "points" in obj:
            points = [tuple(Fraction(c) for c in pt) for pt in obj["points"]]
        return cls.from_facets(obj["facets"], points=points)


# ---------------------------------------------------------------------------
# point clouds and Vietoris-Rips
# ---------------------------------------------------------------------------

class PointCloud:
    """Points with exact rational coordinates (decimal input is parsed
    exactly, so distance threshold comparisons are never float-flaky)."""

    def __init__(self, points):
        pts = [tuple(Fraction(str(c)) if not isinstance(c, Fraction) else c
                     for c in p) for p in points]
        if pts:
            d = len(pts[0])
            for p in pts:
                if len(p) != d:
                    raise DimensionMismatch(
                        f"point of dimension {len(p)}, expected {d}")
        self.points = pts

    def __len__(self):
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.points[0]) if self.points else 0

    def squared_distance(self, i: int, j: int) -> Fraction:
        return sum((a - b) ** 2 for a, b in
                   zip(self.points[i], self.points[j]))

    @classmethod
    def from_csv(cls, text: str) -> "PointCloud":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([Fraction(tok.strip()) for tok in line.split(",")])
        return cls(rows)

    def to_csv(self) -> str:
        def fmt(c: Fraction) -> str:
            if c.denominator == 1:
                return str(c.numerator)
            return str(c)
        return "\n".join(",".join(fmt(c) for c in p)
                         for p in self.points) + "\n"


def vietoris_rips(cloud: PointCloud, radius, max_dim: int) -> SimplicialComplex:
    """The clique complex of the proximity graph: an edge joins points at
    Euclidean distance <= radius (closed threshold); higher simplices up
    to max_dim are the cliques of that graph."""
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    radius = Fraction(str(radius)) if not isinstance(radius, Fraction) else radius
    r2 = radius * radius
    n = len(cloud)
    if n == 0:
        return SimplicialComplex([], points=[])
    neighbors = {i: set() for i in range(n)}
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if cloud.squared_distance(i, j) <= r2:
                edges.append((i, j))
                neighbors[i].add(j)
                neighbors[j].add(i)
    by_dim = [[(i,) for i in range(n)], edges]
    current = edges
    for d in range(2, max_dim + 1):
        nxt = []
        for s in current:
            common = set.intersection(*(neighbors[v] for v in s))
            for w in sorted(common):
                if w > s[-1]:
                    nxt.append(s + (w,))
        if not nxt:
            break
        by_dim.append(nxt)
        current = nxt
    return SimplicialComplex(by_dim, points=list(cloud.points))


def integral_nontrivial_cycle(X: ChainComplex, k: int):
    """An integer k-cycle representing a nonzero rational homology class:
    the first echelon kernel vector of d_k that is not a boundary,
    cleared of denominators.  None when H_k(X; Q) = 0."""
    from math import gcd, lcm

    fc = X.instantiate(FieldSpec.rationals())
    Z = fc.cycles(k)
    B = fc.boundaries_space(k)
    for j in range(Z.cols):
        col = Z.column_values(j)
        if B.solve(col) is None:
            scale = lcm(*(v.denominator for v in col)) if col else 1
            ints = [int(v * scale) for v in col]
            g = 0
            for v in ints:
                g = gcd(g, v)
            if g > 1:
                ints = [v // g for v in ints]
            return ints
    return None


def load_complex_json(obj: dict):
    """Dispatch a parsed JSON document to the right builder.

    Returns (chain_complex, simplicial_or_none)."""
    fmt = obj.get("format")
    if fmt == "simplicial-v1":
        sc = SimplicialComplex.from_json(obj)
        return sc.to_chain_complex(), sc
    if fmt == "chain-complex-v1":
        return ChainComplex.from_json(obj), None
    raise ValueError(f"unknown complex format {fmt!r}")


def load_complex_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_complex_json(json.load(fh))
