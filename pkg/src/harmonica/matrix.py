"""Dense exact matrices over the integers, the rationals, or a prime field.

Provides Gaussian elimination (rank / kernel / image / solve), Smith normal
form over the integers with unimodular transforms, and the Moore-Penrose
pseudoinverse over an arbitrary field guarded by the rank test
rank(AA*) = rank(A) = rank(A*A).  All arithmetic is exact; a numpy fast
path accelerates elimination over prime fields for large matrices without
changing results (same pivot rule, same modular arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainMismatch
from .fields import FieldSpec

_NUMPY_CUTOFF = 20_000  # cells; below this pure python wins


class IntegerRing:
    """The ring of integers, as a matrix coefficient domain."""

    characteristic = None
    is_rationals = False

    def of(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def zero(self):
        return 0

    def one(self):
        return 1

    def name(self):
        return "Z"

    def format_value(self, a):
        return str(a)

    def parse_value(self, text):
        return int(text)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")

    def __repr__(self):
        return "IntegerRing()"


ZZ = IntegerRing()


def _domain_from_name(name: str):
    if name == "Z":
        return ZZ
    return FieldSpec.parse(name)


# ---------------------------------------------------------------------------
# elimination kernels
# ---------------------------------------------------------------------------

def _rref_frac(rows, ncols):
    """Reduced row echelon form over Q.  Pivot: first nonzero down the
    column, columns scanned left to right.  Returns (rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = 1 / pv
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _rref_modp(rows, ncols, p):
    """Reduced row echelon form over F_p; same pivot rule as _rref_frac."""
    rows = [[v % p for v in r] for r in rows]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            for j in range(c, ncols):
                prow[j] = prow[j] * inv % p
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def _rref_modp_numpy(rows, ncols, p):
    """numpy elimination over F_p, bit-identical to _rref_modp.

    Safe for p < 2**31 (intermediate products stay below 2**63)."""
    import numpy as np

    A = np.array(rows, dtype=np.int64) % p
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        pv = int(A[r, c])
        if pv != 1:
            A[r] = A[r] * pow(pv, p - 2, p) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - col[mask, None] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [[int(v) for v in row] for row in A], pivots


def _rref(rows, ncols, field):
    p = field.characteristic
    if p == 0:
        return _rref_frac(rows, ncols)
    if p < 2 ** 31 and len(rows) * ncols >= _NUMPY_CUTOFF:
        return _rref_modp_numpy(rows, ncols, p)
    return _rref_modp(rows, ncols, p)


def _det_bareiss(rows):
    """Exact integer determinant by fraction-free elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            ri, rk = M[i], M[k]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def hadamard_bound(rows) -> int:
    """An integer exceeding |det S| for every square submatrix S of the
    given integer matrix (Hadamard's inequality on row norms)."""
    prod = 1
    for r in rows:
        s = sum(v * v for v in r)
        if s:
            prod *= s
    return isqrt(prod) + 1


# ---------------------------------------------------------------------------
# ExactMatrix
# ---------------------------------------------------------------------------

class ExactMatrix:
    """Immutable dense matrix over Z, Q, or F_p.

    Zero-row and zero-column matrices are legal; they show up constantly
    as boundary maps at the ends of a chain complex.
    """

    __slots__ = ("domain", "rows", "cols", "_data", "_rref")

    def __init__(self, domain, data, cols=None):
        self.domain = domain
        data = [tuple(domain.of(v) for v in row) for row in data]
        self.rows = len(data)
        if self.rows:
            self.cols = len(data[0])
            if any(len(r) != self.cols for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != self.cols:
                raise ValueError("explicit column count disagrees with data")
        else:
            self.cols = 0 if cols is None else cols
        self._data = tuple(data)
        self._rref = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, domain, m, n):
        z = domain.zero()
        return cls(domain, [[z] * n for _ in range(m)], cols=n)

    @classmethod
    def identity(cls, domain, n):
        z, o = domain.zero(), domain.one()
        return cls(domain, [[o if i == j else z for j in range(n)]
                            for i in range(n)], cols=n)

    @classmethod
    def column(cls, domain, values):
        return cls(domain, [[v] for v in values], cols=1)

    @classmethod
    def from_columns(cls, domain, columns, rows=None):
        if not columns:
            return cls.zeros(domain, rows or 0, 0)
        m = len(columns[0])
        return cls(domain, [[col[i] for col in columns] for i in range(m)],
                   cols=len(columns))

    # -- basics ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return list(self._data[i])

    def column_values(self, j):
        return [r[j] for r in self._data]

    def row_lists(self):
        return [list(r) for r in self._data]

    def columns(self):
        return [self.column_values(j) for j in range(self.cols)]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix)
                and self.domain == other.domain
                and self.rows == other.rows and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self):
        return hash((self.domain, self.rows, self.cols, self._data))

    def __repr__(self):
        return (f"ExactMatrix({self.domain.name()}, {self.rows}x{self.cols}, "
                f"{[list(r) for r in self._data]!r})")

    def is_zero(self):
        z = self.domain.zero()
        return all(v == z for r in self._data for v in r)

    def is_square(self):
        return self.rows == self.cols

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def transpose(self):
        return ExactMatrix(
            self.domain,
            [[self._data[i][j] for i in range(self.rows)]
             for j in range(self.cols)],
            cols=self.rows)

    @property
    def T(self):
        return self.transpose()

    def _check_domain(self, other):
        if self.domain != other.domain:
            raise DomainMismatch(
                f"{self.domain.name()} vs {other.domain.name()}")

    def __add__(self, other):
        self._check_domain(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return ExactMatrix(
            self.domain,
            [[a + b for a, b in zip(ra, rb)]
             for ra, rb in zip(self._data, other._data)],
            cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix(self.domain,
                           [[-v for v in r] for r in self._data],
                           cols=self.cols)

    def scaled(self, c):
        c = self.domain.of(c)
        return ExactMatrix(self.domain,
                           [[v * c for v in r] for r in self._data],
                           cols=self.cols)

    def __matmul__(self, other):
        self._check_domain(other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}")
        p = self.domain.characteristic
        if self.rows * self.cols >= _NUMPY_CUTOFF:
            fast = self._matmul_numpy(other, p)
            if fast is not None:
                return fast
        bt = [other.column_values(j) for j in range(other.cols)]
        out = []
        for ra in self._data:
            if p:
                out.append([sum(a * b for a, b in zip(ra, cb)) % p
                            for cb in bt])
            else:
                out.append([sum(a * b for a, b in zip(ra, cb))
                            for cb in bt])
        return ExactMatrix(self.domain, out, cols=other.cols)

    def _matmul_numpy(self, other, p):
        """Exact int64 product for large matrices with integer values
        (over Z, F_p, or Q with integral entries); returns None when the
        values are fractional or could overflow 64 bits."""
        import numpy as np

        def int_rows(mat):
            if mat.domain.characteristic == 0:
                rows = []
                for row in mat._data:
                    out = []
                    for v in row:
                        if v.denominator != 1:
                            return None
                        out.append(v.numerator)
                    rows.append(out)
                return rows
            return mat.row_lists()

        ra, rb = int_rows(self), int_rows(other)
        if ra is None or rb is None:
            return None
        try:
            A = np.array(ra, dtype=np.int64).reshape(self.rows, self.cols)
            B = np.array(rb, dtype=np.int64).reshape(other.rows, other.cols)
        except OverflowError:
            return None
        if p:
            A %= p
            B %= p
            if self.cols * (p - 1) * (p - 1) >= 2 ** 62:
                return None
            C = (A @ B) % p
        else:
            amax = int(np.abs(A).max()) if A.size else 0
            bmax = int(np.abs(B).max()) if B.size else 0
            if self.cols * amax * bmax >= 2 ** 62:
                return None
            C = A @ B
        return ExactMatrix(self.domain,
                           [[int(v) for v in row] for row in C],
                           cols=other.cols)

    def apply(self, vector):
        """Matrix-vector product on a plain list of raw values."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        p = self.domain.characteristic
        if p:
            return [sum(a * b for a, b in zip(r, vector)) % p
                    for r in self._data]
        return [sum(a * b for a, b in zip(r, vector)) for r in self._data]

    @staticmethod
    def hstack(mats):
        mats = list(mats)
        first = mats[0]
        for m in mats[1:]:
            first._check_domain(m)
            if m.rows != first.rows:
                raise ValueError("row count mismatch in hstack")
        data = [sum((m.row(i) for m in mats), []) for i in range(first.rows)]
        return ExactMatrix(first.domain, data,
                           cols=sum(m.cols for m in mats))

    @staticmethod
    def vstack(mats):
        mats = list(mats)
        first = mats[0]
        for m in mats[1:]:
            first._check_domain(m)
            if m.cols != first.cols:
                raise ValueError("column count mismatch in vstack")
        data = [r for m in mats for r in m.row_lists()]
        return ExactMatrix(first.domain, data, cols=first.cols)

    def submatrix(self, row_indices=None, col_indices=None):
        ri = range(self.rows) if row_indices is None else row_indices
        ci = range(self.cols) if col_indices is None else col_indices
        return ExactMatrix(self.domain,
                           [[self._data[i][j] for j in ci] for i in ri],
                           cols=len(list(ci)))

    # -- domain changes ----------------------------------------------------

    def to_field(self, field: FieldSpec):
        """Reinterpret entries in the given field (integers reduce mod p)."""
        return ExactMatrix(field, self._data, cols=self.cols)

    def to_rationals(self):
        if self.domain == ZZ:
            return ExactMatrix(FieldSpec.rationals(), self._data,
                               cols=self.cols)
        if isinstance(self.domain, FieldSpec) and self.domain.is_rationals:
            return self
        raise DomainMismatch("cannot lift a prime-field matrix to Q")

    def _as_field(self):
        if self.domain == ZZ:
            return self.to_rationals()
        return self

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Cached reduced row echelon form: (rows, pivot_columns)."""
        if self._rref is None:
            fm = self._as_field()
            rows, pivots = _rref(fm.row_lists(), fm.cols, fm.domain)
            self._rref = (tuple(tuple(r) for r in rows), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullity(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self):
        """Columns form a deterministic (echelon-derived) basis of ker(A).

        Over Z the kernel is computed over Q.  Free columns are taken in
        ascending order; the vector for free column f has entry 1 there.
        """
        fm = self._as_field()
        field = fm.domain
        rows, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        cols = []
        one, zero = field.one(), field.zero()
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for r, pc in enumerate(pivots):
                v[pc] = field.neg(rows[r][f])
            cols.append(v)
        return ExactMatrix.from_columns(field, cols, rows=self.cols)

    def image_basis(self):
        """Columns of A at the echelon pivot positions: a deterministic
        basis of the column space."""
        fm = self._as_field()
        _, pivots = self.rref()
        cols = [fm.column_values(j) for j in pivots]
        return ExactMatrix.from_columns(fm.domain, cols, rows=self.rows)

    def solve(self, b):
        """Any x with Ax = b, or None when the system is inconsistent.

        b may hold raw values or Scalars; Scalars must match A's field."""
        from .fields import Scalar

        fm = self._as_field()
        field = fm.domain
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        raw = []
        for v in b:
            if isinstance(v, Scalar):
                if v.field != self.domain:
                    raise DomainMismatch(
                        f"vector over {v.field.name()} against matrix over "
                        f"{self.domain.name()}")
                raw.append(v.value)
            else:
                raw.append(v)
        b = [field.of(v) for v in raw]
        aug_rows = [row + [bv] for row, bv in zip(fm.row_lists(), b)]
        rows, pivots = _rref(aug_rows, fm.cols + 1, field)
        if fm.cols in pivots:
            return None
        x = [field.zero()] * fm.cols
        for r, pc in enumerate(pivots):
            x[pc] = rows[r][fm.cols]
        return x

    def solve_matrix(self, B):
        """X with A X = B, or None; A must have full column rank."""
        fm = self._as_field()
        Bf = B._as_field()
        fm._check_domain(Bf)
        if fm.rows != Bf.rows:
            raise ValueError("row count mismatch")
        n, k = fm.cols, Bf.cols
        aug = [fa + fb for fa, fb in zip(fm.row_lists(), Bf.row_lists())]
        rows, pivots = _rref(aug, n + k, fm.domain)
        main_pivots = [p for p in pivots if p < n]
        if len(main_pivots) != n:
            raise ValueError("solve_matrix requires full column rank")
        if any(p >= n for p in pivots):
            return None
        return ExactMatrix(fm.domain, [list(rows[r][n:]) for r in range(n)],
                           cols=k)

    def inverse(self):
        """Inverse of a square matrix over a field, or None if singular."""
        fm = self._as_field()
        if fm.rows != fm.cols:
            raise ValueError("inverse of a non-square matrix")
        n = fm.rows
        ident = ExactMatrix.identity(fm.domain, n)
        aug = [fa + fi for fa, fi in zip(fm.row_lists(), ident.row_lists())]
        rows, pivots = _rref(aug, 2 * n, fm.domain)
        if len([p for p in pivots if p < n]) != n:
            return None
        return ExactMatrix(fm.domain, [list(rows[r][n:]) for r in range(n)],
                           cols=n)

    def det(self):
        """Exact determinant (integer over Z, field element otherwise)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.domain == ZZ:
            return _det_bareiss(self.row_lists())
        field = self.domain
        rows = self.row_lists()
        n = self.rows
        if n == 0:
            return field.one()
        det = field.one()
        for c in range(n):
            pr = -1
            for i in range(c, n):
                if rows[i][c] != field.zero():
                    pr = i
                    break
            if pr < 0:
                return field.zero()
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = field.neg(det)
            pv = rows[c][c]
            det = field.mul(det, pv)
            inv = field.inv(pv)
            for i in range(c + 1, n):
                f = field.mul(rows[i][c], inv)
                if f != field.zero():
                    for j in range(c, n):
                        rows[i][j] = field.sub(rows[i][j],
                                               field.mul(f, rows[c][j]))
        return det

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        z = self.domain.zero()
        for i, row in enumerate(self._data):
            for j, v in enumerate(row):
                if v != z:
                    entries.append([i, j, self.domain.format_value(v)])
        return {"rows": self.rows, "cols": self.cols,
                "field": self.domain.name(), "entries": entries}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMatrix":
        domain = _domain_from_name(obj["field"])
        m, n = obj["rows"], obj["cols"]
        z = domain.zero()
        data = [[z] * n for _ in range(m)]
        for i, j, v in obj["entries"]:
            data[i][j] = domain.parse_value(v) if isinstance(v, str) else domain.of(v)
        return cls(domain, data, cols=n)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    """S @ A @ T = D with S, T unimodular and D in Smith normal form:
    nonnegative diagonal, nonzero entries first, each dividing the next."""

    S: ExactMatrix
    D: ExactMatrix
    T: ExactMatrix

    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    def nonzero_diagonal(self) -> list[int]:
        return [d for d in self.diagonal() if d != 0]


def smith_normal_form(A: ExactMatrix) -> SnfResult:
    """Smith normal form by gcd-driven row/column reduction.

    Pivot selection: minimal nonzero absolute value in the remaining
    submatrix, ties broken row-major.  Intermediate entries use arbitrary
    precision, so entry growth is tolerated rather than managed.
    """
    if A.domain != ZZ:
        raise DomainMismatch("Smith normal form is defined over Z")
    m, n = A.rows, A.cols
    M = A.row_lists()
    S = ExactMatrix.identity(ZZ, m).row_lists()
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # T is tracked column-wise through row ops on its transpose
    Tt = T

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        Tt[i], Tt[j] = Tt[j], Tt[i]

    def row_sub(i, j, q):
        # row i -= q * row j
        Mi, Mj = M[i], M[j]
        for c in range(n):
            Mi[c] -= q * Mj[c]
        Si, Sj = S[i], S[j]
        for c in range(m):
            Si[c] -= q * Sj[c]

    def col_sub(i, j, q):
        # col i -= q * col j
        for row in M:
            row[i] -= q * row[j]
        Ti, Tj = Tt[i], Tt[j]
        for c in range(n):
            Ti[c] -= q * Tj[c]

    def negate_row(i):
        M[i] = [-v for v in M[i]]
        S[i] = [-v for v in S[i]]

    t = 0
    while t < min(m, n):
        # locate the smallest nonzero entry of the trailing submatrix
        best = None
        best_abs = 0
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < best_abs):
                    best = (i, j)
                    best_abs = abs(v)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if M[t][t] < 0:
            negate_row(t)
        pivot = M[t][t]
        # clear the pivot column and row; floor quotients leave remainders
        # in [0, pivot), which the outer loop then picks as smaller pivots
        for i in range(t + 1, m):
            if M[i][t]:
                row_sub(i, t, M[i][t] // pivot)
        for j in range(t + 1, n):
            if M[t][j]:
                col_sub(j, t, M[t][j] // pivot)
        if any(M[i][t] for i in range(t + 1, m)) or \
           any(M[t][j] for j in range(t + 1, n)):
            continue
        # enforce divisibility of the trailing block by the pivot
        viol = None
        for i in range(t + 1, m):
            Mi = M[i]
            for j in range(t + 1, n):
                if Mi[j] % pivot:
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            row_sub(t, viol, -1)  # pull the offending row into row t
            continue
        t += 1
    Smat = ExactMatrix(ZZ, S, cols=m)
    Dmat = ExactMatrix(ZZ, M, cols=n)
    Tmat = ExactMatrix(ZZ, Tt, cols=n).transpose()
    return SnfResult(Smat, Dmat, Tmat)


def cokernel_order(A: ExactMatrix):
    """|coker(A)| for an integer matrix with full row rank, else None.

    Equals the product of the nonzero Smith normal form diagonal entries,
    computed by Euclidean column reduction to triangular form (cheaper
    than full SNF; no transforms are needed)."""
    if A.domain != ZZ:
        raise DomainMismatch("cokernel order is defined over Z")
    m, n = A.rows, A.cols
    if m == 0:
        return 1
    if n < m:
        return None
    cols = [A.column_values(j) for j in range(n)]
    order = 1
    for i in range(m):
        # Euclid across columns i.. until row i has a single nonzero entry
        while True:
            jmin = -1
            vmin = 0
            for j in range(i, n):
                v = cols[j][i]
                if v and (jmin < 0 or abs(v) < vmin):
                    jmin, vmin = j, abs(v)
            if jmin < 0:
                return None  # rank < m
            others = [j for j in range(i, n) if j != jmin and cols[j][i]]
            if not others:
                break
            cj = cols[jmin]
            piv = cj[i]
            for j in others:
                q = cols[j][i] // piv
                if q:
                    co = cols[j]
                    for r in range(i, m):
                        co[r] -= q * cj[r]
        if jmin != i:
            cols[i], cols[jmin] = cols[jmin], cols[i]
        order *= abs(cols[i][i])
    return order


# ---------------------------------------------------------------------------
# Moore-Penrose pseudoinverse over an arbitrary field
# ---------------------------------------------------------------------------

def satisfies_penrose_axioms(A: ExactMatrix, B: ExactMatrix) -> bool:
    """The four Penrose conditions, with transpose standing in for the
    conjugate transpose (our bilinear forms are symmetric)."""
    if (B.rows, B.cols) != (A.cols, A.rows):
        return False
    AB = A @ B
    BA = B @ A
    return (AB @ A == A and BA @ B == B
            and AB.is_symmetric() and BA.is_symmetric())


def pseudoinverse(A: ExactMatrix):
    """The Moore-Penrose pseudoinverse over A's field, or None.

    Existence over an arbitrary field holds iff
    rank(AA*) = rank(A) = rank(A*A); non-existence is an expected outcome
    over positive characteristic, so it is reported as a value rather
    than an error.  When A has full row rank and AA* is invertible this
    agrees with A*(AA*)^(-1).

    Computed through a full-rank factorization A = FG with F an
    echelon-derived column basis of the image:
    A+ = G*(GG*)^(-1)(F*F)^(-1)F*.
    """
    if not isinstance(A.domain, FieldSpec):
        raise DomainMismatch("pseudoinverse requires a field")
    r = A.rank()
    if r == 0:
        return ExactMatrix.zeros(A.domain, A.cols, A.rows)
    At = A.transpose()
    if (A @ At).rank() != r or (At @ A).rank() != r:
        return None
    F = A.image_basis()                # rows x r
    G = F.solve_matrix(A)              # r x cols, F @ G == A
    Gt = G.transpose()
    Ft = F.transpose()
    ggt_inv = (G @ Gt).inverse()
    ftf_inv = (Ft @ F).inverse()
    if ggt_inv is None or ftf_inv is None:  # cannot happen when the rank
        return None                         # condition holds; guard anyway
    return Gt @ ggt_inv @ ftf_inv @ Ft
