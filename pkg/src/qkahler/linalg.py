"""Exact linear algebra over Q(i)(q) scalars.

Row reduction runs fraction-free (Bareiss single-step updates) on rows
cleared to Laurent polynomials, deferring all field division to the final
reduced-echelon pass.  Pivots inside a column are chosen by lowest term
count, then smallest exponent span, then position, which keeps intermediate
entries small and the result deterministic.

A separate rational LDL* routine certifies positive definiteness of
Hermitian Gaussian-rational matrices by exhibiting exact pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import (
    ZERO, ONE, GaussianRational, LaurentPoly, Scalar, _laurent_gcd,
)

_LP_ONE = LaurentPoly({0: GaussianRational(1)})


class ScalarMatrix:
    """Dense matrix with Scalar entries.

    The column count is stored explicitly so zero-row matrices (maps into a
    zero space) keep their shape.
    """

    __slots__ = ("rows", "_ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [list(r) for r in rows]
        if self.rows:
            self._ncols = len(self.rows[0])
            if any(len(r) != self._ncols for r in self.rows):
                raise ValueError("ragged rows")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit ncols")
            self._ncols = ncols

    @staticmethod
    def zeros(nr: int, nc: int) -> "ScalarMatrix":
        return ScalarMatrix([[ZERO] * nc for _ in range(nr)], ncols=nc)

    @staticmethod
    def identity(m: int) -> "ScalarMatrix":
        out = ScalarMatrix.zeros(m, m)
        for i in range(m):
            out.rows[i][i] = ONE
        return out

    @staticmethod
    def from_columns(cols, nrows: int) -> "ScalarMatrix":
        out = ScalarMatrix.zeros(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                out.rows[i][j] = v
        return out

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self.rows == other.rows

    def __add__(self, other):
        return ScalarMatrix([[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.rows, other.rows)],
                            ncols=self._ncols)

    def __sub__(self, other):
        return ScalarMatrix([[a - b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.rows, other.rows)],
                            ncols=self._ncols)

    def __neg__(self):
        return ScalarMatrix([[-a for a in r] for r in self.rows],
                            ncols=self._ncols)

    def scale(self, c) -> "ScalarMatrix":
        return ScalarMatrix([[a * c for a in r] for r in self.rows],
                            ncols=self._ncols)

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.ncols} vs {other.nrows}")
        ocols = other.ncols
        out = []
        for r in self.rows:
            row = []
            for j in range(ocols):
                acc = ZERO
                for k, a in enumerate(r):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ScalarMatrix(out, ncols=ocols)

    def apply(self, vec: list) -> list:
        return [sum((a * v for a, v in zip(r, vec) if a and v), ZERO)
                for r in self.rows]

    def transpose(self) -> "ScalarMatrix":
        if not self.rows:
            return ScalarMatrix([[] for _ in range(self._ncols)] if self._ncols
                                else [], ncols=0)
        return ScalarMatrix([list(c) for c in zip(*self.rows)],
                            ncols=self.nrows)

    def conjugate(self) -> "ScalarMatrix":
        return ScalarMatrix([[a.conjugate() for a in r] for r in self.rows],
                            ncols=self._ncols)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(a) for a in r) + "]"
                         for r in self.rows)

    __repr__ = __str__


def _laurent_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    g = _laurent_gcd(a, b)
    return a * b.exact_div(g) if not g.is_unit() else a * b


def _clear_row(row) -> list:
    """Scale a Scalar row to Laurent polynomial entries."""
    dens = [s.den for s in row if not s.is_polynomial()]
    if not dens:
        return [s.num for s in row]
    common = dens[0]
    for d in dens[1:]:
        common = _laurent_lcm(common, d)
    return [(s.num * common.exact_div(s.den)) for s in row]


def _pivot_key(p: LaurentPoly):
    return (len(p.terms), p.max_exp() - p.min_exp())


def _bareiss(rows):
    """Fraction-free forward elimination in place.

    Returns (pivots, swap_sign) where pivots is a list of (row, col) pairs.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    sign = 1
    prev = _LP_ONE
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        best = None
        for i in range(r, nr):
            if rows[i][c]:
                k = _pivot_key(rows[i][c])
                if best is None or k < best[0]:
                    best = (k, i)
        if best is None:
            continue
        i = best[1]
        if i != r:
            rows[i], rows[r] = rows[r], rows[i]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nr):
            head = rows[i][c]
            if head:
                for j in range(c + 1, nc):
                    rows[i][j] = (piv * rows[i][j] - head * rows[r][j]).exact_div(prev)
                rows[i][c] = LaurentPoly()
            else:
                # rows untouched by the pivot step still scale by piv/prev,
                # keeping every entry an exact minor of the cleared matrix
                for j in range(c + 1, nc):
                    if rows[i][j]:
                        num = piv * rows[i][j]
                        rows[i][j] = num if prev is _LP_ONE else num.exact_div(prev)
        prev = piv
        pivots.append((r, c))
        r += 1
    return pivots, sign


def _rref(matrix: ScalarMatrix):
    """Reduced row echelon form over the field; returns (rows, pivots)."""
    if matrix.nrows == 0:
        return [], []
    rows = [_clear_row(r) for r in matrix.rows]
    pivots, _ = _bareiss(rows)
    srows = [[Scalar(v) if v else ZERO for v in r] for r in rows]
    for r, c in reversed(pivots):
        piv = srows[r][c]
        srows[r] = [v / piv for v in srows[r]]
        for i in range(r):
            f = srows[i][c]
            if f:
                srows[i] = [a - f * b for a, b in zip(srows[i], srows[r])]
    return srows, pivots


def rank(matrix: ScalarMatrix) -> int:
    if matrix.nrows == 0:
        return 0
    rows = [_clear_row(r) for r in matrix.rows]
    pivots, _ = _bareiss(rows)
    return len(pivots)


def determinant(matrix: ScalarMatrix) -> Scalar:
    if matrix.nrows != matrix.ncols:
        raise ValueError("determinant of a non-square matrix")
    if matrix.nrows == 0:
        return ONE
    dens = ONE
    rows = []
    for row in matrix.rows:
        cleared = _clear_row(row)
        # record the scaling factor applied when clearing this row
        for orig, new in zip(row, cleared):
            if orig:
                dens = dens * (Scalar(new) / orig)
                break
        else:
            return ZERO
        rows.append(cleared)
    pivots, sign = _bareiss(rows)
    if len(pivots) < matrix.nrows:
        return ZERO
    r, c = pivots[-1]
    d = Scalar(rows[r][c])
    return (d if sign > 0 else -d) / dens


def kernel_basis(matrix: ScalarMatrix) -> list:
    """Deterministic basis of {x : M x = 0}, one vector per free column."""
    nc = matrix.ncols
    srows, pivots = _rref(matrix)
    pivot_cols = [c for _, c in pivots]
    pivot_of = {c: r for r, c in pivots}
    free = [c for c in range(nc) if c not in pivot_of]
    out = []
    for f in free:
        vec = [ZERO] * nc
        vec[f] = ONE
        for c in pivot_cols:
            vec[c] = -srows[pivot_of[c]][f]
        out.append(vec)
    return out


def solve(matrix: ScalarMatrix, rhs: ScalarMatrix) -> ScalarMatrix:
    """Solve M X = B for X; requires full column rank and consistency."""
    if matrix.nrows != rhs.nrows:
        raise ValueError("right hand side has wrong height")
    nc = matrix.ncols
    if nc == 0:
        return ScalarMatrix.zeros(0, rhs.ncols)
    aug = ScalarMatrix([mr + rr for mr, rr in zip(matrix.rows, rhs.rows)],
                       ncols=nc + rhs.ncols)
    srows, pivots = _rref(aug)
    pivot_of = {c: r for r, c in pivots}
    for c in range(nc, aug.ncols):
        if c in pivot_of:
            raise ValueError("inconsistent linear system")
    if len(pivot_of) != nc:
        raise ValueError("system is underdetermined")
    out = ScalarMatrix.zeros(nc, rhs.ncols)
    for c in range(nc):
        r = pivot_of[c]
        out.rows[c] = srows[r][nc:]
    return out


def inverse(matrix: ScalarMatrix) -> ScalarMatrix:
    if matrix.nrows != matrix.ncols:
        raise ValueError("inverse of a non-square matrix")
    return solve(matrix, ScalarMatrix.identity(matrix.nrows))


# ---------------------------------------------------------------------------
# Rational LDL* certification
# ---------------------------------------------------------------------------

@dataclass
class LDLCertificate:
    q0: Fraction
    pivots: list
    permutation: list
    positive_definite: bool
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "q0": str(self.q0),
            "pivots": [str(p) for p in self.pivots],
            "permutation": self.permutation,
            "verdict": "positive-definite" if self.positive_definite
                       else "not-positive-definite",
            "reason": self.reason,
        }


def hermitian_ldl(entries, q0) -> LDLCertificate:
    """Exact LDL* with symmetric pivoting on a Hermitian matrix over Q(i).

    entries: square list-of-lists of GaussianRational.  Positive definite
    iff the returned certificate carries a full set of positive pivots.
    """
    m = len(entries)
    a = [[entries[i][j] for j in range(m)] for i in range(m)]
    for i in range(m):
        if not a[i][i].is_real():
            return LDLCertificate(q0, [], [], False, "non-real diagonal")
        for j in range(i):
            if a[i][j] != a[j][i].conjugate():
                return LDLCertificate(q0, [], [], False, "not Hermitian")
    remaining = list(range(m))
    perm = []
    pivots = []
    while remaining:
        pick = None
        for idx in remaining:
            if a[idx][idx].re > 0:
                pick = idx
                break
        if pick is None:
            return LDLCertificate(q0, pivots, perm, False,
                                  "no positive pivot available")
        d = a[pick][pick]
        perm.append(pick)
        pivots.append(d.re)
        remaining.remove(pick)
        for i in remaining:
            for j in remaining:
                a[i][j] = a[i][j] - a[i][pick] * a[pick][j] / d
    return LDLCertificate(q0, pivots, perm, True)
