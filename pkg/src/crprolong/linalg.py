"""Exact dense linear algebra over Q(i) and a sparse integer nullspace kernel.

Design notes
------------
* ``ExactMatrix`` is immutable; every operation returns a new object, so
  matrices can be shared freely across threads.
* Determinants use fraction-free Bareiss elimination over the Gaussian
  integers (denominators are cleared first); all divisions are exact.
* Nullspace bases are canonical: the unique basis obtained from the reduced
  row echelon form of the matrix, one vector per free column, the free
  variable set to 1 and other free variables to 0, ordered by free column
  index.  Any elimination order yields this same basis, which is what makes
  all downstream output deterministic.
* The heavy prolongation systems are all-real with small integer entries
  after scaling; ``sparse_int_nullspace`` eliminates them on dict-of-column
  rows with gcd content removal (fraction-free, no entry blowup) and then
  canonicalizes, which is orders of magnitude faster than dense elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionError, InternalCheckError
from .scalars import GR_ONE, GR_ZERO, GaussianRational

# ---------------------------------------------------------------------------
# Gaussian-integer helpers for Bareiss (entries held as (re, im) int pairs)
# ---------------------------------------------------------------------------


def _gi_mul(a, b):
    ar, ai = a
    br, bi = b
    return (ar * br - ai * bi, ar * bi + ai * br)


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_divexact(a, d):
    # a / d in Z[i]; Bareiss guarantees exactness (quotients are minors).
    dr, di = d
    n = dr * dr + di * di
    ar, ai = a
    rr = ar * dr + ai * di
    ri = ai * dr - ar * di
    qr, mr = divmod(rr, n)
    qi, mi = divmod(ri, n)
    if mr or mi:
        raise InternalCheckError("non-exact Gaussian integer division in Bareiss")
    return (qr, qi)


class ExactMatrix:
    """Immutable dense matrix with GaussianRational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(GaussianRational(x) if not isinstance(x, GaussianRational) else x
                              for x in row) for row in entries)
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        if any(len(r) != cols for r in entries):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix([[GR_ONE if i == j else GR_ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix([[GR_ZERO] * cols for _ in range(rows)])

    # -- basics ----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def __add__(self, other):
        self._same_shape(other)
        return ExactMatrix([[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return ExactMatrix([[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.entries, other.entries)])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational(c) if not isinstance(c, GaussianRational) else c
        return ExactMatrix([[c * x for x in row] for row in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError("incompatible shapes for product")
        bt = list(zip(*other.entries)) if other.rows else []
        out = []
        for row in self.entries:
            out.append([sum((a * b for a, b in zip(row, col)), GR_ZERO) for col in bt])
        return ExactMatrix(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.entries)) if self.rows else [[]])

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j].conjugate() for i in range(self.rows)]
                            for j in range(self.cols)])

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self.entries[i][j] != self.entries[j][i].conjugate():
                    return False
        return True

    def is_real(self) -> bool:
        return all(x.is_real() for row in self.entries for x in row)

    def apply(self, vec):
        """Matrix times column vector (sequence of GaussianRational-likes)."""
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        vec = [GaussianRational(v) if not isinstance(v, GaussianRational) else v for v in vec]
        return tuple(sum((a * v for a, v in zip(row, vec)), GR_ZERO) for row in self.entries)

    # -- text ------------------------------------------------------------
    def to_lists(self):
        return [[str(x) for x in row] for row in self.entries]

    @staticmethod
    def from_lists(data) -> "ExactMatrix":
        return ExactMatrix([[GaussianRational.parse(x) if isinstance(x, str) else x
                             for x in row] for row in data])

    # -- elimination -------------------------------------------------------
    def rref(self):
        """Reduced row echelon form.  Returns (ExactMatrix, pivot column tuple)."""
        m = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = GR_ONE / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ExactMatrix(m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self):
        """Canonical kernel basis: list of tuples, one per free column."""
        if self.is_real():
            rows = []
            for row in self.entries:
                d = lcm(*(x.re.denominator for x in row)) if self.cols else 1
                sr = {j: int(x.re * d) for j, x in enumerate(row) if x.re}
                if sr:
                    rows.append(sr)
            basis = sparse_int_nullspace(rows, self.cols)
            return [tuple(GaussianRational(x) for x in v) for v in basis]
        rr, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        out = []
        for f in free:
            v = [GR_ZERO] * self.cols
            v[f] = GR_ONE
            for r, p in enumerate(pivots):
                if rr.entries[r][f]:
                    v[p] = -rr.entries[r][f]
            out.append(tuple(v))
        return out

    def solve(self, rhs):
        """One exact solution of ``self @ x = rhs`` (free vars 0), or None."""
        if len(rhs) != self.rows:
            raise DimensionError("rhs length mismatch")
        if self.rows == 0:
            return tuple([GR_ZERO] * self.cols)
        aug = ExactMatrix([list(row) + [GaussianRational(b) if not isinstance(b, GaussianRational) else b]
                           for row, b in zip(self.entries, [*rhs])])
        rr, pivots = aug.rref()
        if self.cols in pivots:
            return None  # inconsistent: pivot in the augmented column
        x = [GR_ZERO] * self.cols
        for r, p in enumerate(pivots):
            x[p] = rr.entries[r][self.cols]
        return tuple(x)

    def determinant(self) -> GaussianRational:
        if self.rows != self.cols:
            raise DimensionError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return GR_ONE
        # clear denominators row by row; Bareiss over Z[i]
        scale = Fraction(1)
        m = []
        for row in self.entries:
            d = lcm(*(lcm(x.re.denominator, x.im.denominator) for x in row))
            scale *= d
            m.append([(int(x.re * d), int(x.im * d)) for x in row])
        sign = 1
        prev = (1, 0)
        for k in range(n - 1):
            pr = next((i for i in range(k, n) if m[i][k] != (0, 0)), None)
            if pr is None:
                return GR_ZERO
            if pr != k:
                m[k], m[pr] = m[pr], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                rik = m[i][k]
                for j in range(k + 1, n):
                    m[i][j] = _gi_divexact(
                        _gi_sub(_gi_mul(pivot, m[i][j]), _gi_mul(rik, m[k][j])), prev)
                m[i][k] = (0, 0)
            prev = pivot
        dr, di = m[n - 1][n - 1]
        return GaussianRational(Fraction(sign * dr) / scale, Fraction(sign * di) / scale)


# module-level aliases matching the operation surface
def conj_transpose(m: ExactMatrix) -> ExactMatrix:
    return m.conj_transpose()


def determinant(m: ExactMatrix) -> GaussianRational:
    return m.determinant()


def nullspace(m: ExactMatrix):
    return m.nullspace()


def rank(m: ExactMatrix) -> int:
    return m.rank()


def solve(m: ExactMatrix, rhs):
    return m.solve(rhs)


# ---------------------------------------------------------------------------
# sparse integer kernel
# ---------------------------------------------------------------------------


def _content_normalize(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def sparse_int_nullspace(rows, ncols: int):
    """Exact kernel of an integer matrix given as sparse rows.

    ``rows``: iterable of dict[col -> nonzero int].  Returns the canonical
    nullspace basis as a list of dense tuples of Fractions (free variable 1,
    ordered by free column index) — identical to the dense RREF route.
    """
    work = {}
    col_rows = {}           # col -> set of active row ids containing it
    for rid, row in enumerate(r for r in rows if r):
        row = _content_normalize(dict(row))
        work[rid] = row
        for c in row:
            col_rows.setdefault(c, set()).add(rid)

    order = []              # (pivot row dict, pivot col) in elimination order
    while work:
        # pivot column: fewest active rows; pivot row: shortest, then smallest
        # |value|, then smallest id.  Any choice gives the same canonical
        # answer; this one keeps fill-in low.
        pc = min((c for c, s in col_rows.items() if s),
                 key=lambda c: (len(col_rows[c]), c), default=None)
        if pc is None:
            break
        pr = min(col_rows[pc], key=lambda r: (len(work[r]), abs(work[r][pc]), r))
        prow = work.pop(pr)
        pval = prow[pc]
        for c in prow:
            col_rows[c].discard(pr)
        for rid in list(col_rows[pc]):
            row = work[rid]
            b = row[pc]
            new = {}
            for c, v in row.items():
                t = pval * v
                if c in prow:
                    t -= b * prow[c]
                if t:
                    new[c] = t
            for c, v in prow.items():
                if c not in row:
                    t = -b * v
                    if t:
                        new[c] = t
            new = _content_normalize(new)
            for c in row.keys() - new.keys():
                col_rows[c].discard(rid)
            for c in new.keys() - row.keys():
                col_rows.setdefault(c, set()).add(rid)
            work[rid] = new
            if not new:
                del work[rid]
        order.append((prow, pc))

    pivot_cols = {pc for _, pc in order}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    # back-substitute one kernel vector per free column (reverse elimination
    # order: each row's non-pivot support is free cols or later pivots)
    raw = []
    for f in free_cols:
        x = {f: Fraction(1)}
        for prow, pc in reversed(order):
            s = Fraction(0)
            for c, v in prow.items():
                if c != pc and c in x:
                    s += v * x[c]
            if s:
                x[pc] = -s / prow[pc]
        raw.append(x)

    return _canonical_kernel_basis(raw, ncols)


def _canonical_kernel_basis(vectors, ncols: int):
    """Reduce a kernel basis to the canonical free-variable form.

    Unique reduced form with respect to *trailing* positions: each basis
    vector ends in a 1 at a distinct column and every other vector vanishes
    there.  For a kernel this coincides with the basis read off the RREF of
    the original matrix, independent of how the basis was produced.
    """
    zero = Fraction(0)
    reduced = {}            # trailing col -> dict vector
    for vec in vectors:
        vec = {c: Fraction(v) for c, v in vec.items() if v}
        while vec:
            t = max(vec)
            if t in reduced:
                lead = reduced[t]
                f = vec[t]
                vec = {c: nv for c in vec.keys() | lead.keys()
                       if (nv := vec.get(c, zero) - f * lead.get(c, zero))}
                continue
            inv = vec[t]
            vec = {c: v / inv for c, v in vec.items()}
            # clear the new vector at every existing trailing column (each
            # reduced vector vanishes at the *other* trailing columns, so this
            # cannot reintroduce anything)
            for t2, lead in reduced.items():
                if t2 in vec:
                    f = vec[t2]
                    vec = {c: nv for c in vec.keys() | lead.keys()
                           if (nv := vec.get(c, zero) - f * lead.get(c, zero))}
            for other in reduced.values():
                if t in other:
                    f = other[t]
                    for c, v in vec.items():
                        nv = other.get(c, zero) - f * v
                        if nv:
                            other[c] = nv
                        else:
                            other.pop(c, None)
            reduced[t] = vec
            break
    out = []
    for t in sorted(reduced):
        v = reduced[t]
        dense = [Fraction(0)] * ncols
        for c, val in v.items():
            dense[c] = val
        out.append(tuple(dense))
    return out


class RationalRowBasis:
    """Factorization of a set of independent rational row vectors.

    Used to express new vectors as exact linear combinations of the rows
    (membership solve).  Raises InternalCheckError if the rows turn out to
    be dependent or a queried vector lies outside their span.
    """

    def __init__(self, rows):
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        # Gauss-Jordan with bookkeeping: reduced rows + the transform matrix
        red = [list(map(Fraction, r)) for r in rows]
        trans = [[Fraction(i == j) for j in range(self.nrows)] for i in range(self.nrows)]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pr = next((i for i in range(r, self.nrows) if red[i][c]), None)
            if pr is None:
                continue
            red[r], red[pr] = red[pr], red[r]
            trans[r], trans[pr] = trans[pr], trans[r]
            inv = 1 / red[r][c]
            red[r] = [x * inv for x in red[r]]
            trans[r] = [x * inv for x in trans[r]]
            for i in range(self.nrows):
                if i != r and red[i][c]:
                    f = red[i][c]
                    red[i] = [a - f * b for a, b in zip(red[i], red[r])]
                    trans[i] = [a - f * b for a, b in zip(trans[i], trans[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        if r != self.nrows:
            raise InternalCheckError("rows are linearly dependent")
        self._red = red
        self._trans = trans
        self._pivots = pivots

    def express(self, vec):
        """Coefficients c with sum(c_i * row_i) == vec, else InternalCheckError."""
        vec = list(map(Fraction, vec))
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        coeffs = [Fraction(0)] * self.nrows
        for r, p in enumerate(self._pivots):
            if vec[p]:
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, self._red[r])]
                coeffs = [a + f * b for a, b in zip(coeffs, self._trans[r])]
        if any(vec):
            raise InternalCheckError("vector not in span (closure failure)")
        return tuple(coeffs)
