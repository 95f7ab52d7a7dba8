"""CR quadric models Im w_j = z H_j z* and their Levi-Tanaka algebras.

A model is a tuple of k Hermitian n x n matrices.  Validation is exact:
Hermitian symmetry, linear independence of the forms over R, and trivial
common kernel.  The stronger isotropy condition (no common null vector of
all the forms) is reported informationally when a definite combination of
the forms certifies it, but never gates anything — deciding it in general
is a real-algebraic problem, while the trivial-kernel condition is the
linear-algebraic nondegeneracy the prolongation machinery needs.

The associated fundamental graded algebra m = g_{-2} (+) g_{-1} is stored
over the real basis e_1..e_n, Je_1..Je_n of g_{-1} and the w-basis of
g_{-2}; with h = (H_j)_{ab} the nonzero brackets are

    [e_a, e_b]_j = 4 Im h      [Je_a, Je_b]_j = 4 Im h
    [Je_a, e_b]_j = 4 Re h     [e_a, Je_b]_j = -4 Re h

(all rational), and the model is recovered from the brackets via
Im w = (1/4)[Jz, z].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AlgebraError, DegenerateModelError, DimensionError, InputError
from .linalg import ExactMatrix
from .poly import Poly
from .scalars import GaussianRational

_F0 = Fraction(0)


class QuadricModel:
    """Immutable quadric model: k Hermitian forms on C^n."""

    __slots__ = ("n", "k", "hermitian")

    def __init__(self, hermitian):
        hermitian = tuple(h if isinstance(h, ExactMatrix) else ExactMatrix(h)
                          for h in hermitian)
        if not hermitian:
            raise DimensionError("a model needs at least one Hermitian form")
        n = hermitian[0].rows
        if n < 1:
            raise DimensionError("n must be at least 1")
        for h in hermitian:
            if h.rows != n or h.cols != n:
                raise DimensionError("all forms must be square of the same size")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", len(hermitian))
        object.__setattr__(self, "hermitian", hermitian)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("QuadricModel is immutable")

    def __eq__(self, other):
        if not isinstance(other, QuadricModel):
            return NotImplemented
        return self.hermitian == other.hermitian

    def __hash__(self):
        return hash(self.hermitian)

    def __repr__(self):
        return f"QuadricModel(n={self.n}, k={self.k})"

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "hermitian": [h.to_lists() for h in self.hermitian]}

    @staticmethod
    def from_json(data) -> "QuadricModel":
        try:
            n, k = int(data["n"]), int(data["k"])
            mats = [ExactMatrix.from_lists(h) for h in data["hermitian"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed model JSON: {exc}") from exc
        m = QuadricModel(mats)
        if m.n != n or m.k != k:
            raise InputError("model JSON shape fields disagree with the matrices")
        return m

    def fingerprint(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    # -- defining polynomials ----------------------------------------------
    def defining_polys(self):
        """P_j(z, zb) = z H_j z*; the model is Im w_j = P_j."""
        out = []
        for h in self.hermitian:
            p = Poly.zero(self.n, self.k)
            for a in range(self.n):
                for b in range(self.n):
                    c = h[a, b]
                    if c:
                        p = p + Poly.variable(self.n, self.k, "z", a) \
                            * Poly.variable(self.n, self.k, "zb", b) * c
            out.append(p)
        return out

    # -- validation ------------------------------------------------------------
    def validate(self, definiteness_bound: int = 1) -> "ValidationReport":
        hermitian_ok = tuple(h.is_hermitian() for h in self.hermitian)

        # independence over R: real-flatten each form and row-reduce
        flat = ExactMatrix([[x for h_row in h.entries for e in h_row
                             for x in (GaussianRational(e.re), GaussianRational(e.im))]
                            for h in self.hermitian])
        independent = flat.rank() == self.k
        dependency = None
        if not independent:
            ns = flat.transpose().nullspace()
            dependency = ns[0] if ns else None

        # common kernel of all forms: stacked (kn x n) system over Q(i)
        stacked = ExactMatrix([row for h in self.hermitian for row in h.entries])
        kernel = stacked.nullspace()
        kernel_witness = kernel[0] if kernel else None

        definite = None
        if all(hermitian_ok):
            definite = self._definite_combination(definiteness_bound)

        return ValidationReport(
            hermitian_ok=hermitian_ok,
            independent=independent,
            dependency=dependency,
            common_kernel_trivial=not kernel,
            kernel_witness=kernel_witness,
            definite_combination=definite,
        )

    def _definite_combination(self, bound: int, limit: int = 3000):
        """Integer c with sum(c_j H_j) positive or negative definite, or None.

        Sufficient certificate for the isotropy condition; informational only,
        so the search is capped at ``limit`` candidates (a deterministic prefix
        of the enumeration — at bound 1 the whole space is covered up to k=7).
        """
        if bound < 1:
            return None
        corner = [h[0, 0].re for h in self.hermitian]
        for count, c in enumerate(_signed_tuples(self.k, bound)):
            if count >= limit:
                return None
            # first leading minor, computed without building the combination;
            # zero kills both sign patterns at once
            if not sum(cj * x for cj, x in zip(c, corner) if cj):
                continue
            combo = _combine(self.hermitian, c)
            pos = neg = True
            for i, sub in enumerate(_leading_minors(combo)):
                x = sub.determinant()
                if x.im:
                    raise AlgebraError("non-real principal minor of a Hermitian matrix")
                if not x.re > 0:
                    pos = False
                if not (x.re > 0 if i % 2 else x.re < 0):  # (-1)^m: negative definite
                    neg = False
                if not (pos or neg):
                    break
            if pos or neg:
                return c
        return None


def _signed_tuples(k: int, bound: int):
    values = [0]
    for v in range(1, bound + 1):
        values.extend((v, -v))
    for c in itertools.product(values, repeat=k):
        if any(c):
            yield c


def _combine(mats, c):
    acc = None
    for h, cj in zip(mats, c):
        if cj:
            term = h.scale(cj)
            acc = term if acc is None else acc + term
    return acc


def _leading_minors(m: ExactMatrix):
    for size in range(1, m.rows + 1):
        yield ExactMatrix([row[:size] for row in m.entries[:size]])


def tumanov_search(model: QuadricModel, bound: int = 2):
    """First integer combination c (|c_j| <= bound) with det(sum c_j H_j) != 0.

    Deterministic enumeration: per-coordinate values 0, 1, -1, 2, -2, ...,
    last coordinate varying fastest.  Returns None when the bound is
    exhausted; existence of such a c is the Tumanov nondegeneracy condition.
    """
    report = model.validate(definiteness_bound=0)
    if not all(report.hermitian_ok):
        raise DegenerateModelError("tumanov search requires Hermitian forms")
    for c in _signed_tuples(model.k, bound):
        if _combine(model.hermitian, c).determinant():
            return c
    return None


@dataclass(frozen=True)
class ValidationReport:
    hermitian_ok: tuple
    independent: bool
    dependency: Optional[tuple]
    common_kernel_trivial: bool
    kernel_witness: Optional[tuple]
    definite_combination: Optional[tuple]

    @property
    def all_passed(self) -> bool:
        return all(self.hermitian_ok) and self.independent and self.common_kernel_trivial

    def to_json(self) -> dict:
        return {
            "hermitian": list(self.hermitian_ok),
            "independent": self.independent,
            "dependency_witness": [str(x) for x in self.dependency] if self.dependency else None,
            "common_kernel_trivial": self.common_kernel_trivial,
            "kernel_witness": [str(x) for x in self.kernel_witness] if self.kernel_witness else None,
            "definite_combination": list(self.definite_combination) if self.definite_combination else None,
            "all_passed": self.all_passed,
        }


# ---------------------------------------------------------------------------
# Levi-Tanaka algebra of a model
# ---------------------------------------------------------------------------


class LeviTanakaAlgebra:
    """Fundamental graded algebra m = g_{-2} (+) g_{-1} with complex structure J.

    g_{-1} has real basis e_1..e_n, Je_1..Je_n (indices 0..n-1 and n..2n-1);
    g_{-2} has the w-basis (length k).  ``mbracket[a][b]`` holds the rational
    g_{-2}-coefficients of the bracket of basis vectors a and b.
    """

    __slots__ = ("n", "k", "mbracket")

    def __init__(self, n: int, k: int, mbracket):
        mbracket = tuple(tuple(tuple(Fraction(x) for x in cell) for cell in row)
                         for row in mbracket)
        if len(mbracket) != 2 * n or any(len(r) != 2 * n for r in mbracket):
            raise DimensionError("bracket table must be (2n) x (2n)")
        if any(len(cell) != k for row in mbracket for cell in row):
            raise DimensionError("bracket values must have length k")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "mbracket", mbracket)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("LeviTanakaAlgebra is immutable")

    # J on basis index: e_a -> Je_a, Je_a -> -e_a
    def j_index(self, s: int):
        """Return (index, sign) with J(basis_s) = sign * basis_index."""
        n = self.n
        return (s + n, 1) if s < n else (s - n, -1)

    def j_apply(self, vec):
        """Apply J to a g_{-1} coefficient vector of length 2n."""
        n = self.n
        if len(vec) != 2 * n:
            raise DimensionError("vector length must be 2n")
        return tuple(-vec[n + t] if t < n else vec[t - n] for t in range(2 * n))

    def bracket(self, x, y):
        """Bracket of two g_{-1} coefficient vectors; returns a k-vector."""
        n2 = 2 * self.n
        if len(x) != n2 or len(y) != n2:
            raise DimensionError("vectors must have length 2n")
        out = [_F0] * self.k
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.mbracket[a]
            for b, yb in enumerate(y):
                if yb:
                    cell = row[b]
                    f = xa * yb
                    for j in range(self.k):
                        if cell[j]:
                            out[j] += f * cell[j]
        return tuple(out)

    def validate_invariants(self):
        """Raise AlgebraError unless all structural invariants hold."""
        n, k = self.n, self.k
        mb = self.mbracket
        for a in range(2 * n):
            for b in range(2 * n):
                if any(mb[a][b][j] != -mb[b][a][j] for j in range(k)):
                    raise AlgebraError("bracket table is not antisymmetric")
        # J-invariance: [JX, JY] = [X, Y]
        for a in range(2 * n):
            ja, sa = self.j_index(a)
            for b in range(2 * n):
                jb, sb = self.j_index(b)
                if any(sa * sb * mb[ja][jb][j] != mb[a][b][j] for j in range(k)):
                    raise AlgebraError("bracket is not J-invariant")
        # brackets span g_{-2}
        span = ExactMatrix([[GaussianRational(x) for x in mb[a][b]]
                            for a in range(2 * n) for b in range(a + 1, 2 * n)])
        if span.rank() != k:
            raise AlgebraError("brackets do not span g_{-2} (not fundamental)")
        # nondegeneracy: X -> [X, .] is injective on g_{-1}
        ad = ExactMatrix([[GaussianRational(mb[a][b][j])
                           for b in range(2 * n) for j in range(k)]
                          for a in range(2 * n)])
        if ad.rank() != 2 * n:
            raise AlgebraError("degenerate bracket: ad has nontrivial kernel on g_{-1}")

    def reconstruct_model(self) -> QuadricModel:
        """Recover the Hermitian forms from the brackets (Im w = (1/4)[Jz, z])."""
        self.validate_invariants()
        n, k = self.n, self.k
        mats = []
        for j in range(k):
            rows = []
            for a in range(n):
                row = []
                for b in range(n):
                    re = Fraction(self.mbracket[n + a][b][j], 4)
                    im = Fraction(self.mbracket[a][b][j], 4)
                    row.append(GaussianRational(re, im))
                rows.append(row)
            mats.append(ExactMatrix(rows))
        model = QuadricModel(mats)
        if not all(h.is_hermitian() for h in model.hermitian):
            raise AlgebraError("reconstructed forms are not Hermitian")
        return model


def build_levi_tanaka(model: QuadricModel) -> LeviTanakaAlgebra:
    """Build the Levi-Tanaka algebra of a validated model."""
    report = model.validate(definiteness_bound=0)
    if not report.all_passed:
        raise DegenerateModelError(f"model failed validation: {report.to_json()}")
    n, k = model.n, model.k
    table = [[None] * (2 * n) for _ in range(2 * n)]
    for a in range(n):
        for b in range(n):
            re4 = [4 * model.hermitian[j][a, b].re for j in range(k)]
            im4 = [4 * model.hermitian[j][a, b].im for j in range(k)]
            table[a][b] = tuple(im4)                      # [e_a, e_b]
            table[n + a][n + b] = tuple(im4)              # [Je_a, Je_b]
            table[n + a][b] = tuple(re4)                  # [Je_a, e_b]
            table[a][n + b] = tuple(-x for x in re4)      # [e_a, Je_b]
    return LeviTanakaAlgebra(n, k, table)
