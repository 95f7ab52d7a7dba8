"""Tanaka prolongation of the Levi-Tanaka algebra of a quadric model.

Elements of degree d >= 0 are stored by their action on m: a pair
(phi, psi) with phi mapping the g_{-1} basis into g_{d-1} coefficient
vectors and psi mapping the g_{-2} basis into g_{d-2} coefficient vectors
(for d = 0 the targets are g_{-1} and g_{-2} themselves).  Degree 0 is cut
out by J-linearity plus the derivation identity; each higher degree is the
exact kernel of the linear system

    (a)  psi([X, Y]) = [phi X, Y] - [phi Y, X]          X, Y in g_{-1}
    (b)  [phi X, W] = [psi W, X]                        W in g_{-2}

solved over Q with the sparse fraction-free kernel.  The unknown vector is
phi flattened row-major (source basis major) followed by psi, so the
canonical nullspace basis makes every run byte-reproducible.

Brackets between nonnegative degrees are reconstructed from the actions
([h, X] = [f, [g, X]] - [g, [f, X]]) and expressed in the computed bases;
the expression step doubles as the closure assertion, and a full exact
Jacobi sweep over all basis triples is available as a consistency gate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .errors import InternalCheckError, NonterminationError
from .linalg import RationalRowBasis, sparse_int_nullspace
from .model import LeviTanakaAlgebra, QuadricModel, build_levi_tanaka

_F0 = Fraction(0)


def jet_order(top_degree: int) -> int:
    """Jet determination order for automorphisms: floor((b + 2) / 2)."""
    return (top_degree + 2) // 2


def _rows_to_int(rows):
    """Scale each rational sparse row to integers (exact, row scaling only)."""
    out = []
    for row in rows:
        if not row:
            continue
        d = lcm(*(v.denominator for v in row.values()))
        out.append({c: int(v * d) for c, v in row.items()})
    return out


def compute_g0(lt: LeviTanakaAlgebra):
    """Basis of g_0: J-commuting degree-0 derivations of m, canonical order."""
    n, k = lt.n, lt.k
    n2 = 2 * n
    mb = lt.mbracket
    nphi = n2 * n2
    ncols = nphi + k * k
    rows = []

    # phi J = J phi, written per source s and target component t
    for s in range(n2):
        ps, eps = lt.j_index(s)
        for t in range(n2):
            row = {}
            row[ps * n2 + t] = Fraction(eps)
            # minus (J phi(X_s))_t
            if t < n:
                row[s * n2 + (n + t)] = row.get(s * n2 + n + t, _F0) + 1
            else:
                var = s * n2 + (t - n)
                row[var] = row.get(var, _F0) - 1
            rows.append({c: v for c, v in row.items() if v})

    # derivation identity on each bracket
    for a in range(n2):
        for b in range(a + 1, n2):
            ab = mb[a][b]
            for j in range(k):
                row = {}
                for l in range(k):
                    if ab[l]:
                        row[nphi + l * k + j] = ab[l]
                for u in range(n2):
                    if mb[u][b][j]:
                        var = a * n2 + u
                        row[var] = row.get(var, _F0) - mb[u][b][j]
                    if mb[u][a][j]:
                        var = b * n2 + u
                        row[var] = row.get(var, _F0) + mb[u][a][j]
                if row:
                    rows.append({c: v for c, v in row.items() if v})

    basis = sparse_int_nullspace(_rows_to_int(rows), ncols)
    out = []
    for vec in basis:
        phi = tuple(tuple(vec[s * n2 + t] for t in range(n2)) for s in range(n2))
        psi = tuple(tuple(vec[nphi + l * k + j] for j in range(k)) for l in range(k))
        out.append((phi, psi))
    return out


def prolong_step(lt: LeviTanakaAlgebra, pieces: dict, i: int):
    """Basis of g_i (i >= 1) given g_0..g_{i-1} in ``pieces``."""
    if i < 1:
        raise ValueError("prolong_step needs i >= 1")
    n, k = lt.n, lt.k
    n2 = 2 * n
    mb = lt.mbracket
    prev = pieces[i - 1]
    m1 = len(prev)
    m2 = n2 if i == 1 else len(pieces[i - 2])
    if i == 1:
        m3 = k
    elif i == 2:
        m3 = n2
    else:
        m3 = len(pieces[i - 3])
    nphi = n2 * m1
    ncols = nphi + k * m2
    rows = []

    # (a) psi([X_a, X_b]) - [phi X_a, X_b] + [phi X_b, X_a] = 0   in g_{i-2}
    for a in range(n2):
        for b in range(a + 1, n2):
            ab = mb[a][b]
            for c in range(m2):
                row = {}
                for l in range(k):
                    if ab[l]:
                        row[nphi + l * m2 + c] = ab[l]
                for m in range(m1):
                    va = prev[m][0][b][c]   # [B_m, X_b] component c
                    if va:
                        var = a * m1 + m
                        row[var] = row.get(var, _F0) - va
                    vb = prev[m][0][a][c]
                    if vb:
                        var = b * m1 + m
                        row[var] = row.get(var, _F0) + vb
                row = {c2: v for c2, v in row.items() if v}
                if row:
                    rows.append(row)

    # (b) [phi X_s, W_j] - [psi W_j, X_s] = 0   in g_{i-3}
    for s in range(n2):
        for j in range(k):
            for c in range(m3):
                row = {}
                for m in range(m1):
                    v = prev[m][1][j][c]    # [B_m, W_j] component c
                    if v:
                        var = s * m1 + m
                        row[var] = row.get(var, _F0) + v
                for l in range(m2):
                    if i == 1:
                        v = mb[l][s][c]
                    else:
                        v = pieces[i - 2][l][0][s][c]
                    if v:
                        var = nphi + j * m2 + l
                        row[var] = row.get(var, _F0) - v
                row = {c2: v for c2, v in row.items() if v}
                if row:
                    rows.append(row)

    basis = sparse_int_nullspace(_rows_to_int(rows), ncols)
    out = []
    for vec in basis:
        phi = tuple(tuple(vec[s * m1 + m] for m in range(m1)) for s in range(n2))
        psi = tuple(tuple(vec[nphi + j * m2 + l] for l in range(m2)) for j in range(k))
        out.append((phi, psi))
    return out


class GradedLieAlgebra:
    """The full prolongation: m plus the computed nonnegative pieces."""

    def __init__(self, lt: LeviTanakaAlgebra, pieces: dict):
        self.lt = lt
        self.n, self.k = lt.n, lt.k
        self.pieces = pieces
        self.dims = {-2: lt.k, -1: 2 * lt.n}
        self.dims.update({d: len(p) for d, p in sorted(pieces.items())})
        self._sc = None
        self._expressers = {}

    # -- basic queries ------------------------------------------------------
    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def top_degree(self) -> int:
        return max(d for d, v in self.dims.items() if v)

    def degrees(self):
        return sorted(self.dims)

    def _expresser(self, d: int) -> RationalRowBasis:
        """Row basis of flattened phi actions of g_d (faithfulness assertion)."""
        if d not in self._expressers:
            rows = [[x for col in phi for x in col] for phi, _ in self.pieces[d]]
            try:
                self._expressers[d] = RationalRowBasis(rows)
            except InternalCheckError as exc:
                raise InternalCheckError(
                    f"degree {d} elements are not determined by their g_-1 action") from exc
        return self._expressers[d]

    # -- structure constants -------------------------------------------------
    def structure_constants(self):
        """Brackets of basis pairs, canonical keys (i, j) with i <= j.

        Values: nested lists sc[(i, j)][alpha][beta] = coefficient tuple over
        the basis of g_{i+j}.  Pairs whose bracket lands outside the computed
        range are identically zero and omitted.
        """
        if self._sc is not None:
            return self._sc
        b = self.top_degree()
        mb = self.lt.mbracket
        n2 = 2 * self.n
        sc = {(-1, -1): [[tuple(mb[a][c]) for c in range(n2)] for a in range(n2)]}
        for d in sorted(self.pieces):
            if not self.pieces[d]:
                continue
            if d - 1 >= -2:
                sc[(-1, d)] = [[tuple(-x for x in self.pieces[d][m][0][s])
                                for m in range(self.dims[d])] for s in range(n2)]
            if d - 2 >= -2:
                sc[(-2, d)] = [[tuple(-x for x in self.pieces[d][m][1][j])
                                for m in range(self.dims[d])] for j in range(self.k)]

        def bkt(di, ai, dj, aj):
            """Bracket of basis elements; None when it is identically zero."""
            if di + dj < -2 or di + dj > b or not self.dims.get(di + dj):
                return None
            if di > dj:
                v = bkt(dj, aj, di, ai)
                return None if v is None else tuple(-x for x in v)
            entry = sc.get((di, dj))
            return None if entry is None else entry[ai][aj]

        for total in range(0, b + 1):
            for i in range(0, total // 2 + 1):
                j = total - i
                if not (self.dims.get(i) and self.dims.get(j)):
                    continue
                target_dim = self.dims.get(total, 0)
                expr = self._expresser(total) if target_dim else None
                block = []
                for ai in range(self.dims[i]):
                    row = []
                    for aj in range(self.dims[j]):
                        row.append(self._bracket_pair(i, ai, j, aj, bkt, expr, total))
                    block.append(row)
                sc[(i, j)] = block
        self._sc = sc
        return sc

    def _bracket_pair(self, i, ai, j, aj, bkt, expr, total):
        """[B^i_ai, B^j_aj] expressed in the g_total basis, with closure check."""
        n2 = 2 * self.n
        phi_i = self.pieces[i][ai][0]
        psi_i = self.pieces[i][ai][1]
        phi_j = self.pieces[j][aj][0]
        psi_j = self.pieces[j][aj][1]
        tgt1 = self.dims.get(total - 1, 0)
        # action of the bracket on g_{-1}
        phi_h = []
        for s in range(n2):
            acc = [_F0] * tgt1
            for m, v in enumerate(phi_j[s]):
                if v:
                    w = bkt(i, ai, j - 1, m)
                    if w:
                        for t, x in enumerate(w):
                            if x:
                                acc[t] += v * x
            for m, v in enumerate(phi_i[s]):
                if v:
                    w = bkt(j, aj, i - 1, m)
                    if w:
                        for t, x in enumerate(w):
                            if x:
                                acc[t] -= v * x
            phi_h.append(acc)
        # action on g_{-2}
        tgt2 = self.dims.get(total - 2, 0)
        psi_h = []
        for jj in range(self.k):
            acc = [_F0] * tgt2
            for m, v in enumerate(psi_j[jj]):
                if v:
                    w = bkt(i, ai, j - 2, m)
                    if w:
                        for t, x in enumerate(w):
                            if x:
                                acc[t] += v * x
            for m, v in enumerate(psi_i[jj]):
                if v:
                    w = bkt(j, aj, i - 2, m)
                    if w:
                        for t, x in enumerate(w):
                            if x:
                                acc[t] -= v * x
            psi_h.append(acc)

        if expr is None:
            if any(x for row in phi_h for x in row) or any(x for row in psi_h for x in row):
                raise InternalCheckError(
                    f"bracket of degrees ({i},{j}) lands in a zero space but is nonzero")
            return ()
        coeffs = expr.express([x for row in phi_h for x in row])
        # psi part must agree with the same combination (closure assertion)
        for jj in range(self.k):
            for t in range(tgt2):
                s = sum((c * self.pieces[total][g][1][jj][t]
                         for g, c in enumerate(coeffs) if c), _F0)
                if s != psi_h[jj][t]:
                    raise InternalCheckError("bracket closure mismatch on g_{-2} action")
        return coeffs

    # -- consistency sweeps -----------------------------------------------------
    def _scaled_tables(self):
        """All ordered degree-pair bracket tables as dense integer tuples."""
        sc = self.structure_constants()
        den = 1
        for block in sc.values():
            for row in block:
                for vec in row:
                    for x in vec:
                        den = lcm(den, x.denominator)
        tables = {}
        for (i, j), block in sc.items():
            ti = [[tuple(int(x * den) for x in vec) for vec in row] for row in block]
            tables[(i, j)] = ti
            if i != j:
                nj = len(block[0]) if block else 0
                tables[(j, i)] = [[tuple(-x for x in ti[a][bq]) for a in range(len(block))]
                                  for bq in range(nj)]
        return tables, den

    def check_jacobi(self) -> int:
        """Exact Jacobi identity over every basis triple; returns triple count."""
        tables, _ = self._scaled_tables()
        degs = [d for d in self.degrees() if self.dims[d]]
        basis = [(d, i) for d in degs for i in range(self.dims[d])]
        b = self.top_degree()
        checked = 0

        def term(p, ap, q, aq, r, ar, acc, sign):
            tab = tables.get((p, q))
            if tab is None:
                return
            v = tab[ap][aq]
            tab2 = tables.get((p + q, r))
            if tab2 is None:
                return
            for m, vm in enumerate(v):
                if vm:
                    row = tab2[m][ar]
                    for t, x in enumerate(row):
                        if x:
                            acc[t] += sign * vm * x

        nb = len(basis)
        for x in range(nb):
            p, ap = basis[x]
            for y in range(x + 1, nb):
                q, aq = basis[y]
                if p + q + b < -2:
                    break
                for zz in range(y + 1, nb):
                    r, ar = basis[zz]
                    s = p + q + r
                    if s < -2:
                        continue
                    if s > b:
                        break
                    dim_t = self.dims.get(s, 0)
                    if not dim_t:
                        continue
                    acc = [0] * dim_t
                    term(p, ap, q, aq, r, ar, acc, 1)
                    term(q, aq, r, ar, p, ap, acc, 1)
                    term(r, ar, p, ap, q, aq, acc, 1)
                    if any(acc):
                        raise InternalCheckError(
                            f"Jacobi failure on basis triple degrees ({p},{q},{r})")
                    checked += 1
        return checked

    def grading_element_coeffs(self):
        """Coefficients of the pair (id, 2 id) in the canonical g_0 basis."""
        n2 = 2 * self.n
        target = [Fraction(int(s == t)) for s in range(n2) for t in range(n2)]
        coeffs = self._expresser(0).express(target)
        # the psi part must be 2 id for the same combination
        for j in range(self.k):
            for l in range(self.k):
                s = sum((c * self.pieces[0][g][1][j][l]
                         for g, c in enumerate(coeffs) if c), _F0)
                if s != 2 * int(j == l):
                    raise InternalCheckError("(id, 2 id) pair not closed in g_0")
        return coeffs

    def check_grading(self) -> bool:
        """[(id, 2 id), f] = -d f for f in g_d, d >= 1 (eigenvalue -d; the
        conventional grading element is the negative of this pair)."""
        e0 = self.grading_element_coeffs()
        sc = self.structure_constants()
        for d in self.degrees():
            if d < 1 or not self.dims[d]:
                continue
            block = sc[(0, d)]
            for beta in range(self.dims[d]):
                for t in range(self.dims[d]):
                    s = sum((c * block[alpha][beta][t]
                             for alpha, c in enumerate(e0) if c), _F0)
                    if s != (-d if beta == t else 0):
                        raise InternalCheckError(
                            f"grading eigenvalue check failed in degree {d}")
        return True


@dataclass(frozen=True)
class ProlongationResult:
    model: QuadricModel
    algebra: GradedLieAlgebra
    dims: dict
    top_degree: int
    jet_order: int
    terminated: bool

    def to_json(self, include_structure=True) -> dict:
        out = {
            "n": self.model.n,
            "k": self.model.k,
            "dims": {str(d): v for d, v in sorted(self.dims.items())},
            "top_degree": self.top_degree,
            "jet_order": self.jet_order,
            "terminated": self.terminated,
        }
        if include_structure:
            sc = self.algebra.structure_constants()
            out["structure_constants"] = {
                f"{i},{j}": [[[f"({x})+(0)i" for x in vec] for vec in row] for row in block]
                for (i, j), block in sorted(sc.items())
            }
        return out


_CACHE: dict = {}


def clear_cache():
    _CACHE.clear()


def prolong_full(model: QuadricModel, max_degree: int = 12,
                 use_cache: bool = True) -> ProlongationResult:
    """Full prolongation, iterated until a zero degree (then one more degree
    is computed and asserted zero — m is generated by g_{-1}, so a single
    vanishing degree kills everything above it)."""
    key = (model.fingerprint(), max_degree)
    if use_cache and key in _CACHE:
        return _CACHE[key]

    lt = build_levi_tanaka(model)
    pieces = {0: compute_g0(lt)}
    if not pieces[0]:
        raise InternalCheckError("g_0 is empty — the grading pair is always present")
    terminated = False
    for i in range(1, max_degree + 1):
        pieces[i] = prolong_step(lt, pieces, i)
        if not pieces[i]:
            pieces[i + 1] = prolong_step(lt, pieces, i + 1)
            if pieces[i + 1]:
                raise InternalCheckError(
                    "nonzero degree above a vanishing one (generation failure)")
            del pieces[i], pieces[i + 1]
            terminated = True
            break
    if not terminated:
        raise NonterminationError(
            f"prolongation not terminated below degree cap {max_degree}")

    algebra = GradedLieAlgebra(lt, pieces)
    b = algebra.top_degree()
    result = ProlongationResult(
        model=model,
        algebra=algebra,
        dims=dict(algebra.dims),
        top_degree=b,
        jet_order=jet_order(b),
        terminated=terminated,
    )
    if use_cache:
        _CACHE[key] = result
    return result
