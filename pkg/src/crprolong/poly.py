"""Sparse exact polynomials and holomorphic polynomial vector fields.

All polynomials live in a fixed variable frame determined by a model size
(n, k): complex variables z_1..z_n, their formal conjugates zb_1..zb_n,
w_1..w_k, wb_1..wb_k, and real variables u_1..u_k (the real parts of w on
the quadric).  The conjugates are independent symbols — tangency checking
works with polarized identities, never with numeric conjugation.

Monomials are exponent tuples of length 2n + 3k in the variable order
z < zb < w < wb < u (each block ordered by index); the canonical term order
is graded lexicographic, printed highest first.  Coefficients are Gaussian
rationals.  Every operation is exact and returns new objects.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionError, InputError
from .scalars import GR_ONE, GR_ZERO, GaussianRational

_F1 = Fraction(1)


def _nvars(n: int, k: int) -> int:
    return 2 * n + 3 * k


class Poly:
    """Multivariate polynomial over Q(i) in the (z, zb, w, wb, u) frame."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n: int, k: int, terms=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        clean = {}
        if terms:
            nv = _nvars(n, k)
            for mono, c in terms.items():
                if len(mono) != nv:
                    raise DimensionError("monomial length does not match variable frame")
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Poly is immutable")

    # -- variable indexing --------------------------------------------
    def _idx_z(self, a):
        return a

    def _idx_zb(self, a):
        return self.n + a

    def _idx_w(self, j):
        return 2 * self.n + j

    def _idx_wb(self, j):
        return 2 * self.n + self.k + j

    def _idx_u(self, j):
        return 2 * self.n + 2 * self.k + j

    @staticmethod
    def zero(n, k) -> "Poly":
        return Poly(n, k)

    @staticmethod
    def constant(n, k, c) -> "Poly":
        return Poly(n, k, {(0,) * _nvars(n, k): c})

    @staticmethod
    def variable(n, k, kind: str, index: int) -> "Poly":
        """kind in {'z','zb','w','wb','u'}, index 0-based."""
        block = {"z": 0, "zb": n, "w": 2 * n, "wb": 2 * n + k, "u": 2 * n + 2 * k}
        size = {"z": n, "zb": n, "w": k, "wb": k, "u": k}
        if kind not in block:
            raise InputError(f"unknown variable kind {kind!r}")
        if not 0 <= index < size[kind]:
            raise InputError(f"variable index out of range: {kind}{index + 1}")
        mono = [0] * _nvars(n, k)
        mono[block[kind] + index] = 1
        return Poly(n, k, {tuple(mono): GR_ONE})

    def _compat(self, other: "Poly"):
        if self.n != other.n or self.k != other.k:
            raise DimensionError("polynomials from different variable frames")

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.constant(self.n, self.k, other)
        self._compat(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Poly(self.n, self.k, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, self.k, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -GaussianRational(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational(other)
            if not c:
                return Poly(self.n, self.k)
            return Poly(self.n, self.k, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._compat(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.n, self.k, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative polynomial power")
        result = Poly.constant(self.n, self.k, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus ---------------------------------------------------------
    def diff(self, kind: str, index: int) -> "Poly":
        block = {"z": 0, "zb": self.n, "w": 2 * self.n,
                 "wb": 2 * self.n + self.k, "u": 2 * self.n + 2 * self.k}
        v = block[kind] + index
        out = {}
        for m, c in self.terms.items():
            e = m[v]
            if e:
                m2 = m[:v] + (e - 1,) + m[v + 1:]
                s = out.get(m2)
                s = c * e if s is None else s + c * e
                if s:
                    out[m2] = s
        return Poly(self.n, self.k, out)

    def formal_conjugate(self) -> "Poly":
        """Conjugate coefficients; swap z<->zb and w<->wb blocks; u fixed."""
        n, k = self.n, self.k
        out = {}
        for m, c in self.terms.items():
            m2 = m[n:2 * n] + m[:n] + m[2 * n + k:2 * n + 2 * k] + m[2 * n:2 * n + k] + m[2 * n + 2 * k:]
            out[m2] = c.conjugate()
        return Poly(n, k, out)

    def subs(self, mapping) -> "Poly":
        """Simultaneous substitution {(kind, index) -> Poly}."""
        block = {"z": 0, "zb": self.n, "w": 2 * self.n,
                 "wb": 2 * self.n + self.k, "u": 2 * self.n + 2 * self.k}
        sub = {}
        for (kind, index), p in mapping.items():
            self._compat(p)
            sub[block[kind] + index] = p
        powers = {v: [Poly.constant(self.n, self.k, 1), p] for v, p in sub.items()}

        def pw(v, e):
            lst = powers[v]
            while len(lst) <= e:
                lst.append(lst[-1] * lst[1])
            return lst[e]

        total = Poly(self.n, self.k)
        for m, c in self.terms.items():
            rest = list(m)
            factor = None
            for v in sub:
                e = m[v]
                if e:
                    rest[v] = 0
                    factor = pw(v, e) if factor is None else factor * pw(v, e)
            base = Poly(self.n, self.k, {tuple(rest): c})
            total = total + (base if factor is None else base * factor)
        return total

    def evaluate(self, point) -> GaussianRational:
        """Exact evaluation; ``point`` is a sequence of 2n+3k scalars."""
        if len(point) != _nvars(self.n, self.k):
            raise DimensionError("evaluation point has wrong length")
        point = [x if isinstance(x, GaussianRational) else GaussianRational(x) for x in point]
        acc = GR_ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                for _ in range(e):
                    v = v * x
            acc = acc + v
        return acc

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.constant(self.n, self.k, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.terms == other.terms

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=None)

    def min_total_degree(self):
        return min((sum(m) for m in self.terms), default=None)

    def sorted_terms(self):
        """Terms in canonical order: graded lex, highest first."""
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True)

    # -- text --------------------------------------------------------------
    def _var_names(self):
        n, k = self.n, self.k
        return ([f"z{a + 1}" for a in range(n)] + [f"zb{a + 1}" for a in range(n)]
                + [f"w{j + 1}" for j in range(k)] + [f"wb{j + 1}" for j in range(k)]
                + [f"u{j + 1}" for j in range(k)])

    def text(self) -> str:
        if not self.terms:
            return "0"
        names = self._var_names()
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"{names[v]}^{e}" if e > 1 else names[v]
                       for v, e in enumerate(m) if e]
            parts.append("*".join([str(c)] + factors) if factors else str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly[{self.text()}]"


class PolyVectorField:
    """Holomorphic polynomial vector field: sum of f_a d/dz_a + g_j d/dw_j.

    Coefficients may involve z and w only (enforced); applying the field to
    a polynomial in the full frame differentiates in z and w, so zb/wb/u
    content of the argument passes through untouched.
    """

    __slots__ = ("n", "k", "z_comps", "w_comps")

    def __init__(self, n: int, k: int, z_comps, w_comps):
        z_comps = tuple(z_comps)
        w_comps = tuple(w_comps)
        if len(z_comps) != n or len(w_comps) != k:
            raise DimensionError("component count does not match (n, k)")
        for p in (*z_comps, *w_comps):
            if p.n != n or p.k != k:
                raise DimensionError("component polynomial from the wrong frame")
            for m in p.terms:
                if any(m[n:2 * n]) or any(m[2 * n + k:]):
                    raise InputError("field coefficients must be holomorphic (z, w only)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "z_comps", z_comps)
        object.__setattr__(self, "w_comps", w_comps)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("PolyVectorField is immutable")

    @staticmethod
    def zero(n, k) -> "PolyVectorField":
        return PolyVectorField(n, k, [Poly.zero(n, k)] * n, [Poly.zero(n, k)] * k)

    @staticmethod
    def euler(n, k) -> "PolyVectorField":
        """The field sum(z_a d/dz_a) + 2 sum(w_j d/dw_j); weighted degree 0."""
        return PolyVectorField(
            n, k,
            [Poly.variable(n, k, "z", a) for a in range(n)],
            [Poly.variable(n, k, "w", j) * 2 for j in range(k)],
        )

    def _compat(self, other):
        if self.n != other.n or self.k != other.k:
            raise DimensionError("fields from different variable frames")

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        self._compat(other)
        return PolyVectorField(self.n, self.k,
                               [a + b for a, b in zip(self.z_comps, other.z_comps)],
                               [a + b for a, b in zip(self.w_comps, other.w_comps)])

    def __sub__(self, other):
        self._compat(other)
        return PolyVectorField(self.n, self.k,
                               [a - b for a, b in zip(self.z_comps, other.z_comps)],
                               [a - b for a, b in zip(self.w_comps, other.w_comps)])

    def __mul__(self, c):
        return PolyVectorField(self.n, self.k,
                               [p * c for p in self.z_comps],
                               [p * c for p in self.w_comps])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return (self.n == other.n and self.k == other.k
                and self.z_comps == other.z_comps and self.w_comps == other.w_comps)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.z_comps) and all(p.is_zero() for p in self.w_comps)

    # -- derivation ---------------------------------------------------------
    def apply_to(self, p: Poly) -> Poly:
        if p.n != self.n or p.k != self.k:
            raise DimensionError("argument polynomial from the wrong frame")
        out = Poly.zero(self.n, self.k)
        for a, f in enumerate(self.z_comps):
            if f:
                out = out + f * p.diff("z", a)
        for j, g in enumerate(self.w_comps):
            if g:
                out = out + g * p.diff("w", j)
        return out

    def bracket(self, other: "PolyVectorField") -> "PolyVectorField":
        """Vector field commutator [self, other] = self(other) - other(self)."""
        self._compat(other)
        z = [self.apply_to(f) - other.apply_to(g)
             for f, g in zip(other.z_comps, self.z_comps)]
        w = [self.apply_to(f) - other.apply_to(g)
             for f, g in zip(other.w_comps, self.w_comps)]
        return PolyVectorField(self.n, self.k, z, w)

    # -- weights -------------------------------------------------------------
    def _term_weights(self):
        n, k = self.n, self.k
        for p, shift in [*((p, -1) for p in self.z_comps), *((p, -2) for p in self.w_comps)]:
            for m in p.terms:
                yield sum(m[:n]) + 2 * sum(m[2 * n:2 * n + k]) + shift

    def weighted_degree(self):
        """Common weighted degree (z weight 1, w weight 2, d/dz -1, d/dw -2).

        Returns None for the zero field and for weight-inhomogeneous fields.
        """
        ws = set(self._term_weights())
        return ws.pop() if len(ws) == 1 else None

    def ordinary_vanishing_order(self):
        """Minimal ordinary total degree over all coefficient terms; None if 0."""
        degs = [d for p in (*self.z_comps, *self.w_comps)
                for d in [p.min_total_degree()] if d is not None]
        return min(degs) if degs else None

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        n, k = self.n, self.k
        for kind, comps in (("z", self.z_comps), ("w", self.w_comps)):
            for idx, p in enumerate(comps):
                for m, c in p.sorted_terms():
                    terms.append({
                        "target": f"{kind}{idx + 1}",
                        "z_exp": list(m[:n]),
                        "w_exp": list(m[2 * n:2 * n + k]),
                        "coeff": str(c),
                    })
        return {"n": n, "k": k, "terms": terms}

    @staticmethod
    def from_json(data) -> "PolyVectorField":
        try:
            n, k = int(data["n"]), int(data["k"])
            z = [Poly.zero(n, k) for _ in range(n)]
            w = [Poly.zero(n, k) for _ in range(k)]
            for t in data["terms"]:
                target = t["target"]
                kind, idx = target[0], int(target[1:]) - 1
                ze, we = list(map(int, t["z_exp"])), list(map(int, t["w_exp"]))
                if len(ze) != n or len(we) != k or min(ze + we, default=0) < 0:
                    raise InputError("bad exponent vector")
                mono = tuple(ze) + (0,) * n + tuple(we) + (0,) * (2 * k)
                p = Poly(n, k, {mono: GaussianRational.parse(t["coeff"])})
                if kind == "z":
                    z[idx] = z[idx] + p
                elif kind == "w":
                    w[idx] = w[idx] + p
                else:
                    raise InputError(f"bad target {target!r}")
        except InputError:
            raise
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise InputError(f"malformed field JSON: {exc}") from exc
        return PolyVectorField(n, k, z, w)

    def text(self) -> str:
        parts = [f"({p.text()}) d/d{kind}{i + 1}"
                 for kind, comps in (("z", self.z_comps), ("w", self.w_comps))
                 for i, p in enumerate(comps) if p]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyVectorField[{self.text()}]"

    def coefficient_entries(self):
        """Deterministic ((block, index, monomial), coeff) stream for span work."""
        for b, comps in ((0, self.z_comps), (1, self.w_comps)):
            for idx, p in enumerate(comps):
                for m, c in p.sorted_terms():
                    yield (b, idx, m), c
