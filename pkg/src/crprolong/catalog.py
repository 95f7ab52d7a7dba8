"""Built-in quadric models with their known polynomial automorphisms.

Entries:
  codim5      n=4, k=5 quadric in C^9 whose symmetry algebra reaches weighted
              degree 6; carries the linear rotations X, Y, Z, U, a degree-4
              field T with vanishing 2-jet, and a degree-6 field F.
  codim4      n=6, k=4 quadric in C^10 with a degree-4 automorphism G.
  heisenberg  the sphere model Im w = |z1|^2 in C^2.
  so_family   one quadric per integer n >= 3; so(n, n+2) symmetry.
  su_family   one quadric per integer m >= 2; su(m, m+1) symmetry.

extend_codim appends fresh sphere directions (new variable + equation
Im w_new = |z_new|^2) to any entry, raising the codimension while leaving the
positive part of the symmetry algebra unchanged.
"""

from dataclasses import dataclass, field as _dcfield
from fractions import Fraction

from .errors import InputError
from .linalg import ExactMatrix
from .model import QuadricModel
from .poly import Poly, PolyVectorField
from .scalars import GR_ZERO, GaussianRational

_I = GaussianRational(0, 1)


def _mat(n, entries) -> ExactMatrix:
    """Hermitian matrix from a sparse {(row, col): scalar} map."""
    rows = [[GR_ZERO] * n for _ in range(n)]
    for (a, b), v in entries.items():
        rows[a][b] = GaussianRational(v) if not isinstance(v, GaussianRational) else v
    return ExactMatrix(rows)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    model: QuadricModel
    known_fields: dict = _dcfield(default_factory=dict)
    expected: dict = _dcfield(default_factory=dict)
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "model": self.model.to_json(),
            "known_fields": {k: f.to_json() for k, f in self.known_fields.items()},
            "expected": dict(self.expected),
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# codimension 5 in C^9
# ---------------------------------------------------------------------------

def _linear_field(n, k, comps) -> PolyVectorField:
    """Field sum c_{a,b} z_b d/dz_a from {target a: [(coeff, source b), ...]}."""
    z = [Poly.zero(n, k)] * n
    for a, terms in comps.items():
        p = Poly.zero(n, k)
        for coeff, b in terms:
            p = p + Poly.variable(n, k, "z", b) * coeff
        z[a] = p
    return PolyVectorField(n, k, z, [Poly.zero(n, k)] * k)


def make_codim5() -> CatalogEntry:
    n, k = 4, 5
    hermitian = [
        _mat(n, {(0, 1): 1, (1, 0): 1}),                    # z1 zb2 + z2 zb1
        _mat(n, {(0, 1): -_I, (1, 0): _I}),                  # -i z1 zb2 + i z2 zb1
        _mat(n, {(2, 1): 1, (3, 0): 1, (1, 2): 1, (0, 3): 1}),
        _mat(n, {(0, 0): 1}),                                # |z1|^2
        _mat(n, {(1, 1): 1}),                                # |z2|^2
    ]
    model = QuadricModel(hermitian)

    X = _linear_field(n, k, {2: [(_I, 0)], 3: [(_I, 1)]})
    Y = _linear_field(n, k, {2: [(GaussianRational(1), 0)], 3: [(GaussianRational(-1), 1)]})
    Z = _linear_field(n, k, {3: [(_I, 0)]})
    U = _linear_field(n, k, {2: [(_I, 1)]})

    w = [Poly.variable(n, k, "w", j) for j in range(k)]
    w1, w2, w4, w5 = w[0], w[1], w[3], w[4]
    half = Fraction(1, 2)
    T = (Y * (w1 * w1 * -half + w2 * w2 * half + w4 * w5 * 2)
         + X * (w1 * w2)
         - Z * (w2 * w5 * 2)
         - U * (w2 * w4 * 2))

    # degree-6 field: coefficients cubic/quartic in w
    c1 = w1 * w1 * w1 * 2 + w1 * w2 * w2 * 2 - w1 * w4 * w5 * 8
    c2 = w1 * w1 * w2 * 2 + w2 * w2 * w2 * 2 - w2 * w4 * w5 * 8
    c3 = w1 * w1 * w4 * -4 - w2 * w2 * w4 * 4 + w4 * w4 * w5 * 16
    c4 = w1 * w1 * w5 * -4 - w2 * w2 * w5 * 4 + w4 * w5 * w5 * 16
    head = (w1 * w1 * w1 * w1 * -3 - w1 * w1 * w2 * w2 * 6 + w1 * w1 * w4 * w5 * 24
            - w2 * w2 * w2 * w2 * 3 + w2 * w2 * w4 * w5 * 24 - w4 * w4 * w5 * w5 * 48)
    z1 = Poly.variable(n, k, "z", 0)
    z2 = Poly.variable(n, k, "z", 1)
    zero = Poly.zero(n, k)
    F = PolyVectorField(
        n, k,
        [zero, zero,
         (c1 - c2 * _I) * z1 + c3 * z2,
         (c1 + c2 * _I) * z2 + c4 * z1],
        [zero, zero,
         head + w1 * c1 * 2 + w2 * c2 * 2 + w[4] * c3 * 2 + w[3] * c4 * 2,
         zero, zero],
    )

    return CatalogEntry(
        name="codim5",
        description="codimension-5 quadric in C^9; symmetry algebra of dimension "
                    "100 with top weighted degree 6",
        model=model,
        known_fields={"X": X, "Y": Y, "Z": Z, "U": U, "T": T, "F": F},
        expected={
            "top_degree": 6,
            "jet_order": 4,
            "dims": {-2: 5, -1: 8, 0: 17, 1: 20, 2: 21, 3: 16, 4: 8, 5: 4, 6: 1},
            "validation": True,
            "tumanov_witness": (0, 0, 1, 0, 0),
        },
    )


# ---------------------------------------------------------------------------
# codimension 4 in C^10
# ---------------------------------------------------------------------------

def _pair_matrix(n, a, b) -> ExactMatrix:
    """Form -i z_a zb_b + i z_b zb_a (0-based indices)."""
    return _mat(n, {(a, b): -_I, (b, a): _I})


def make_codim4() -> CatalogEntry:
    n, k = 6, 4
    hermitian = [
        _pair_matrix(n, 0, 1),
        _pair_matrix(n, 1, 2),
        _pair_matrix(n, 0, 2),
        _mat(n, {(0, 3): 1, (3, 0): 1, (1, 4): 1, (4, 1): 1, (2, 5): 1, (5, 2): 1}),
    ]
    model = QuadricModel(hermitian)

    z = [Poly.variable(n, k, "z", a) for a in range(n)]
    w = [Poly.variable(n, k, "w", j) for j in range(k)]
    zero = Poly.zero(n, k)
    w1, w2, w3 = w[0], w[1], w[2]
    G = PolyVectorField(
        n, k,
        [zero, zero, zero,
         (w1 * w2 * z[2] + w2 * w2 * z[0] - w2 * w3 * z[1]) * _I,
         (w1 * w3 * z[2] + w2 * w3 * z[0] - w3 * w3 * z[1]) * -_I,
         (w1 * w1 * z[2] + w1 * w2 * z[0] - w1 * w3 * z[1]) * _I],
        [zero] * k,
    )

    return CatalogEntry(
        name="codim4",
        description="codimension-4 quadric in C^10 (antisymmetric pair forms on "
                    "three base variables plus a coupling form); top weighted degree 4",
        model=model,
        known_fields={"G": G},
        expected={
            "top_degree": 4,
            "jet_order": 3,
            "dims": {-2: 4, -1: 12, 0: 23, 1: 24, 2: 15, 3: 6, 4: 1},
            "validation": True,
        },
        notes="The attached degree-4 field G is the unique (up to scale) "
              "automorphism of top weight; see codim4_display_variant for a "
              "w-relabeled variant that is not tangent.",
    )


def codim4_display_variant() -> PolyVectorField:
    """The degree-4 field with the roles of w2 and w3 interchanged (w2 -> -w3,
    w3 -> w2 relative to the tangent field G).  Not an automorphism of the
    codim4 model; kept as a negative test vector."""
    n, k = 6, 4
    z = [Poly.variable(n, k, "z", a) for a in range(n)]
    w = [Poly.variable(n, k, "w", j) for j in range(k)]
    zero = Poly.zero(n, k)
    w1, w2, w3 = w[0], w[1], w[2]
    return PolyVectorField(
        n, k,
        [zero, zero, zero,
         (w1 * w3 * z[2] * -1 + w2 * w3 * z[1] + w3 * w3 * z[0]) * _I,
         (w2 * w3 * z[0] - w1 * w2 * z[2] + w2 * w2 * z[1]) * _I,
         (w1 * w3 * z[0] * -1 - w1 * w2 * z[1] + w1 * w1 * z[2]) * _I],
        [zero] * k,
    )


# ---------------------------------------------------------------------------
# sphere and parametric families
# ---------------------------------------------------------------------------

def make_heisenberg() -> CatalogEntry:
    model = QuadricModel([_mat(1, {(0, 0): 1})])
    return CatalogEntry(
        name="heisenberg",
        description="sphere model Im w = |z1|^2 in C^2; symmetry algebra of "
                    "dimension 8 with top weighted degree 2",
        model=model,
        expected={
            "top_degree": 2,
            "jet_order": 2,
            "dims": {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1},
            "validation": True,
        },
    )


def _so_pairs(n):
    """Index pairs (a, b), a<b, consecutive pairs first, then the rest
    lexicographically."""
    pairs = [(a, a + 1) for a in range(n - 1)]
    pairs.extend((a, b) for a in range(n) for b in range(a + 2, n))
    return pairs


def make_so_family(n: int) -> CatalogEntry:
    """Quadric on z_1..z_n, z'_1..z'_n: one antisymmetric pair form per pair of
    base variables plus the coupling sum z_j zb'_j + z'_j zb_j."""
    if n < 3:
        raise InputError("so family needs n >= 3")
    nn = 2 * n
    hermitian = [_pair_matrix(nn, a, b) for a, b in _so_pairs(n)]
    hermitian.append(_mat(nn, {key: 1 for j in range(n) for key in ((j, n + j), (n + j, j))}))
    model = QuadricModel(hermitian)
    expected = {
        "top_degree": 2 * n - 2,
        "jet_order": n,
        "validation": True,
    }
    if n == 3:
        expected["dims"] = {-2: 4, -1: 12, 0: 23, 1: 24, 2: 15, 3: 6, 4: 1}
    if n == 4:
        expected["dims"] = {-2: 7, -1: 16, 0: 40, 1: 56, 2: 58, 3: 48, 4: 22, 5: 8, 6: 1}
    return CatalogEntry(
        name=f"so_family(n={n})",
        description=f"quadric in C^{(n + 2) * (n + 1) // 2} with so({n},{n + 2}) "
                    "symmetry; unusually high jet-determination order n",
        model=model,
        expected=expected,
    )


# The su-family equations for m=2, in their natural order (real pair,
# imaginary pair, squares, coupling), match the codim5 equations in this
# order: su equation i is codim5 equation SU2_TO_CODIM5[i].
SU2_TO_CODIM5 = (0, 1, 3, 4, 2)


def make_su_family(m: int) -> CatalogEntry:
    """Quadric on z_1..z_m, z'_1..z'_m: all real pair forms, all imaginary
    pair forms, all squares |z_a|^2, plus the reversed coupling
    sum z_j zb'_{m+1-j} + z'_{m+1-j} zb_j."""
    if m < 2:
        raise InputError("su family needs m >= 2")
    nn = 2 * m
    hermitian = [_mat(nn, {(a, b): 1, (b, a): 1})
                 for a in range(m) for b in range(a + 1, m)]
    hermitian.extend(_pair_matrix(nn, a, b)
                     for a in range(m) for b in range(a + 1, m))
    hermitian.extend(_mat(nn, {(a, a): 1}) for a in range(m))
    hermitian.append(_mat(nn, {key: 1 for j in range(m)
                               for key in ((j, 2 * m - 1 - j), (2 * m - 1 - j, j))}))
    model = QuadricModel(hermitian)
    expected = {
        "top_degree": 4 * m - 2,
        "jet_order": 2 * m,
        "validation": True,
    }
    if m == 2:
        expected["dims"] = {-2: 5, -1: 8, 0: 17, 1: 20, 2: 21, 3: 16, 4: 8, 5: 4, 6: 1}
    return CatalogEntry(
        name=f"su_family(m={m})",
        description=f"quadric in C^{(m + 1) ** 2} with su({m},{m + 1}) symmetry; "
                    "jet-determination order 2m",
        model=model,
        expected=expected,
    )


# ---------------------------------------------------------------------------
# codimension extension
# ---------------------------------------------------------------------------

def _embed_poly(p: Poly, n2: int, k2: int) -> Poly:
    n, k = p.n, p.k
    out = {}
    for mono, c in p.terms.items():
        zp, zbp = mono[:n], mono[n:2 * n]
        wp, wbp = mono[2 * n:2 * n + k], mono[2 * n + k:2 * n + 2 * k]
        up = mono[2 * n + 2 * k:]
        pad_n = (0,) * (n2 - n)
        pad_k = (0,) * (k2 - k)
        out[zp + pad_n + zbp + pad_n + wp + pad_k + wbp + pad_k + up + pad_k] = c
    return Poly(n2, k2, out)


def _embed_field(f: PolyVectorField, n2: int, k2: int) -> PolyVectorField:
    zc = [_embed_poly(p, n2, k2) for p in f.z_comps]
    zc.extend(Poly.zero(n2, k2) for _ in range(n2 - f.n))
    wc = [_embed_poly(p, n2, k2) for p in f.w_comps]
    wc.extend(Poly.zero(n2, k2) for _ in range(k2 - f.k))
    return PolyVectorField(n2, k2, zc, wc)


def extend_codim(entry: CatalogEntry, extra: int) -> CatalogEntry:
    """Append ``extra`` new variables z_new with equations Im w_new = |z_new|^2."""
    if extra < 0:
        raise InputError("extra must be nonnegative")
    if extra == 0:
        return entry
    n, k = entry.model.n, entry.model.k
    n2, k2 = n + extra, k + extra
    hermitian = []
    for h in entry.model.hermitian:
        rows = [[h[a, b] for b in range(n)] + [GR_ZERO] * extra for a in range(n)]
        rows.extend([GR_ZERO] * n2 for _ in range(extra))
        hermitian.append(ExactMatrix(rows))
    for t in range(extra):
        hermitian.append(_mat(n2, {(n + t, n + t): 1}))
    model = QuadricModel(hermitian)
    expected = {}
    if "top_degree" in entry.expected:
        expected["top_degree"] = max(entry.expected["top_degree"], 2)
        expected["jet_order"] = max(entry.expected.get("jet_order", 2), 2)
    expected["validation"] = True
    if entry.name == "codim5" and extra == 1:
        expected["dims"] = {-2: 6, -1: 10, 0: 19, 1: 22, 2: 22, 3: 16, 4: 8, 5: 4, 6: 1}
    fields = {name: _embed_field(f, n2, k2) for name, f in entry.known_fields.items()}
    return CatalogEntry(
        name=f"{entry.name}+{extra}",
        description=f"{entry.description}; extended by {extra} sphere "
                    "direction(s), which raises the codimension without new "
                    "positive-degree symmetries",
        model=model,
        known_fields=fields,
        expected=expected,
        notes=entry.notes,
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_BUILDERS = {
    "codim5": make_codim5,
    "codim4": make_codim4,
    "heisenberg": make_heisenberg,
}


def names():
    return ["codim5", "codim4", "heisenberg", "so_family", "su_family"]


def get(name: str, n=None, m=None, extra: int = 0) -> CatalogEntry:
    """Build a catalog entry by name; family entries take n or m."""
    if name in _BUILDERS:
        entry = _BUILDERS[name]()
    elif name == "so_family":
        if n is None:
            raise InputError("so_family requires --n")
        entry = make_so_family(int(n))
    elif name == "su_family":
        if m is None:
            raise InputError("su_family requires --m")
        entry = make_su_family(int(m))
    else:
        raise InputError(f"unknown catalog entry {name!r}; choices: {', '.join(names())}")
    if extra:
        entry = extend_codim(entry, int(extra))
    return entry
