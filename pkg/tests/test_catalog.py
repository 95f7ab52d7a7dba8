import json

import pytest

from crprolong import catalog
from crprolong.errors import InputError
from crprolong.model import tumanov_search
from crprolong.poly import Poly
from crprolong.prolong import prolong_full
from crprolong.realize import express_in_span, realize_basis
from crprolong.scalars import GR_I, GaussianRational
from crprolong.verify import verify_hol


# ---------------------------------------------------------------------------
# the fixed entries
# ---------------------------------------------------------------------------


def test_codim5_matrix_entries(codim5):
    hs = codim5.model.hermitian
    assert codim5.model.n == 4 and codim5.model.k == 5
    assert hs[0][0, 1] == 1 and hs[0][1, 0] == 1
    assert hs[1][0, 1] == -GR_I and hs[1][1, 0] == GR_I
    assert hs[2][1, 2] == 1 and hs[2][0, 3] == 1
    assert hs[2][2, 1] == 1 and hs[2][3, 0] == 1
    assert hs[3][0, 0] == 1
    assert hs[4][1, 1] == 1
    assert all(h.is_hermitian() for h in hs)


def test_codim5_second_defining_poly(codim5):
    n, k = 4, 5
    z1, z2 = Poly.variable(n, k, "z", 0), Poly.variable(n, k, "z", 1)
    zb1, zb2 = Poly.variable(n, k, "zb", 0), Poly.variable(n, k, "zb", 1)
    P = codim5.model.defining_polys()
    assert P[1] == -GR_I * z1 * zb2 + GR_I * z2 * zb1


def test_codim5_quadratic_syzygy(codim5):
    P = codim5.model.defining_polys()
    assert (P[0] * P[0] + P[1] * P[1] - 4 * P[3] * P[4]).is_zero()


def test_codim5_known_field_weights(codim5):
    kf = codim5.known_fields
    for name in ("X", "Y", "Z", "U"):
        assert kf[name].weighted_degree() == 0, name
        assert kf[name].ordinary_vanishing_order() == 1
    assert kf["T"].weighted_degree() == 4
    assert kf["T"].ordinary_vanishing_order() == 3
    assert kf["F"].weighted_degree() == 6
    assert kf["F"].ordinary_vanishing_order() == 4


def test_codim4_matrix_entries(codim4):
    hs = codim4.model.hermitian
    assert codim4.model.n == 6 and codim4.model.k == 4
    assert hs[0][0, 1] == -GR_I and hs[0][1, 0] == GR_I
    assert hs[1][1, 2] == -GR_I
    assert hs[2][0, 2] == -GR_I
    assert hs[3][0, 3] == 1 and hs[3][1, 4] == 1 and hs[3][2, 5] == 1
    assert all(h.is_hermitian() for h in hs)


def test_codim4_field_and_variant_differ(codim4):
    good = codim4.known_fields["G"]
    bad = catalog.codim4_display_variant()
    assert good != bad
    assert good.weighted_degree() == 4 and bad.weighted_degree() == 4
    assert verify_hol(good, codim4.model).verdict
    assert not verify_hol(bad, codim4.model).verdict
    assert express_in_span(bad, [good]) is None


def test_heisenberg_entry(heisenberg):
    assert heisenberg.model.n == 1 and heisenberg.model.k == 1
    assert heisenberg.model.hermitian[0][0, 0] == 1
    assert heisenberg.known_fields == {}


def test_every_fixed_entry_validates_and_has_tumanov_witness():
    for name in ("codim5", "codim4", "heisenberg"):
        entry = catalog.get(name)
        assert entry.model.validate().all_passed, name
        assert tumanov_search(entry.model, bound=2) is not None, name


def test_expected_blocks_match_prolongation(codim5_result, codim4_result,
                                            heisenberg_result):
    for entry, res in ((catalog.make_codim5(), codim5_result),
                       (catalog.make_codim4(), codim4_result),
                       (catalog.make_heisenberg(), heisenberg_result)):
        assert res.dims == entry.expected["dims"]
        assert res.top_degree == entry.expected["top_degree"]
        assert res.jet_order == entry.expected["jet_order"]


def test_codim5_tumanov_witness_matches_expected(codim5):
    assert tumanov_search(codim5.model) == codim5.expected["tumanov_witness"]


def test_known_fields_lie_in_their_degree_slices(codim5, codim5_result,
                                                 codim4, codim4_result):
    for entry, res in ((codim5, codim5_result), (codim4, codim4_result)):
        for name, f in entry.known_fields.items():
            d = f.weighted_degree()
            coeffs = express_in_span(f, realize_basis(res, d))
            assert coeffs is not None, (entry.name, name)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def test_so3_is_byte_identical_to_codim4(codim4):
    so3 = catalog.make_so_family(3)
    assert json.dumps(so3.model.to_json(), sort_keys=True) == \
        json.dumps(codim4.model.to_json(), sort_keys=True)
    assert so3.expected["dims"] == codim4.expected["dims"]


def test_su2_matches_codim5_after_permutation(codim5):
    su2 = catalog.make_su_family(2)
    perm = catalog.SU2_TO_CODIM5
    assert sorted(perm) == list(range(5))
    for i, h in enumerate(su2.model.hermitian):
        assert h == codim5.model.hermitian[perm[i]], i
    assert su2.expected["dims"] == codim5.expected["dims"]


def test_su2_prolongs_like_codim5(codim5_result):
    su2 = catalog.make_su_family(2)
    res = prolong_full(su2.model)
    assert res.dims == codim5_result.dims
    assert res.top_degree == codim5_result.top_degree


def test_family_counts_and_predictions():
    so5 = catalog.make_so_family(5)
    assert so5.model.n == 10 and so5.model.k == 5 * 4 // 2 + 1
    assert so5.expected["top_degree"] == 8 and so5.expected["jet_order"] == 5
    su3 = catalog.make_su_family(3)
    assert su3.model.n == 6 and su3.model.k == 3 + 3 + 3 + 1
    assert su3.expected["top_degree"] == 10 and su3.expected["jet_order"] == 6
    for entry in (so5, su3):
        assert entry.model.validate().all_passed


def test_family_input_errors():
    with pytest.raises(InputError):
        catalog.make_so_family(2)
    with pytest.raises(InputError):
        catalog.make_su_family(1)


# ---------------------------------------------------------------------------
# extension
# ---------------------------------------------------------------------------


def test_extend_zero_is_identity(codim5):
    assert catalog.extend_codim(codim5, 0) is codim5


def test_extend_rejects_negative(codim5):
    with pytest.raises(InputError):
        catalog.extend_codim(codim5, -1)


def test_extend_codim5_by_one(extended, codim5):
    assert extended.name == "codim5+1"
    assert extended.model.n == 5 and extended.model.k == 6
    # original forms sit in the top-left block
    for j in range(5):
        for a in range(4):
            for b in range(4):
                assert extended.model.hermitian[j][a, b] == codim5.model.hermitian[j][a, b]
        assert extended.model.hermitian[j][4, 4] == 0
    assert extended.model.hermitian[5][4, 4] == 1
    assert extended.model.validate().all_passed


def test_extended_fields_remain_tangent(extended):
    for name, f in extended.known_fields.items():
        assert verify_hol(f, extended.model).verdict, name
        original = catalog.make_codim5().known_fields[name]
        assert f.weighted_degree() == original.weighted_degree()


def test_extend_heisenberg_gives_product_profile(heisenberg):
    ext = catalog.extend_codim(heisenberg, 1)
    res = prolong_full(ext.model)
    assert res.dims == {-2: 2, -1: 4, 0: 4, 1: 4, 2: 2}
    assert res.top_degree == 2


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def test_names_and_get():
    assert catalog.names() == ["codim5", "codim4", "heisenberg", "so_family", "su_family"]
    assert catalog.get("codim5").name == "codim5"
    assert catalog.get("so_family", n=3).name == "so_family(n=3)"
    assert catalog.get("su_family", m=2).name == "su_family(m=2)"
    assert catalog.get("heisenberg", extra=2).name == "heisenberg+2"
    with pytest.raises(InputError):
        catalog.get("nope")
    with pytest.raises(InputError):
        catalog.get("so_family")
    with pytest.raises(InputError):
        catalog.get("su_family")


def test_entry_json_round_trips_model(codim5):
    data = codim5.to_json()
    from crprolong.model import QuadricModel
    from crprolong.poly import PolyVectorField

    assert QuadricModel.from_json(data["model"]) == codim5.model
    for name, fj in data["known_fields"].items():
        assert PolyVectorField.from_json(fj) == codim5.known_fields[name]
