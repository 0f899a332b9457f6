import pytest

from qmink.coeff import I, const, param
from qmink.lorentz import (
    FAMILIES, PERTURBATIONS, CaseError, LorentzCase, ansatz_constraints, block_rep_check,
    case_checks, catalog, gauge_similarity, make_case, mixed_ybe_check, perturb,
    perturbation_sensitivity, reality_check,
)
from qmink.matalg import Matrix, identity
from qmink.qgroup import frt_gens, frt_relations, lam, qdet_via_projector, r_h, r_q, spectral

q, h = param("q"), param("h")


def test_catalog_covers_every_family():
    cases = catalog()
    assert {c.family for c in cases.values()} == set(FAMILIES)
    assert cases["A2i"].sign == -1 and cases["A4"].sign == -1
    assert cases["A1"].sign == 1 and cases["B1"].sign == 1


def test_a1_at_lambda_is_standard_r():
    assert catalog()["A1"].r3() == r_q()


def test_b1_at_zero_is_identity():
    assert make_case("B1", r=0).r3() == identity(4)


def test_b2_explicit():
    m = make_case("B2", r=0, h=1).r3()
    assert m == Matrix([[1, 0, -1, 0], [-1, 1, 0, 1], [0, 0, 1, 0], [0, 0, 1, 1]])


@pytest.mark.parametrize("cid", sorted(catalog()))
def test_catalog_case_passes_all_checks(cid):
    assert all(case_checks(catalog()[cid]).values())


def test_symbolic_r_variants_pass():
    for fam in ("A1", "A3", "B2"):
        case = make_case(fam)
        assert all(case_checks(case).values()), fam


def test_reality():
    assert reality_check(catalog()["A1"].r3())
    assert reality_check(Matrix([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 5]]))
    bad = make_case("A1", r=lam() + I).r3()
    assert not reality_check(bad)


def test_mixed_ybe_examples():
    assert mixed_ybe_check(r_q(), r_q())
    assert mixed_ybe_check(r_q(), catalog()["A2"].r3())
    assert mixed_ybe_check(r_h(), catalog()["B2"].r3())
    assert not mixed_ybe_check(r_h(), catalog()["A1"].r3())


def test_block_rep_identity_and_det_value():
    alg = frt_relations(r_q(), frt_gens("q"))
    det = qdet_via_projector(r_q(), spectral("q").minus, alg)
    rep = block_rep_check(identity(4), alg, det)
    assert rep.holds and rep.det_value == identity(2)
    rep = block_rep_check(catalog()["A1"].r3(), alg, det)
    assert rep.holds and rep.det_scalar


def test_block_rep_reports_failing_relation():
    alg = frt_relations(r_q(), frt_gens("q"))
    det = qdet_via_projector(r_q(), spectral("q").minus, alg)
    rep = block_rep_check(perturb(catalog()["A1"].r3(), (0, 1), 1), alg, det)
    assert not rep.holds and rep.failing


@pytest.mark.parametrize("cid", sorted(catalog()))
def test_every_perturbation_breaks_something(cid):
    res = perturbation_sensitivity(catalog()[cid])
    assert len(res) == len(PERTURBATIONS)
    assert all(broken for broken in res.values())


def test_q_ansatz_report():
    rep = ansatz_constraints("q")
    names = {i["name"] for i in rep.implied}
    assert {"B^2 = 0", "C^2 = 0"} <= names
    assert all(i["verified"] for i in rep.implied)
    assert set(rep.catalog) == {"A1", "A2", "A2i", "A3", "A4", "A5"}
    assert not any(rep.catalog.values())
    assert all(all(p.values()) and p for p in rep.perturbations.values())


def test_h_ansatz_report():
    rep = ansatz_constraints("h")
    names = {i["name"] for i in rep.implied}
    assert {"AD = I2", "[A,B] = h(I2 - A^2)"} <= names
    assert all(i["verified"] for i in rep.implied)
    assert set(rep.catalog) == {"B1", "B2"} and not any(rep.catalog.values())


def test_a3_satisfies_constraints():
    rep = ansatz_constraints("q")
    assert rep.catalog["A3"] == []


def test_gauge():
    a1 = catalog()["A1"].r3()
    assert gauge_similarity(a1, 1) == a1
    moved = gauge_similarity(a1, 2)
    assert moved == make_case("A1", r=2 * lam()).r3()
    assert mixed_ybe_check(r_q(), moved)
    with pytest.raises(ValueError):
        gauge_similarity(a1, 0)


def test_invalid_cases():
    with pytest.raises(CaseError):
        make_case("A4", mode="q_real")
    with pytest.raises(CaseError):
        LorentzCase("X", "C1", "q_real")


def test_a2_mode_pairs_q_and_t():
    case = catalog()["A2i"]
    assert case.q == I * param("p")
    assert case._raw("t") == I * param("u")
    assert case.assumptions()[-1] == "t = i*u imaginary"


def test_substitute_binds_everything():
    pt = {"q": const(2), "r": const(3)}
    case = make_case("A1").substitute(pt)
    assert case.r3() == make_case("A1", q=2, r=3).r3()
