"""One test per acceptance criterion; each records a PASS/FAIL summary line."""

from qmink.coeff import param
from qmink.lorentz import ansatz_constraints, case_checks, catalog, make_case, perturbation_sensitivity
from qmink.matalg import Matrix, identity, inverse, perm, symbolic_rank
from qmink.minkowski import (
    braided_addition_check, covariance_check, covariant_vector, hecke_degenerate_r4,
    hecke_rearrangement, length_report, metric_report, quantum_trace_time, reference_relations,
    reflection_relations, specialization_oracle, star_stable,
)
from qmink.ncalg import GeneratorSet, orient
from qmink.parse import parse_poly
from qmink.qgroup import (
    centrality, dq_from_trace_formula, epsilon, epsilon_inverse_identity, frt_gens, frt_relations,
    hecke_residual, plane_covariance, qdet_via_projector, r_h, r_q, spectral, ybe,
)

q, h = param("q"), param("h")
CASES = catalog()

GLQ = ["a.b - q*b.a", "a.c - q*c.a", "a.d - d.a - (q - 1/q)*b.c",
       "b.c - c.b", "b.d - q*d.b", "c.d - q*d.c"]
XI = "(a.d - c.b - h*c.d)"
GLH = [f"a.b - b.a - h*({XI} - a.a)", "a.c - c.a - h*c.c", "a.d - d.a - h*c.(d - a)",
       "b.c - c.b - h*(a.c + c.d)", f"b.d - d.b - h*(d.d - {XI})", "c.d - d.c + h*c.c"]


def _frt(d):
    r = r_q() if d == "q" else r_h()
    alg = frt_relations(r, frt_gens(d))
    return r, alg, qdet_via_projector(r, spectral(d).minus, alg)


def test_criterion_01_r_matrix_identities(verdict):
    res = {"ybe_q": ybe(r_q()), "ybe_h": ybe(r_h())}
    res["hecke_q"] = hecke_residual(r_q(), (q, -q.inverse())).is_zero()
    res["involutive_h"] = hecke_residual(r_h(), (1, -1)).is_zero()
    res["triangular_h"] = r_h() * (perm() * r_h() * perm()) == identity(4)
    qi = q.inverse()
    explicit = {
        "q": Matrix([[0, 0, 0, 0], [0, qi * qi, -qi, 0], [0, -qi, 1, 0], [0, 0, 0, 0]]) / (1 + qi * qi),
        "h": Matrix([[0, h, -h, -h * h], [0, 1, -1, -h], [0, -1, 1, h], [0, 0, 0, 0]]) / 2,
    }
    for d in ("q", "h"):
        sp = spectral(d)
        pl, mi = sp.plus, sp.minus
        res[f"idempotent_{d}"] = pl * pl == pl and mi * mi == mi
        res[f"orthogonal_{d}"] = (pl * mi).is_zero() and (mi * pl).is_zero()
        res[f"complete_{d}"] = pl + mi == identity(4)
        res[f"ranks_{d}"] = (symbolic_rank(pl), symbolic_rank(mi)) == (3, 1)
        res[f"explicit_minus_{d}"] = mi == explicit[d]
    assert not verdict(1, "R-matrix identities", res)


def test_criterion_02_frt_derivation(verdict):
    res = {}
    for d, printed, det_text in (("q", GLQ, "a.d - q*b.c"), ("h", GLH, XI)):
        _, alg, det = _frt(d)
        ref = orient([parse_poly(t, alg.gens) for t in printed], alg.gens)
        res[f"relations_{d}"] = alg.confluent and ref.rules == alg.rewrite.rules
        res[f"det_{d}"] = det == alg.nf(parse_poly(det_text, alg.gens))
        res[f"det_central_{d}"] = centrality(det, alg)[0]
    assert not verdict(2, "FRT relations and determinants", res)


def test_criterion_03_epsilon_and_d(verdict):
    res = {}
    expected_d = {"q": Matrix([[q.inverse(), 0], [0, q]]), "h": Matrix([[1, -2 * h], [0, 1]])}
    for d in ("q", "h"):
        r, alg, det = _frt(d)
        res[f"epsilon_identity_{d}"] = epsilon_inverse_identity(d, alg, det)[0]
        dm = dq_from_trace_formula(r, spectral(d).rho)
        e = epsilon(d)
        res[f"d_trace_formula_{d}"] = dm == expected_d[d]
        res[f"d_from_epsilon_{d}"] = dm == -(e * inverse(e).transpose())
    res["plane_q"] = plane_covariance(r_q(), parse_poly("x.y - q*y.x", GeneratorSet.build("xy")), "q")[0]
    res["plane_h"] = plane_covariance(
        r_h(), parse_poly("x.y - y.x - h*y.y", GeneratorSet.build("yx")), "h")[0]
    assert not verdict(3, "epsilon and D identities, quantum planes", res)


def test_criterion_04_lorentz_catalog(verdict):
    res = {}
    for cid, case in CASES.items():
        for name, ok in case_checks(case).items():
            res[f"{cid}_{name}"] = ok
        res[f"{cid}_perturbations"] = all(perturbation_sensitivity(case).values())
    for d, needed in (("q", {"B^2 = 0", "C^2 = 0"}), ("h", {"AD = I2", "[A,B] = h(I2 - A^2)"})):
        rep = ansatz_constraints(d)
        got = {i["name"] for i in rep.implied if i["verified"]}
        res[f"ansatz_{d}"] = needed <= got and not any(rep.catalog.values())
    assert not verdict(4, "Lorentz catalog", res)


def test_criterion_05_minkowski_derivation(verdict):
    res = {}
    for cid, case in CASES.items():
        m = reflection_relations(case)
        lr = length_report(m)
        res[f"{cid}_relations"] = m.comparison["exact"] or m.comparison["ideal_equal"]
        res[f"{cid}_length"] = lr["matches"]
        res[f"{cid}_length_central"] = lr["central"]
    assert not verdict(5, "Minkowski relations and lengths", res)


def test_criterion_06_trace_centrality_pattern(verdict):
    res = {}
    for cid, case in CASES.items():
        central = quantum_trace_time(reflection_relations(case))[1]
        res[cid] = central == (case.family in ("A1", "A3"))
    assert not verdict(6, "trace centrality pattern", res)


def test_criterion_07_structure_maps(verdict):
    res = {}
    m = reflection_relations(CASES["A1"])
    ke = covariant_vector(m)
    sub = {"alpha": ke[0, 0], "beta": ke[0, 1], "gamma": ke[1, 0], "delta": ke[1, 1]}
    res["A1_to_A3"] = all(not m.nf(rel.substitute(sub))
                          for rel in reference_relations(CASES["A3"], m.gens))
    for cid, case in CASES.items():
        res[f"{cid}_metric"] = metric_report(reflection_relations(case))["contraction"]
        res[f"{cid}_braided"] = braided_addition_check(case)["holds"]
    res["hecke_rearrangement"] = hecke_rearrangement("q") and hecke_rearrangement("h")
    assert not verdict(7, "structure maps", res)


def test_criterion_08_covariance(verdict):
    res = {}
    cases = {"A1": CASES["A1"], "A2(t=1)": make_case("A2", t=1), "A3": CASES["A3"],
             "B1": CASES["B1"], "B2": CASES["B2"]}
    for label, case in cases.items():
        cv = covariance_check(case)
        res[f"{label}_covariance"] = cv["confluent"] and cv["holds"]
        res[f"{label}_length_transform"] = cv["length_rule"]
    assert not verdict(8, "covariance under the Lorentz coaction", res)


def test_criterion_09_degenerate_r4(verdict):
    res = {cid: hecke_degenerate_r4(CASES[cid])["equal"] for cid in ("A1", "A3")}
    assert not verdict(9, "alternative R4 adds the vanishing length", res)


def test_criterion_10_engine_soundness(verdict):
    res = {}
    for d in ("q", "h"):
        _, alg, det = _frt(d)
        res[f"frt_{d}_confluent"] = alg.confluent
        res[f"sl_{d}_confluent"] = epsilon_inverse_identity(d, alg, det)[1].confluent
    for cid, case in CASES.items():
        m = reflection_relations(case)
        res[f"{cid}_confluent"] = m.algebra.confluent
        res[f"{cid}_braided_confluent"] = braided_addition_check(case)["confluent"]
        res[f"{cid}_mixed_confluent"] = covariance_check(case)["confluent"]
        res[f"{cid}_star"] = star_stable(m)
        oracle = specialization_oracle(case, n=3)
        res[f"{cid}_oracle"] = oracle["agree"] and len(oracle["points"]) == 3
    assert not verdict(10, "engine soundness", res)
