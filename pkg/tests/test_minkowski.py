from fractions import Fraction

import pytest

from qmink.coeff import const, param
from qmink.lorentz import catalog, make_case
from qmink.matalg import Matrix
from qmink.minkowski import (
    braided_addition_check, covariance_check, covariant_vector, covariant_vector_map,
    grassmann_guard, hecke_degenerate_r4, hecke_rearrangement, length_report, metric_report,
    minkowski_length, quantum_trace_time, reference_relations, reflection_relations,
    rhat_epsilon, specialization_oracle, star_stable,
)
from qmink.ncalg import orient
from qmink.parse import parse_poly
from qmink.qgroup import centrality

CASES = sorted(catalog())
CLASSICAL = make_case("A1", q=1, r=0)


def _alg(cid):
    return reflection_relations(catalog()[cid])


@pytest.mark.parametrize("cid", CASES)
def test_relations_match_printed_set(cid):
    m = _alg(cid)
    assert m.algebra.confluent and len(m.rewrite) == 6
    assert m.comparison["exact"] and m.comparison["ideal_equal"]


@pytest.mark.parametrize("cid", CASES)
def test_length_scalar_and_central(cid):
    lr = length_report(_alg(cid))
    assert lr["matches"] and lr["scalar"] == "1"
    assert lr["central"] and not lr["witnesses"]


def test_a1_length_and_a1_examples():
    m = _alg("A1")
    assert minkowski_length(m) == m.nf(parse_poly("alpha.delta - q^2*gamma.beta", m.gens))
    rel = parse_poly("alpha.beta - q^-2*beta.alpha", m.gens)
    assert not m.nf(rel)
    assert not m.nf(parse_poly("alpha.delta - delta.alpha", m.gens))


def test_b2_examples():
    m = _alg("B2")
    assert not m.nf(parse_poly("beta.gamma - gamma.beta - 3*h^2*delta.delta", m.gens))
    ref = parse_poly("2/(h^2 + 2)*(alpha.delta - beta.gamma + 2*h*beta.delta)", m.gens)
    assert not m.nf(minkowski_length(m) - ref)


def test_b2_symbolic_r_is_confluent():
    m = reflection_relations(make_case("B2"))
    assert m.algebra.confluent and len(m.rewrite) == 6
    assert length_report(m)["central"]


def test_undeformed_is_commutative():
    for case in (make_case("A2", q=1, t=1), CLASSICAL):
        m = reflection_relations(case)
        assert all(len(p.terms) == 2 for p in m.rewrite.relations())
        assert minkowski_length(m) == m.nf(parse_poly("alpha.delta - beta.gamma", m.gens))


def test_mismatch_is_reported():
    m = _alg("A1")
    wrong = orient(reference_relations(catalog()["A3"], m.gens), m.gens)
    assert wrong.rules != m.rewrite.rules


def test_alpha_not_central():
    m = _alg("A1")
    central, witnesses = centrality(m.gens.gen("alpha"), m.algebra)
    assert not central and "beta" in witnesses


def test_trace_pattern():
    pattern = {cid: quantum_trace_time(_alg(cid))[1] for cid in CASES}
    assert {cid for cid, v in pattern.items() if v} == {"A1", "A3"}


def test_trace_examples():
    m = _alg("A1")
    t, central, _ = quantum_trace_time(m)
    assert t == parse_poly("1/q*alpha + q*delta", m.gens) and central
    m = reflection_relations(CLASSICAL)
    t, central, _ = quantum_trace_time(m)
    assert t == parse_poly("alpha + delta", m.gens) and central
    m = reflection_relations(make_case("A2", t=1))
    t, central, witnesses = quantum_trace_time(m)
    assert not central and "beta" in witnesses


@pytest.mark.parametrize("cid", CASES)
def test_grassmann_and_star(cid):
    m = _alg(cid)
    assert grassmann_guard(m) and star_stable(m)


def test_grassmann_classical():
    assert grassmann_guard(reflection_relations(CLASSICAL))


@pytest.mark.parametrize("cid", CASES)
def test_metric_identities(cid):
    mr = metric_report(_alg(cid))
    assert mr["contraction"] and mr["trace_form"]
    assert len(mr["g"]) == 4 and all(len(row) == 4 for row in mr["g"])


def test_classical_covariant_vector_is_adjugate():
    m = reflection_relations(CLASSICAL)
    k = m.k()
    eps = Matrix([[0, 1], [-1, 0]])
    lowered = [[sum(((k[l, kk] * eps[i, kk]) * eps[j, l] for kk in range(2) for l in range(2)),
                    m.gens.zero()) for j in range(2)] for i in range(2)]
    v = covariant_vector(m)
    assert all(v[i, j] == lowered[i][j] for i in range(2) for j in range(2))


def _rhat_eps_oracle(qv: Fraction):
    # (1 x (eps^-1)^t) P R3 (1 x (eps^-1)^dagger) |q|, eps = [[0,1],[-q,0]], real q
    lam = qv - 1 / qv
    r3 = [[qv, 0, 0, 0], [0, 1, 0, 0], [0, lam, 1, 0], [0, 0, 0, qv]]
    pr = [r3[0], r3[2], r3[1], r3[3]]
    ei = [[0, -1 / qv], [1, 0]]
    left = [[(ei[j][i] if a == b else 0) for b in range(2) for j in range(2)]
            for a in range(2) for i in range(2)]
    right = left  # eps^-1 is real, so its dagger is its transpose

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4)] for i in range(4)]

    out = mul(mul(left, pr), right)
    return [[x * qv for x in row] for row in out]


def test_rhat_epsilon_numeric():
    qv = Fraction(3, 2)
    got = rhat_epsilon(make_case("A1", q=qv, r=qv - 1 / qv))
    want = _rhat_eps_oracle(qv)
    assert all(got[i, j] == const(want[i][j]) for i in range(4) for j in range(4))


def test_a1_covariant_vector_satisfies_a3_relations():
    m = _alg("A1")
    ke = covariant_vector(m)
    sub = {"alpha": ke[0, 0], "beta": ke[0, 1], "gamma": ke[1, 0], "delta": ke[1, 1]}
    a3 = catalog()["A3"]
    for rel in reference_relations(a3, m.gens):
        assert not m.nf(rel.substitute(sub)), str(rel)


def test_a1_covariant_vector_fails_a1_relations():
    m = _alg("A1")
    ke = covariant_vector(m)
    sub = {"alpha": ke[0, 0], "beta": ke[0, 1], "gamma": ke[1, 0], "delta": ke[1, 1]}
    assert any(m.nf(rel.substitute(sub)) for rel in m.rewrite.relations())


def test_covariant_map_linear():
    m = _alg("A3")
    k = m.k()
    assert covariant_vector_map(m.case, k) == covariant_vector(m)


def test_hecke_rearrangement():
    assert hecke_rearrangement("q") and hecke_rearrangement("h")


@pytest.mark.parametrize("cid", CASES)
def test_braided_addition(cid):
    res = braided_addition_check(catalog()[cid])
    assert res["confluent"] and res["holds"] and res["cross_rules"]


def test_braided_addition_classical_copies_commute():
    res = braided_addition_check(CLASSICAL)
    assert res["holds"]
    assert all(r.split(" -> ")[0][::-1].replace("'", "") for r in res["cross_rules"])
    assert all(len(r.split(" -> ")[1].split(" ")) == 1 for r in res["cross_rules"])


@pytest.mark.parametrize("case", [catalog()["A1"], make_case("A2", t=1), catalog()["A3"],
                                  catalog()["B1"], catalog()["B2"], CLASSICAL],
                         ids=["A1", "A2t1", "A3", "B1", "B2", "classical"])
def test_covariance(case):
    res = covariance_check(case)
    assert res["confluent"] and res["holds"] and res["length_rule"]


@pytest.mark.parametrize("cid", ["A1", "A3"])
def test_degenerate_r4(cid):
    res = hecke_degenerate_r4(catalog()[cid])
    assert res["equal"] and res["rank"] == 7
    assert res["scale"] == "q^2"
    assert not res["unscaled_equal"] and res["unscaled_rank"] == 16


def test_degenerate_r4_coincides_at_q_one():
    # R1 is the identity at q = 1, so the alternative R4 equals the usual one
    res = hecke_degenerate_r4(CLASSICAL)
    assert res["scale"] == "1" and res["rank"] == 6 and not res["equal"]


def test_degenerate_r4_rejects_h():
    with pytest.raises(ValueError):
        hecke_degenerate_r4(catalog()["B1"])


def test_specialization_oracle_a1():
    res = specialization_oracle(catalog()["A1"], n=1)
    assert res["agree"] and len(res["points"]) == 1


def test_q_and_h_params_distinct():
    assert catalog()["B1"].value == param("h")
