import pytest
from hypothesis import given, settings, strategies as st

from qmink.coeff import I, ONE, param
from qmink.ncalg import (
    GeneratorSet, IterationCapExceeded, NCPoly, NonConfluentError, OrientationError, commutator,
    confluence_check, normal_form, orient, star,
)
from qmink.parse import parse_poly
from qmink.qgroup import frt_gens, frt_relations, lam, r_q

q, p = param("q"), param("p")
XY = GeneratorSet.build("xy")
K = GeneratorSet.build(("alpha", "beta", "gamma", "delta"), {"beta": "gamma"})

REL_54 = [
    "alpha.beta - q^-2*beta.alpha",
    "delta.beta - beta.delta - 1/q*(q - 1/q)*alpha.beta",
    "alpha.gamma - q^2*gamma.alpha",
    "beta.gamma - gamma.beta - 1/q*(q - 1/q)*(delta - alpha).alpha",
    "alpha.delta - delta.alpha",
    "gamma.delta - delta.gamma - 1/q*(q - 1/q)*gamma.alpha",
]
REL_56 = [
    "alpha.beta - beta.alpha - q*(q - 1/q)*beta.delta",
    "alpha.gamma - gamma.alpha + q*(q - 1/q)*delta.gamma",
    "alpha.delta - delta.alpha",
    "beta.gamma - gamma.beta - q*(q - 1/q)*(alpha - delta).delta",
    "beta.delta - q^2*delta.beta",
    "gamma.delta - q^-2*delta.gamma",
]


def system(rels, gens=K):
    rs = orient([parse_poly(t, gens) for t in rels], gens)
    rs.check_confluence()
    return rs


def test_orient_quantum_plane():
    rs = orient([parse_poly("x.y - q*y.x", XY)], XY)
    assert str(rs.reduce(parse_poly("y.x", XY))) == "(1/q)*x.y"


def test_orient_commutative_plane():
    rs = orient([parse_poly("x.y - y.x", XY)], XY)
    assert rs.reduce(parse_poly("y.x", XY)) == parse_poly("x.y", XY)
    status, failures = confluence_check(rs)
    assert status == "checked-confluent" and not failures


def test_orient_54_rules():
    rs = system(REL_54)
    assert len(rs) == 6 and rs.status == "checked-confluent"
    gb = rs.reduce(parse_poly("gamma.beta", K))
    # the printed [beta, gamma] relation solved for gamma.beta, reduced against [alpha, delta] = 0
    expected = parse_poly("beta.gamma - 1/q*(q - 1/q)*(alpha.delta - alpha.alpha)", K)
    assert gb == expected


def test_length_central_by_rewriting():
    rs = system(REL_54)
    length = parse_poly("alpha.delta - q^2*gamma.beta", K)
    for g in K.gens():
        assert not normal_form(commutator(length, g), rs)


def test_normal_form_56():
    rs = system(REL_56, GeneratorSet.build(("alpha", "delta", "beta", "gamma"), {"beta": "gamma"}))
    g = rs.gens
    assert rs.reduce(parse_poly("gamma.delta", g)) == parse_poly("q^-2*delta.gamma", g)


def _perturbed_frt(extra):
    alg = frt_relations(r_q(), frt_gens("q"))
    gens = alg.gens
    a, b, c, d = (gens.gen(n) for n in "abcd")
    rels = [r for r in alg.rewrite.relations() if r.leading_word() != (3, 0)]
    rels.append(a * d - d * a - b * c * lam() - extra(gens))
    rs = orient(rels, gens)
    rs.check_confluence()
    return rs


def test_frt_system_confluent():
    assert frt_relations(r_q(), frt_gens("q")).confluent


def test_degree_breaking_perturbation_rejected():
    rs = _perturbed_frt(lambda g: g.gen("a") * g.gen("a"))
    assert rs.status == "checked-nonconfluent" and rs.failures
    with pytest.raises(NonConfluentError):
        rs.require_confluent()


def test_central_constant_perturbation_stays_pbw():
    # ad - da = lambda*bc + 1 is a PBW deformation (a Weyl algebra at q = 1);
    # an independent degree-3 dimension count agrees.
    rs = _perturbed_frt(lambda g: g.one())
    assert rs.status == "checked-confluent"


def test_orientation_error_on_degree_increase():
    with pytest.raises(OrientationError):
        orient([parse_poly("x - x.y.x", XY) - parse_poly("x", XY) + parse_poly("1", XY)], XY)


def test_iteration_cap():
    rs = system(REL_54)
    rs.max_steps = 2
    with pytest.raises(IterationCapExceeded):
        rs.reduce(parse_poly("delta.gamma.beta.alpha", K))


def test_star_examples():
    ab = parse_poly("alpha.beta", K)
    assert star(ab, K) == parse_poly("gamma.alpha", K)
    bg = parse_poly("q*beta.gamma", K)
    assert star(bg, K) == bg
    lam_ip = lam().substitute({"q": I * p})
    bd = parse_poly("beta.delta", K) * lam_ip
    assert star(bd, K) == parse_poly("delta.gamma", K) * (-lam_ip)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["1", "q", "i", "(2 - i)/q"]),
                          st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta"]), min_size=1, max_size=3)),
                min_size=1, max_size=4))
def test_star_is_involution(terms):
    poly = parse_poly(" + ".join(f"({c})*{'.'.join(w)}" for c, w in terms), K)
    assert star(star(poly, K), K) == poly


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta"]), min_size=1, max_size=3),
       st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta"]), min_size=1, max_size=3))
def test_normal_form_multiplicative(u, v):
    rs = system(REL_54)
    a, b = parse_poly(".".join(u), K), parse_poly(".".join(v), K)
    assert rs.reduce(a * b) == rs.reduce(rs.reduce(a) * rs.reduce(b))


def test_cross_block_commutation():
    gens = GeneratorSet.build(("a", "b", "x"), blocks=[0, 0, 1], commuting=[(0, 1)])
    rs = orient([parse_poly("a.b - q*b.a", gens)], gens)
    rs.check_confluence()
    assert rs.status == "checked-confluent"
    assert rs.reduce(parse_poly("x.b.a", gens)) == rs.reduce(parse_poly("b.x.a", gens))
    assert rs.reduce(parse_poly("x.a", gens)) == parse_poly("a.x", gens)


def test_scalar_reduction():
    rs = system(REL_54)
    assert rs.reduce(ONE) == K.one()
    assert NCPoly({}, K).is_zero()
