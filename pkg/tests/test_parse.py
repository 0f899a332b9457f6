import pytest
from hypothesis import given, settings, strategies as st

from qmink.coeff import ParameterContext, ParameterDecl, param
from qmink.matalg import Matrix
from qmink.ncalg import GeneratorSet, NCPoly
from qmink.parse import ParseError, parse_coefficient, parse_expression, parse_matrix, parse_poly
from qmink.qgroup import r_h

q = param("q")
ABCD = GeneratorSet.build("abcd")


def test_lambda_literal():
    assert parse_coefficient("q - q^-1") == q - q.inverse()


def test_r_h_literal():
    assert parse_matrix("[[1,-h,h,h^2],[0,1,0,-h],[0,0,1,h],[0,0,0,1]]") == r_h()


def test_det_q_literal():
    p = parse_poly("a.d - q*b.c", ABCD)
    a, b, c, d = ABCD.gens()
    assert p == a * d - b * c * q


def test_greek_letters_and_star_product():
    g = GeneratorSet.build(("alpha", "beta", "gamma", "delta"), {"beta": "gamma"})
    assert parse_poly("α*β - q^-2 β.α".replace(" β", "*β"), g) == parse_poly("alpha.beta - q^-2*beta.alpha", g)


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_expression("q + * 2")
    assert e.value.pos == 4


def test_unknown_and_undeclared_names():
    with pytest.raises(ParseError):
        parse_expression("zeta + 1")
    ctx = ParameterContext((ParameterDecl("q"),))
    with pytest.raises(ParseError, match="undeclared"):
        parse_coefficient("q + h", ctx)


def test_division_rules():
    with pytest.raises(ParseError):
        parse_poly("a / b", ABCD)
    with pytest.raises(ParseError):
        parse_coefficient("q / 0")
    with pytest.raises(ParseError):
        parse_poly("a^-1", ABCD)


def test_non_square_matrix():
    with pytest.raises(ParseError):
        parse_matrix("[[1, 2], [3]]")


_words = st.lists(st.sampled_from("abcd"), min_size=0, max_size=3).map(lambda w: ".".join(w) or "1")
_coefs = st.sampled_from(["1", "-1", "q", "(q - 1/q)", "2*i", "h^2/(h^2 + 2)", "(1 + i)/q"])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(_coefs, _words), min_size=1, max_size=4))
def test_poly_round_trip(terms):
    text = " + ".join(f"({c})*{w}" for c, w in terms)
    p = parse_poly(text, ABCD)
    assert parse_poly(str(p), ABCD) == p


def test_matrix_round_trip():
    m = r_h()
    assert parse_matrix(str(m)) == m
    assert isinstance(parse_expression("[[q]]"), Matrix)
    assert isinstance(parse_poly("2", ABCD), NCPoly)
