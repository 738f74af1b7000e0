import pytest
from hypothesis import given, settings, strategies as st

from strategies import terms
from comppath.terms import (ArityError, Atom, Mu, ParseError, PathArityError, PositionError,
                            Rho, Sigma, Tau, Xi, format_path_term, format_position,
                            is_valid_position, left_chain, parse_path_term, parse_position,
                            positions, replace_at, size, subterm_at)

P = parse_path_term




def test_parse_examples():
    assert P("sigma(sigma(t))") == Sigma(Sigma(Atom("t")))
    assert P("tau(tau(t,r),s)") == Tau(Tau(Atom("t"), Atom("r")), Atom("s"))
    assert P("mu3(xi1(r),s,u)") == Mu("plain3", (Xi("1", (Atom("r"),)), Atom("s"), Atom("u")))


def test_parse_is_whitespace_insensitive():
    assert P("  tau ( a ,\n b ) ") == Tau(Atom("a"), Atom("b"))


def test_format_examples():
    assert format_path_term(Rho()) == "rho"
    assert format_path_term(Sigma(Atom("r"))) == "sigma(r)"
    assert format_path_term(Tau(Rho("x0"), Atom("r"))) == "tau(rho_x0,r)"


@pytest.mark.parametrize("text", ["tau(a)", "sigma(a,b)", "mu3(a,b)", "xiand(a)", "mu2x(a)"])
def test_arity_errors_name_constructor(text):
    with pytest.raises(PathArityError) as e:
        P(text)
    assert text.split("(")[0] in str(e.value)
    assert isinstance(e.value, ArityError)


@pytest.mark.parametrize("text", ["", "tau(a,", "a b", "sigma()", "(a)", "tau(a,b))", "1a"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_syntax_error_location():
    with pytest.raises(ParseError) as e:
        P("tau(a,\n  ,b)")
    assert e.value.line == 2


def test_direct_constructor_arity_checked():
    with pytest.raises(ArityError):
        Xi("and", (Atom("a"),))
    with pytest.raises(ArityError):
        Mu("bogus", (Atom("a"),))


def test_subterm_examples():
    assert subterm_at(P("tau(a,b)"), (0,)) == Atom("a")
    assert subterm_at(P("sigma(tau(a,b))"), (0, 1)) == Atom("b")
    assert subterm_at(Atom("a"), ()) == Atom("a")


def test_replace_examples():
    assert replace_at(P("tau(a,b)"), (1,), Atom("c")) == P("tau(a,c)")
    assert replace_at(Atom("a"), (), Atom("b")) == Atom("b")
    assert replace_at(P("sigma(sigma(r))"), (0,), Rho()) == P("sigma(rho)")


def test_invalid_positions():
    t = P("tau(a,b)")
    assert not is_valid_position(t, (2,))
    assert not is_valid_position(t, (0, 0))
    with pytest.raises(PositionError):
        subterm_at(t, (0, 0))
    with pytest.raises(PositionError):
        replace_at(t, (5,), Rho())


def test_position_text():
    assert format_position(()) == ""
    assert format_position((0, 1, 2)) == "0.1.2"
    assert parse_position("") == ()
    assert parse_position("0.1") == (0, 1)
    with pytest.raises(ValueError):
        parse_position("0..1")


def test_left_chain():
    assert left_chain([]) == Rho()
    assert left_chain([Atom("a")]) == Atom("a")
    assert left_chain([Atom("a"), Atom("b"), Atom("c")]) == P("tau(tau(a,b),c)")


@given(terms)
@settings(max_examples=300)
def test_round_trip(t):
    assert parse_path_term(format_path_term(t)) == t


@given(terms, st.data())
@settings(max_examples=200)
def test_position_algebra(t, data):
    ps = list(positions(t))
    assert len(ps) == size(t)
    p = data.draw(st.sampled_from(ps))
    assert replace_at(t, p, subterm_at(t, p)) == t
    s = data.draw(terms)
    assert subterm_at(replace_at(t, p, s), p) == s
