import pytest

from comppath.engine import FORWARD, REVERSED, contract_once, find_redexes
from comppath.rules import (RULES, Context, Equation, NoMatch, RuleError, get_rule,
                            sub_left, sub_right)
from comppath.terms import Atom, SubL, SubR, Tau, Sigma, parse_path_term as P
from witnesses import CONTEXT_WITNESSES, WITNESSES

NAMES = ("sr ss tr tsr trr tlr slr srr sls slss srs srrr mx2l1 mx2l2 mx2r1 mx2r2 mx3l mx3r "
         "mxl mxr mx mxx xmr mx1r stss ssbl ssbr sx sxss sm smss smsss tsbll tsbrl tsblr "
         "tsbrr tt tts tst").split()


def test_catalogue_is_complete_and_ordered():
    assert [r.name for r in RULES] == NAMES
    assert [r.number for r in RULES] == list(range(1, 40))


def test_unknown_rule():
    with pytest.raises(RuleError):
        get_rule("nope")


@pytest.mark.parametrize("number,name,lhs,rhs", WITNESSES, ids=[w[1] for w in WITNESSES])
def test_rule_witness(number, name, lhs, rhs):
    t = P(lhs)
    root = [r for r in find_redexes(t) if r.position == ()]
    assert [r.rule for r in root] == [name]
    assert contract_once(t, name, (), FORWARD) == P(rhs)


@pytest.mark.parametrize("name,lhs,rhs", CONTEXT_WITNESSES, ids=[w[0] for w in CONTEXT_WITNESSES])
def test_context_witness(name, lhs, rhs):
    m = get_rule(name).match(P(lhs))
    assert m is not None
    assert m.result == P(rhs)


@pytest.mark.parametrize("number,name,lhs,rhs", WITNESSES, ids=[w[1] for w in WITNESSES])
def test_forward_then_reversed_restores(number, name, lhs, rhs):
    t = P(lhs)
    m = get_rule(name).match(t)
    back = contract_once(m.result, name, (), REVERSED, m.bindings)
    assert back == t


def test_reversed_needs_erased_bindings():
    with pytest.raises(RuleError):
        contract_once(Atom("t"), "tr", (), REVERSED, {})
    assert contract_once(Atom("t"), "ss", (), REVERSED) == P("sigma(sigma(t))")


def test_no_match_raises():
    with pytest.raises(NoMatch):
        contract_once(P("tau(a,b)"), "tr", (), FORWARD)


def test_context_alignment_prefers_shallowest_hole():
    # tau(C[r], C[sigma r]) with C = tau(hole, c)
    m = get_rule("tr").match(P("tau(tau(a,c),tau(sigma(a),c))"))
    assert m.result == P("tau(rho,c)")
    assert m.bindings["C"] == Context.from_term(P("tau(hole,c)"))


def test_rule39_default_and_strict():
    t = P("tau(sigma(u),tau(u,v))")
    assert get_rule("tst").match(t).result == Atom("v")
    assert get_rule("tst").match(t, strict_rule39=True).result == Atom("u")


def test_tagged_rho_is_matched():
    assert get_rule("trr").match(P("tau(a,rho_x0)")).result == Atom("a")
    assert get_rule("sr").match(P("sigma(rho_x0)")).result == P("rho_x0")


def test_nonlinear_pattern_requires_equal_subterms():
    assert get_rule("mx").match(P("xiand(mu1(r),mu2(r))")) is not None
    assert get_rule("mx").match(P("xiand(mu1(r),mu2(s))")) is None


# substitution rules --------------------------------------------------------

x, y, u, w, r, s = (Atom(n) for n in "xyuwrs")


def test_sub_left():
    outer = Equation(x, r, Tau(y, w))
    inner = Equation(y, s, u)
    assert sub_left(outer, inner) == Equation(x, SubL(r, s), Tau(u, w))


def test_sub_left_requires_occurrence():
    with pytest.raises(NoMatch):
        sub_left(Equation(x, r, w), Equation(y, s, u))


def test_sub_right():
    inner = Equation(x, r, w)
    outer = Equation(Sigma(w), s, u)
    assert sub_right(inner, outer) == Equation(Sigma(x), SubR(r, s), u)


def test_sub_right_requires_occurrence():
    with pytest.raises(NoMatch):
        sub_right(Equation(x, r, w), Equation(y, s, u))
