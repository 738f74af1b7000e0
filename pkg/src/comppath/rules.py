"""The 39 rewrite rules over path terms, plus the two substitution rules.

Each rule can be matched forward at the root of a term (yielding the
contractum and the bindings it used) and applied right-to-left given enough
bindings to rebuild the erased parts of the left-hand side.

Contexts ``C[.]`` are found by aligning the two terms that must agree
outside a single hole; the shallowest hole in pre-order wins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .terms import (Atom, Mu, Nu, PathTerm, Position, Rho, Sigma, SubL, SubR,
                    Tau, Xi, format_path_term, head,
                    is_valid_position, positions, replace_at, subterm_at)


class RuleError(ValueError):
    pass


class NoMatch(RuleError):
    pass


class UnboundVariable(RuleError):
    pass


HOLE = Atom("□")  # only ever appears inside Context frames


@dataclass(frozen=True)
class Context:
    """A term with exactly one hole, stored as a frame containing HOLE."""

    frame: PathTerm
    hole: Position

    @classmethod
    def at(cls, term: PathTerm, pos: Position) -> "Context":
        return cls(replace_at(term, pos, HOLE), pos)

    @classmethod
    def empty(cls) -> "Context":
        return cls(HOLE, ())

    @classmethod
    def from_term(cls, frame: PathTerm, hole_name: str = "hole") -> "Context":
        found = [p for p in positions(frame)
                 if isinstance(subterm_at(frame, p), Atom) and subterm_at(frame, p).name == hole_name]
        if len(found) != 1:
            raise RuleError(f"context must contain exactly one {hole_name!r}, found {len(found)}")
        return cls.at(frame, found[0])

    def plug(self, term: PathTerm) -> PathTerm:
        return replace_at(self.frame, self.hole, term)

    def matches(self, term: PathTerm) -> bool:
        return is_valid_position(term, self.hole) and replace_at(term, self.hole, HOLE) == self.frame

    def __str__(self):
        return format_path_term(self.frame).replace(HOLE.name, "hole")


# ---------------------------------------------------------------------------
# first-order patterns


@dataclass(frozen=True, slots=True)
class Var(PathTerm):
    name: str

    def __repr__(self):
        return self.name


def _match(pat: PathTerm, term: PathTerm, env: dict) -> bool:
    if isinstance(pat, Var):
        bound = env.get(pat.name)
        if bound is None:
            env[pat.name] = term
            return True
        return bound == term
    if isinstance(pat, Rho):
        if not isinstance(term, Rho):
            return False
        env.setdefault("rho", term)
        return True
    if isinstance(pat, (Xi, Mu)):
        if type(term) is not type(pat) or len(term.args) != len(pat.args):
            return False
        if pat.variant == "*":
            env["variant"] = term.variant
        elif pat.variant != term.variant:
            return False
    elif type(pat) is not type(term):
        return False
    return all(_match(p, t, env) for p, t in zip(pat.children, term.children))


def _build(pat: PathTerm, env: Mapping) -> PathTerm:
    if isinstance(pat, Var):
        if pat.name not in env:
            raise UnboundVariable(f"variable {pat.name!r} is not determined; supply a binding")
        return env[pat.name]
    if isinstance(pat, Rho):
        return env.get("rho", Rho())
    kids = tuple(_build(c, env) for c in pat.children)
    if isinstance(pat, (Xi, Mu)) and pat.variant == "*":
        if "variant" not in env:
            raise UnboundVariable("constructor variant is not determined")
        return type(pat)(env["variant"], kids)
    return pat.with_children(kids)


# ---------------------------------------------------------------------------
# context alignment


def _align(x: PathTerm, y: PathTerm, hole: Callable[[PathTerm, PathTerm], bool]) -> Optional[Position]:
    """First position p (pre-order) with hole(x|p, y|p) and x, y equal elsewhere."""
    if hole(x, y):
        return ()
    if head(x) != head(y):
        return None
    xs, ys = x.children, y.children
    diff = [i for i in range(len(xs)) if xs[i] != ys[i]]
    if len(diff) > 1:
        return None
    for i in diff or range(len(xs)):
        sub = _align(xs[i], ys[i], hole)
        if sub is not None:
            return (i,) + sub
    return None


def _y_is_sigma_x(x, y):
    return isinstance(y, Sigma) and y.child == x


def _x_is_sigma_y(x, y):
    return isinstance(x, Sigma) and x.child == y


def _y_is_rho(x, y):
    return isinstance(y, Rho)


def _x_is_rho(x, y):
    return isinstance(x, Rho)


# ---------------------------------------------------------------------------
# rule objects


@dataclass(frozen=True)
class Match:
    result: PathTerm
    bindings: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RewriteRule:
    number: int
    name: str
    kind: str  # "structural" or "contextual"
    lhs: str
    rhs: str
    root: type
    forward: Callable[[PathTerm, bool], Optional[Match]] = field(repr=False, compare=False)
    backward: Callable[[PathTerm, Mapping, bool], PathTerm] = field(repr=False, compare=False)

    def match(self, term: PathTerm, strict_rule39: bool = False) -> Optional[Match]:
        if type(term) is not self.root:
            return None
        return self.forward(term, strict_rule39)

    def unapply(self, term: PathTerm, bindings: Optional[Mapping] = None,
                strict_rule39: bool = False) -> PathTerm:
        return self.backward(term, dict(bindings or {}), strict_rule39)


def _structural(number, name, lhs: PathTerm, rhs: PathTerm, lhs_text=None, rhs_text=None):
    def forward(term, strict):
        env: dict = {}
        if not _match(lhs, term, env):
            return None
        return Match(_build(rhs, env), env)

    def backward(term, given, strict):
        env: dict = {}
        if not _match(rhs, term, env):
            raise NoMatch(f"{name}: {format_path_term(term)} is not an instance of the right-hand side")
        for k, v in given.items():
            if k in env and env[k] != v and k != "rho":
                raise NoMatch(f"{name}: binding {k} conflicts with the term")
            env.setdefault(k, v)
        return _build(lhs, env)

    return RewriteRule(number, name, "structural", lhs_text or format_path_term(lhs),
                       rhs_text or format_path_term(rhs), type(lhs), forward, backward)


def _context_of(given: Mapping) -> Context:
    c = given.get("C")
    if c is None:
        return Context.empty()
    if isinstance(c, Context):
        return c
    if isinstance(c, PathTerm):
        return Context.from_term(c)
    raise RuleError(f"bad context binding {c!r}")


def _need(given: Mapping, var: str, rule: str) -> PathTerm:
    if var not in given:
        raise UnboundVariable(f"{rule}: variable {var!r} is not determined; supply a binding")
    return given[var]


def _plugged(ctx: Context, term: PathTerm, rule: str) -> PathTerm:
    if not ctx.matches(term):
        raise NoMatch(f"{rule}: {format_path_term(term)} does not fit context {ctx}")
    return subterm_at(term, ctx.hole)


def _rho_of(given):
    return given.get("rho", Rho())


def _tr(term, strict):
    p = _align(term.left, term.right, _y_is_sigma_x)
    if p is None:
        return None
    return Match(replace_at(term.left, p, Rho()),
                 {"C": Context.at(term.left, p), "r": subterm_at(term.left, p)})


def _tr_back(term, given, strict):
    ctx = _context_of(given)
    if not isinstance(_plugged(ctx, term, "tr"), Rho):
        raise NoMatch("tr: hole does not hold rho")
    r = _need(given, "r", "tr")
    return Tau(ctx.plug(r), ctx.plug(Sigma(r)))


def _tsr(term, strict):
    p = _align(term.left, term.right, _x_is_sigma_y)
    if p is None:
        return None
    return Match(replace_at(term.left, p, Rho()),
                 {"C": Context.at(term.left, p), "r": subterm_at(term.right, p)})


def _tsr_back(term, given, strict):
    ctx = _context_of(given)
    if not isinstance(_plugged(ctx, term, "tsr"), Rho):
        raise NoMatch("tsr: hole does not hold rho")
    r = _need(given, "r", "tsr")
    return Tau(ctx.plug(Sigma(r)), ctx.plug(r))


def _keep_left(name, cls, hole_test):
    # cls(C[r], C[rho]) -> C[r]
    def forward(term, strict):
        p = _align(term.left, term.right, hole_test)
        if p is None:
            return None
        return Match(term.left, {"C": Context.at(term.left, p), "r": subterm_at(term.left, p),
                                 "rho": subterm_at(term.right, p)})

    def backward(term, given, strict):
        ctx = _context_of(given)
        _plugged(ctx, term, name)
        return cls(term, ctx.plug(_rho_of(given)))

    return forward, backward


def _keep_right(name, cls, hole_test):
    # cls(C[rho], C[r]) -> C[r]
    def forward(term, strict):
        p = _align(term.left, term.right, hole_test)
        if p is None:
            return None
        return Match(term.right, {"C": Context.at(term.right, p), "r": subterm_at(term.right, p),
                                  "rho": subterm_at(term.left, p)})

    def backward(term, given, strict):
        ctx = _context_of(given)
        _plugged(ctx, term, name)
        return cls(ctx.plug(_rho_of(given)), term)

    return forward, backward


def _subl_cancel(name, hole_test, inner_first_sigma):
    # subL(subL(s, C[x]), C[y]) -> s with {x, y} = {r, sigma(r)}
    def forward(term, strict):
        inner = term.left
        if not isinstance(inner, SubL):
            return None
        p = _align(inner.right, term.right, hole_test)
        if p is None:
            return None
        r = subterm_at(term.right if inner_first_sigma else inner.right, p)
        return Match(inner.left, {"C": Context.at(inner.right, p), "r": r})

    def backward(term, given, strict):
        ctx = _context_of(given)
        r = _need(given, "r", name)
        a, b = (Sigma(r), r) if inner_first_sigma else (r, Sigma(r))
        return SubL(SubL(term, ctx.plug(a)), ctx.plug(b))

    return forward, backward


def _subr_cancel(name, hole_test, outer_first_sigma):
    # subR(C[x], subR(C[y], r)) -> r with {x, y} = {s, sigma(s)}
    def forward(term, strict):
        inner = term.right
        if not isinstance(inner, SubR):
            return None
        p = _align(term.left, inner.left, hole_test)
        if p is None:
            return None
        s = subterm_at(inner.left if outer_first_sigma else term.left, p)
        return Match(inner.right, {"C": Context.at(term.left, p), "s": s})

    def backward(term, given, strict):
        ctx = _context_of(given)
        s = _need(given, "s", name)
        a, b = (Sigma(s), s) if outer_first_sigma else (s, Sigma(s))
        return SubR(ctx.plug(a), SubR(ctx.plug(b), term))

    return forward, backward


def _tts(term, strict):
    inner = term.right
    if not isinstance(inner, Tau):
        return None
    p = _align(term.left, inner.left, _y_is_sigma_x)
    if p is None:
        return None
    return Match(inner.right, {"C": Context.at(term.left, p), "u": subterm_at(term.left, p)})


def _tts_back(term, given, strict):
    ctx = _context_of(given)
    u = _need(given, "u", "tts")
    return Tau(ctx.plug(u), Tau(ctx.plug(Sigma(u)), term))


def _tst(term, strict):
    inner = term.right
    if not isinstance(inner, Tau):
        return None
    p = _align(term.left, inner.left, _x_is_sigma_y)
    if p is None:
        return None
    u = subterm_at(inner.left, p)
    ctx = Context.at(inner.left, p)
    if strict:
        return Match(u, {"C": ctx, "v": inner.right})
    return Match(inner.right, {"C": ctx, "u": u})


def _tst_back(term, given, strict):
    ctx = _context_of(given)
    if strict:
        v = _need(given, "v", "tst")
        return Tau(ctx.plug(Sigma(term)), Tau(ctx.plug(term), v))
    u = _need(given, "u", "tst")
    return Tau(ctx.plug(Sigma(u)), Tau(ctx.plug(u), term))


def _contextual(number, name, lhs, rhs, root, pair):
    forward, backward = pair
    return RewriteRule(number, name, "contextual", lhs, rhs, root, forward, backward)


def _catalogue() -> tuple[RewriteRule, ...]:
    r, s, t, u, v = (Var(n) for n in "rstuv")
    rho = Rho()
    ctx = _contextual
    rules = [
        _structural(1, "sr", Sigma(rho), rho),
        _structural(2, "ss", Sigma(Sigma(r)), r),
        ctx(3, "tr", "tau(C[r],C[sigma(r)])", "C[rho]", Tau, (_tr, _tr_back)),
        ctx(4, "tsr", "tau(C[sigma(r)],C[r])", "C[rho]", Tau, (_tsr, _tsr_back)),
        ctx(5, "trr", "tau(C[r],C[rho])", "C[r]", Tau, _keep_left("trr", Tau, _y_is_rho)),
        ctx(6, "tlr", "tau(C[rho],C[r])", "C[r]", Tau, _keep_right("tlr", Tau, _x_is_rho)),
        ctx(7, "slr", "subL(C[r],C[rho])", "C[r]", SubL, _keep_left("slr", SubL, _y_is_rho)),
        ctx(8, "srr", "subR(C[rho],C[r])", "C[r]", SubR, _keep_right("srr", SubR, _x_is_rho)),
        ctx(9, "sls", "subL(subL(s,C[r]),C[sigma(r)])", "s", SubL,
            _subl_cancel("sls", _y_is_sigma_x, False)),
        ctx(10, "slss", "subL(subL(s,C[sigma(r)]),C[r])", "s", SubL,
            _subl_cancel("slss", _x_is_sigma_y, True)),
        ctx(11, "srs", "subR(C[s],subR(C[sigma(s)],r))", "r", SubR,
            _subr_cancel("srs", _y_is_sigma_x, False)),
        ctx(12, "srrr", "subR(C[sigma(s)],subR(C[s],r))", "r", SubR,
            _subr_cancel("srrr", _x_is_sigma_y, True)),
        _structural(13, "mx2l1", Mu("1", (Xi("1", (r,)),)), r),
        _structural(14, "mx2l2", Mu("1", (Xi("and", (r, s)),)), r),
        _structural(15, "mx2r1", Mu("2", (Xi("and", (r, s)),)), s),
        _structural(16, "mx2r2", Mu("2", (Xi("2", (s,)),)), s),
        _structural(17, "mx3l", Mu("plain3", (Xi("1", (r,)), s, u)), s),
        _structural(18, "mx3r", Mu("plain3", (Xi("2", (r,)), s, u)), u),
        _structural(19, "mxl", Nu(Xi("plain", (r,))), r),
        _structural(20, "mxr", Mu("plain2", (Xi("2", (r,)), s)), s),
        _structural(21, "mx", Xi("and", (Mu("1", (r,)), Mu("2", (r,)))), r),
        _structural(22, "mxx", Mu("plain3", (t, Xi("1", (r,)), Xi("2", (s,)))), t),
        _structural(23, "xmr", Xi("plain", (Nu(r),)), r),
        _structural(24, "mx1r", Mu("plain2", (s, Xi("2", (r,)))), s),
        _structural(25, "stss", Sigma(Tau(r, s)), Tau(Sigma(s), Sigma(r))),
        _structural(26, "ssbl", Sigma(SubL(r, s)), SubR(Sigma(s), Sigma(r))),
        _structural(27, "ssbr", Sigma(SubR(r, s)), SubL(Sigma(s), Sigma(r))),
        _structural(28, "sx", Sigma(Xi("*", (r,))), Xi("*", (Sigma(r),)),
                    "sigma(xi(r))", "xi(sigma(r))"),
        _structural(29, "sxss", Sigma(Xi("and", (s, r))), Xi("and", (Sigma(s), Sigma(r)))),
        _structural(30, "sm", Sigma(Mu("*", (r,))), Mu("*", (Sigma(r),)),
                    "sigma(mu(r))", "mu(sigma(r))"),
        _structural(31, "smss", Sigma(Mu("plain2", (s, r))), Mu("plain2", (Sigma(s), Sigma(r)))),
        _structural(32, "smsss", Sigma(Mu("plain3", (r, u, v))),
                    Mu("plain3", (Sigma(r), Sigma(u), Sigma(v)))),
        _structural(33, "tsbll", Tau(r, SubL(rho, s)), SubL(r, s)),
        _structural(34, "tsbrl", Tau(r, SubR(s, rho)), SubL(r, s)),
        _structural(35, "tsblr", Tau(SubL(r, s), t), Tau(r, SubR(s, t))),
        _structural(36, "tsbrr", Tau(SubR(s, t), u), SubR(s, Tau(t, u))),
        _structural(37, "tt", Tau(Tau(t, r), s), Tau(t, Tau(r, s))),
        ctx(38, "tts", "tau(C[u],tau(C[sigma(u)],v))", "v", Tau, (_tts, _tts_back)),
        ctx(39, "tst", "tau(C[sigma(u)],tau(C[u],v))", "v", Tau, (_tst, _tst_back)),
    ]
    return tuple(rules)


RULES: tuple[RewriteRule, ...] = _catalogue()
RULES_BY_NAME: dict[str, RewriteRule] = {rule.name: rule for rule in RULES}
RULES_BY_ROOT: dict[type, tuple[RewriteRule, ...]] = {}
for _rule in RULES:
    RULES_BY_ROOT.setdefault(_rule.root, ())
    RULES_BY_ROOT[_rule.root] += (_rule,)
del _rule


def get_rule(name: str) -> RewriteRule:
    try:
        return RULES_BY_NAME[name]
    except KeyError:
        raise RuleError(f"unknown rule {name!r}") from None


# ---------------------------------------------------------------------------
# subterm substitution (the two inference rules that introduce subL / subR)


@dataclass(frozen=True)
class Equation:
    """``source =_path target`` with first-order endpoint terms."""

    source: PathTerm
    path: PathTerm
    target: PathTerm

    def __str__(self):
        return (f"{format_path_term(self.source)} =[{format_path_term(self.path)}] "
                f"{format_path_term(self.target)}")


def replace_all(term: PathTerm, old: PathTerm, new: PathTerm) -> PathTerm:
    if term == old:
        return new
    kids = term.children
    if not kids:
        return term
    return term.with_children(tuple(replace_all(k, old, new) for k in kids))


def _occurs(needle: PathTerm, term: PathTerm) -> bool:
    return term == needle or any(_occurs(needle, k) for k in term.children)


def sub_left(outer: Equation, inner: Equation) -> Equation:
    """x =_r C[y] and y =_s u give x =_{subL(r,s)} C[u]."""
    if not _occurs(inner.source, outer.target):
        raise NoMatch(f"subL: {format_path_term(inner.source)} does not occur in "
                      f"{format_path_term(outer.target)}")
    return Equation(outer.source, SubL(outer.path, inner.path),
                    replace_all(outer.target, inner.source, inner.target))


def sub_right(inner: Equation, outer: Equation) -> Equation:
    """x =_r w and C[w] =_s u give C[x] =_{subR(r,s)} u."""
    if not _occurs(inner.target, outer.source):
        raise NoMatch(f"subR: {format_path_term(inner.target)} does not occur in "
                      f"{format_path_term(outer.source)}")
    return Equation(replace_all(outer.source, inner.target, inner.source),
                    SubR(inner.path, outer.path), outer.target)


def describe(rule: RewriteRule) -> str:
    return f"{rule.number:2d}. {rule.lhs} |>_{rule.name} {rule.rhs}"


__all__ = [
    "RULES", "RULES_BY_NAME", "RULES_BY_ROOT", "RewriteRule", "Match", "Context", "HOLE",
    "RuleError", "NoMatch", "UnboundVariable", "get_rule", "describe",
    "Equation", "sub_left", "sub_right", "replace_all",
]
