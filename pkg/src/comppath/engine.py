"""Redex search, single-step contraction, normalization and rw-equality."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Optional

from .rules import RULES_BY_ROOT, Match, NoMatch, RuleError, get_rule
from .terms import (PathTerm, Position, PositionError, format_path_term,
                    format_position, parse_path_term, parse_position,
                    replace_at, size, subterm_at)

FORWARD = "forward"
REVERSED = "reversed"
STRATEGIES = ("leftmost-innermost", "leftmost-outermost")


class FuelExhausted(RuntimeError):
    def __init__(self, term: PathTerm, trace: "RewriteTrace", fuel: int):
        super().__init__(f"no normal form within {fuel} steps; last term {format_path_term(term)}")
        self.term = term
        self.trace = trace
        self.fuel = fuel


class Redex(NamedTuple):
    rule: str
    position: Position
    bindings: dict


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    position: Position
    direction: str
    before: PathTerm
    after: PathTerm
    bindings: Mapping = field(default_factory=dict, compare=False, repr=False)

    def line(self) -> str:
        d = "fwd" if self.direction == FORWARD else "rev"
        return f"{d} {self.rule} @ {format_position(self.position)} : {format_path_term(self.after)}"

    def inverted(self) -> "RewriteStep":
        flip = REVERSED if self.direction == FORWARD else FORWARD
        return RewriteStep(self.rule, self.position, flip, self.after, self.before, self.bindings)


@dataclass(frozen=True)
class RewriteTrace:
    initial: PathTerm
    steps: tuple[RewriteStep, ...] = ()

    @property
    def final(self) -> PathTerm:
        return self.steps[-1].after if self.steps else self.initial

    def __len__(self):
        return len(self.steps)

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]

    def reversed(self) -> "RewriteTrace":
        return RewriteTrace(self.final, tuple(s.inverted() for s in reversed(self.steps)))

    def then(self, other: "RewriteTrace") -> "RewriteTrace":
        if other.initial != self.final:
            raise ValueError("traces do not chain")
        return RewriteTrace(self.initial, self.steps + other.steps)

    def check(self, strict_rule39: bool = False) -> bool:
        """Re-derive every step; True iff the trace chains and each step replays."""
        cur = self.initial
        for step in self.steps:
            if step.before != cur:
                return False
            try:
                again = contract_once(cur, step.rule, step.position, step.direction,
                                      step.bindings, strict_rule39=strict_rule39)
            except (RuleError, PositionError):
                return False
            if again != step.after:
                return False
            cur = again
        return True


def parse_trace_line(line: str) -> tuple[str, str, Position, PathTerm]:
    """Inverse of RewriteStep.line(): (direction, rule, position, term-after)."""
    head_part, _, term_text = line.partition(" : ")
    d, rule, at, *pos = head_part.split()
    if at != "@" or d not in ("fwd", "rev") or len(pos) > 1:
        raise ValueError(f"malformed trace line {line!r}")
    direction = FORWARD if d == "fwd" else REVERSED
    return direction, rule, parse_position(pos[0] if pos else ""), parse_path_term(term_text)


def _root_matches(term: PathTerm, strict_rule39: bool) -> Iterator[tuple[str, Match]]:
    for rule in RULES_BY_ROOT.get(type(term), ()):
        m = rule.match(term, strict_rule39)
        if m is not None:
            yield rule.name, m


def find_redexes(term: PathTerm, *, strict_rule39: bool = False) -> list[Redex]:
    out: list[Redex] = []

    def walk(node, pos):
        for name, m in _root_matches(node, strict_rule39):
            out.append(Redex(name, pos, m.bindings))
        for i, child in enumerate(node.children):
            walk(child, pos + (i,))

    walk(term, ())
    return out


def is_normal(term: PathTerm, *, strict_rule39: bool = False) -> bool:
    return _first_redex(term, "leftmost-outermost", strict_rule39) is None


def _first_redex(term, strategy, strict_rule39, admissible=None):
    outermost = strategy == "leftmost-outermost"

    def here(node, pos):
        for name, m in _root_matches(node, strict_rule39):
            if admissible is None or admissible(name, m):
                return name, pos, m
        return None

    def walk(node, pos):
        if outermost:
            found = here(node, pos)
            if found is not None:
                return found
        for i, child in enumerate(node.children):
            found = walk(child, pos + (i,))
            if found is not None:
                return found
        return None if outermost else here(node, pos)

    return walk(term, ())


def contract_once(term: PathTerm, rule: str, pos: Position, direction: str = FORWARD,
                  bindings: Optional[Mapping] = None, *, strict_rule39: bool = False) -> PathTerm:
    r = get_rule(rule)
    sub = subterm_at(term, pos)
    if direction == FORWARD:
        m = r.match(sub, strict_rule39)
        if m is None:
            raise NoMatch(f"{rule} does not match at {format_position(pos)!r}: {format_path_term(sub)}")
        return replace_at(term, pos, m.result)
    if direction == REVERSED:
        return replace_at(term, pos, r.unapply(sub, bindings, strict_rule39))
    raise ValueError(f"unknown direction {direction!r}")


def root_context_only(rule: str, match: Match) -> bool:
    """Admit only contextual matches whose context is the bare hole."""
    ctx = match.bindings.get("C")
    return ctx is None or ctx.hole == ()


def default_fuel(term: PathTerm) -> int:
    return 10 * size(term) ** 2


def normalize(term: PathTerm, strategy: str = "leftmost-innermost", fuel: Optional[int] = None,
              *, strict_rule39: bool = False, admissible=None) -> tuple[PathTerm, RewriteTrace]:
    """Rewrite to normal form, recording every step.

    `admissible(rule_name, match)` optionally restricts which redexes may fire;
    the result is then normal only with respect to the admitted redexes.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if fuel is None:
        fuel = default_fuel(term)
    if fuel < 1:
        raise ValueError("fuel must be positive")
    steps: list[RewriteStep] = []
    cur = term
    while True:
        found = _first_redex(cur, strategy, strict_rule39, admissible)
        if found is None:
            return cur, RewriteTrace(term, tuple(steps))
        if len(steps) >= fuel:
            raise FuelExhausted(cur, RewriteTrace(term, tuple(steps)), fuel)
        name, pos, m = found
        nxt = replace_at(cur, pos, m.result)
        steps.append(RewriteStep(name, pos, FORWARD, cur, nxt, m.bindings))
        cur = nxt


def rw_equal(s: PathTerm, t: PathTerm, strategy: str = "leftmost-innermost",
             fuel: Optional[int] = None, *, strict_rule39: bool = False
             ) -> tuple[bool, Optional[RewriteTrace]]:
    ns, ts = normalize(s, strategy, fuel, strict_rule39=strict_rule39)
    nt, tt = normalize(t, strategy, fuel, strict_rule39=strict_rule39)
    if ns != nt:
        return False, None
    return True, ts.then(tt.reversed())
