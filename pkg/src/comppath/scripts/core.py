"""Proof scripts: declared axioms plus a chain of rule/axiom steps, and their verifier.

File format, one item per line (``#`` starts a comment)::

    axiom co: tau(b,a) = tau(a,b)
    start: tau(tau(b,a),sigma(b))
    target: ...
    steps:
    fwd co @ 0
    rev tr @ 1.0 with r = mu, C = tau(hole,a)

A step names a rewrite rule or a declared axiom, a direction and a position.
Reversed rule steps may need ``with`` bindings for variables the forward
rule erases; ``C`` takes a term containing the atom ``hole``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from ..engine import FORWARD, REVERSED, contract_once
from ..rules import RULES_BY_NAME, Context, RuleError, get_rule
from ..terms import (ParseError, PathTerm, Position, PositionError, format_path_term,
                     format_position, parse_path_term, parse_position, subterm_at,
                     replace_at)


class ScriptSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Axiom:
    name: str
    lhs: PathTerm
    rhs: PathTerm


@dataclass(frozen=True)
class ScriptStep:
    direction: str
    name: str
    position: Position
    bindings: Mapping = field(default_factory=dict, compare=False)
    line: int = field(default=0, compare=False)

    def format(self) -> str:
        d = "fwd" if self.direction == FORWARD else "rev"
        text = f"{d} {self.name} @ {format_position(self.position)}".rstrip()
        if self.bindings:
            text += " with " + ", ".join(f"{k} = {_format_binding(v)}"
                                         for k, v in self.bindings.items())
        return text


@dataclass(frozen=True)
class ProofScript:
    start: PathTerm
    target: PathTerm
    steps: tuple[ScriptStep, ...] = ()
    axioms: tuple[Axiom, ...] = ()
    name: str = ""

    def axiom(self, name: str) -> Optional[Axiom]:
        return next((a for a in self.axioms if a.name == name), None)

    def uses_axioms(self) -> bool:
        return any(self.axiom(s.name) is not None for s in self.steps)


@dataclass(frozen=True)
class StepRecord:
    index: int  # 1-based
    step: ScriptStep
    before: PathTerm
    after: PathTerm
    bindings: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    records: tuple[StepRecord, ...]
    final: PathTerm
    failed_step: Optional[int] = None  # 1-based; None when the chain replayed but missed the target
    reason: str = ""

    @property
    def verdict(self) -> str:
        if self.accepted:
            return "accepted"
        where = f"step {self.failed_step}" if self.failed_step else "end"
        return f"rejected at {where}: {self.reason}"


# ---------------------------------------------------------------------------
# parsing


def _format_binding(v) -> str:
    if isinstance(v, Context):
        return str(v)
    return format_path_term(v)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts


_STEP = re.compile(r"(fwd|rev)\s+([A-Za-z][A-Za-z0-9_]*)\s*@\s*([0-9.]*)\s*(?:with\s+(.*))?$")
_BINDING_NAMES = {"r", "s", "t", "u", "v", "C", "rho"}


def _term(text: str, lineno: int) -> PathTerm:
    try:
        return parse_path_term(text)
    except ParseError as e:
        raise ScriptSyntaxError(str(e), lineno) from None


def parse_script(text: str, name: str = "") -> ProofScript:
    axioms: list[Axiom] = []
    start = target = None
    steps: list[ScriptStep] = []
    in_steps = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_steps:
            m = _STEP.match(line)
            if not m:
                raise ScriptSyntaxError(f"malformed step {line!r}", lineno)
            d, rule, pos, with_ = m.groups()
            if rule not in RULES_BY_NAME and all(a.name != rule for a in axioms):
                raise ScriptSyntaxError(f"unknown rule or axiom {rule!r}", lineno)
            try:
                position = parse_position(pos)
            except ValueError as e:
                raise ScriptSyntaxError(str(e), lineno) from None
            bindings = {}
            if with_:
                for item in _split_top(with_):
                    var, eq, val = item.partition("=")
                    var = var.strip()
                    if not eq or var not in _BINDING_NAMES:
                        raise ScriptSyntaxError(f"bad binding {item.strip()!r}", lineno)
                    if var in bindings:
                        raise ScriptSyntaxError(f"duplicate binding {var!r}", lineno)
                    bindings[var] = _term(val, lineno)
            steps.append(ScriptStep(FORWARD if d == "fwd" else REVERSED, rule, position,
                                    bindings, lineno))
            continue
        key, colon, rest = line.partition(":")
        key = key.strip()
        if not colon:
            raise ScriptSyntaxError(f"expected 'key: value', got {line!r}", lineno)
        if key == "start":
            if start is not None:
                raise ScriptSyntaxError("duplicate start", lineno)
            start = _term(rest, lineno)
        elif key == "target":
            if target is not None:
                raise ScriptSyntaxError("duplicate target", lineno)
            target = _term(rest, lineno)
        elif key == "steps":
            if rest.strip():
                raise ScriptSyntaxError("steps go on the following lines", lineno)
            in_steps = True
        elif key.startswith("axiom "):
            aname = key[len("axiom "):].strip()
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", aname):
                raise ScriptSyntaxError(f"bad axiom name {aname!r}", lineno)
            if aname in RULES_BY_NAME:
                raise ScriptSyntaxError(f"axiom name {aname!r} clashes with a rewrite rule", lineno)
            if any(a.name == aname for a in axioms):
                raise ScriptSyntaxError(f"duplicate axiom {aname!r}", lineno)
            lhs, eq, rhs = rest.partition("=")
            if not eq or "=" in rhs:
                raise ScriptSyntaxError("axiom needs 'lhs = rhs'", lineno)
            axioms.append(Axiom(aname, _term(lhs, lineno), _term(rhs, lineno)))
        else:
            raise ScriptSyntaxError(f"unknown directive {key!r}", lineno)
    if start is None or target is None:
        raise ScriptSyntaxError("script needs both start and target", 0)
    return ProofScript(start, target, tuple(steps), tuple(axioms), name)


def format_script(script: ProofScript) -> str:
    out = [f"axiom {a.name}: {format_path_term(a.lhs)} = {format_path_term(a.rhs)}"
           for a in script.axioms]
    out.append(f"start: {format_path_term(script.start)}")
    out.append(f"target: {format_path_term(script.target)}")
    out.append("steps:")
    out += [s.format() for s in script.steps]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# verification


def _apply_axiom(term, ax: Axiom, step: ScriptStep) -> PathTerm:
    lhs, rhs = (ax.lhs, ax.rhs) if step.direction == FORWARD else (ax.rhs, ax.lhs)
    sub = subterm_at(term, step.position)
    if sub != lhs:
        raise RuleError(f"axiom {ax.name} expects {format_path_term(lhs)}, found {format_path_term(sub)}")
    return replace_at(term, step.position, rhs)


def _binding_for_rule(bindings: Mapping) -> dict:
    out = dict(bindings)
    if "C" in out and not isinstance(out["C"], Context):
        out["C"] = Context.from_term(out["C"])
    return out


def verify_script(script: ProofScript, *, strict_rule39: bool = False) -> VerificationReport:
    cur = script.start
    records: list[StepRecord] = []
    for i, step in enumerate(script.steps, 1):
        ax = script.axiom(step.name)
        try:
            if ax is not None:
                nxt, used = _apply_axiom(cur, ax, step), {}
            elif step.direction == FORWARD:
                m = get_rule(step.name).match(subterm_at(cur, step.position), strict_rule39)
                if m is None:
                    raise RuleError(f"{step.name} does not match "
                                    f"{format_path_term(subterm_at(cur, step.position))}")
                nxt, used = replace_at(cur, step.position, m.result), m.bindings
            else:
                used = _binding_for_rule(step.bindings)
                nxt = contract_once(cur, step.name, step.position, REVERSED, used,
                                    strict_rule39=strict_rule39)
        except (RuleError, PositionError) as e:
            return VerificationReport(False, tuple(records), cur, i, str(e))
        records.append(StepRecord(i, step, cur, nxt, used))
        cur = nxt
    if cur != script.target:
        return VerificationReport(False, tuple(records), cur, None,
                                  f"final term {format_path_term(cur)} differs from target")
    return VerificationReport(True, tuple(records), cur)


def reverse_script(script: ProofScript, report: VerificationReport) -> ProofScript:
    """The same chain read backwards; forward matches supply the bindings reversed steps need."""
    if not report.accepted:
        raise ValueError("only accepted scripts can be reversed")
    steps = []
    for rec in reversed(report.records):
        s = rec.step
        if s.direction == FORWARD:
            steps.append(replace(s, direction=REVERSED, bindings=dict(rec.bindings)))
        else:
            steps.append(replace(s, direction=FORWARD, bindings={}))
    return ProofScript(script.target, script.start, tuple(steps), script.axioms,
                       script.name + " (reversed)" if script.name else "")
