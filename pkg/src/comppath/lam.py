"""Untyped lambda terms, labelled beta/eta steps, and path search between terms.

A step label is the axiom name followed by the congruence descent from the
root: ``nu`` enters the function side of an application, ``mu`` the argument
side and ``xi`` the body of an abstraction.  So ``eta_nu_xi_mu`` is an
eta-contraction found by going left, under a binder, then right.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .terms import Atom, PathTerm, Rho, Sigma, Tau, left_chain


class LambdaTerm:
    __slots__ = ()

    def __str__(self):
        return format_lambda(self)


@dataclass(frozen=True, slots=True)
class Var(LambdaTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Lam(LambdaTerm):
    var: str
    body: LambdaTerm


@dataclass(frozen=True, slots=True)
class App(LambdaTerm):
    fn: LambdaTerm
    arg: LambdaTerm


LPos = tuple[int, ...]
_CONGRUENCE = {(App, 0): "nu", (App, 1): "mu", (Lam, 0): "xi"}


@dataclass(frozen=True)
class LabelledStep:
    axiom: str  # "beta" | "eta"
    position: LPos
    before: LambdaTerm
    after: LambdaTerm
    congruence: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return "_".join((self.axiom,) + self.congruence)


# ---------------------------------------------------------------------------
# variables and substitution


def free_vars(t: LambdaTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var}
    return free_vars(t.fn) | free_vars(t.arg)


def all_names(t: LambdaTerm) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return {t.var} | all_names(t.body)
    return all_names(t.fn) | all_names(t.arg)


def fresh(base: str, avoid) -> str:
    stem = base.rstrip("0123456789") or base
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in avoid:
            return cand


def substitute(t: LambdaTerm, x: str, s: LambdaTerm) -> LambdaTerm:
    """t[s/x], renaming binders that would capture free variables of s."""
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(substitute(t.fn, x, s), substitute(t.arg, x, s))
    if t.var == x or x not in free_vars(t.body):
        return t
    fv = free_vars(s)
    if t.var in fv:
        new = fresh(t.var, fv | all_names(t.body) | {x})
        return Lam(new, substitute(substitute(t.body, t.var, Var(new)), x, s))
    return Lam(t.var, substitute(t.body, x, s))


def alpha_key(t: LambdaTerm) -> str:
    """Canonical de Bruijn string; equal iff alpha-equivalent."""
    def go(t, env):
        if isinstance(t, Var):
            for i, name in enumerate(reversed(env)):
                if name == t.name:
                    return str(i)
            return t.name
        if isinstance(t, Lam):
            return "(\\." + go(t.body, env + [t.var]) + ")"
        return "(" + go(t.fn, env) + " " + go(t.arg, env) + ")"
    return go(t, [])


def alpha_equal(a: LambdaTerm, b: LambdaTerm) -> bool:
    return alpha_key(a) == alpha_key(b)


# ---------------------------------------------------------------------------
# steps


def lsubterm(t: LambdaTerm, pos: LPos) -> LambdaTerm:
    for i in pos:
        if isinstance(t, App) and i in (0, 1):
            t = t.fn if i == 0 else t.arg
        elif isinstance(t, Lam) and i == 0:
            t = t.body
        else:
            raise LookupError(f"invalid lambda position {pos}")
    return t


def lreplace(t: LambdaTerm, pos: LPos, new: LambdaTerm) -> LambdaTerm:
    if not pos:
        return new
    i, rest = pos[0], pos[1:]
    if isinstance(t, App) and i in (0, 1):
        if i == 0:
            return App(lreplace(t.fn, rest, new), t.arg)
        return App(t.fn, lreplace(t.arg, rest, new))
    if isinstance(t, Lam) and i == 0:
        return Lam(t.var, lreplace(t.body, rest, new))
    raise LookupError(f"invalid lambda position {pos}")


def _beta(t):
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return substitute(t.fn.body, t.fn.var, t.arg)
    return None


def _eta(t):
    if (isinstance(t, Lam) and isinstance(t.body, App) and t.body.arg == Var(t.var)
            and t.var not in free_vars(t.body.fn)):
        return t.body.fn
    return None


_AXIOMS = {"beta": _beta, "eta": _eta}


def _walk(t, pos=(), cong=()):
    yield t, pos, cong
    if isinstance(t, App):
        yield from _walk(t.fn, pos + (0,), cong + ("nu",))
        yield from _walk(t.arg, pos + (1,), cong + ("mu",))
    elif isinstance(t, Lam):
        yield from _walk(t.body, pos + (0,), cong + ("xi",))


def one_step_reductions(term: LambdaTerm) -> list[LabelledStep]:
    """All single beta/eta contractions: eta steps first, each group in pre-order."""
    out = []
    for axiom in ("eta", "beta"):
        for sub, pos, cong in _walk(term):
            r = _AXIOMS[axiom](sub)
            if r is not None:
                out.append(LabelledStep(axiom, pos, term, lreplace(term, pos, r), cong))
    return out


def apply_step(term: LambdaTerm, axiom: str, pos: LPos) -> LambdaTerm:
    r = _AXIOMS[axiom](lsubterm(term, pos))
    if r is None:
        raise ValueError(f"{axiom} does not apply at {pos}")
    return lreplace(term, pos, r)


def audit_step(step: LabelledStep) -> bool:
    """Recompute the step and check no free variable was created or captured."""
    if apply_step(step.before, step.axiom, step.position) != step.after:
        return False
    return free_vars(step.after) <= free_vars(step.before)


def parse_label(label: str) -> tuple[str, LPos]:
    axiom, *cong = label.split("_")
    if axiom not in _AXIOMS:
        raise ValueError(f"unknown step label {label!r}")
    idx = {"nu": 0, "mu": 1, "xi": 0}
    try:
        return axiom, tuple(idx[c] for c in cong)
    except KeyError:
        raise ValueError(f"unknown step label {label!r}") from None


def reduce(term: LambdaTerm, max_steps: int = 1000) -> tuple[LambdaTerm, list[LabelledStep]]:
    """Normal-order (leftmost-outermost) beta/eta reduction, bounded."""
    steps = []
    while True:
        cands = one_step_reductions(term)
        if not cands:
            return term, steps
        if len(steps) >= max_steps:
            raise RuntimeError(f"no normal form within {max_steps} steps")
        step = min(cands, key=lambda s: s.position)
        steps.append(step)
        term = step.after


# ---------------------------------------------------------------------------
# path search


def _bfs(start: LambdaTerm, depth: int):
    """Layered BFS; returns key -> (distance, term, parent-key, step)."""
    k0 = alpha_key(start)
    seen = {k0: (0, start, None, None)}
    frontier = [k0]
    for d in range(1, depth + 1):
        nxt = []
        for k in frontier:
            t = seen[k][1]
            for step in one_step_reductions(t):
                kk = alpha_key(step.after)
                if kk not in seen:
                    seen[kk] = (d, step.after, k, step)
                    nxt.append(kk)
        if not nxt:
            break
        frontier = nxt
    return seen


def _chain(seen, key) -> list[LabelledStep]:
    out = []
    while seen[key][2] is not None:
        out.append(seen[key][3])
        key = seen[key][2]
    return out[::-1]


@dataclass(frozen=True)
class Derivation:
    """A valley m ->* x <-* n: forward steps from m, then steps from n read backwards."""
    source: LambdaTerm
    target: LambdaTerm
    down: tuple[LabelledStep, ...]
    up: tuple[LabelledStep, ...]  # contractions from target, in the order performed

    def __len__(self):
        return len(self.down) + len(self.up)

    def labels(self) -> list[str]:
        return [s.label for s in self.down] + [f"sigma({s.label})" for s in reversed(self.up)]

    def path(self) -> PathTerm:
        parts: list[PathTerm] = [Atom(s.label) for s in self.down]
        parts += [Sigma(Atom(s.label)) for s in reversed(self.up)]
        return left_chain(parts)


def find_derivation(m: LambdaTerm, n: LambdaTerm, max_steps: int = 12) -> Optional[Derivation]:
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    fm, fn = _bfs(m, max_steps), _bfs(n, max_steps)
    best = None
    for k in fm.keys() & fn.keys():
        d = fm[k][0] + fn[k][0]
        if d <= max_steps and (best is None or (d, k) < best):
            best = (d, k)
    if best is None:
        return None
    k = best[1]
    return Derivation(m, n, tuple(_chain(fm, k)), tuple(_chain(fn, k)))


def find_path(m: LambdaTerm, n: LambdaTerm, max_steps: int = 12) -> Optional[PathTerm]:
    d = find_derivation(m, n, max_steps)
    return None if d is None else d.path()


def _all_chains(seen, key) -> Iterator[list[LabelledStep]]:
    """Every shortest contraction chain from the BFS root to key."""
    dist, term = seen[key][0], seen[key][1]
    if dist == 0:
        yield []
        return
    for pk, (pd, pt, _, _) in seen.items():
        if pd != dist - 1:
            continue
        for step in one_step_reductions(pt):
            if alpha_key(step.after) == key:
                for pre in _all_chains(seen, pk):
                    yield pre + [step]


def all_shortest_derivations(m: LambdaTerm, n: LambdaTerm, max_steps: int = 12) -> list[Derivation]:
    fm, fn = _bfs(m, max_steps), _bfs(n, max_steps)
    common = fm.keys() & fn.keys()
    if not common:
        return []
    d = min(fm[k][0] + fn[k][0] for k in common)
    if d > max_steps:
        return []
    out = []
    for k in sorted(common):
        if fm[k][0] + fn[k][0] != d:
            continue
        for down in _all_chains(fm, k):
            for up in _all_chains(fn, k):
                out.append(Derivation(m, n, tuple(down), tuple(up)))
    return out


def all_shortest_paths(m: LambdaTerm, n: LambdaTerm, max_steps: int = 12) -> list[PathTerm]:
    return [d.path() for d in all_shortest_derivations(m, n, max_steps)]


def skeleton(path: PathTerm) -> PathTerm:
    """Drop congruence suffixes from step atoms: eta_nu_xi_mu -> eta."""
    if isinstance(path, Atom):
        return Atom(path.name.split("_", 1)[0], path.inverse)
    return path.with_children(tuple(skeleton(c) for c in path.children))


def _flatten(path: PathTerm) -> list[PathTerm]:
    if isinstance(path, Tau):
        return _flatten(path.left) + _flatten(path.right)
    if isinstance(path, Rho):
        return []
    return [path]


def check_path(m: LambdaTerm, n: LambdaTerm, path: PathTerm) -> bool:
    """Replay a valley-shaped path: forward atoms from m, sigma atoms from n, meeting up to alpha."""
    parts = _flatten(path)
    down = list(itertools.takewhile(lambda p: isinstance(p, Atom), parts))
    up = parts[len(down):]
    if not all(isinstance(p, Sigma) and isinstance(p.child, Atom) for p in up):
        return False
    try:
        x = m
        for a in down:
            x = apply_step(x, *parse_label(a.name))
        y = n
        for s in reversed(up):
            y = apply_step(y, *parse_label(s.child.name))
    except (ValueError, LookupError):
        return False
    return alpha_equal(x, y)


# ---------------------------------------------------------------------------
# text syntax


class LambdaSyntaxError(ValueError):
    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


_LTOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_']*)|([\\λ.()]))")


def _ltokens(text):
    out, pos = [], 0
    while True:
        m = _LTOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                off = pos + len(rest) - len(rest.lstrip())
                raise LambdaSyntaxError(f"unexpected character {text[off]!r}", off + 1)
            out.append((None, len(text) + 1))
            return out
        tok = m.group(1) or m.group(2)
        out.append(("\\" if tok == "λ" else tok, m.start(m.lastindex) + 1))
        pos = m.end()


def parse_lambda(text: str) -> LambdaTerm:
    toks = _ltokens(text)
    i = 0

    def peek():
        return toks[i][0]

    def take(expected=None):
        nonlocal i
        tok, col = toks[i]
        if tok is None:
            raise LambdaSyntaxError("unexpected end of input", col)
        if expected is not None and tok != expected:
            raise LambdaSyntaxError(f"expected {expected!r}, got {tok!r}", col)
        i += 1
        return tok

    def is_ident(tok):
        return tok is not None and tok not in "\\.()"

    def term():
        if peek() == "\\":
            take()
            col = toks[i][1]
            name = take()
            if not is_ident(name):
                raise LambdaSyntaxError(f"expected a variable, got {name!r}", col)
            take(".")
            return Lam(name, term())
        fn = atom()
        while is_ident(peek()) or peek() in ("(", "\\"):
            fn = App(fn, term() if peek() == "\\" else atom())
        return fn

    def atom():
        tok, col = toks[i]
        if tok == "(":
            take()
            t = term()
            take(")")
            return t
        if is_ident(tok):
            take()
            return Var(tok)
        raise LambdaSyntaxError("expected a term" if tok else "unexpected end of input", col)

    t = term()
    if peek() is not None:
        raise LambdaSyntaxError(f"trailing input {peek()!r}", toks[i][1])
    return t


def format_lambda(t: LambdaTerm) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lam):
        return f"\\{t.var}.{format_lambda(t.body)}"
    f = format_lambda(t.fn)
    if isinstance(t.fn, Lam):
        f = f"({f})"
    a = format_lambda(t.arg)
    if isinstance(t.arg, (App, Lam)):
        a = f"({a})"
    return f"{f} {a}"
