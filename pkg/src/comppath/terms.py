"""Path terms: constructors, positions and the concrete text syntax.

Terms are immutable and compared structurally.  Every node exposes its
children as a tuple so positions (tuples of 0-based child indices) can be
walked uniformly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

Position = tuple[int, ...]

XI_ARITY = {"plain": 1, "1": 1, "2": 1, "and": 2}
MU_ARITY = {"plain1": 1, "1": 1, "2": 1, "plain2": 2, "plain3": 3}

# keyword -> (family, variant)
_XI_KEYWORDS = {"xi": "plain", "xi1": "1", "xi2": "2", "xiand": "and"}
_MU_KEYWORDS = {"mu": "plain1", "mu1": "1", "mu2": "2", "mu2x": "plain2", "mu3": "plain3"}
_XI_NAMES = {v: k for k, v in _XI_KEYWORDS.items()}
_MU_NAMES = {v: k for k, v in _MU_KEYWORDS.items()}
_BINARY = {"tau", "subL", "subR"}
RESERVED = {"rho", "sigma", "nu", *_BINARY, *_XI_KEYWORDS, *_MU_KEYWORDS}


class PathTerm:
    __slots__ = ()

    @property
    def children(self) -> tuple["PathTerm", ...]:
        return ()

    def with_children(self, children: tuple["PathTerm", ...]) -> "PathTerm":
        if children:
            raise ValueError(f"{type(self).__name__} has no children")
        return self

    def __str__(self) -> str:
        return format_path_term(self)


@dataclass(frozen=True, slots=True)
class Atom(PathTerm):
    name: str
    # only meaningful when the group layer embeds words; the calculus itself
    # always spells inverses as Sigma nodes
    inverse: bool = False


@dataclass(frozen=True, slots=True)
class Rho(PathTerm):
    tag: Optional[str] = None


@dataclass(frozen=True, slots=True)
class Sigma(PathTerm):
    child: PathTerm

    @property
    def children(self):
        return (self.child,)

    def with_children(self, children):
        (child,) = children
        return Sigma(child)


@dataclass(frozen=True, slots=True)
class Tau(PathTerm):
    left: PathTerm
    right: PathTerm

    @property
    def children(self):
        return (self.left, self.right)

    def with_children(self, children):
        return Tau(*children)


@dataclass(frozen=True, slots=True)
class SubL(PathTerm):
    left: PathTerm
    right: PathTerm

    @property
    def children(self):
        return (self.left, self.right)

    def with_children(self, children):
        return SubL(*children)


@dataclass(frozen=True, slots=True)
class SubR(PathTerm):
    left: PathTerm
    right: PathTerm

    @property
    def children(self):
        return (self.left, self.right)

    def with_children(self, children):
        return SubR(*children)


@dataclass(frozen=True, slots=True)
class Xi(PathTerm):
    variant: str
    args: tuple[PathTerm, ...]

    def __post_init__(self):
        _check_arity("xi", XI_ARITY, self.variant, self.args)

    @property
    def children(self):
        return self.args

    def with_children(self, children):
        return Xi(self.variant, tuple(children))


@dataclass(frozen=True, slots=True)
class Mu(PathTerm):
    variant: str
    args: tuple[PathTerm, ...]

    def __post_init__(self):
        _check_arity("mu", MU_ARITY, self.variant, self.args)

    @property
    def children(self):
        return self.args

    def with_children(self, children):
        return Mu(self.variant, tuple(children))


@dataclass(frozen=True, slots=True)
class Nu(PathTerm):
    child: PathTerm

    @property
    def children(self):
        return (self.child,)

    def with_children(self, children):
        (child,) = children
        return Nu(child)


class ArityError(ValueError):
    pass


def _check_arity(family, table, variant, args):
    if not isinstance(args, tuple):
        raise TypeError(f"{family} args must be a tuple")
    if variant == "*":
        # pattern wildcard: any unary variant of the family
        if len(args) != 1:
            raise ArityError(f"{family} wildcard takes 1 argument")
        return
    if variant not in table:
        raise ArityError(f"unknown {family} variant {variant!r}")
    if len(args) != table[variant]:
        name = (_XI_NAMES if family == "xi" else _MU_NAMES)[variant]
        raise ArityError(f"{name} takes {table[variant]} argument(s), got {len(args)}")


def head(term: PathTerm) -> tuple:
    """Constructor identity of the root, ignoring children."""
    if isinstance(term, Atom):
        return (Atom, term.name, term.inverse)
    if isinstance(term, Rho):
        return (Rho, term.tag)
    if isinstance(term, (Xi, Mu)):
        return (type(term), term.variant)
    return (type(term),)


# ---------------------------------------------------------------------------
# positions


class PositionError(LookupError):
    pass


def subterm_at(term: PathTerm, pos: Position) -> PathTerm:
    node = term
    for depth, i in enumerate(pos):
        kids = node.children
        if not 0 <= i < len(kids):
            raise PositionError(f"invalid position {format_position(pos)!r}: "
                                f"index {i} at depth {depth} out of range")
        node = kids[i]
    return node


def replace_at(term: PathTerm, pos: Position, replacement: PathTerm) -> PathTerm:
    if not pos:
        return replacement
    kids = term.children
    i = pos[0]
    if not 0 <= i < len(kids):
        raise PositionError(f"invalid position {format_position(pos)!r} in {term}")
    new = list(kids)
    new[i] = replace_at(kids[i], pos[1:], replacement)
    return term.with_children(tuple(new))


def is_valid_position(term: PathTerm, pos: Position) -> bool:
    try:
        subterm_at(term, pos)
    except PositionError:
        return False
    return True


def positions(term: PathTerm, prefix: Position = ()) -> Iterator[Position]:
    """All positions in pre-order, which is also lexicographic order."""
    yield prefix
    for i, child in enumerate(term.children):
        yield from positions(child, prefix + (i,))


def size(term: PathTerm) -> int:
    return 1 + sum(size(c) for c in term.children)


def depth(term: PathTerm) -> int:
    return 1 + max((depth(c) for c in term.children), default=0)


def atoms(term: PathTerm) -> set[str]:
    if isinstance(term, Atom):
        return {term.name}
    out: set[str] = set()
    for c in term.children:
        out |= atoms(c)
    return out


def format_position(pos: Position) -> str:
    return ".".join(str(i) for i in pos)


def parse_position(text: str) -> Position:
    text = text.strip()
    if not text:
        return ()
    try:
        out = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise ValueError(f"malformed position {text!r}") from None
    if any(i < 0 for i in out):
        raise ValueError(f"malformed position {text!r}")
    return out


# ---------------------------------------------------------------------------
# text syntax


def format_path_term(term: PathTerm) -> str:
    if isinstance(term, Atom):
        return f"sigma({term.name})" if term.inverse else term.name
    if isinstance(term, Rho):
        return "rho" if term.tag is None else f"rho_{term.tag}"
    if isinstance(term, Sigma):
        name = "sigma"
    elif isinstance(term, Tau):
        name = "tau"
    elif isinstance(term, SubL):
        name = "subL"
    elif isinstance(term, SubR):
        name = "subR"
    elif isinstance(term, Xi):
        name = _XI_NAMES.get(term.variant, "xi*")
    elif isinstance(term, Mu):
        name = _MU_NAMES.get(term.variant, "mu*")
    elif isinstance(term, Nu):
        name = "nu"
    else:
        # pattern variables and other extensions format themselves
        return repr(term)
    return name + "(" + ",".join(format_path_term(c) for c in term.children) + ")"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class PathArityError(ParseError, ArityError):
    pass


_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|([(),]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m:
                rest = text[pos:]
                if rest.strip():
                    off = pos + len(rest) - len(rest.lstrip())
                    raise ParseError(f"unexpected character {text[off]!r}", *self.locate(off))
                break
            tok = m.group(1) or m.group(2)
            self.toks.append((tok, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def locate(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def peek(self) -> Optional[str]:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def where(self) -> tuple[int, int]:
        off = self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)
        return self.locate(off)

    def next(self) -> str:
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of input", *self.where())
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str):
        where = self.where()
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", *where)


def parse_path_term(text: str) -> PathTerm:
    toks = _Tokens(text)
    term = _parse_term(toks)
    if toks.peek() is not None:
        raise ParseError(f"trailing input {toks.peek()!r}", *toks.where())
    return term


def _parse_args(toks: _Tokens) -> list[PathTerm]:
    toks.expect("(")
    args = [_parse_term(toks)]
    while toks.peek() == ",":
        toks.next()
        args.append(_parse_term(toks))
    toks.expect(")")
    return args


def _parse_term(toks: _Tokens) -> PathTerm:
    where = toks.where()
    tok = toks.next()
    if tok in "(),":
        raise ParseError(f"expected a term, got {tok!r}", *where)
    if toks.peek() != "(":
        if tok == "rho":
            return Rho()
        if tok.startswith("rho_") and len(tok) > 4:
            return Rho(tok[4:])
        return Atom(tok)
    if tok not in RESERVED or tok == "rho":
        raise ParseError(f"unknown constructor {tok!r}", *where)
    args = _parse_args(toks)

    def want(n):
        if len(args) != n:
            raise PathArityError(f"{tok} takes {n} argument(s), got {len(args)}", *where)

    if tok == "sigma":
        want(1)
        return Sigma(args[0])
    if tok == "nu":
        want(1)
        return Nu(args[0])
    if tok in _BINARY:
        want(2)
        return {"tau": Tau, "subL": SubL, "subR": SubR}[tok](*args)
    if tok in _XI_KEYWORDS:
        variant = _XI_KEYWORDS[tok]
        want(XI_ARITY[variant])
        return Xi(variant, tuple(args))
    variant = _MU_KEYWORDS[tok]
    want(MU_ARITY[variant])
    return Mu(variant, tuple(args))


def left_chain(parts: list[PathTerm]) -> PathTerm:
    """Left-nested composition tau(tau(p0, p1), p2)...; rho for no parts."""
    if not parts:
        return Rho()
    out = parts[0]
    for p in parts[1:]:
        out = Tau(out, p)
    return out
