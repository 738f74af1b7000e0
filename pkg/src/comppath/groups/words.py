"""Group words, their text syntax, free reduction and presentations."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

# a word is a tuple of (generator, +1 | -1)
Letter = tuple[str, int]
Word = tuple[Letter, ...]

_IDENT = r"[A-Za-z][A-Za-z0-9_]*"
_LETTER = re.compile(rf"^({_IDENT})(\^-1|\^1|')?$")


class WordSyntaxError(ValueError):
    pass


class UnknownGenerator(ValueError):
    pass


def parse_word(text: str) -> Word:
    """Whitespace-separated letters: `a`, `a^-1` or `a'`.  `1` (or nothing) is the empty word."""
    toks = text.split()
    if toks == ["1"]:
        return ()
    out = []
    for tok in toks:
        m = _LETTER.match(tok)
        if not m:
            raise WordSyntaxError(f"bad letter {tok!r}")
        out.append((m.group(1), -1 if m.group(2) in ("^-1", "'") else 1))
    return tuple(out)


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


def inverse(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def power(word: Sequence[Letter], n: int) -> Word:
    base = tuple(word) if n >= 0 else inverse(word)
    return base * abs(n)


def gen_power(g: str, n: int) -> Word:
    return ((g, 1 if n > 0 else -1),) * abs(n)


def free_reduce(word: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(word: Sequence[Letter]) -> Word:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == (w[j][0], -w[j][1]):
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def generators_of(word: Iterable[Letter]) -> set[str]:
    return {g for g, _ in word}


def check_generators(word: Sequence[Letter], allowed: Iterable[str]):
    extra = generators_of(word) - set(allowed)
    if extra:
        raise UnknownGenerator(f"unknown generator(s): {', '.join(sorted(extra))}")


def exponent_sums(word: Sequence[Letter], gens: Sequence[str]) -> tuple[int, ...]:
    idx = {g: i for i, g in enumerate(gens)}
    out = [0] * len(gens)
    for g, e in word:
        if g not in idx:
            raise UnknownGenerator(f"unknown generator {g!r}")
        out[idx[g]] += e
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    basepoint: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            check_generators(r, self.generators)

    def __str__(self):
        return format_presentation(self)


def format_presentation(p: Presentation) -> str:
    rels = " , ".join(format_word(r) for r in p.relators)
    return f"gens: {' '.join(p.generators)} ; rels: {rels}".rstrip()


def parse_presentation(text: str) -> Presentation:
    m = re.fullmatch(r"\s*gens:(.*?);\s*rels:(.*)", text, re.S)
    if not m:
        raise WordSyntaxError("expected 'gens: ... ; rels: ...'")
    gens = tuple(m.group(1).split())
    for g in gens:
        if not re.fullmatch(_IDENT, g):
            raise WordSyntaxError(f"bad generator name {g!r}")
    body = m.group(2).strip()
    rels = tuple(parse_word(r) for r in body.split(",")) if body else ()
    return Presentation(gens, rels)
