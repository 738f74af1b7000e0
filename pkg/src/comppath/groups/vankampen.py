"""Presentation pushouts and the surface presentations built from them."""
from __future__ import annotations

import re
from typing import Sequence

from .solvers import parse_surface
from .words import (Presentation, Word, check_generators, free_reduce, inverse,
                    parse_word)


def _fresh_name(name: str, taken: set[str]) -> str:
    cand = f"{name}_v"
    while cand in taken:
        cand += "v"
    return cand


def vankampen_pushout(pU: Presentation, pV: Presentation,
                      amalgam: Sequence[tuple[Word, Word]]) -> Presentation:
    """Amalgamated free product: one relator i1(x) i2(x)^-1 per intersection generator."""
    for u, v in amalgam:
        check_generators(u, pU.generators)
        check_generators(v, pV.generators)
    taken = set(pU.generators) | set(pV.generators)
    rename = {}
    for g in pV.generators:
        if g in pU.generators:
            rename[g] = _fresh_name(g, taken)
            taken.add(rename[g])

    def ren(w):
        return tuple((rename.get(g, g), e) for g, e in w)

    gens = tuple(pU.generators) + tuple(rename.get(g, g) for g in pV.generators)
    rels = list(pU.relators) + [ren(r) for r in pV.relators]
    for u, v in amalgam:
        r = free_reduce(tuple(u) + inverse(ren(v)))
        if r:
            rels.append(r)
    return Presentation(gens, tuple(rels), pU.basepoint or pV.basepoint)


def free_presentation(*gens: str) -> Presentation:
    return Presentation(tuple(gens))


TRIVIAL = Presentation(())


def commutator(a: str, b: str) -> Word:
    """[a, b] spelled b a b^-1 a^-1."""
    return ((b, 1), (a, 1), (b, -1), (a, -1))


def surface_presentation(kind) -> Presentation:
    kind = parse_surface(kind)
    if kind == "circle":
        return Presentation(("xi",))
    if kind == "torus":
        return Presentation(("a", "b"), (commutator("a", "b"),))
    if kind == "klein":
        return Presentation(("a", "b"), (parse_word("b a b a^-1"),))
    n = kind[1]
    gens = tuple(x for i in range(1, n + 1) for x in (f"a{i}", f"b{i}"))
    rel: Word = ()
    for i in range(1, n + 1):
        rel += commutator(f"a{i}", f"b{i}")
    return Presentation(gens, (rel,))


def _natural_key(name: str):
    m = re.fullmatch(r"(.*?)(\d*)", name)
    stem, num = m.group(1), m.group(2)
    return (int(num) if num else 0, stem, name)


def polygon_presentation(boundary: Sequence[tuple[str, int]]) -> Presentation:
    """One relator, the edge word read around the polygon."""
    if not boundary:
        raise ValueError("boundary word must be nonempty")
    gens = tuple(sorted({g for g, _ in boundary}, key=_natural_key))
    return Presentation(gens, (tuple(boundary),))


# Group-level data for the open-cover decompositions: the annulus-like piece
# retracts to a wedge of two circles, the disk piece is simply connected and
# the overlap retracts to a circle whose loop xi winds once around the boundary.

def klein_pieces():
    return free_presentation("a", "b"), TRIVIAL, [(parse_word("b a b a^-1"), ())]


def torus_pieces():
    return free_presentation("a", "b"), TRIVIAL, [(parse_word("b a b^-1 a^-1"), ())]


def overlap_presentation() -> Presentation:
    return surface_presentation("circle")
