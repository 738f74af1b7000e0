"""Word-problem solvers for the circle, torus, Klein bottle and genus >= 2 surfaces."""
from __future__ import annotations

import re
from typing import Sequence

from .words import (Letter, Presentation, UnknownGenerator, Word, check_generators,
                    cyclic_reduce, exponent_sums, free_reduce, gen_power, inverse)

A, B = "a", "b"


class UnsupportedPresentation(ValueError):
    pass


# ---------------------------------------------------------------------------
# torus: b^n a^m


def _exchange(word: Sequence[Letter], swap) -> Word:
    """Bubble letters with `swap(x, y) -> replacement or None` until stable, freely reducing."""
    w = list(free_reduce(word))
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            rep = swap(w[i], w[i + 1])
            if rep is not None:
                w[i:i + 2] = rep
                w = list(free_reduce(w))
                changed = True
                break
    return tuple(w)


def _torus_swap(x, y):
    # a^e b^f -> b^f a^e, using the commuting relation
    if x[0] == A and y[0] == B:
        return [y, x]
    return None


def torus_normal_form(word: Sequence[Letter]) -> tuple[int, int]:
    """(n, m) such that word = b^n a^m."""
    check_generators(word, (A, B))
    w = _exchange(word, _torus_swap)
    n = sum(e for g, e in w if g == B)
    m = sum(e for g, e in w if g == A)
    # the exchange leaves every b before every a
    assert w == gen_power(B, n) + gen_power(A, m)
    return n, m


def torus_word(n: int, m: int) -> Word:
    return gen_power(B, n) + gen_power(A, m)


# ---------------------------------------------------------------------------
# Klein bottle: a^m b^n, relator b a b a^-1


def _klein_swap(x, y):
    # b^f a^e -> a^e b^(-f)
    if x[0] == B and y[0] == A:
        return [y, (B, -x[1])]
    return None


def klein_normal_form(word: Sequence[Letter]) -> tuple[int, int]:
    """(m, n) such that word = a^m b^n."""
    check_generators(word, (A, B))
    w = _exchange(word, _klein_swap)
    m = sum(e for g, e in w if g == A)
    n = sum(e for g, e in w if g == B)
    assert w == gen_power(A, m) + gen_power(B, n)
    return m, n


def klein_word(m: int, n: int) -> Word:
    return gen_power(A, m) + gen_power(B, n)


def klein_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    (m1, n1), (m2, n2) = x, y
    return m1 + m2, (-1) ** (m2 % 2) * n1 + n2


def klein_oracle_eval(word: Sequence[Letter]) -> tuple[int, int]:
    images = {(A, 1): (1, 0), (A, -1): (-1, 0), (B, 1): (0, 1), (B, -1): (0, -1)}
    acc = (0, 0)
    for letter in word:
        if letter not in images:
            raise UnknownGenerator(f"unknown generator {letter[0]!r}")
        acc = klein_mul(acc, images[letter])
    return acc


# ---------------------------------------------------------------------------
# Dehn's algorithm


def _is_surface_relator(p: Presentation) -> bool:
    if len(p.relators) != 1 or len(p.generators) < 4 or len(p.generators) % 2:
        return False
    r = p.relators[0]
    if len(r) != 2 * len(p.generators) or free_reduce(r) != r:
        return False
    return all(sorted(e for h, e in r if h == g) == [-1, 1] for g in p.generators)


def relator_rotations(r: Sequence[Letter]) -> list[Word]:
    r = tuple(r)
    out = []
    for base in (r, inverse(r)):
        for i in range(len(base)):
            rot = base[i:] + base[:i]
            if rot not in out:
                out.append(rot)
    return out


def dehn_reduce(word: Sequence[Letter], presentation: Presentation) -> Word:
    if not _is_surface_relator(presentation):
        raise UnsupportedPresentation("Dehn reduction needs a single genus >= 2 surface relator")
    check_generators(word, presentation.generators)
    rots = relator_rotations(presentation.relators[0])
    L = len(presentation.relators[0])
    w = cyclic_reduce(word)
    while True:
        hit = _dehn_match(w, rots, L)
        if hit is None:
            return w
        i, k, rot = hit
        w = cyclic_reduce(w[:i] + inverse(rot[k:]) + w[i + k:])


def _dehn_match(w, rots, L):
    # leftmost start, then longest piece; strictly more than half the relator
    for i in range(len(w)):
        best = None
        for rot in rots:
            k = 0
            while k < L and i + k < len(w) and w[i + k] == rot[k]:
                k += 1
            if 2 * k > L and (best is None or k > best[1]):
                best = (i, k, rot)
        if best is not None:
            return best
    return None


# ---------------------------------------------------------------------------
# surfaces


_GENUS = re.compile(r"genus[-_(]?(\d+)\)?")


def parse_surface(kind: str):
    """'circle' | 'torus' | 'klein' | ('genus', n) from 'genus2', 'genus-2' or 'genus(2)'."""
    if isinstance(kind, tuple):
        return kind
    k = kind.strip().lower()
    if k in ("circle", "torus", "klein"):
        return k
    m = _GENUS.fullmatch(k)
    if m and int(m.group(1)) >= 1:
        return ("genus", int(m.group(1)))
    raise UnsupportedPresentation(f"unsupported surface kind {kind!r}")


def is_trivial(word: Sequence[Letter], kind) -> bool:
    from .vankampen import surface_presentation
    kind = parse_surface(kind)
    p = surface_presentation(kind)
    check_generators(word, p.generators)
    if kind == "klein":
        return klein_normal_form(word) == (0, 0)
    if kind in ("circle", "torus") or kind == ("genus", 1):
        return not any(exponent_sums(word, p.generators))
    return dehn_reduce(word, p) == ()


def words_equal(u: Sequence[Letter], v: Sequence[Letter], kind) -> bool:
    return is_trivial(tuple(u) + inverse(v), kind)


def reduce_word(word: Sequence[Letter], kind=None) -> Word:
    """Canonical representative: free reduction, or the surface's normal form."""
    if kind is None:
        return free_reduce(word)
    from .vankampen import surface_presentation
    kind = parse_surface(kind)
    p = surface_presentation(kind)
    check_generators(word, p.generators)
    if kind == "torus":
        return torus_word(*torus_normal_form(word))
    if kind == "klein":
        return klein_word(*klein_normal_form(word))
    if kind == "circle":
        (k,) = exponent_sums(word, p.generators)
        return gen_power(p.generators[0], k)
    if kind == ("genus", 1):
        sums = exponent_sums(word, p.generators)
        return gen_power(p.generators[1], sums[1]) + gen_power(p.generators[0], sums[0])
    return dehn_reduce(word, p)
