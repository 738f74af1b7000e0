"""Generate proof scripts for torus loop identities at concrete exponents.

A loop b^n a^m is the left-nested composite of |n| copies of b (or sigma(b))
followed by |m| copies of a (or sigma(a)); the empty composite is rho.
Scripts are built mechanically: normalize the start, move a-letters to the
right of b-letters with the commuting axioms (reassociating around each
swap), renormalize, and finish with the reversed normalization of the target.
"""
from __future__ import annotations

from ..engine import FORWARD, REVERSED, RewriteTrace, normalize as _normalize, root_context_only
from ..terms import Atom, PathTerm, Rho, Sigma, Tau, left_chain, format_path_term
from .core import Axiom, ProofScript, ScriptStep, format_script, verify_script

A, B = Atom("a"), Atom("b")
SA, SB = Sigma(A), Sigma(B)


# oriented as tau(b-letter, a-letter) = tau(a-letter, b-letter)
CO_AXIOMS = {
    (A, B): Axiom("co", Tau(B, A), Tau(A, B)),
    (A, SB): Axiom("co_sb_a", Tau(SB, A), Tau(A, SB)),
    (SA, B): Axiom("co_b_sa", Tau(B, SA), Tau(SA, B)),
    (SA, SB): Axiom("co_sb_sa", Tau(SB, SA), Tau(SA, SB)),
}


def letters(gen: PathTerm, k: int) -> list[PathTerm]:
    return [gen if k > 0 else Sigma(gen)] * abs(k)


def loop(n: int, m: int) -> PathTerm:
    """b^n a^m as a left-nested composite."""
    return left_chain(letters(B, n) + letters(A, m))


def power(gen: PathTerm, k: int) -> PathTerm:
    return left_chain(letters(gen, k))


def _kind(x):
    return x.child if isinstance(x, Sigma) else x


def _spine(term):
    """Right spine tau(x1, tau(x2, ... xk)) as (letters, positions of each tau node)."""
    out, pos, nodes = [], (), []
    while isinstance(term, Tau):
        nodes.append(pos)
        out.append(term.left)
        term = term.right
        pos = pos + (1,)
    out.append(term)
    return out, nodes


def _first_swap(term):
    xs, nodes = _spine(term)
    for i in range(len(xs) - 1):
        if _kind(xs[i]) == A and _kind(xs[i + 1]) == B:
            return i, xs, nodes
    return None


def normalize(term):
    # contexts other than the bare hole would let tsr/tr erase letters shared
    # by both sides, which is not a group identity on loops
    return _normalize(term, admissible=root_context_only)


def _steps_of(trace: RewriteTrace) -> list[ScriptStep]:
    out = []
    for st in trace.steps:
        binds = dict(st.bindings) if st.direction == REVERSED else {}
        out.append(ScriptStep(st.direction, st.rule, st.position, binds))
    return out


def build_script(start: PathTerm, target: PathTerm, name: str = "") -> ProofScript:
    cur, tr = normalize(start)
    steps = _steps_of(tr)
    used = set()
    while True:
        hit = _first_swap(cur)
        if hit is None:
            break
        i, xs, nodes = hit
        ax = CO_AXIOMS[(xs[i], xs[i + 1])]
        used.add(ax.name)
        p = nodes[i]
        if i + 1 == len(xs) - 1:
            # the pair is the innermost tau(x, y)
            swap = [ScriptStep(REVERSED, ax.name, p)]
        else:
            swap = [ScriptStep(REVERSED, "tt", p),
                    ScriptStep(REVERSED, ax.name, p + (0,)),
                    ScriptStep(FORWARD, "tt", p)]
        steps += swap
        cur = _replay(cur, swap)
        cur, tr = normalize(cur)
        steps += _steps_of(tr)
    nt, tt = normalize(target)
    if nt != cur:
        raise ValueError(f"cannot join {format_path_term(start)} and {format_path_term(target)}")
    steps += _steps_of(tt.reversed())
    axioms = tuple(CO_AXIOMS[k] for k in CO_AXIOMS if CO_AXIOMS[k].name in used)
    return ProofScript(start, target, tuple(steps), axioms, name)


def _replay(term, steps):
    s = ProofScript(term, term, tuple(steps), tuple(CO_AXIOMS.values()))
    rep = verify_script(s)
    if rep.failed_step is not None:
        raise AssertionError(rep.reason)
    return rep.final


# ---------------------------------------------------------------------------
# the identities


def sum_case(u, v, r, s):
    """(b^r a^s) o (b^u a^v) = tau(b^u a^v, b^r a^s) = b^(u+r) a^(v+s)."""
    return Tau(loop(u, v), loop(r, s)), loop(u + r, v + s)


def inverse_right(n, m):
    return Tau(loop(n, m), Tau(Sigma(power(B, n)), Sigma(power(A, m)))), Rho()


def inverse_left(n, m):
    return Tau(Tau(Sigma(power(B, n)), Sigma(power(A, m))), loop(n, m)), Rho()


def identity_right(n, m):
    return Tau(loop(n, m), Rho()), loop(n, m)


def identity_left(n, m):
    return Tau(Rho(), loop(n, m)), loop(n, m)


def assoc_left(x, y, z):
    return Tau(Tau(loop(*x), loop(*y)), loop(*z)), loop(x[0] + y[0] + z[0], x[1] + y[1] + z[1])


def assoc_right(x, y, z):
    return Tau(loop(*x), Tau(loop(*y), loop(*z))), loop(x[0] + y[0] + z[0], x[1] + y[1] + z[1])


def loop_base(letter: str):
    """A single letter x composed with rho: tau(x, rho) = x for x in a, b, sigma(a), sigma(b)."""
    x = {"a": A, "b": B, "sa": SA, "sb": SB}[letter]
    return Tau(x, Rho()), x


def loop_step(case: int, n: int, m: int):
    """Step 1..5: compose b^n a^m with rho, a, b, sigma(b), sigma(a) on the left."""
    w = loop(n, m)
    if case == 1:
        return Tau(w, Rho()), w
    if case == 2:
        return Tau(w, A), loop(n, m + 1)
    if case == 3:
        return Tau(w, B), loop(n + 1, m)
    if case == 4:
        return Tau(w, SB), loop(n - 1, m)
    if case == 5:
        return Tau(w, SA), loop(n, m - 1)
    raise ValueError(f"no case {case}")


def render(script: ProofScript, comment: str = "") -> str:
    head = "".join(f"# {line}\n" for line in comment.splitlines())
    return head + format_script(script)


# representative instances shipped with the package; tests sweep the full range
BUNDLED = {
    "torus_group_sum": (lambda: sum_case(2, 1, -1, 2),
                  "sum: (b^-1 a^2) o (b^2 a^1) = b^1 a^3"),
    "torus_group_inverse_right": (lambda: inverse_right(2, -1),
                            "inverse, right: tau(b^2 a^-1, sigma(b^2) sigma(a^-1)) = rho"),
    "torus_group_inverse_left": (lambda: inverse_left(2, -1),
                           "inverse, left: tau(sigma(b^2) sigma(a^-1), b^2 a^-1) = rho"),
    "torus_group_identity_right": (lambda: identity_right(2, -1), "identity: tau(b^2 a^-1, rho) = b^2 a^-1"),
    "torus_group_identity_left": (lambda: identity_left(2, -1), "identity: tau(rho, b^2 a^-1) = b^2 a^-1"),
    "torus_group_assoc_left": (lambda: assoc_left((1, 1), (-1, 2), (2, -1)),
                         "associativity, left-grouped product of b a, b^-1 a^2, b^2 a^-1"),
    "torus_group_assoc_right": (lambda: assoc_right((1, 1), (-1, 2), (2, -1)),
                          "associativity, right-grouped product of b a, b^-1 a^2, b^2 a^-1"),
    "torus_loop_base_a": (lambda: loop_base("a"), "base case: tau(a, rho) = a"),
    "torus_loop_base_b": (lambda: loop_base("b"), "base case: tau(b, rho) = b"),
    "torus_loop_base_sa": (lambda: loop_base("sa"), "base case: tau(sigma(a), rho) = sigma(a)"),
    "torus_loop_base_sb": (lambda: loop_base("sb"), "base case: tau(sigma(b), rho) = sigma(b)"),
    "torus_loop_step_1": (lambda: loop_step(1, 2, 1), "rho o b^2 a = b^2 a"),
    "torus_loop_step_2": (lambda: loop_step(2, 2, 1), "a o b^2 a = b^2 a^2"),
    "torus_loop_step_3": (lambda: loop_step(3, 2, 1), "b o b^2 a = b^3 a"),
    "torus_loop_step_4": (lambda: loop_step(4, 2, 1), "b^-1 o b^2 a = b a"),
    "torus_loop_step_5": (lambda: loop_step(5, 2, 1), "a^-1 o b^2 a = b^2"),
}


def bundled_text(name: str) -> str:
    make, comment = BUNDLED[name]
    script = build_script(*make(), name=name)
    note = (comment + "\ngenerated by comppath.scripts.torus; derived commuting axioms "
            "are proved in the co_* scripts")
    return render(script, note)
