"""Formula schemes and translations.

Bounded diamonds expand eagerly:

    <A>f        = <a1>f | <a2>f | ...            (labels of A in order)
    <A>^{<=0} f = f
    <A>^{<=m} f = f | <a1>(<A>^{<=m-1} f) | <a2>(<A>^{<=m-1} f) | ...

which is equivalent to the disjunction of ``<A>^i f`` for ``i <= m``
while sharing the inner subformula.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .syntax import (BOT, TOP, And, Box, Dia, Formula, Imp, Not, Or, Var, conj, disj,
                     substitute_diamonds)

Diamond = Callable[[Formula], Formula]


def _labels(A) -> tuple[str, ...]:
    if isinstance(A, str):
        return (A,)
    A = tuple(str(a) for a in A)
    if not A:
        raise ValueError("a diamond needs at least one label")
    return A


def dia_all(A, f: Formula) -> Formula:
    """``<A>f``: the diamond of the union of the relations in ``A``."""
    return disj(Dia(a, f) for a in _labels(A))


def box_all(A, f: Formula) -> Formula:
    return Not(dia_all(A, Not(f)))


def dia_leq(A, m: int, f: Formula) -> Formula:
    """``<A>^{<=m} f``."""
    A = _labels(A)
    out = f
    for _ in range(m):
        out = disj([f] + [Dia(a, out) for a in A])
    return out


def box_leq(A, m: int, f: Formula) -> Formula:
    return Not(dia_leq(A, m, Not(f)))


def iterate(dia: Diamond, i: int, f: Formula) -> Formula:
    for _ in range(i):
        f = dia(f)
    return f


def p(i: int) -> Var:
    return Var(i)


# -- height -------------------------------------------------------------------

def gen_B(h: int, label: str = "1") -> Formula:
    """Height-bounding formula: ``B_0 = false``, ``B_{i+1} = p_{i+1} -> [](<>p_{i+1} | B_i)``."""
    f = BOT
    for i in range(1, h + 1):
        f = Imp(p(i), Box(label, Or(Dia(label, p(i)), f)))
    return f


# -- reducible paths ------------------------------------------------------------

def gen_rp(m: int, dia: Diamond) -> Formula:
    """Reducible-path scheme for an arbitrary diamond-like operator.

    Antecedent: ``p0 & <>(p1 & <>(... & <>p_{m+1}))``. Consequent, in this
    order: ``<>^i(p_i & p_j)`` for ``i < j <= m+1``, then
    ``<>^i(p_i & <>p_{j+1})`` for ``i < j <= m``, each family by ``(i, j)``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    ante = p(m + 1)
    for i in range(m, -1, -1):
        ante = And(p(i), dia(ante))
    repeats = [iterate(dia, i, And(p(i), p(j)))
               for i in range(m + 2) for j in range(i + 1, m + 2)]
    shortcuts = [iterate(dia, i, And(p(i), dia(p(j + 1))))
                 for i in range(m + 1) for j in range(i + 1, m + 1)]
    return Imp(ante, disj(repeats + shortcuts))


def gen_rp_uni(m: int, label: str = "1") -> Formula:
    return gen_rp(m, lambda f: Dia(label, f))


def product_diamond(k: int, n: int, A=("1",), B=("2",)) -> Diamond:
    """``f -> <A>^{<=k} f | <B>^{<=n} f``."""
    return lambda f: Or(dia_leq(A, k, f), dia_leq(B, n, f))


def gen_rp_prod(m: int, k: int, n: int, A=("1",), B=("2",)) -> Formula:
    """Product reducible-path formula ``rp_m(k, n)``."""
    return gen_rp(m, product_diamond(k, n, A, B))


def gen_pretrans(m: int, A=("1",)) -> Formula:
    """``<A>^{m+1} p0 -> <A>^{<=m} p0``; valid iff the union relation is m-transitive."""
    return Imp(iterate(lambda f: dia_all(A, f), m + 1, p(0)), dia_leq(A, m, p(0)))


# -- translations -------------------------------------------------------------

def translate_pretrans(f: Formula, m: int, A) -> Formula:
    """Replace every diamond by ``<A>^{<=m}``."""
    return substitute_diamonds(f, lambda _lab, body: dia_leq(A, m, body))


def translate_product(f: Formula, m: int, n: int, A=("1",), B=("2",),
                      first: str = "1", second: str = "2") -> Formula:
    """``<first>`` becomes ``<A>^{<=m}``, ``<second>`` becomes ``<B>^{<=n}``."""
    def rule(lab, body):
        if lab == first:
            return dia_leq(A, m, body)
        if lab == second:
            return dia_leq(B, n, body)
        raise ValueError(f"label {lab!r} is neither {first!r} nor {second!r}")
    return substitute_diamonds(f, rule)


def decolor(f: Formula, labels: Sequence[str] = ("1", "2")) -> Formula:
    """Replace every diamond by the disjunction of the diamonds in ``labels``."""
    return substitute_diamonds(f, lambda _lab, body: dia_all(labels, body))


# -- commutator axioms --------------------------------------------------------

def gen_com(a: str, b: str) -> Formula:
    """``<a><b>p0 -> <b><a>p0``."""
    return Imp(Dia(a, Dia(b, p(0))), Dia(b, Dia(a, p(0))))


def gen_chr(a: str, b: str) -> Formula:
    """``<a>[b]p0 -> [b]<a>p0``."""
    return Imp(Dia(a, Box(b, p(0))), Box(b, Dia(a, p(0))))


# -- saw --------------------------------------------------------------------------

SAW_LABELS = ("d", "l", "r")


def gen_saw_axioms() -> list[Formula]:
    """The six saw axioms, in order: depth, two dead-end, two functionality, expansion."""
    A = SAW_LABELS
    x = p(0)
    return [
        box_all(A, box_all(A, box_all(A, BOT))),
        Box("l", box_all(A, BOT)),
        Box("r", box_all(A, BOT)),
        Imp(Dia("l", x), Box("l", x)),
        Imp(Dia("r", x), Box("r", x)),
        Imp(Dia("d", Dia("l", x)), Dia("d", Dia("r", x))),
    ]


def gen_saw_phi(s: str = "s", parts: bool = False):
    """``phi1 & phi2 & phi3`` over ``d, l, r`` and the cluster label ``s``."""
    x = p(0)
    phi1 = Dia("d", TOP)
    phi2 = Box("d", Dia(s, And(Dia("l", Not(x)), Dia("r", x))))
    phi3 = Box("d", Box(s, Imp(Dia("l", x), Dia("r", x))))
    if parts:
        return phi1, phi2, phi3
    return conj([phi1, phi2, phi3])


# -- tacks ------------------------------------------------------------------------

def gen_tl_cr() -> Formula:
    """``<1><2>[1][2]p0 -> [1][2]<1><2>p0``."""
    x = p(0)
    return Imp(Dia("1", Dia("2", Box("1", Box("2", x)))),
               Box("1", Box("2", Dia("1", Dia("2", x)))))


def gen_tack_mc() -> Formula:
    """``[1][2]<1><2>p0 -> <1><2>[1][2]p0``."""
    x = p(0)
    return Imp(Box("1", Box("2", Dia("1", Dia("2", x)))),
               Dia("1", Dia("2", Box("1", Box("2", x)))))


def gen_relativized_symmetry() -> Formula:
    """``<1>[1]p1 & ~p1 & p0 -> [1](~p1 -> <1>p0)``."""
    x, q = p(0), p(1)
    return Imp(conj([Dia("1", Box("1", q)), Not(q), x]),
               Box("1", Imp(Not(q), Dia("1", x))))


def gen_tack2_axioms() -> list[Formula]:
    return [gen_tl_cr(), gen_tack_mc(), gen_relativized_symmetry()]


def gen_tack1_refuted() -> Formula:
    """``<2><1>[1]p0 -> [1]<1>p0``: fails on a one-dimensional tack times a cluster."""
    x = p(0)
    return Imp(Dia("2", Dia("1", Box("1", x))), Box("1", Dia("1", x)))


# -- misc -------------------------------------------------------------------------

def gen_gap_formula(k: int, label: str = "1") -> Formula:
    """``f_0 = p0``, ``f_{k+1} = ~<>f_k``."""
    f = p(0)
    for _ in range(k):
        f = Not(Dia(label, f))
    return f


def gen_opposite_arrows() -> Formula:
    """``p0 & []^{<=2}(p0 -> <1>p1) & []^{<=2}(p1 -> <2>p0) -> <>^{<=2}(p1 & <1>p0)``

    with ``<>`` the diamond of the union of ``1`` and ``2``.
    """
    x, q = p(0), p(1)
    A = ("1", "2")
    return Imp(conj([x, box_leq(A, 2, Imp(x, Dia("1", q))), box_leq(A, 2, Imp(q, Dia("2", x)))]),
               dia_leq(A, 2, And(q, Dia("1", x))))
