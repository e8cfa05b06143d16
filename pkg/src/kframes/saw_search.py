"""Exhaustive search for small saw-like frames whose product with a cluster satisfies the saw formula.

For fixed sizes ``|F| = k`` and ``|cluster| = m`` one SAT instance ranges
over every frame ``F = (X, d, l, r)`` on ``k`` worlds, every valuation of
``p0`` on ``F x cluster(m)`` and every world. The six saw axioms enter via
their first-order correspondents:

1. no path of three steps in ``d ∪ l ∪ r``;
2. ``l``-successors are dead ends;
3. ``r``-successors are dead ends;
4. ``l`` is a partial function;
5. ``r`` is a partial function;
6. ``d ∘ l ⊆ d ∘ r``.

An UNSAT answer means no such product of that size satisfies the formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frame import Frame, Relation

SAW_AXIOM_CONDITIONS = ("depth", "l-dead-end", "r-dead-end", "l-functional", "r-functional",
                        "expansion")


def saw_axiom_conditions(F: Frame) -> tuple[bool, ...]:
    """First-order correspondents of the six saw axioms, evaluated on ``F``."""
    d, l, r = (F[x].matrix for x in ("d", "l", "r"))
    a = (d | l | r).astype(np.int64)
    two = (a @ a) > 0
    three = (two.astype(np.int64) @ a) > 0
    return (
        not three.any(),
        not ((l.astype(np.int64) @ a) > 0).any(),
        not ((r.astype(np.int64) @ a) > 0).any(),
        bool((l.sum(axis=1) <= 1).all()),
        bool((r.sum(axis=1) <= 1).all()),
        bool((((d.astype(np.int64) @ l) > 0) <= ((d.astype(np.int64) @ r) > 0)).all()),
    )


@dataclass(frozen=True)
class SawWitness:
    frame: Frame
    m: int
    p: frozenset      # product worlds (x * m + s) where p0 holds
    world: int        # world of F at which the formula holds (any cluster coordinate)


class _Vars:
    def __init__(self):
        self.top = 0

    def new(self):
        self.top += 1
        return self.top


def saw_instance(k: int, m: int, axioms=(1, 2, 3, 4, 5, 6)):
    """Clauses plus the variable maps needed to decode a model."""
    v = _Vars()
    X, T = range(k), range(m)
    d = [[v.new() for _ in X] for _ in X]
    l = [[v.new() for _ in X] for _ in X]
    r = [[v.new() for _ in X] for _ in X]
    p = [[v.new() for _ in T] for _ in X]
    cl = []

    A = [[v.new() for _ in X] for _ in X]  # A[x][y] <-> d|l|r
    for x in X:
        for y in X:
            cl.append([-A[x][y], d[x][y], l[x][y], r[x][y]])
            cl += [[A[x][y], -d[x][y]], [A[x][y], -l[x][y]], [A[x][y], -r[x][y]]]

    if 1 in axioms:
        for x, y, z, w in itertools.product(X, repeat=4):
            cl.append([-A[x][y], -A[y][z], -A[z][w]])
    for ax, rel in ((2, l), (3, r)):
        if ax in axioms:
            for x, y, z in itertools.product(X, repeat=3):
                cl.append([-rel[x][y], -A[y][z]])
    for ax, rel in ((4, l), (5, r)):
        if ax in axioms:
            for x in X:
                for y, z in itertools.combinations(X, 2):
                    cl.append([-rel[x][y], -rel[x][z]])
    if 6 in axioms:
        # e[x][z] <-> exists y': d(x,y') & r(y',z)
        for x in X:
            for z in X:
                via = []
                for y in X:
                    g = v.new()
                    cl += [[-g, d[x][y]], [-g, r[y][z]]]
                    via.append(g)
                for y in X:
                    cl.append([-d[x][y], -l[y][z]] + via)

    # the formula holds at (root, s) for some root; it does not depend on s
    sel = [v.new() for _ in X]
    cl.append(list(sel))

    # Rp[y][t] -> some r-successor of y satisfies p at t
    Rp = [[v.new() for _ in T] for _ in X]
    for y in X:
        for t in T:
            via = []
            for z in X:
                g = v.new()
                cl += [[-g, r[y][z]], [-g, p[z][t]]]
                via.append(g)
            cl.append([-Rp[y][t]] + via)
    # Ln[y][t] -> some l-successor of y refutes p at t
    Ln = [[v.new() for _ in T] for _ in X]
    for y in X:
        for t in T:
            via = []
            for z in X:
                g = v.new()
                cl += [[-g, l[y][z]], [-g, -p[z][t]]]
                via.append(g)
            cl.append([-Ln[y][t]] + via)

    for x in X:
        # phi1: some d-successor
        cl.append([-sel[x]] + [d[x][y] for y in X])
        for y in X:
            # phi2: every d-successor has, somewhere in its column, <l>~p & <r>p
            h = [v.new() for _ in T]
            for t in T:
                cl += [[-h[t], Ln[y][t]], [-h[t], Rp[y][t]]]
            cl.append([-sel[x], -d[x][y]] + h)
            # phi3: every d-successor satisfies <l>p -> <r>p throughout its column
            for t in T:
                for z in X:
                    cl.append([-sel[x], -d[x][y], -l[y][z], -p[z][t], Rp[y][t]])
    return cl, {"d": d, "l": l, "r": r, "p": p, "sel": sel}


def _decode(model, k, m, maps) -> SawWitness:
    on = set(x for x in model if x > 0)
    rels = {}
    for lab in ("d", "l", "r"):
        mat = maps[lab]
        rels[lab] = Relation(k, [(x, y) for x in range(k) for y in range(k) if mat[x][y] in on])
    F = Frame(k, rels, alphabet=("d", "l", "r"))
    pset = frozenset(x * m + t for x in range(k) for t in range(m) if maps["p"][x][t] in on)
    root = next(x for x in range(k) if maps["sel"][x] in on)
    return SawWitness(F, m, pset, root)


def find_saw_model(k: int, m: int, axioms=(1, 2, 3, 4, 5, 6)) -> Optional[SawWitness]:
    """A frame on ``k`` worlds obeying ``axioms`` whose product with ``cluster(m)``
    satisfies the saw formula, or None."""
    from pysat.solvers import Solver

    clauses, maps = saw_instance(k, m, axioms)
    with Solver(name="cadical153", bootstrap_with=clauses) as s:
        if not s.solve():
            return None
        return _decode(s.get_model(), k, m, maps)


def saw_exhaustive_search(max_worlds: int = 5, max_cluster: int = 3) -> dict:
    """Result of :func:`find_saw_model` for every size pair; all None means unsatisfiable throughout."""
    return {(k, m): find_saw_model(k, m)
            for k in range(1, max_worlds + 1) for m in range(1, max_cluster + 1)}
