"""Seeded random frames for property tests and the verification suite."""

from __future__ import annotations

import numpy as np

from .checkers import (check_church_rosser, check_commutativity, check_mckinsey,
                       terminal_points)
from .constructions import clone_world, cluster, product
from .frame import Frame, Partition, Relation


def rng_of(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_relation(rng, n: int, density: float | None = None) -> Relation:
    rng = rng_of(rng)
    if density is None:
        density = rng.uniform(0.1, 0.6)
    return Relation.from_matrix(rng.random((n, n)) < density)


def random_frame(rng, n: int, labels=("1",), density: float | None = None) -> Frame:
    rng = rng_of(rng)
    return Frame(n, {a: random_relation(rng, n, density) for a in labels}, alphabet=labels)


def random_preorder(rng, n: int, density: float | None = None) -> Relation:
    """Reflexive-transitive closure of a random relation."""
    rng = rng_of(rng)
    m = random_relation(rng, n, density).matrix | np.eye(n, dtype=bool)
    while True:
        nxt = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        if (nxt == m).all():
            return Relation.from_matrix(m)
        m = nxt


def random_partition(rng, n: int, max_blocks: int | None = None) -> Partition:
    rng = rng_of(rng)
    k = int(rng.integers(1, (max_blocks or n) + 1))
    return Partition.from_labels(rng.integers(0, k, n))


def random_s41_preorder(rng, n: int) -> Relation:
    """Random preorder in which every world sees a terminal point."""
    rng = rng_of(rng)
    while True:
        R = random_preorder(rng, n, rng.uniform(0.05, 0.4))
        F = Frame(n, {"1": R})
        if check_mckinsey(F):
            return R


def admissible_frames(rng, count: int, max_worlds: int = 8):
    """Bimodal frames with a McKinsey preorder first and an equivalence second that
    satisfy commutativity and Church-Rosser and keep some non-terminal world.

    Built as (preorder x cluster), then some non-terminal worlds are cloned.
    """
    rng = rng_of(rng)
    out = []
    while len(out) < count:
        a = int(rng.integers(2, 4))
        b = int(rng.integers(1, max(2, max_worlds // a) + 1))
        if a * b > max_worlds:
            continue
        base = Frame(a, {"1": random_s41_preorder(rng, a)})
        F = product(base, cluster(b, "2"))
        for _ in range(int(rng.integers(0, 3))):
            if F.n >= max_worlds:
                break
            movable = sorted(set(range(F.n)) - terminal_points(F, "1"))
            if not movable:
                break
            F = clone_world(F, int(rng.choice(movable)))
        if len(terminal_points(F, "1")) == F.n:
            continue
        if not (F["1"].is_preorder() and F["2"].is_equivalence() and check_mckinsey(F, "1")
                and check_commutativity(F) and check_church_rosser(F, "1", "2")
                and check_church_rosser(F, "2", "1")):
            continue
        out.append(F)
    return out


def cloned_rectangles(rng, count: int, max_worlds: int = 9):
    """Rectangles with 0-3 cloned worlds, at most ``max_worlds`` worlds each."""
    from .constructions import rectangle

    rng = rng_of(rng)
    out = []
    while len(out) < count:
        k, m = (int(x) for x in rng.integers(1, 4, 2))
        clones = int(rng.integers(0, 4))
        if k * m + clones > max_worlds:
            continue
        F = rectangle(k, m)
        for _ in range(clones):
            F = clone_world(F, int(rng.integers(0, F.n)))
        out.append(F)
    return out
