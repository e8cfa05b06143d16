"""Tuned partitions: checks, coarsest tuned refinement, tunability profiles.

A partition is tuned when, for every relation R and blocks U, V, either
every world of U has an R-successor in V or none does. The coarsest tuned
refinement of P is the largest-block partition below P with that property;
the map sending a world to its block is then a p-morphism onto the quotient.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, FrameError
from .frame import Frame, Partition
from .constructions import product


@dataclass(frozen=True)
class TuningVerdict:
    ok: bool
    label: Optional[str] = None
    U: Optional[tuple] = None
    V: Optional[tuple] = None
    a: Optional[int] = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class TuningReport:
    input_size: int
    output_size: int
    rounds: int
    splits: int


def _as_partition(F: Frame, P) -> Partition:
    if not isinstance(P, Partition):
        P = Partition(P, F.n)
    if P.n != F.n:
        raise FrameError(f"partition of {P.n} worlds for a frame of {F.n}")
    return P


def is_tuned(F: Frame, P) -> TuningVerdict:
    """Check tunedness; a failure names the label, the blocks and a world of U
    with no successor in V although some world of U has one."""
    P = _as_partition(F, P)
    blk = np.asarray(P.labels)
    k = len(P)
    sizes = np.bincount(blk, minlength=k)
    for lab in F.alphabet:
        R = F[lab]
        # distinct (world, target block) pairs
        wv = np.unique(R.src * k + blk[R.dst])
        a, v = wv // k, wv % k
        uv = blk[a] * k + v
        counts = np.bincount(uv, minlength=k * k)
        touched = np.flatnonzero(counts)
        bad = touched[counts[touched] < sizes[touched // k]]
        if bad.size:
            key = int(bad[0])
            u, vb = divmod(key, k)
            having = set(a[uv == key].tolist())
            witness = next(x for x in P.blocks[u] if x not in having)
            return TuningVerdict(False, lab, P.blocks[u], P.blocks[vb], witness)
    return TuningVerdict(True)


def _signature_refine(F: Frame, labels: np.ndarray):
    """Split by "set of (label, block) reached" until the block count is stable."""
    n = F.n
    rels = [F[a] for a in F.alphabet]
    rounds = 0
    blk = labels
    count = int(blk.max()) + 1
    while True:
        rounds += 1
        codes = np.concatenate([i * count + blk[r.dst] for i, r in enumerate(rels)])
        srcs = np.concatenate([r.src for r in rels])
        width = len(rels) * count
        keys = np.unique(srcs * width + codes)
        a, c = keys // width, keys % width
        if a.size:
            starts = np.searchsorted(a, np.arange(n))
            pos = np.arange(a.size) - starts[a]
            deg = int(pos.max()) + 1
        else:
            pos, deg = a, 0
        table = np.full((n, deg + 1), -1, dtype=np.int64)
        table[:, 0] = blk
        table[a, pos + 1] = c
        _, new = np.unique(table, axis=0, return_inverse=True)
        new = new.ravel()
        new_count = int(new.max()) + 1
        if new_count == count:
            return blk, rounds
        blk, count = new, new_count


def _worklist_refine(F: Frame, labels: np.ndarray):
    """FIFO splitter worklist over (label, block id) pairs."""
    n = F.n
    alphabet = list(F.alphabet)
    preds = {lab: [F[lab].predecessors(x).tolist() for x in range(n)] for lab in alphabet}
    blocks: list[set] = []
    where = [0] * n
    for b in Partition.from_labels(labels).blocks:
        where_id = len(blocks)
        blocks.append(set(b))
        for x in b:
            where[x] = where_id
    queue = deque((lab, i) for i in range(len(blocks)) for lab in alphabet)
    queued = set(queue)
    pops = 0
    while queue:
        lab, v = queue.popleft()
        queued.discard((lab, v))
        pops += 1
        pre = set()
        for y in blocks[v]:
            pre.update(preds[lab][y])
        hit = {}
        for x in pre:
            hit.setdefault(where[x], []).append(x)
        for u, inside in sorted(hit.items()):
            if len(inside) == len(blocks[u]):
                continue
            new_id = len(blocks)
            moved = set(inside)
            blocks[u] -= moved
            blocks.append(moved)
            for x in moved:
                where[x] = new_id
            for lab2 in alphabet:
                for item in ((lab2, u), (lab2, new_id)):
                    if item not in queued:
                        queue.append(item)
                        queued.add(item)
    return np.asarray(where, dtype=np.int64), pops


def coarsest_tuned_refinement(F: Frame, P, method: str = "signature") -> tuple[Partition, TuningReport]:
    """Coarsest tuned partition refining ``P``.

    ``method="signature"`` runs whole-partition rounds (vectorised, the
    default); ``method="worklist"`` splits one (label, block) splitter at a
    time in FIFO order. Both return the same partition.
    """
    P = _as_partition(F, P)
    start = np.asarray(P.labels)
    if method == "signature":
        out, rounds = _signature_refine(F, start)
    elif method == "worklist":
        out, rounds = _worklist_refine(F, start)
    else:
        raise ValueError(f"unknown method {method!r}")
    Q = Partition.from_labels(out)
    return Q, TuningReport(len(P), len(Q), rounds, len(Q) - len(P))


# -- profiles -------------------------------------------------------------------

def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def set_partitions(n: int, max_blocks: Optional[int] = None):
    """All partitions of ``0..n-1`` as restricted growth strings (tuples of labels)."""
    cap = n if max_blocks is None else max_blocks
    rgs = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(min(used + 1, cap)):
            rgs[i] = b
            yield from rec(i + 1, max(used, b + 1))

    if n == 0:
        return
    rgs[0] = 0
    yield from rec(1, 1)


def tunability_profile(F: Frame, n_max: int, budget: int = 10**5) -> list[int]:
    """Entry ``k-1``: the largest coarsest-tuned-refinement size over partitions with at most ``k`` blocks."""
    need = bell(F.n)
    if need > budget:
        raise BudgetExceeded(f"{F.n} worlds have {need} partitions, over the budget of {budget}",
                             required=need, budget=budget)
    best = [0] * (n_max + 1)
    for rgs in set_partitions(F.n, n_max):
        k = max(rgs) + 1
        out, _ = _signature_refine(F, np.asarray(rgs, dtype=np.int64))
        best[k] = max(best[k], int(out.max()) + 1)
    profile = []
    run = 0
    for k in range(1, n_max + 1):
        run = max(run, best[k])
        profile.append(run)
    return profile


# -- products with a finite factor ------------------------------------------------

@dataclass(frozen=True)
class ProductRefinement:
    partition: Partition
    factor_partition: Partition  # F partitioned by a -> (block of (a, b)) over b
    factor_tuned: Partition      # its coarsest tuned refinement in F

    @property
    def bound(self) -> int:
        return len(self.factor_tuned) * (self.partition.n // self.factor_tuned.n)


def product_refine_with_finite(F: Frame, G: Frame, V, method: str = "signature") -> ProductRefinement:
    """Tuned refinement of a partition ``V`` of ``F x G`` built through ``F``.

    Worlds of ``F`` are grouped by the tuple of ``V``-blocks along their row,
    that grouping is tuned in ``F`` (giving ``U``), and ``(a, b)`` is sent to
    the block ``([a]_U, b)``. The result has ``|U| * |G|`` blocks.
    """
    H = product(F, G)
    V = _as_partition(H, V)
    m = G.n
    rows = np.asarray(V.labels).reshape(F.n, m)
    _, row_class = np.unique(rows, axis=0, return_inverse=True)
    PF = Partition.from_labels(row_class.ravel())
    U, _ = coarsest_tuned_refinement(F, PF, method=method)
    S = (np.asarray(U.labels)[:, None] * m + np.arange(m)[None, :]).ravel()
    return ProductRefinement(Partition.from_labels(S), PF, U)
