"""p-morphisms: verification, backtracking search and isomorphism testing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AlphabetError, FrameError
from .frame import Frame

DEFAULT_NODE_BUDGET = 10**7

FOUND = "found"
NONE = "none"
BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class WorldMap:
    """A total map from the worlds of one frame to the worlds of another."""

    source_n: int
    target_n: int
    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if len(images) != self.source_n:
            raise FrameError(f"map has {len(images)} images for {self.source_n} source worlds")
        if any(not 0 <= x < self.target_n for x in images):
            raise FrameError("map image outside target")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "WorldMap":
        return cls(n, n, tuple(range(n)))

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __len__(self):
        return self.source_n

    def then(self, other: "WorldMap") -> "WorldMap":
        """Composite ``other ∘ self`` (apply ``self`` first)."""
        if self.target_n != other.source_n:
            raise FrameError("maps do not compose")
        return WorldMap(self.source_n, other.target_n, tuple(other.images[x] for x in self.images))


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    clause: Optional[str] = None  # "forth" or "back"
    label: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def _check_compatible(F: Frame, G: Frame):
    if tuple(F.alphabet) != tuple(G.alphabet):
        raise AlphabetError(f"alphabets differ: {tuple(F.alphabet)} vs {tuple(G.alphabet)}")


def is_p_morphism(f: WorldMap, F: Frame, G: Frame) -> MorphismVerdict:
    """Check the homomorphism ("forth") and back conditions label by label.

    On failure the verdict names the clause, the label and a witness:
    ``(a, b)`` for a forth violation (``a R b`` but not ``f(a) S f(b)``), or
    ``(a, u)`` for a back violation (``f(a) S u`` with no ``R``-successor of
    ``a`` mapped to ``u``).
    """
    _check_compatible(F, G)
    if f.source_n != F.n or f.target_n != G.n:
        raise FrameError("map sizes do not match the frames")
    img = np.asarray(f.images, dtype=np.int64)
    for lab in F.alphabet:
        R, S = F[lab], G[lab]
        smat = S.matrix
        bad = ~smat[img[R.src], img[R.dst]]
        if bad.any():
            i = int(np.argmax(bad))
            return MorphismVerdict(False, "forth", lab, (int(R.src[i]), int(R.dst[i])))
        # reached[a, u]: some R-successor of a is mapped to u
        reached = np.zeros((F.n, G.n), dtype=bool)
        reached[R.src, img[R.dst]] = True
        missing = smat[img] & ~reached
        if missing.any():
            a, u = (int(x) for x in np.argwhere(missing)[0])
            return MorphismVerdict(False, "back", lab, (a, u))
    return MorphismVerdict(True)


def is_surjective(f: WorldMap) -> bool:
    return len(set(f.images)) == f.target_n


def is_onto_p_morphism(f: WorldMap, F: Frame, G: Frame) -> bool:
    return is_surjective(f) and bool(is_p_morphism(f, F, G))


@dataclass(frozen=True)
class MorphismSearch:
    """Outcome of a p-morphism search: ``found``, ``none`` or ``budget-exhausted``."""

    status: str
    map: Optional[WorldMap] = None
    nodes: int = 0

    def __bool__(self):
        return self.status == FOUND


def find_p_morphism(F: Frame, G: Frame, budget: int = DEFAULT_NODE_BUDGET) -> MorphismSearch:
    """Search for a surjective p-morphism ``F ↠ G`` by backtracking.

    Source worlds are assigned in order of decreasing total out-degree,
    candidate targets in ascending index. A candidate is rejected as soon as
    a forth condition fails against an already assigned neighbour, or as soon
    as the back condition fails for a world whose successors are all assigned.
    Any map returned has been re-verified with :func:`is_p_morphism`.
    """
    _check_compatible(F, G)
    labels = tuple(F.alphabet)
    n, k = F.n, G.n
    if k > n:
        return MorphismSearch(NONE)
    fm = [F[a].matrix for a in labels]
    gm = [G[a].matrix for a in labels]
    fsucc = [[tuple(F[a].successors(x).tolist()) for x in range(n)] for a in labels]
    fpred = [[tuple(F[a].predecessors(x).tolist()) for x in range(n)] for a in labels]
    gsucc = [[frozenset(G[a].successors(u).tolist()) for u in range(k)] for a in labels]

    outdeg = sum(F[a].out_degrees() for a in labels)
    order = sorted(range(n), key=lambda x: (-int(outdeg[x]), x))
    pos = {x: i for i, x in enumerate(order)}
    # after assigning order[i], these worlds have all their successors assigned
    done_at = [[] for _ in range(n)]
    for x in range(n):
        last = max([pos[x]] + [pos[y] for li in range(len(labels)) for y in fsucc[li][x]])
        done_at[last].append(x)

    # static filter: degree/emptiness conditions implied by forth + back
    cand = []
    for x in range(n):
        ok = []
        for u in range(k):
            good = True
            for li in range(len(labels)):
                has_x = bool(fsucc[li][x])
                nu = len(gsucc[li][u])
                if has_x != (nu > 0) or nu > len(set(fsucc[li][x])):
                    good = False
                    break
                if fm[li][x, x] and not gm[li][u, u]:
                    good = False
                    break
            if good:
                ok.append(u)
        cand.append(ok)
        if not ok:
            return MorphismSearch(NONE)

    img = [-1] * n
    hits = [0] * k
    uncovered = [k]
    nodes = [0]

    def back_ok(x):
        u = img[x]
        for li in range(len(labels)):
            got = {img[y] for y in fsucc[li][x]}
            if not gsucc[li][u] <= got:
                return False
        return True

    def consistent(x, u):
        for li in range(len(labels)):
            row = gm[li]
            for y in fsucc[li][x]:
                v = u if y == x else img[y]
                if v >= 0 and not row[u, v]:
                    return False
            for y in fpred[li][x]:
                v = img[y]
                if v >= 0 and y != x and not row[v, u]:
                    return False
        return True

    def rec(i):
        if i == n:
            return uncovered[0] == 0
        x = order[i]
        for u in cand[x]:
            nodes[0] += 1
            if nodes[0] > budget:
                raise _Budget
            if not consistent(x, u):
                continue
            img[x] = u
            hits[u] += 1
            if hits[u] == 1:
                uncovered[0] -= 1
            if uncovered[0] <= n - i - 1 and all(back_ok(y) for y in done_at[i]):
                if rec(i + 1):
                    return True
            hits[u] -= 1
            if hits[u] == 0:
                uncovered[0] += 1
            img[x] = -1
        return False

    try:
        found = rec(0)
    except _Budget:
        return MorphismSearch(BUDGET_EXHAUSTED, nodes=nodes[0])
    if not found:
        return MorphismSearch(NONE, nodes=nodes[0])
    f = WorldMap(n, k, tuple(img))
    if not (is_surjective(f) and is_p_morphism(f, F, G)):
        raise AssertionError("search produced a map that fails verification")
    return MorphismSearch(FOUND, f, nodes[0])


class _Budget(Exception):
    pass


def _signature(F: Frame, labels, x):
    return tuple((int(F[a].out_degrees()[x]), int(F[a].in_degrees()[x]), bool(F[a].matrix[x, x]))
                 for a in labels)


def is_isomorphic(F: Frame, G: Frame) -> Optional[WorldMap]:
    """Return a label-preserving isomorphism ``F -> G`` or ``None``."""
    _check_compatible(F, G)
    labels = tuple(F.alphabet)
    if F.n != G.n or any(len(F[a]) != len(G[a]) for a in labels):
        return None
    n = F.n
    fs = [_signature(F, labels, x) for x in range(n)]
    gs = [_signature(G, labels, u) for u in range(n)]
    if sorted(fs) != sorted(gs):
        return None
    fm = [F[a].matrix for a in labels]
    gm = [G[a].matrix for a in labels]
    order = sorted(range(n), key=lambda x: (gs.count(fs[x]), x))
    cand = {x: [u for u in range(n) if gs[u] == fs[x]] for x in range(n)}
    img = [-1] * n
    used = [False] * n
    placed = []

    def ok(x, u):
        for li in range(len(labels)):
            for y in placed:
                v = img[y]
                if fm[li][x, y] != gm[li][u, v] or fm[li][y, x] != gm[li][v, u]:
                    return False
        return True

    def rec(i):
        if i == n:
            return True
        x = order[i]
        for u in cand[x]:
            if used[u] or not ok(x, u):
                continue
            img[x], used[u] = u, True
            placed.append(x)
            if rec(i + 1):
                return True
            placed.pop()
            img[x], used[u] = -1, False
        return False

    if not rec(0):
        return None
    return WorldMap(n, n, tuple(img))
