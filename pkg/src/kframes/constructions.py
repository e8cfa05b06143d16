"""Frame constructions: generators, products, sums, quotients and named families.

Infinite frames are exposed as finite truncations indexed by a size
parameter (``saw(k)``, ``tack1(k)``, ``tack2(k, m)``, ``rectangle(k, m)``).
A truncation need not validate the logic of the infinite frame it comes
from: ``saw(k)`` refutes ``<d><l>p0 -> <d><r>p0`` because the last tooth's
right neighbour is missing.

Linearisation conventions (stable, relied on by golden files):

* product ``F x G``: world ``(a, b)`` has index ``a * |G| + b``;
* sum over an index frame: summands in index order, each in its own order;
* semi-ordered sum ``F (+) G``: the worlds of ``F`` first, then those of ``G``;
* ``saw(k)``: ``u, v_0..v_{k-1}, w_0..w_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AlphabetError, FrameError
from .frame import Frame, Partition, Relation
from .morphisms import WorldMap


def _positive(name, value):
    if int(value) < 1:
        raise FrameError(f"{name} must be at least 1, got {value}")
    return int(value)


# -- generators -------------------------------------------------------------

def cluster(n: int, label: str = "1") -> Frame:
    """Universal relation on ``n`` worlds."""
    n = _positive("n", n)
    return Frame(n, {label: Relation.full(n)})


def chain(h: int, reflexive: bool = True, label: str = "1") -> Frame:
    """Linear order ``0 < 1 < ... < h-1`` (``<=`` when reflexive)."""
    h = _positive("h", h)
    m = np.triu(np.ones((h, h), dtype=bool), k=0 if reflexive else 1)
    return Frame(h, {label: Relation.from_matrix(m)})


def antichain(n: int, reflexive: bool = True, label: str = "1") -> Frame:
    n = _positive("n", n)
    return Frame(n, {label: Relation.diagonal(n) if reflexive else Relation(n)})


def point(alphabet=("1", "2")) -> Frame:
    """The singleton reflexive in every relation."""
    return Frame(1, {a: Relation.diagonal(1) for a in alphabet}, alphabet=alphabet)


def lift_bimodal(F: Frame, label: str = "2") -> Frame:
    """Add a diagonal relation under ``label`` to a unimodal frame."""
    if len(F.alphabet) != 1:
        raise AlphabetError("only unimodal frames can be lifted")
    if label in F.alphabet:
        raise AlphabetError(f"label {label!r} already used")
    rels = dict(F.relations)
    rels[label] = Relation.diagonal(F.n)
    return Frame(F.n, rels, alphabet=tuple(F.alphabet) + (label,), names=F.names)


def gap_cluster(n: int, label: str = "1") -> Frame:
    """Worlds ``0..n-1`` with ``a R b`` iff ``a != b + 1``."""
    n = _positive("n", n)
    idx = np.arange(n)
    return Frame(n, {label: Relation.from_matrix(idx[:, None] != idx[None, :] + 1)})


def disjoint_union(F: Frame, G: Frame) -> Frame:
    if tuple(F.alphabet) != tuple(G.alphabet):
        raise AlphabetError("disjoint union needs identical alphabets")
    index = Frame(2, {a: Relation(2) for a in F.alphabet}, alphabet=F.alphabet)
    return sum_over(FrameFamily(index, (F, G)))


def clone_world(F: Frame, w: int, name: str | None = None) -> Frame:
    """Append a copy of world ``w``: the new world relates exactly as ``w`` does.

    The copy and ``w`` are related to each other (in either direction) iff
    ``w`` is reflexive in that relation, so the projection back onto ``F``
    is a p-morphism.
    """
    if not 0 <= w < F.n:
        raise FrameError(f"world {w} not in frame")
    proj = np.append(np.arange(F.n), w)
    rels = {a: Relation.from_matrix(F[a].matrix[np.ix_(proj, proj)]) for a in F.alphabet}
    if name is None:
        base, k = F.names[w] + "'", 1
        name = base
        while name in F.names:
            k += 1
            name = base + str(k)
    return Frame(F.n + 1, rels, alphabet=F.alphabet, names=F.names + (name,))


# -- products, sums ---------------------------------------------------------

def product(F: Frame, G: Frame) -> Frame:
    """Product frame over the disjoint union of the two alphabets.

    Horizontal relations move the first coordinate, vertical ones the
    second; ``(a, b)`` is world ``a * |G| + b``.
    """
    overlap = set(F.alphabet) & set(G.alphabet)
    if overlap:
        raise AlphabetError(f"product needs disjoint alphabets; shared: {sorted(overlap)}")
    m = G.n
    rels = {}
    cols = np.arange(m)
    for a in F.alphabet:
        R = F[a]
        rels[a] = Relation(F.n * m, ((R.src[:, None] * m + cols).ravel(),
                                     (R.dst[:, None] * m + cols).ravel()))
    rows = np.arange(F.n)
    for b in G.alphabet:
        S = G[b]
        rels[b] = Relation(F.n * m, ((rows[:, None] * m + S.src).ravel(),
                                     (rows[:, None] * m + S.dst).ravel()))
    names = [f"({x},{y})" for x in F.names for y in G.names]
    return Frame(F.n * m, rels, alphabet=tuple(F.alphabet) + tuple(G.alphabet), names=names)


def rectangle(k: int, m: int) -> Frame:
    """``cluster(k) x cluster(m)`` with labels ``1`` (horizontal) and ``2`` (vertical)."""
    return product(cluster(_positive("k", k), "1"), cluster(_positive("m", m), "2"))


@dataclass(frozen=True)
class FrameFamily:
    """Summands indexed by the worlds of ``index``, all over its alphabet."""

    index: Frame
    summands: tuple

    def __post_init__(self):
        summands = tuple(self.summands)
        if len(summands) != self.index.n:
            raise FrameError(f"{len(summands)} summands for an index of {self.index.n} worlds")
        for i, S in enumerate(summands):
            if tuple(S.alphabet) != tuple(self.index.alphabet):
                raise AlphabetError(f"summand {i} alphabet {tuple(S.alphabet)} differs from "
                                    f"index alphabet {tuple(self.index.alphabet)}")
        object.__setattr__(self, "summands", summands)


def sum_over(family: FrameFamily, summands: Sequence[Frame] | None = None) -> Frame:
    """Sum of a family over an index frame.

    ``(i, a) R (j, b)`` iff ``i = j`` and ``a R_i b``, or ``i != j`` and ``i S j``.
    Accepts either a :class:`FrameFamily` or ``(index, summands)``.
    """
    if summands is not None:
        family = FrameFamily(family, tuple(summands))
    I, parts = family.index, family.summands
    sizes = np.array([P.n for P in parts])
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    total = int(offsets[-1])
    rels = {}
    for lab in I.alphabet:
        srcs, dsts = [], []
        for i, P in enumerate(parts):
            srcs.append(P[lab].src + offsets[i])
            dsts.append(P[lab].dst + offsets[i])
        S = I[lab]
        for i, j in S.edges:
            if i == j:
                continue
            xi = np.arange(offsets[i], offsets[i + 1])
            xj = np.arange(offsets[j], offsets[j + 1])
            srcs.append(np.repeat(xi, xj.size))
            dsts.append(np.tile(xj, xi.size))
        rels[lab] = Relation(total, (np.concatenate(srcs), np.concatenate(dsts)))
    names = [f"({I.names[i]},{nm})" for i, P in enumerate(parts) for nm in P.names]
    return Frame(total, rels, alphabet=I.alphabet, names=names)


def _bimodal_labels(F: Frame):
    if len(F.alphabet) != 2:
        raise AlphabetError("semi-ordered sums are defined for bimodal frames only")
    return tuple(F.alphabet)


def semi_ordered_sum(F: Frame, G: Frame) -> Frame:
    """``F (+) G``: the first relation also links every world of F to every world of G."""
    a1, a2 = _bimodal_labels(F)
    if tuple(G.alphabet) != (a1, a2):
        raise AlphabetError("semi-ordered sum needs identical bimodal alphabets")
    n = F.n + G.n
    xs = np.arange(F.n)
    ys = np.arange(F.n, n)
    r1 = Relation(n, (np.concatenate([F[a1].src, G[a1].src + F.n, np.repeat(xs, G.n)]),
                      np.concatenate([F[a1].dst, G[a1].dst + F.n, np.tile(ys, F.n)])))
    r2 = Relation(n, (np.concatenate([F[a2].src, G[a2].src + F.n]),
                      np.concatenate([F[a2].dst, G[a2].dst + F.n])))
    names = list(F.names) + list(G.names)
    if len(set(names)) != n:
        names = [f"(0,{x})" for x in F.names] + [f"(1,{y})" for y in G.names]
    return Frame(n, {a1: r1, a2: r2}, alphabet=(a1, a2), names=names)


# -- named families ---------------------------------------------------------

def tack1(k: int, label: str = "1") -> Frame:
    """A k-cluster below a reflexive top: ``a R b`` iff ``a < k`` or ``b = top``."""
    k = _positive("k", k)
    idx = np.arange(k + 1)
    m = (idx[:, None] < k) | (idx[None, :] == k)
    names = [str(i) for i in range(k)] + ["top"]
    return Frame(k + 1, {label: Relation.from_matrix(m)}, names=names)


def tack2(k: int, m: int) -> Frame:
    """Two-dimensional tack: ``rectangle(k, m) (+) point``; the last world is ``top``."""
    T = semi_ordered_sum(rectangle(k, m), point(("1", "2")))
    return T.with_names(T.names[:-1] + ("top",))


def saw(k: int) -> Frame:
    """Saw truncated to ``k`` teeth, over labels ``d``, ``l``, ``r``.

    ``d`` goes from the root ``u`` to every tooth ``v_i``; ``l`` from ``v_i``
    to ``w_i``; ``r`` from ``v_i`` to ``w_{i+1}``.
    """
    if int(k) < 1:
        raise FrameError("saw needs at least one tooth")
    k = int(k)
    n = 2 * k + 2
    v = np.arange(1, k + 1)
    w0 = k + 1
    rels = {
        "d": Relation(n, (np.zeros(k, dtype=np.int64), v)),
        "l": Relation(n, (v, w0 + np.arange(k))),
        "r": Relation(n, (v, w0 + 1 + np.arange(k))),
    }
    names = ["u"] + [f"v{i}" for i in range(k)] + [f"w{i}" for i in range(k + 1)]
    return Frame(n, rels, alphabet=("d", "l", "r"), names=names)


# -- quotients ----------------------------------------------------------------

class Equivalence:
    """An equivalence on ``{0..n-1}`` as contiguous class ids (ordered by least member)."""

    __slots__ = ("classes", "partition")

    def __init__(self, labels):
        part = labels if isinstance(labels, Partition) else Partition.from_labels(labels)
        self.partition = part
        self.classes = part.labels

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Equivalence":
        """Equivalence whose listed blocks may be partial; unlisted worlds are singletons."""
        blocks = [tuple(b) for b in blocks]
        seen = {x for b in blocks for x in b}
        blocks += [(x,) for x in range(n) if x not in seen]
        return cls(Partition(blocks, n))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Equivalence":
        """Least equivalence containing ``pairs``."""
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls([find(x) for x in range(n)])

    @classmethod
    def diagonal(cls, n: int) -> "Equivalence":
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return self.partition.n

    def __len__(self):
        return len(self.partition)

    def __repr__(self):
        return f"Equivalence({self.partition!r})"


def quotient(F: Frame, e) -> tuple[Frame, WorldMap]:
    """Quotient frame and the canonical map ``a -> [a]``.

    ``[a] R [b]`` iff some member of ``[a]`` is R-related to some member of ``[b]``.
    """
    if not isinstance(e, Equivalence):
        e = Equivalence(e)
    if e.n != F.n:
        raise FrameError(f"equivalence on {e.n} worlds, frame has {F.n}")
    cls_ = e.classes
    k = len(e)
    rels = {a: Relation(k, (cls_[F[a].src], cls_[F[a].dst])) for a in F.alphabet}
    names = [F.names[b[0]] for b in e.partition.blocks]
    return Frame(k, rels, alphabet=F.alphabet, names=names), WorldMap(F.n, k, tuple(cls_.tolist()))


def productivize(F: Frame) -> tuple[Frame, WorldMap]:
    """Quotient by ``~``, the intersection over labels of ``R ∩ R^-1``.

    Every relation must be a preorder; otherwise :class:`FrameError` names
    the offending label and a witness pair.
    """
    for a in F.alphabet:
        bad = F[a].violation_of_preorder()
        if bad is not None:
            reason, pair = bad
            raise FrameError(f"relation {a!r} is not a preorder ({reason} fails at {pair})")
    sim = np.ones((F.n, F.n), dtype=bool)
    for a in F.alphabet:
        m = F[a].matrix
        sim &= m & m.T
    return quotient(F, Equivalence(np.argmax(sim, axis=1)))
