"""Finite multi-modal Kripke frames and their relational/structural queries.

Worlds are the integers ``0..n-1``. A relation keeps its edges both as a
sorted, de-duplicated pair of index arrays (for I/O, sparse kernels and
determinism) and, lazily, as a dense boolean adjacency matrix (for
closures and composition on small frames).
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from functools import cached_property

import numpy as np

from .errors import AlphabetError, FrameError

_LABEL_RE = re.compile(r"^\w+$")


class Alphabet(tuple):
    """Ordered, non-empty tuple of distinct modality labels."""

    def __new__(cls, labels):
        if isinstance(labels, str):
            labels = (labels,)
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise AlphabetError("alphabet must be non-empty")
        if len(set(labels)) != len(labels):
            raise AlphabetError(f"duplicate labels in alphabet {labels}")
        for lab in labels:
            if not _LABEL_RE.match(lab):
                raise AlphabetError(f"invalid modality label {lab!r}")
        return super().__new__(cls, labels)

    def __repr__(self):
        return f"Alphabet({tuple(self)!r})"


def _bool_matmul(a, b):
    # float32 matmul is exact for path counts below 2**24
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


class Relation:
    """A binary relation on ``{0..n-1}``."""

    __slots__ = ("n", "src", "dst", "__dict__")

    def __init__(self, n: int, edges=()):
        n = int(n)
        if n < 1:
            raise FrameError("relations live on non-empty world sets")
        if isinstance(edges, tuple) and len(edges) == 2 and isinstance(edges[0], np.ndarray):
            src = np.asarray(edges[0], dtype=np.int64).ravel()
            dst = np.asarray(edges[1], dtype=np.int64).ravel()
        else:
            pairs = np.asarray(list(edges), dtype=np.int64)
            if pairs.size == 0:
                pairs = pairs.reshape(0, 2)
            if pairs.ndim != 2 or pairs.shape[1] != 2:
                raise FrameError("edges must be ordered pairs")
            src, dst = pairs[:, 0], pairs[:, 1]
        if src.shape != dst.shape:
            raise FrameError("edge arrays differ in length")
        if src.size and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
            raise FrameError(f"edge endpoint outside 0..{n - 1}")
        keys = np.unique(src * n + dst)
        self.n = n
        self.src = keys // n
        self.dst = keys % n
        self.src.setflags(write=False)
        self.dst.setflags(write=False)

    @classmethod
    def from_matrix(cls, matrix) -> "Relation":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FrameError("adjacency matrix must be square")
        src, dst = np.nonzero(m)
        rel = cls(m.shape[0], (src, dst))
        frozen = m.copy()
        frozen.setflags(write=False)
        rel.__dict__["matrix"] = frozen
        return rel

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        idx = np.arange(n)
        return cls(n, (idx, idx))

    @classmethod
    def full(cls, n: int) -> "Relation":
        return cls.from_matrix(np.ones((n, n), dtype=bool))

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        m[self.src, self.dst] = True
        m.setflags(write=False)
        return m

    @cached_property
    def _keys(self):
        return self.src * self.n + self.dst

    @cached_property
    def _out_ptr(self):
        return np.concatenate(([0], np.cumsum(np.bincount(self.src, minlength=self.n))))

    @cached_property
    def _in_order(self):
        order = np.lexsort((self.src, self.dst))
        ptr = np.concatenate(([0], np.cumsum(np.bincount(self.dst, minlength=self.n))))
        return self.src[order], ptr

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.src.tolist(), self.dst.tolist()))

    def __len__(self):
        return int(self.src.size)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, pair):
        a, b = pair
        if not (0 <= a < self.n and 0 <= b < self.n):
            return False
        key = a * self.n + b
        i = np.searchsorted(self._keys, key)
        return bool(i < self._keys.size and self._keys[i] == key)

    def successors(self, a: int) -> np.ndarray:
        ptr = self._out_ptr
        return self.dst[ptr[a]:ptr[a + 1]]

    def predecessors(self, b: int) -> np.ndarray:
        srcs, ptr = self._in_order
        return srcs[ptr[b]:ptr[b + 1]]

    def image(self, a: int) -> frozenset[int]:
        return frozenset(self.successors(a).tolist())

    def out_degrees(self) -> np.ndarray:
        return np.diff(self._out_ptr)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.n)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._keys, other._keys)

    def __hash__(self):
        return hash((self.n, self._keys.tobytes()))

    def __repr__(self):
        shown = self.edges[:8]
        more = "" if len(self) <= 8 else f", ... {len(self)} edges"
        return f"Relation(n={self.n}, {shown}{more})"

    def _check_same(self, other):
        if self.n != other.n:
            raise FrameError(f"relations on {self.n} and {other.n} worlds")

    def __or__(self, other):
        self._check_same(other)
        return Relation(self.n, (np.concatenate([self.src, other.src]),
                                 np.concatenate([self.dst, other.dst])))

    def __and__(self, other):
        self._check_same(other)
        keys = np.intersect1d(self._keys, other._keys, assume_unique=True)
        return Relation(self.n, (keys // self.n, keys % self.n))

    def __sub__(self, other):
        self._check_same(other)
        keys = np.setdiff1d(self._keys, other._keys, assume_unique=True)
        return Relation(self.n, (keys // self.n, keys % self.n))

    def __le__(self, other):
        self._check_same(other)
        return bool(np.isin(self._keys, other._keys, assume_unique=True).all())

    def inverse(self) -> "Relation":
        return Relation(self.n, (self.dst, self.src))

    def is_reflexive(self) -> bool:
        return bool(np.diagonal(self.matrix).all())

    def is_symmetric(self) -> bool:
        return self == self.inverse()

    def is_transitive(self) -> bool:
        m = self.matrix
        return not bool((_bool_matmul(m, m) & ~m).any())

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_equivalence(self) -> bool:
        return self.is_preorder() and self.is_symmetric()

    def restrict(self, worlds) -> "Relation":
        """Restriction to ``worlds`` (ascending), renumbered from 0."""
        worlds = np.asarray(sorted(set(int(w) for w in worlds)), dtype=np.int64)
        if worlds.size == 0:
            raise FrameError("cannot restrict to an empty world set")
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[worlds] = np.arange(worlds.size)
        s, d = remap[self.src], remap[self.dst]
        keep = (s >= 0) & (d >= 0)
        return Relation(int(worlds.size), (s[keep], d[keep]))

    def violation_of_preorder(self):
        """First (reason, pair) witnessing that this is not a preorder, else None."""
        diag = np.diagonal(self.matrix)
        if not diag.all():
            a = int(np.argmin(diag))
            return "reflexivity", (a, a)
        m = self.matrix
        bad = _bool_matmul(m, m) & ~m
        if bad.any():
            a, c = (int(x) for x in np.argwhere(bad)[0])
            return "transitivity", (a, c)
        return None


class Frame:
    """A finite Kripke frame: ``n`` worlds and one relation per label.

    ``names`` are display names used by the file format and the CLI; all
    algorithms work on indices.
    """

    __slots__ = ("n", "alphabet", "relations", "names", "__dict__")

    def __init__(self, n: int, relations: Mapping, alphabet=None, names=None):
        n = int(n)
        if n < 1:
            raise FrameError("frames must have at least one world")
        alphabet = Alphabet(alphabet if alphabet is not None else tuple(relations))
        missing = set(alphabet) - set(relations)
        extra = set(relations) - set(alphabet)
        if missing or extra:
            raise AlphabetError(f"relations do not match alphabet: missing {sorted(missing)}, "
                                f"extra {sorted(extra)}")
        rels = {}
        for lab in alphabet:
            r = relations[lab]
            if not isinstance(r, Relation):
                r = Relation(n, r)
            if r.n != n:
                raise FrameError(f"relation {lab!r} lives on {r.n} worlds, frame has {n}")
            rels[lab] = r
        if names is None:
            names = tuple(str(i) for i in range(n))
        else:
            names = tuple(str(x) for x in names)
            if len(names) != n or len(set(names)) != n:
                raise FrameError("world names must be distinct, one per world")
        self.n = n
        self.alphabet = alphabet
        self.relations = rels
        self.names = names

    def __getitem__(self, label) -> Relation:
        try:
            return self.relations[str(label)]
        except KeyError:
            raise AlphabetError(f"label {label!r} not in alphabet {tuple(self.alphabet)}") from None

    def __len__(self):
        return self.n

    @property
    def worlds(self) -> range:
        return range(self.n)

    @property
    def has_default_names(self) -> bool:
        return all(nm == str(i) for i, nm in enumerate(self.names))

    def index_of(self, name) -> int:
        try:
            return self._name_index[str(name)]
        except KeyError:
            raise FrameError(f"no world named {name!r}") from None

    @cached_property
    def _name_index(self):
        return {nm: i for i, nm in enumerate(self.names)}

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return (self.n == other.n and self.alphabet == other.alphabet
                and all(self.relations[a] == other.relations[a] for a in self.alphabet))

    def __hash__(self):
        return hash((self.n, tuple(self.alphabet), tuple(self.relations[a] for a in self.alphabet)))

    def __repr__(self):
        sizes = ", ".join(f"{a}:{len(self.relations[a])}" for a in self.alphabet)
        return f"Frame(n={self.n}, edges={{{sizes}}})"

    def relabel(self, mapping: Mapping) -> "Frame":
        """Rename modality labels; labels absent from ``mapping`` are kept."""
        new = [str(mapping.get(a, a)) for a in self.alphabet]
        return Frame(self.n, {b: self.relations[a] for a, b in zip(self.alphabet, new)},
                     alphabet=new, names=self.names)

    def with_names(self, names) -> "Frame":
        return Frame(self.n, self.relations, self.alphabet, names)

    def edge_count(self) -> int:
        return sum(len(r) for r in self.relations.values())


class Partition:
    """A partition of ``{0..n-1}`` into non-empty blocks.

    Blocks are stored as sorted tuples and ordered by their minimum element,
    so equal partitions compare equal.
    """

    __slots__ = ("n", "blocks", "__dict__")

    def __init__(self, blocks, n=None):
        blocks = [tuple(sorted(int(x) for x in b)) for b in blocks]
        if any(not b for b in blocks):
            raise FrameError("partition blocks must be non-empty")
        flat = [x for b in blocks for x in b]
        if n is None:
            n = len(flat)
        if len(flat) != len(set(flat)):
            raise FrameError("partition blocks overlap")
        if set(flat) != set(range(n)):
            raise FrameError(f"partition blocks do not cover 0..{n - 1}")
        self.n = int(n)
        self.blocks = tuple(sorted(blocks, key=lambda b: b[0]))

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        labels = np.asarray(labels)
        n = labels.size
        if n == 0:
            raise FrameError("empty partition")
        _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
        # renumber classes by their least member
        rank = np.empty(first.size, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(first.size)
        canon = rank[inv.ravel()]
        order = np.argsort(canon, kind="stable")
        bounds = np.cumsum(np.bincount(canon, minlength=first.size))[:-1]
        part = cls.__new__(cls)
        part.n = int(n)
        part.blocks = tuple(tuple(b.tolist()) for b in np.split(order, bounds))
        canon.setflags(write=False)
        part.__dict__["labels"] = canon
        return part

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls([(i,) for i in range(n)], n)

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls([tuple(range(n))], n)

    @cached_property
    def labels(self) -> np.ndarray:
        """Block index of every world."""
        lab = np.empty(self.n, dtype=np.int64)
        for i, b in enumerate(self.blocks):
            lab[list(b)] = i
        lab.setflags(write=False)
        return lab

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[int(self.labels[x])]

    def refines(self, other: "Partition") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        if self.n != other.n:
            raise FrameError("partitions of different sets")
        theirs = other.labels
        return all(len({int(theirs[x]) for x in b}) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"Partition([{inner}])"


def _as_relation(x) -> Relation:
    if isinstance(x, Frame):
        return union_relation(x)
    if isinstance(x, Relation):
        return x
    raise TypeError(f"expected a Frame or Relation, got {type(x).__name__}")


def union_relation(F: Frame) -> Relation:
    """Union of all the frame's relations."""
    rels = [F.relations[a] for a in F.alphabet]
    if len(rels) == 1:
        return rels[0]
    return Relation(F.n, (np.concatenate([r.src for r in rels]),
                          np.concatenate([r.dst for r in rels])))


def compose(R: Relation, S: Relation) -> Relation:
    """``R ∘ S``: pairs (a, c) with a R b and b S c for some b."""
    if R.n != S.n:
        raise FrameError(f"cannot compose relations on {R.n} and {S.n} worlds")
    return Relation.from_matrix(_bool_matmul(R.matrix, S.matrix))


def closure_leq(F, m: int) -> Relation:
    """``R^{<=m}``: pairs joined by a path of at most ``m`` steps."""
    R = _as_relation(F)
    if m < 0:
        raise ValueError("m must be non-negative")
    step = R.matrix | np.eye(R.n, dtype=bool)
    acc = np.eye(R.n, dtype=bool)
    for _ in range(m):
        nxt = _bool_matmul(acc, step)
        if np.array_equal(nxt, acc):
            break
        acc = nxt
    return Relation.from_matrix(acc)


def _star_matrix(R: Relation) -> np.ndarray:
    acc = R.matrix | np.eye(R.n, dtype=bool)
    while True:
        nxt = _bool_matmul(acc, acc)
        if np.array_equal(nxt, acc):
            return acc
        acc = nxt


def star(F) -> Relation:
    """Reflexive-transitive closure of the frame's union relation (or of a relation)."""
    return Relation.from_matrix(_star_matrix(_as_relation(F)))


def pretransitivity_index(F) -> int:
    """Least ``m`` with ``R^{<=m} = R*``; never exceeds ``n - 1``."""
    R = _as_relation(F)
    target = _star_matrix(R)
    step = R.matrix | np.eye(R.n, dtype=bool)
    acc = np.eye(R.n, dtype=bool)
    for m in range(R.n):
        if np.array_equal(acc, target):
            return m
        acc = _bool_matmul(acc, step)
    raise AssertionError("closure did not stabilise within n-1 steps")


def clusters(F) -> Partition:
    """Classes of mutual reachability ``R* ∩ (R*)^-1``."""
    s = _star_matrix(_as_relation(F))
    mutual = s & s.T
    # row i's least mutually-reachable world names its cluster
    return Partition.from_labels(np.argmax(mutual, axis=1))


def skeleton(F, label: str = "1") -> Frame:
    """Quotient of ``(X, R*)`` by clusters: a unimodal partial order."""
    s = _star_matrix(_as_relation(F))
    part = clusters(F)
    reps = [b[0] for b in part.blocks]
    q = s[np.ix_(reps, reps)]
    return Frame(len(reps), {label: Relation.from_matrix(q)})


def _longest_chain(order: np.ndarray) -> int:
    """Longest chain in a finite partial order given as a reflexive matrix."""
    k = order.shape[0]
    strict = order & ~np.eye(k, dtype=bool)
    memo = [0] * k
    # a strict order is acyclic: sort by number of strict successors
    for c in sorted(range(k), key=lambda i: int(strict[i].sum())):
        above = np.flatnonzero(strict[c])
        memo[c] = 1 + max((memo[d] for d in above), default=0)
    return max(memo)


def height(F) -> int:
    """Number of elements in a longest chain of the skeleton."""
    sk = skeleton(F)
    return _longest_chain(sk.relations["1"].matrix)


def restrict(F: Frame, Y) -> Frame:
    """Subframe on ``Y``; worlds renumbered preserving ascending order."""
    worlds = sorted(set(int(y) for y in Y))
    if not worlds:
        raise FrameError("cannot restrict to an empty world set")
    if worlds[0] < 0 or worlds[-1] >= F.n:
        raise FrameError("restriction set contains unknown worlds")
    return Frame(len(worlds), {a: F.relations[a].restrict(worlds) for a in F.alphabet},
                 alphabet=F.alphabet, names=[F.names[w] for w in worlds])


def generated_subframe(F: Frame, w: int) -> tuple[Frame, tuple[int, ...]]:
    """Subframe generated by ``w``, together with the original indices it keeps."""
    if not 0 <= w < F.n:
        raise FrameError(f"world {w} not in frame")
    reach = tuple(int(x) for x in np.flatnonzero(_star_matrix(union_relation(F))[w]))
    return restrict(F, reach), reach


def max_cluster_size(F) -> int:
    return max(len(b) for b in clusters(F).blocks)


def is_point_generated(F: Frame) -> bool:
    return bool(_star_matrix(union_relation(F)).all(axis=1).any())


def union_of(F: Frame, labels) -> Relation:
    """Union of the relations named in ``labels`` (the diagonal-free empty union if none)."""
    labels = [str(a) for a in labels]
    rels = [F[a] for a in labels]
    if not rels:
        return Relation(F.n)
    return Relation(F.n, (np.concatenate([r.src for r in rels]),
                          np.concatenate([r.dst for r in rels])))
