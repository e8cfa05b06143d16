"""Truth sets, valuations and frame validity.

Validity quantifies over valuations of the variables that occur in the
formula. A valuation of ``k`` variables on ``n`` worlds is coded as an
integer of ``n*k`` bits: variable number ``j`` (in ascending index order)
is true at world ``w`` iff bit ``j*n + w`` is set. Countervaluations are
reported for the least such integer, and the least falsifying world under it.

Two decision procedures share that contract:

* ``enum`` sweeps all codes in vectorised chunks and refuses (raises
  :class:`BudgetExceeded`) when ``n*k`` exceeds the budget;
* ``sat`` encodes "some world falsifies the formula" propositionally and
  asks a SAT solver, then pins down the least countervaluation bit by bit.

``auto`` uses ``enum`` within budget and ``sat`` beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from ..errors import AlphabetError, BudgetExceeded, FrameError
from ..frame import Frame
from .syntax import Bot, Dia, Formula, Imp, Var, labels, variables

DEFAULT_BUDGET = 24
_CHUNK_BITS = 16


class Valuation(Mapping):
    """Variables (by index) to world sets of an ``n``-world frame; unset means empty."""

    def __init__(self, n: int, sets: Mapping | None = None):
        self.n = int(n)
        clean = {}
        for k, ws in (sets or {}).items():
            ws = frozenset(int(w) for w in ws)
            if any(not 0 <= w < self.n for w in ws):
                raise FrameError(f"valuation of p{k} mentions a world outside 0..{self.n - 1}")
            clean[int(k)] = ws
        self._sets = clean

    @classmethod
    def from_code(cls, n: int, var_indices, code: int) -> "Valuation":
        sets = {}
        for j, v in enumerate(var_indices):
            sets[v] = frozenset(w for w in range(n) if (code >> (j * n + w)) & 1)
        return cls(n, sets)

    def code(self, var_indices) -> int:
        out = 0
        for j, v in enumerate(var_indices):
            for w in self[v]:
                out |= 1 << (j * self.n + w)
        return out

    def __getitem__(self, k):
        return self._sets.get(int(k), frozenset())

    def __iter__(self):
        return iter(sorted(self._sets))

    def __len__(self):
        return len(self._sets)

    def __eq__(self, other):
        if isinstance(other, Valuation):
            return self.n == other.n and {k: v for k, v in self._sets.items() if v} == \
                {k: v for k, v in other._sets.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset((k, v) for k, v in self._sets.items() if v)))

    def __repr__(self):
        inner = ", ".join(f"p{k}: {sorted(v)}" for k, v in sorted(self._sets.items()))
        return f"Valuation({{{inner}}})"


def _check_labels(F: Frame, f: Formula):
    foreign = set(labels(f)) - set(F.alphabet)
    if foreign:
        raise AlphabetError(f"formula uses labels {sorted(foreign)} not in alphabet "
                            f"{tuple(F.alphabet)}")


def _eval_vectors(F: Frame, f: Formula, leaf, shape, dense: bool):
    """Evaluate ``f`` to a boolean array of ``shape`` (first axis = worlds)."""
    memo = {}
    mats = {}

    def dia(label, x):
        R = F[label]
        if dense:
            if label not in mats:
                mats[label] = R.matrix.astype(np.float32)
            return (mats[label] @ x.astype(np.float32)) > 0.5
        out = np.zeros(shape, dtype=bool)
        hit = x[R.dst]
        out[R.src[hit]] = True
        return out

    def go(g):
        key = id(g)
        if key in memo:
            return memo[key]
        if isinstance(g, Var):
            r = leaf(g.index)
        elif isinstance(g, Bot):
            r = np.zeros(shape, dtype=bool)
        elif isinstance(g, Imp):
            r = ~go(g.left) | go(g.right)
        elif isinstance(g, Dia):
            r = dia(g.label, go(g.body))
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[key] = r
        return r

    return go(f)


def truth_vector(F: Frame, valuation: Valuation | Mapping, f: Formula) -> np.ndarray:
    """Boolean vector of the worlds where ``f`` holds."""
    _check_labels(F, f)
    if not isinstance(valuation, Valuation):
        valuation = Valuation(F.n, valuation)

    def leaf(i):
        v = np.zeros(F.n, dtype=bool)
        v[list(valuation[i])] = True
        return v

    return _eval_vectors(F, f, leaf, (F.n,), dense=False)


def evaluate(F: Frame, valuation: Valuation | Mapping, f: Formula) -> frozenset:
    """Truth set of ``f`` in the model ``(F, valuation)``."""
    return frozenset(np.flatnonzero(truth_vector(F, valuation, f)).tolist())


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    valuation: Optional[Valuation] = None
    world: Optional[int] = None
    method: str = "enum"

    def __bool__(self):
        return self.valid


def valid_on_frame(F: Frame, f: Formula, budget: int = DEFAULT_BUDGET,
                   method: str = "enum") -> ValidityResult:
    """Decide ``F |= f``; on failure return the least countervaluation and world."""
    _check_labels(F, f)
    vs = variables(f)
    bits = F.n * len(vs)
    if method == "auto":
        method = "enum" if bits <= budget else "sat"
    if method == "enum":
        if bits > budget:
            raise BudgetExceeded(f"{F.n} worlds x {len(vs)} variables = {bits} valuation bits "
                                 f"exceeds the budget of {budget}", required=bits, budget=budget)
        return _valid_enum(F, f, vs)
    if method == "sat":
        return _valid_sat(F, f, vs)
    raise ValueError(f"unknown method {method!r}")


def _valid_enum(F, f, vs):
    n = F.n
    total = 1 << (n * len(vs))
    chunk = min(total, 1 << _CHUNK_BITS)
    pos = {v: j for j, v in enumerate(vs)}
    for base in range(0, total, chunk):
        codes = np.arange(base, base + chunk, dtype=np.int64)

        def leaf(i):
            j = pos[i]
            shifts = j * n + np.arange(n, dtype=np.int64)
            return ((codes[None, :] >> shifts[:, None]) & 1).astype(bool)

        res = _eval_vectors(F, f, leaf, (n, chunk), dense=True)
        bad = ~res.all(axis=0)
        if bad.any():
            col = int(np.argmax(bad))
            world = int(np.argmin(res[:, col]))
            return ValidityResult(False, Valuation.from_code(n, vs, base + col), world, "enum")
    return ValidityResult(True, method="enum")


class _Encoder:
    """Tseitin encoding of ``f`` at every world of ``F``."""

    def __init__(self, F: Frame, vs):
        self.F = F
        self.n = F.n
        self.pos = {v: j for j, v in enumerate(vs)}
        self.top = self.n * len(vs)  # variable ids 1..top are valuation bits
        self.clauses = []
        self.memo = {}
        self.false = self.fresh()
        self.clauses.append([-self.false])

    def fresh(self):
        self.top += 1
        return self.top

    def lits(self, g):
        key = id(g)
        if key in self.memo:
            return self.memo[key][1]
        n = self.n
        if isinstance(g, Var):
            base = self.pos[g.index] * n
            out = [base + w + 1 for w in range(n)]
        elif isinstance(g, Bot):
            out = [self.false] * n
        elif isinstance(g, Imp):
            a, b = self.lits(g.left), self.lits(g.right)
            out = []
            for w in range(n):
                y = self.fresh()
                self.clauses += [[-y, -a[w], b[w]], [a[w], y], [-b[w], y]]
                out.append(y)
        elif isinstance(g, Dia):
            b = self.lits(g.body)
            R = self.F[g.label]
            out = []
            for w in range(n):
                succ = R.successors(w).tolist()
                if not succ:
                    out.append(self.false)
                    continue
                y = self.fresh()
                self.clauses.append([-y] + [b[c] for c in succ])
                self.clauses += [[-b[c], y] for c in succ]
                out.append(y)
        else:
            raise TypeError(f"not a formula: {g!r}")
        self.memo[key] = (g, out)
        return out


def _valid_sat(F, f, vs):
    from pysat.solvers import Solver

    enc = _Encoder(F, vs)
    root = enc.lits(f)
    enc.clauses.append([-x for x in root])
    with Solver(name="cadical153", bootstrap_with=enc.clauses) as s:
        if not s.solve():
            return ValidityResult(True, method="sat")
        fixed = []
        for bit in reversed(range(F.n * len(vs))):
            if s.solve(assumptions=fixed + [-(bit + 1)]):
                fixed.append(-(bit + 1))
            else:
                fixed.append(bit + 1)
    code = sum(1 << (x - 1) for x in fixed if x > 0)
    val = Valuation.from_code(F.n, vs, code)
    holds = truth_vector(F, val, f)
    return ValidityResult(False, val, int(np.argmin(holds)), "sat")


def satisfying_worlds_exist(F: Frame, f: Formula) -> Optional[tuple[Valuation, int]]:
    """Some valuation and world where ``f`` is true, or None (SAT-based)."""
    from .syntax import Not

    res = valid_on_frame(F, Not(f), method="sat")
    if res.valid:
        return None
    return res.valuation, res.world
