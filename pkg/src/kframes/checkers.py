"""First-order frame conditions checked directly on finite frames."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .constructions import productivize, rectangle
from .errors import AlphabetError, FrameError
from .frame import (Frame, Relation, _bool_matmul, closure_leq, clusters, compose,
                    is_point_generated, restrict, union_of, union_relation)
from .morphisms import is_isomorphic, is_p_morphism


@dataclass(frozen=True)
class CheckResult:
    name: str
    holds: bool
    witness: Any = None
    notes: str = ""
    data: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.holds


class PreconditionError(FrameError):
    """The frame violates conditions a check relies on; ``violations`` lists them."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _relation(x) -> Relation:
    return union_relation(x) if isinstance(x, Frame) else x


def _label(F: Frame, label):
    if label is None:
        return F.alphabet[0]
    if label not in F.alphabet:
        raise AlphabetError(f"label {label!r} not in alphabet {tuple(F.alphabet)}")
    return label


def _two_labels(F: Frame, a=None, b=None):
    if a is None and b is None:
        if len(F.alphabet) != 2:
            raise AlphabetError("expected a bimodal frame")
        return F.alphabet[0], F.alphabet[1]
    return _label(F, a), _label(F, b)


# -- reducible paths --------------------------------------------------------------

def find_irreducible_path(R: Relation, m: int) -> Optional[list[int]]:
    """An R-path ``x_0 .. x_{m+1}`` with no repeat and no shortcut, or None.

    A shortcut is ``x_i R x_{j+1}`` for ``i < j <= m``. Both defects are
    monotone in the prefix, so the search extends only irreducible prefixes:
    the next world must avoid the path so far and the successors of every
    world except the current last one.
    """
    R = _relation(R)
    n = R.n
    succ = [0] * n
    for a, b in R.edges:
        succ[a] |= 1 << b
    target = m + 2
    path: list[int] = []

    def rec(forbidden):
        if len(path) == target:
            return True
        last = path[-1]
        cand = succ[last] & ~forbidden
        # forbidding last's successors takes effect one step later
        nxt_forbidden = forbidden | succ[last]
        while cand:
            low = cand & -cand
            y = low.bit_length() - 1
            cand ^= low
            path.append(y)
            if rec(nxt_forbidden | low):
                return True
            path.pop()
        return False

    for x0 in range(n):
        path[:] = [x0]
        if rec(1 << x0):
            return list(path)
    return None


def is_irreducible_path(R: Relation, path) -> bool:
    """True iff ``path`` is an R-path with no repeated world and no shortcut."""
    R = _relation(R)
    path = list(path)
    if any((a, b) not in R for a, b in zip(path, path[1:])):
        return False
    if len(set(path)) != len(path):
        return False
    last = len(path) - 1
    return not any((path[i], path[j + 1]) in R
                   for i in range(last) for j in range(i + 1, last))


def check_RP(R, m: int) -> CheckResult:
    """Reducible path property ``RP_m`` of a relation (or a frame's union relation)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    path = find_irreducible_path(_relation(R), m)
    return CheckResult(f"RP_{m}", path is None, None if path is None else tuple(path))


def least_rp_index(R) -> int:
    """Least ``m`` with ``RP_m``; at most ``n - 1`` since longer paths must repeat."""
    R = _relation(R)
    for m in range(R.n):
        if find_irreducible_path(R, m) is None:
            return m
    raise AssertionError("a path through n+1 worlds always repeats")


def mixed_relation(F: Frame, k: int, n: int, A=None, B=None) -> Relation:
    """``(U A)^{<=k} ∪ (U B)^{<=n}``; defaults: A = first label, B = the rest."""
    if A is None:
        A = (F.alphabet[0],)
    if B is None:
        B = tuple(x for x in F.alphabet if x not in A)
    A, B = tuple(A), tuple(B)
    if set(A) & set(B) or set(A) | set(B) != set(F.alphabet):
        raise AlphabetError("A and B must partition the alphabet")
    return closure_leq(union_of(F, A), k) | closure_leq(union_of(F, B), n)


def check_rp_semantic_poly(F: Frame, m: int, k: int = 1, n: int = 1, A=None, B=None) -> CheckResult:
    res = check_RP(mixed_relation(F, k, n, A, B), m)
    return CheckResult(f"RP_{m}({k},{n})", res.holds, res.witness)


def least_rp_poly_index(F: Frame, k: int = 1, n: int = 1, A=None, B=None) -> int:
    return least_rp_index(mixed_relation(F, k, n, A, B))


def zigzag_path(l: int) -> list[int]:
    """Worlds ``a_0 .. a_{2l}`` of ``rectangle(l+1, l+1)`` alternating vertical and horizontal steps.

    ``a_{2i} = (i, i)`` and ``a_{2i+1} = (i, i+1)``.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    side = l + 1
    out = []
    for i in range(l):
        out += [i * side + i, i * side + i + 1]
    out.append(l * side + l)
    return out


# -- commutator conditions -----------------------------------------------------------

def check_commutativity(F: Frame, a=None, b=None) -> CheckResult:
    """``R_a ∘ R_b = R_b ∘ R_a``; witness: least pair in the symmetric difference."""
    a, b = _two_labels(F, a, b)
    ab, ba = compose(F[a], F[b]), compose(F[b], F[a])
    diff = sorted((ab - ba).edges + (ba - ab).edges)
    return CheckResult(f"com({a},{b})", not diff, diff[0] if diff else None)


def check_church_rosser(F: Frame, a=None, b=None) -> CheckResult:
    """``x R_a y`` and ``x R_b z`` imply ``y R_b u`` and ``z R_a u`` for some ``u``."""
    a, b = _two_labels(F, a, b)
    Ra, Rb = F[a].matrix, F[b].matrix
    spread = _bool_matmul(Ra.T, Rb)      # (y, z) with a common origin
    joined = _bool_matmul(Rb, Ra.T)      # (y, z) with a common target
    bad = spread & ~joined
    if not bad.any():
        return CheckResult(f"chr({a},{b})", True)
    y, z = (int(v) for v in np.argwhere(bad)[0])
    x = int(np.flatnonzero(Ra[:, y] & Rb[:, z])[0])
    return CheckResult(f"chr({a},{b})", False, (x, y, z))


# -- terminal points -------------------------------------------------------------------

def terminal_points(F: Frame, label=None) -> frozenset:
    """Worlds whose only ``label``-successor is themselves."""
    R = F[_label(F, label)]
    m = R.matrix
    return frozenset(int(x) for x in range(F.n) if m[x, x] and int(m[x].sum()) == 1)


def _require_preorder(F, label):
    bad = F[label].violation_of_preorder()
    if bad is not None:
        raise FrameError(f"relation {label!r} is not a preorder ({bad[0]} fails at {bad[1]})")


def check_mckinsey(F: Frame, label=None) -> CheckResult:
    """Every world sees a terminal point (the relation must be a preorder)."""
    label = _label(F, label)
    _require_preorder(F, label)
    term = sorted(terminal_points(F, label))
    m = F[label].matrix
    sees = m[:, term].any(axis=1) if term else np.zeros(F.n, dtype=bool)
    if sees.all():
        return CheckResult(f"mckinsey({label})", True)
    return CheckResult(f"mckinsey({label})", False, int(np.argmin(sees)))


def alpha_strip(F: Frame, label=None) -> Frame:
    """Remove the terminal points of the first (or given) relation, which must be a preorder."""
    label = _label(F, label)
    _require_preorder(F, label)
    term = terminal_points(F, label)
    if len(term) == F.n:
        raise FrameError("every world is terminal: the frame is degenerate for stripping")
    return restrict(F, [x for x in range(F.n) if x not in term])


def check_opposite_arrows(F: Frame, a=None, b=None) -> CheckResult:
    """``R_a ∩ R_b^-1 ⊆ R_a^-1``; witness: a pair ``(x, y)`` in the left side but not the right."""
    a, b = _two_labels(F, a, b)
    R, S = F[a].matrix, F[b].matrix
    bad = R & S.T & ~R.T
    if not bad.any():
        return CheckResult("opposite-arrows", True)
    x, y = (int(v) for v in np.argwhere(bad)[0])
    return CheckResult("opposite-arrows", False, (x, y))


# -- rectangles ------------------------------------------------------------------------------

def rectangle_quotient_check(F: Frame) -> CheckResult:
    """Productivize a point-generated frame of two commuting equivalences and compare
    with the rectangle of matching dimensions.

    In ``rectangle(k, m)`` the first relation has ``m`` classes and the second
    ``k``, so the target is ``rectangle(|X/R_2|, |X/R_1|)``.
    """
    if len(F.alphabet) != 2:
        raise PreconditionError(["frame is not bimodal"])
    a, b = F.alphabet
    problems = []
    for lab in (a, b):
        if not F[lab].is_equivalence():
            problems.append(f"relation {lab!r} is not an equivalence")
    if not is_point_generated(F):
        problems.append("frame is not point-generated")
    com = check_commutativity(F, a, b)
    if not com:
        problems.append(f"relations do not commute (witness {com.witness})")
    if problems:
        raise PreconditionError(problems)
    kappa = len(clusters(F[b]))
    mu = len(clusters(F[a]))
    G = F.relabel({a: "1", b: "2"})
    tilde, proj = productivize(G)
    target = rectangle(kappa, mu)
    iso = is_isomorphic(tilde, target)
    pm = is_p_morphism(proj, G, tilde)
    notes = f"kappa={kappa} mu={mu} quotient={tilde.n} worlds"
    return CheckResult("rectangle-quotient", iso is not None and bool(pm),
                       None if iso is not None else (kappa, mu), notes,
                       {"kappa": kappa, "mu": mu, "map": proj, "iso": iso})
