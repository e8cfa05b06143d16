"""Batch verification of the finitely checkable frame lemmas.

Each check has a stable id and returns ``(passed, details, data)``; the
runner times them and renders a TSV or JSON report.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import checkers as ck
from .constructions import (Equivalence, cluster, gap_cluster, product, quotient, rectangle, saw,
                            tack1, tack2)
from .formulas import (evaluate, gen_chr, gen_com, gen_gap_formula, gen_pretrans, gen_rp_prod,
                       gen_rp_uni, gen_saw_axioms, gen_saw_phi, gen_tack1_refuted,
                       gen_tack2_axioms, valid_on_frame)
from .frame import (Frame, Partition, Relation, clusters, compose, height,
                    pretransitivity_index, star, union_of, union_relation)
from .morphisms import is_isomorphic, is_p_morphism
from .sampling import (admissible_frames, cloned_rectangles, random_frame, random_partition,
                       random_preorder, rng_of)
from .saw_search import saw_exhaustive_search
from .tuning import (coarsest_tuned_refinement, is_tuned, product_refine_with_finite,
                     set_partitions, tunability_profile)

SCALES = {
    "default": dict(pairs=200, tuning=150, schemes=200, rectangles=20, opposite=100,
                    admissible=50, product_finite=50, perf_worlds=100_000, rp_growth=4,
                    tack_max=3),
    "small": dict(pairs=25, tuning=20, schemes=20, rectangles=5, opposite=15,
                  admissible=8, product_finite=8, perf_worlds=10_000, rp_growth=3,
                  tack_max=2),
}


def _pair_sample(rng, count):
    for _ in range(count):
        F = random_frame(rng, int(rng.integers(1, 6)), ("1",))
        G = random_frame(rng, int(rng.integers(1, 6)), ("2",))
        yield F, G


def height_additivity(rng, cfg):
    bad = []
    for F, G in _pair_sample(rng, cfg["pairs"]):
        if height(product(F, G)) != height(F) + height(G) - 1:
            bad.append((F.n, G.n))
    return not bad, f"{cfg['pairs']} pairs, {len(bad)} violations", {}


def product_pretransitivity(rng, cfg):
    bad = []
    for F, G in _pair_sample(rng, cfg["pairs"]):
        if pretransitivity_index(product(F, G)) > pretransitivity_index(F) + pretransitivity_index(G):
            bad.append((F.n, G.n))
    rect = pretransitivity_index(rectangle(2, 2))
    ok = not bad and rect == 2
    return ok, f"{cfg['pairs']} pairs, {len(bad)} violations; rect(2,2) index {rect}", {}


def corner_commutation(rng, cfg):
    bad = 0
    for F, G in _pair_sample(rng, cfg["pairs"]):
        H = product(F, G)
        sh = star(union_of(H, F.alphabet))
        sv = star(union_of(H, G.alphabet))
        full = star(H)
        if not (full == compose(sh, sv) == compose(sv, sh)):
            bad += 1
    return bad == 0, f"{cfg['pairs']} pairs, {bad} violations", {}


def tuned_refinement_oracle(rng, cfg):
    problems = 0
    compared = 0
    for _ in range(cfg["tuning"]):
        n = int(rng.integers(1, 7))
        F = random_frame(rng, n, ("1", "2"), density=rng.uniform(0.05, 0.5))
        P = random_partition(rng, n, 3)
        Q, _ = coarsest_tuned_refinement(F, P)
        Q2, _ = coarsest_tuned_refinement(F, P, method="worklist")
        ok = Q == Q2 and Q.refines(P) and bool(is_tuned(F, Q))
        for rgs in set_partitions(n):
            W = Partition.from_labels(rgs)
            if W.refines(P) and is_tuned(F, W):
                compared += 1
                ok = ok and W.refines(Q)
        G, proj = quotient(F, Equivalence(Q))
        ok = ok and bool(is_p_morphism(proj, F, G))
        problems += not ok
    return problems == 0, (f"{cfg['tuning']} frames, {compared} tuned refinements compared, "
                           f"{problems} failures"), {}


def scheme_semantics_agreement(rng, cfg):
    mismatches = []
    count = cfg["schemes"]
    for i in range(count):
        n = int(rng.integers(1, 6))
        F = random_frame(rng, n, ("1",))
        B = random_frame(rng, n, ("1", "2"))
        for m in range(4):
            if bool(valid_on_frame(F, gen_rp_uni(m), method="sat")) != bool(ck.check_RP(F, m)):
                mismatches.append(("uni", i, m))
            if bool(valid_on_frame(B, gen_rp_prod(m, 1, 1), method="sat")) != \
                    bool(ck.check_rp_semantic_poly(B, m, 1, 1)):
                mismatches.append(("prod", i, m))
            if bool(valid_on_frame(F, gen_pretrans(m))) != (pretransitivity_index(F) <= m):
                mismatches.append(("pretrans", i, m))
    return not mismatches, f"{count} frames x m<=3 x 3 schemes, {len(mismatches)} mismatches", {}


def rp2_cluster_counterexample(rng, cfg):
    C = gap_cluster(8)
    one = len(clusters(C)) == 1
    rp2 = ck.check_RP(C, 2)
    sets = [evaluate(C, {0: {0}}, gen_gap_formula(k)) for k in range(7)]
    exact = all(s == frozenset({k}) for k, s in enumerate(sets))
    return one and rp2.holds and exact, (f"single cluster={one}, RP_2={rp2.holds}, "
                                         f"truth sets exact={exact}"), {}


def zigzag(rng, cfg):
    ok = True
    notes = []
    for l in (2, 3):
        R = union_relation(rectangle(l + 1, l + 1))
        path = ck.zigzag_path(l)
        irreducible = ck.is_irreducible_path(R, path) and len(path) == 2 * l + 1
        fails = not ck.check_RP(R, 2 * l - 1).holds
        ok = ok and irreducible and fails
        notes.append(f"l={l}: zigzag irreducible={irreducible}, RP_{2 * l - 1} fails={fails}")
    growth = {m: ck.least_rp_index(rectangle(m, m)) for m in range(2, cfg["rp_growth"] + 1)}
    vals = [growth[m] for m in sorted(growth)]
    increasing = all(a < b for a, b in zip(vals, vals[1:]))
    notes.append(f"least RP index of rect(m,m): {growth}")
    return ok and increasing, "; ".join(notes), {"rp_growth": growth}


def saw_product(rng, cfg):
    S = saw(3)
    verdicts = [valid_on_frame(S, f) for f in gen_saw_axioms()]
    first_five = all(v.valid for v in verdicts[:5])
    sixth = verdicts[5]
    refuted = not sixth.valid and sixth.valuation is not None
    H = product(S, cluster(3, "s"))
    theta = {H.index_of(f"(w{i},{j})") for i in range(4) for j in range(3) if j < i}
    sat_at_root = H.index_of("(u,0)") in evaluate(H, {0: theta}, gen_saw_phi())
    search = saw_exhaustive_search(5, 3)
    none_found = all(v is None for v in search.values())
    details = (f"axioms 1-5 valid={first_five}; axiom 6 refuted={refuted} "
               f"(p0={sorted(sixth.valuation[0]) if refuted else None} at {sixth.world}); "
               f"phi at (u,0)={sat_at_root}; satisfiable sizes={[k for k, v in search.items() if v]}")
    return first_five and refuted and sat_at_root and none_found, details, {}


def tacks(rng, cfg):
    H = product(tack1(3), cluster(2, "2"))
    phi = gen_tack1_refuted()
    top0, top1 = H.index_of("(top,0)"), H.index_of("(top,1)")
    falsified = H.index_of("(0,0)") not in evaluate(H, {0: {top1}}, phi)
    merged, _ = quotient(H, Equivalence.from_blocks(H.n, [(top0, top1)]))
    merged_ok = valid_on_frame(merged, phi).valid
    forms = gen_tack2_axioms() + [gen_com("1", "2"), gen_com("2", "1"), gen_chr("1", "2")]
    tack_ok = all(valid_on_frame(tack2(m, m), f, method="auto").valid
                  for m in range(1, cfg["tack_max"] + 1) for f in forms)
    return falsified and merged_ok and tack_ok, (f"falsified at (0,0)={falsified}; "
                                                 f"merged quotient validates={merged_ok}; "
                                                 f"tack2(m,m) m<={cfg['tack_max']} axioms={tack_ok}"), {}


def rectangle_quotient(rng, cfg):
    frames = cloned_rectangles(rng, cfg["rectangles"])
    bad = sum(not ck.rectangle_quotient_check(F).holds for F in frames)
    return bad == 0, f"{len(frames)} frames, {bad} failures", {}


def opposite_arrows(rng, cfg):
    bad = 0
    for _ in range(cfg["opposite"]):
        a, b = (int(x) for x in rng.integers(1, 6, 2))
        F = Frame(a, {"1": random_preorder(rng, a)})
        G = Frame(b, {"2": random_preorder(rng, b)})
        bad += not ck.check_opposite_arrows(product(F, G)).holds
    F1 = Frame(2, {"1": Relation(2, [(0, 0), (0, 1), (1, 1)]),
                   "2": Relation(2, [(0, 0), (1, 0), (1, 1)])})
    res = ck.check_opposite_arrows(F1)
    ok = bad == 0 and not res.holds and res.witness == (0, 1)
    return ok, f"{cfg['opposite']} products, {bad} failures; order frame witness {res.witness}", {}


def alpha_transfer(rng, cfg):
    frames = [tack2(2, 2), tack2(3, 2)] + admissible_frames(rng, cfg["admissible"])
    bad = 0
    for F in frames:
        A = ck.alpha_strip(F)
        m = ck.least_rp_poly_index(A)
        bad += not ck.check_rp_semantic_poly(F, m + 2).holds
    iso = all(is_isomorphic(ck.alpha_strip(tack2(k, m)), rectangle(k, m)) is not None
              for k, m in [(1, 1), (2, 2), (3, 2), (2, 3)])
    return bad == 0 and iso, f"{len(frames)} frames, {bad} failures; stripped tacks are rectangles={iso}", {}


def product_with_finite(rng, cfg):
    bad = 0
    for _ in range(cfg["product_finite"]):
        F = random_frame(rng, int(rng.integers(1, 5)), ("1",))
        G = random_frame(rng, int(rng.integers(1, 4)), ("2",))
        H = product(F, G)
        V = random_partition(rng, H.n, 3)
        res = product_refine_with_finite(F, G, V)
        # f measured on F: worst refinement size over partitions of F with <= |V|^|G| blocks
        f_val = tunability_profile(F, F.n)[min(len(V) ** G.n, F.n) - 1]
        ok = (is_tuned(H, res.partition) and res.partition.refines(V)
              and len(res.partition) <= len(res.factor_tuned) * G.n <= f_val * G.n)
        bad += not ok
    return bad == 0, f"{cfg['product_finite']} cases, {bad} failures", {}


def tuning_performance(rng, cfg):
    n = cfg["perf_worlds"]
    e = 2 * n
    rels = {a: Relation(n, (rng.integers(0, n, e), rng.integers(0, n, e))) for a in ("1", "2")}
    F = Frame(n, rels)
    P = Partition.from_labels(rng.integers(0, 8, n))
    t0 = time.perf_counter()
    Q, report = coarsest_tuned_refinement(F, P)
    dt = time.perf_counter() - t0
    return dt < 5.0, (f"{n} worlds, {F.edge_count()} edges: {report.output_size} blocks "
                      f"in {report.rounds} rounds, {dt:.2f}s"), {"seconds": dt}


CHECKS = [
    ("prop.height-additivity", height_additivity),
    ("prop.product-pretransitivity", product_pretransitivity),
    ("prop.corner-commutation", corner_commutation),
    ("def.tuned-refinement-oracle", tuned_refinement_oracle),
    ("prop.scheme-semantics-agreement", scheme_semantics_agreement),
    ("prop.rp2-cluster-counterexample", rp2_cluster_counterexample),
    ("prop.zigzag-irreducible-path", zigzag),
    ("prop.saw-product", saw_product),
    ("prop.tack-falsification", tacks),
    ("lemma.rectangle-quotient", rectangle_quotient),
    ("lemma.opposite-arrows", opposite_arrows),
    ("prop.alpha-transfer", alpha_transfer),
    ("prop.product-with-finite-bound", product_with_finite),
    ("perf.tuning-kernel", tuning_performance),
]


@dataclass
class SuiteItem:
    id: str
    passed: bool
    details: str
    seconds: float
    data: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    scale: str
    items: list

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def to_tsv(self) -> str:
        return "".join(f"{i.id}\t{'PASS' if i.passed else 'FAIL'}\t{i.details}\n" for i in self.items)

    def to_json(self) -> str:
        doc = {"scale": self.scale, "passed": self.passed,
               "checks": [{"id": i.id, "status": "PASS" if i.passed else "FAIL",
                           "details": i.details} for i in self.items]}
        return json.dumps(doc, indent=2, sort_keys=True)


def run_check(check_id: str, scale: str = "default", seed: int = 0) -> SuiteItem:
    cfg = SCALES[scale]
    fn = dict(CHECKS)[check_id]
    # each check gets its own stream so ids can be run in isolation
    rng = rng_of(np.random.default_rng([seed, [c for c, _ in CHECKS].index(check_id)]))
    t0 = time.perf_counter()
    ok, details, data = fn(rng, cfg)
    return SuiteItem(check_id, bool(ok), details, time.perf_counter() - t0, data)


def run_verification_suite(scale: str = "default", seed: int = 0, only=None) -> SuiteReport:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; choose from {sorted(SCALES)}")
    known = [c for c, _ in CHECKS]
    unknown = sorted(set(only or ()) - set(known))
    if unknown:
        raise ValueError(f"unknown check ids {unknown}; choose from {known}")
    ids = [c for c in known if only is None or c in only]
    return SuiteReport(scale, [run_check(c, scale, seed) for c in ids])
