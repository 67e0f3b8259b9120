"""Certification suites: each one runs a battery of exact identities from
the theory at configurable bounds and reports named pass/fail checks.

These are the checks behind `exacthom verify` and the acceptance tests;
everything asserted here is an exact identity, never a tolerance.
"""

import time
from math import comb

from .algebras import Coefficients, preset
from .chains import long_exact_sequence_nodes
from .fields import QQ
from .gamma import gamma_homology, prune_split_certificates
from .groupalg import (certify_eulerian, shuffle_annihilating_product,
                       shuffle_permutations)
from .hochschild import (HochschildComplex, aug_split_iso, barr_map,
                         harrison_homology, hodge_commutes,
                         idempotent_dims_complete, normalized_harrison)
from .sparse import Echelon
from .symhom import ComparisonData, hs0_consistency


class Check:
    __slots__ = ("name", "ok", "witness")

    def __init__(self, name, ok, witness=None):
        self.name = name
        self.ok = bool(ok)
        self.witness = witness

    def as_dict(self):
        out = {"name": self.name, "status": "pass" if self.ok else "fail"}
        if not self.ok and self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def _algebra(config):
    name = config.get("preset", "dual-numbers")
    field = config.get("field", QQ)
    return preset(name, field)


def suite_eulerian(config):
    max_n = config.get("max_n", 6)
    field = config.get("field", QQ)
    checks = []
    for n in range(1, max_n + 1):
        results = certify_eulerian(field, n)
        ok = all(flag for _, flag in results)
        bad = [name for name, flag in results if not flag]
        checks.append(Check(f"eulerian certificates n={n}", ok, bad or None))
    for n in range(2, max_n + 1):
        prod = shuffle_annihilating_product(field, n)
        checks.append(Check(f"shuffle eigenvalue polynomial n={n}",
                            prod.is_zero()))
    for n in range(2, min(max_n, 7) + 1):
        for i in range(1, n):
            size = len(shuffle_permutations(i, n))
            checks.append(Check(
                f"shuffle support size ({i},{n - i})", size == comb(n, i),
                f"{size} != C({n},{i})"))
    return checks


def _hochschild_setups(config):
    algs = config.get("presets", ["dual-numbers", "trunc3"])
    modules = config.get("modules", ["k", "A"])
    field = config.get("field", QQ)
    for name in algs:
        alg = preset(name, field)
        for kind in modules:
            yield alg, Coefficients(alg, kind)


def suite_hodge(config):
    max_n = config.get("max_degree", 5)
    max_w = config.get("max_weight", 5)
    checks = []
    for alg, co in _hochschild_setups(config):
        hc = HochschildComplex(alg, co)
        for w in range(max_w + 1):
            ok_comm = all(hodge_commutes(hc, w, max_n, i)
                          for i in range(1, max_n + 1))
            ok_dims = idempotent_dims_complete(hc, w, max_n)
            checks.append(Check(
                f"hodge commutation {alg.name} M={co.kind} w={w}", ok_comm))
            checks.append(Check(
                f"eulerian slice dims complete {alg.name} M={co.kind} w={w}",
                ok_dims))
    return checks


def suite_augsplit(config):
    max_n = config.get("max_degree", 5)
    max_w = config.get("max_weight", 5)
    checks = []
    for alg, co in _hochschild_setups(config):
        hc = HochschildComplex(alg, co)
        for w in range(max_w + 1):
            try:
                aug_split_iso(hc, w, max_n)
                ok, witness = True, None
            except Exception as exc:  # CertificationError carries the detail
                ok, witness = False, exc
            checks.append(Check(
                f"normalized = ideal-only {alg.name} M={co.kind} w={w}",
                ok, witness))
    return checks


def suite_harrison(config):
    max_n = config.get("max_degree", 4)
    max_w = config.get("max_weight", 4)
    idems = config.get("idempotents", (1, 2, 3))
    checks = []
    for alg, co in _hochschild_setups(config):
        hc = HochschildComplex(alg, co)
        for w in range(max_w + 1):
            for i in idems:
                nh = normalized_harrison(hc, w, max_n, i)
                label = f"{alg.name} M={co.kind} w={w} i={i}"
                checks.append(Check(
                    f"composite identity {label}", nh.composite_is_identity()))
                checks.append(Check(
                    f"kernel dim accounting {label}",
                    nh.kernel_dims_match_degenerate()))
                checks.append(Check(
                    f"comparison maps are chain maps {label}",
                    nh.maps_are_chain_maps()))
                cdims = nh.c_chain.homology().dims()
                qdims = nh.quot_chain.homology().dims()
                checks.append(Check(
                    f"quotient map quasi-iso {label}",
                    cdims[:-1] == qdims[:-1], (cdims, qdims)))
                ddims = nh.d_chain.homology().dims()
                checks.append(Check(
                    f"degenerate summand acyclic {label}",
                    all(d == 0 for d in ddims[:-1]), ddims))
        try:
            harrison_homology(alg, co, max_n, max_w)
            ok, witness = True, None
        except Exception as exc:
            ok, witness = False, exc
        checks.append(Check(
            f"harrison pipelines agree {alg.name} M={co.kind} "
            f"n<={max_n} w<={max_w}", ok, witness))
    return checks


def suite_barr(config):
    max_n = config.get("max_degree", 4)
    max_w = config.get("max_weight", 4)
    checks = []
    for alg, co in _hochschild_setups(config):
        hc = HochschildComplex(alg, co)
        for w in range(max_w + 1):
            mats, e1_chain, quot = barr_map(hc, w, max_n)
            ok = True
            witness = None
            for n in range(max_n + 1):
                if e1_chain.dims[n] != quot.chain.dims[n]:
                    ok, witness = False, f"dim mismatch at degree {n}"
                    break
                if Echelon(mats[n]).rank != e1_chain.dims[n]:
                    ok, witness = False, f"rank drop at degree {n}"
                    break
            checks.append(Check(
                f"barr iso {alg.name} M={co.kind} w={w}", ok, witness))
    return checks


def suite_pruning(config):
    max_n = config.get("max_degree", 4)
    max_w = config.get("max_weight", 4)
    presets_ = config.get("presets", ["dual-numbers", "trunc3"])
    field = config.get("field", QQ)
    checks = []
    for name in presets_:
        alg = preset(name, field)
        co = Coefficients(alg, "k")
        for w in range(max_w + 1):
            res = prune_split_certificates(alg, co, w, max_n)
            for key in ("retraction_identity", "chain_map", "surjective"):
                checks.append(Check(
                    f"pruning {key} {name} w={w}", res[key], res["dims"]))
    return checks


def suite_gamma_iso(config):
    max_n = config.get("max_degree", 3)
    max_w = config.get("max_weight", 3)
    shift_n = config.get("shift_degree", 4)
    field = config.get("field", QQ)
    checks = []
    alg = preset("dual-numbers", field)
    co = Coefficients(alg, "k")
    gi = gamma_homology(alg, co, "I", max_n, max_w)
    ga = gamma_homology(alg, co, "A", max_n, max_w)
    diff = {k: (gi[k], ga[k]) for k in gi if gi[k] != ga[k]}
    checks.append(Check(
        f"gamma ideal vs full dims dual-numbers n<={max_n} w<={max_w}",
        not diff, diff or None))
    # degree shift against Harrison, via the ideal variant (exact in every
    # weight; the full variant agrees for weight-1-generated presets)
    for name in config.get("presets", ["dual-numbers", "trunc3"]):
        alg = preset(name, field)
        co = Coefficients(alg, "k")
        gi = gamma_homology(alg, co, "I", shift_n - 1, max_w)
        harr = harrison_homology(alg, co, shift_n, max_w)
        bad = {}
        for n in range(1, shift_n + 1):
            for w in range(max_w + 1):
                if gi[(n - 1, w)] != harr[(n, w)]:
                    bad[(n, w)] = (gi[(n - 1, w)], harr[(n, w)])
        checks.append(Check(
            f"degree shift vs harrison {name} n<={shift_n} w<={max_w}",
            not bad, bad or None))
    return checks


def suite_comparison(config):
    max_n = config.get("max_degree", 3)
    max_w = config.get("max_weight", 3)
    presets_ = config.get("presets", ["dual-numbers", "trunc3"])
    field = config.get("field", QQ)
    checks = []
    for name in presets_:
        alg = preset(name, field)
        for w in range(max_w + 1):
            cd = ComparisonData(alg, w, max_n)
            checks.append(Check(
                f"quotient map chain map {name} w={w}", cd.q_is_chain_map()))
            checks.append(Check(
                f"comparison map chain map {name} w={w}",
                cd.phi_is_chain_map()))
            checks.append(Check(
                f"comparison map surjective {name} w={w}", cd.surjective()))
        rows = hs0_consistency(alg, max_w)
        bad = [(w, got, exp) for w, got, exp in rows if got != exp]
        checks.append(Check(
            f"reduced HS_0 matches algebra dims {name} w<={max_w}",
            not bad, bad or None))
    return checks


def suite_les(config):
    max_n = config.get("max_degree", 3)
    max_w = config.get("max_weight", 3)
    presets_ = config.get("presets", ["dual-numbers"])
    field = config.get("field", QQ)
    checks = []
    for name in presets_:
        alg = preset(name, field)
        for w in range(max_w + 1):
            cd = ComparisonData(alg, w, max_n + 1)
            inc, proj, sub, total, quot = cd.ses()
            nodes = long_exact_sequence_nodes(inc, proj, sub, total, quot,
                                              max_n)
            bad = [(node, rin, kout) for node, rin, kout in nodes
                   if rin != kout]
            checks.append(Check(
                f"long exact sequence {name} w={w} (degrees <= {max_n})",
                not bad, bad or None))
    return checks


SUITES = {
    "eulerian": suite_eulerian,
    "hodge": suite_hodge,
    "augsplit": suite_augsplit,
    "harrison": suite_harrison,
    "barr": suite_barr,
    "pruning": suite_pruning,
    "gamma-iso": suite_gamma_iso,
    "comparison": suite_comparison,
    "les": suite_les,
}


def run_suite(name, config=None):
    """Run one suite; returns (checks, elapsed seconds)."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choices: {sorted(SUITES)}")
    t0 = time.perf_counter()
    checks = SUITES[name](config or {})
    return checks, time.perf_counter() - t0
