"""Named verification suites with machine-readable reports.

Each suite runs a property set from one module against oracles, frozen
constants, or closed-form bounds, and returns a SuiteReport.  Reports are
deterministic for a given seed and flags (wall time aside): every random
case builds its own generator from (seed, case index), so evaluation order
cannot leak into the output, and failures are sorted by their canonical
JSON encoding.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bases import (
    LayeredVec,
    duality_pair,
    embed_tandori_lpc0,
    f_coeffs_to_raw,
    g_norm_in_cesaro,
    g_vector,
    tandori_vp_check,
)
from .blocks import (
    BlockSystem,
    averaging_projection,
    expand,
    find_block_sizes,
    wp_equivalence_ratios,
)
from .constants import holder_domination
from .errors import DomainError
from .norms import (
    garling_norm,
    garling_norm_bruteforce,
    lorentz_norm,
    lorentz_norm_runs,
    norm,
    parse_space,
    tandori_norm,
)
from .sampling import random_coeffvec, rng_for
from .vectors import CoeffVec, add_coeffvecs
from .weights import Weight, check_2sb, check_nuc, make_weight

__all__ = ["SuiteReport", "SUITE_NAMES", "run_suite"]

# Independently computed series constants used as anchors.
_ZETA2 = 1.6449340668482264
_SQRT_ZETA2 = 1.2825498301618641
_ZETA3 = 1.2020569031595942
_G4_CES2 = 1.0655007381266617  # 2 * (zeta(2) - 1 - 1/4 - 1/9)^(1/2)


@dataclass
class SuiteReport:
    suite: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seed: int = 0
    samples: int = 0
    tolerances: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "stats": self.stats,
            "seed": self.seed,
            "samples": self.samples,
            "tolerances": self.tolerances,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def _finish(
    suite: str,
    failures: list,
    cases: int,
    stats: dict,
    seed: int,
    samples: int,
    tolerances: dict,
    t0: float,
) -> SuiteReport:
    failures = sorted(failures, key=lambda f: json.dumps(f, sort_keys=True, default=str))
    return SuiteReport(
        suite=suite,
        passed=not failures,
        cases=cases,
        failures=failures,
        stats=stats,
        seed=seed,
        samples=samples,
        tolerances=tolerances,
        wall_time_s=round(time.perf_counter() - t0, 6),
    )


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


def _vec_obj(v: CoeffVec):
    return v.to_json_obj()


# ---------------------------------------------------------------------------
# oracle suites
# ---------------------------------------------------------------------------


def _suite_garling_oracle(samples: int, seed: int, tol: float, t0: float, **_):
    combos = [
        (Weight.harmonic(), 1.0),
        (Weight.harmonic(), 2.0),
        (Weight.power(0.5), 1.0),
        (Weight.power(0.5), 2.0),
    ]
    failures, cases, worst = [], 0, 0.0
    for j in range(samples):
        v = random_coeffvec(rng_for(seed, j), max_support=14, max_index=40)
        for w, p in combos:
            dp = garling_norm(v, w, p)
            bf = garling_norm_bruteforce(v, w, p)
            cases += 1
            d = _rel(dp, bf)
            worst = max(worst, d)
            if d > tol:
                failures.append(
                    {
                        "input": {"vector": _vec_obj(v), "weight": w.spec, "p": p},
                        "expected": "dynamic program equals subset enumeration",
                        "observed": {"dp": dp, "bruteforce": bf, "rel_diff": d},
                    }
                )
    return _finish(
        "garling-oracle",
        failures,
        cases,
        {"max_rel_diff": worst},
        seed,
        samples,
        {"rel": tol},
        t0,
    )


def _permutation_lorentz(v: CoeffVec, w: Weight, p: float) -> float:
    """Independent oracle: maximize over every pairing of values to weights."""
    m = len(v)
    vp = (np.abs(v.values) ** p).tolist()
    wv = w.values(1, m + 1).tolist()
    best = 0.0
    for perm in itertools.permutations(vp):
        s = math.fsum(x * y for x, y in zip(perm, wv))
        if s > best:
            best = s
    return best ** (1.0 / p)


def _suite_lorentz_oracle(samples: int, seed: int, tol: float, t0: float, **_):
    combos = [(Weight.harmonic(), 1.0), (Weight.harmonic(), 2.0), (Weight.power(0.5), 1.5)]
    failures, worst = [], 0.0
    for j in range(samples):
        w, p = combos[j % len(combos)]
        v = random_coeffvec(rng_for(seed, j), max_support=7, max_index=24)
        fast = lorentz_norm(v, w, p)
        slow = _permutation_lorentz(v, w, p)
        d = _rel(fast, slow)
        worst = max(worst, d)
        if d > tol:
            failures.append(
                {
                    "input": {"vector": _vec_obj(v), "weight": w.spec, "p": p},
                    "expected": "sorted pairing equals permutation maximum",
                    "observed": {"sorted": fast, "permutations": slow, "rel_diff": d},
                }
            )
    return _finish(
        "lorentz-oracle",
        failures,
        samples,
        {"max_rel_diff": worst},
        seed,
        samples,
        {"rel": tol},
        t0,
    )


# ---------------------------------------------------------------------------
# suffix-sup basis suites
# ---------------------------------------------------------------------------

_VP_EXPONENTS = (1.0, 1.5, 2.0, 3.0)


def _suite_tandori_vp(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases = [], 0
    lo, hi = math.inf, -math.inf
    for p in _VP_EXPONENTS:
        for j in range(samples):
            a = random_coeffvec(rng_for(seed, j), max_support=24, max_index=64)
            rep = tandori_vp_check(a, p, tol)
            cases += 1
            lo = min(lo, rep.ratio)
            hi = max(hi, rep.ratio)
            if not rep.passed:
                failures.append(
                    {
                        "input": {"coefficients": _vec_obj(a), "p": p},
                        "expected": "t^p <= 2 u^p and u^p <= 72 t^p",
                        "observed": rep.to_json_dict(),
                    }
                )
    return _finish(
        "tandori-vp",
        failures,
        cases,
        {"min_ratio": lo, "max_ratio": hi},
        seed,
        samples,
        {"rel": tol},
        t0,
    )


def _suite_embed_isometry(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases, worst = [], 0, 0.0
    for j in range(samples):
        p = _VP_EXPONENTS[j % len(_VP_EXPONENTS)]
        a = random_coeffvec(rng_for(seed, j), max_support=24, max_index=96)
        raw = f_coeffs_to_raw(a, p)
        t = tandori_norm(raw, p)
        lv = embed_tandori_lpc0(a, p)
        ln = lv.norm(p)
        cases += 1
        d = _rel(t, ln)
        worst = max(worst, d)
        if d > tol:
            failures.append(
                {
                    "input": {"coefficients": _vec_obj(a), "p": p},
                    "expected": "layered norm equals suffix-sup norm",
                    "observed": {"layered": ln, "suffix_sup": t, "rel_diff": d},
                }
            )
        if j % 8 == 0 and a.support_max <= 256:
            # Round trip through explicit rows: an independent evaluation path.
            rt = LayeredVec.from_json(lv.to_json()).norm(p)
            cases += 1
            d2 = _rel(t, rt)
            worst = max(worst, d2)
            if d2 > tol:
                failures.append(
                    {
                        "input": {"coefficients": _vec_obj(a), "p": p},
                        "expected": "explicit-rows norm equals suffix-sup norm",
                        "observed": {"roundtrip": rt, "suffix_sup": t, "rel_diff": d2},
                    }
                )
    return _finish(
        "embed-isometry",
        failures,
        cases,
        {"max_rel_diff": worst},
        seed,
        samples,
        {"rel": tol},
        t0,
    )


def _suite_duality(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases = [], 0
    kmax = 100
    for p in _VP_EXPONENTS:
        fs = [f_coeffs_to_raw(CoeffVec.basis(k, 1.0), p) for k in range(1, kmax + 1)]
        gs = [g_vector(k, p) for k in range(1, kmax + 1)]
        for j in range(kmax):
            for k in range(kmax):
                got = duality_pair(gs[j], fs[k])
                want = 1.0 if j == k else 0.0
                cases += 1
                if got != want:
                    failures.append(
                        {
                            "input": {"j": j + 1, "k": k + 1, "p": p},
                            "expected": f"pairing == {want} exactly",
                            "observed": {"pairing": got},
                        }
                    )
    for k, anchor in ((1, _SQRT_ZETA2), (4, _G4_CES2)):
        br = g_norm_in_cesaro(k, 2.0, tol=1e-9)
        cases += 1
        if not (br.contains(anchor) and br.width <= 1e-9 * br.mid):
            failures.append(
                {
                    "input": {"k": k, "p_prime": 2.0},
                    "expected": f"bracket contains {anchor} with relative width <= 1e-9",
                    "observed": br.to_json_dict(),
                }
            )
    return _finish(
        "duality",
        failures,
        cases,
        {"kmax": float(kmax)},
        seed,
        samples,
        {"pairing": 0.0, "bracket_rel_width": 1e-9},
        t0,
    )


# ---------------------------------------------------------------------------
# domination suite
# ---------------------------------------------------------------------------


def _suite_holder(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases = [], 0
    w = Weight.harmonic()
    anchors = {(1.0, 2.0): (_ZETA2, _SQRT_ZETA2), (1.0, 1.5): (_ZETA3, _ZETA3 ** (1.0 / 3.0))}
    worst = 0.0
    for (p, q), (series_anchor, c_anchor) in anchors.items():
        rep = holder_domination(w, p, q, samples=samples, seed=seed, width=1e-10)
        cases += rep.samples + 1
        worst = max(worst, rep.max_ratio)
        ok = (
            rep.passed
            and rep.series.contains(series_anchor)
            and rep.C.contains(c_anchor)
            and rep.C.width < 1e-9
            and not rep.truncated
        )
        if not ok:
            failures.append(
                {
                    "input": {"weight": w.spec, "p": p, "q": q},
                    "expected": "series bracket around the zeta anchor, C certified, "
                    "no sampled violations",
                    "observed": rep.to_json_dict(),
                }
            )
    return _finish(
        "holder",
        failures,
        cases,
        {"max_lhs_over_bound": worst},
        seed,
        samples,
        {"bracket_width": 1e-9, "inequality_rel_slack": 1e-10},
        t0,
    )


# ---------------------------------------------------------------------------
# block system suites
# ---------------------------------------------------------------------------


def _build_system(weight: str, p: float, K: float, levels: int, scan_cap) -> BlockSystem:
    w = make_weight(weight)
    kwargs = {} if scan_cap is None else {"scan_cap": int(scan_cap)}
    return find_block_sizes(w, p, K, levels, **kwargs)


def _suite_blocks_linf(
    samples: int,
    seed: int,
    tol: float,
    t0: float,
    weight: str = "harmonic",
    p: float = 1.0,
    K: float = 1.5,
    levels: int = 5,
    scan_cap=None,
    **_,
):
    bs = _build_system(weight, p, K, levels, scan_cap)
    w = bs.weight
    failures, cases = [], 0
    max_cert = 0.0
    for lvl in bs.levels:
        k, M = lvl.k, lvl.M
        cert = bs.certificate(k)
        max_cert = max(max_cert, cert)
        cases += 1
        if not (cert <= bs.K * (1.0 + tol)):
            failures.append(
                {
                    "input": {"level": k, "M": M},
                    "expected": f"certificate <= K = {bs.K}",
                    "observed": {"certificate": cert},
                }
            )
        if M > 1:
            cases += 1
            prev = (w.prefix_sum(k * (M - 1)) / w.prefix_sum(M - 1)) ** (1.0 / bs.p)
            if not (prev > bs.K):
                failures.append(
                    {
                        "input": {"level": k, "M": M},
                        "expected": "ratio at M-1 exceeds K (minimality)",
                        "observed": {"ratio_at_M_minus_1": prev},
                    }
                )
        # The certificate must equal the Lorentz norm of the all-ones level.
        ones = [[0.0]] * (k - 1) + [[1.0] * k]
        ln = lorentz_norm_runs(expand(bs, ones), w, bs.p)
        cases += 1
        d = _rel(ln, cert)
        if d > tol:
            failures.append(
                {
                    "input": {"level": k, "M": M},
                    "expected": "all-ones Lorentz norm equals the certificate",
                    "observed": {"lorentz": ln, "certificate": cert, "rel_diff": d},
                }
            )
        # Normalizer cross-check under the order-sensitive norm (dense path).
        if M <= 4096:
            block = CoeffVec(np.arange(lvl.start, lvl.start + M), np.ones(M))
            gn = garling_norm(block, w, bs.p)
            cases += 1
            d = _rel(gn, lvl.c)
            if d > tol:
                failures.append(
                    {
                        "input": {"level": k, "M": M},
                        "expected": "constant block has the same Garling and Lorentz norm",
                        "observed": {"garling": gn, "c": lvl.c, "rel_diff": d},
                    }
                )
        # 1-domination of the sup of coefficients within the level.
        for j in range(min(samples, 50)):
            rng = rng_for(seed, 1000 * k + j)
            a = rng.uniform(-1.0, 1.0, size=k)
            if not np.any(a):
                a[0] = 1.0
            ln = lorentz_norm_runs(expand(bs, [[0.0]] * (k - 1) + [a.tolist()]), w, bs.p)
            cases += 1
            if ln < float(np.max(np.abs(a))) * (1.0 - tol):
                failures.append(
                    {
                        "input": {"level": k, "coefficients": a.tolist()},
                        "expected": "norm of the combination dominates max |a_i|",
                        "observed": {"norm": ln, "max_abs": float(np.max(np.abs(a)))},
                    }
                )
    stats = {
        "max_certificate": max_cert,
        "block_sizes": [float(lvl.M) for lvl in bs.levels],
    }
    return _finish(
        "blocks-linf", failures, cases, stats, seed, samples, {"rel": tol}, t0
    )


def _suite_blocks_wp(
    samples: int,
    seed: int,
    tol: float,
    t0: float,
    weight: str = "harmonic",
    p: float = 1.0,
    K: float = 1.5,
    levels: int = 5,
    scan_cap=None,
    space: str | None = None,
    **_,
):
    bs = _build_system(weight, p, K, levels, scan_cap)
    rep = wp_equivalence_ratios(bs, space or "lorentz", samples=samples, seed=seed)
    failures = []
    if not rep.passed:
        failures.append(
            {
                "input": {"system": bs.to_json_dict(), "space": rep.space},
                "expected": f"max ratio <= K = {bs.K}",
                "observed": {"min_ratio": rep.min_ratio, "max_ratio": rep.max_ratio,
                             "max_witness": rep.max_witness},
            }
        )
    stats = {"min_ratio": rep.min_ratio, "max_ratio": rep.max_ratio}
    return _finish(
        "blocks-wp", failures, rep.cases, stats, seed, samples, {"rel": 1e-12}, t0
    )


def _suite_projection(
    samples: int,
    seed: int,
    tol: float,
    t0: float,
    weight: str = "harmonic",
    p: float = 1.0,
    K: float = 1.5,
    levels: int = 5,
    scan_cap=None,
    **_,
):
    bs = _build_system(weight, p, K, levels, scan_cap)
    w = bs.weight
    failures, cases = [], 0
    hi_d, hi_g = 0.0, 0.0
    span = bs.span

    # Range identity: projecting an expanded vector returns it unchanged.
    for j in range(min(samples, 20)):
        rng = rng_for(seed, 900000 + j)
        rows = [[float(x) for x in rng.uniform(-1.0, 1.0, size=k)] for k in range(1, bs.k_max + 1)]
        x = expand(bs, rows)
        if x.is_zero():
            continue
        px = averaging_projection(bs, x)
        cases += 1
        same = (
            px.starts.tolist() == x.starts.tolist()
            and px.lengths.tolist() == x.lengths.tolist()
            and px.values.tolist() == x.values.tolist()
        )
        if not same:
            failures.append(
                {
                    "input": {"coefficients": rows},
                    "expected": "projection is the identity on its range",
                    "observed": {"differs": True},
                }
            )

    for j in range(samples):
        x = random_coeffvec(rng_for(seed, j), max_support=40, max_index=span + 20)
        px = averaging_projection(bs, x)
        cases += 1
        if j < max(1, min(samples, 1000)):
            ppx = averaging_projection(bs, px)
            dd = 0.0
            if px.starts.size != ppx.starts.size:
                dd = math.inf
            elif px.starts.size:
                scale = float(np.max(np.abs(px.values)))
                dd = float(np.max(np.abs(px.values - ppx.values))) / max(scale, 1e-300)
            if dd > tol:
                failures.append(
                    {
                        "input": {"vector": _vec_obj(x)},
                        "expected": "P(Px) == Px",
                        "observed": {"rel_diff": dd},
                    }
                )
        xd = lorentz_norm(x, w, bs.p)
        pd = lorentz_norm_runs(px, w, bs.p)
        rd = pd / xd
        hi_d = max(hi_d, rd)
        if rd > 1.0 + 1e-9:
            failures.append(
                {
                    "input": {"vector": _vec_obj(x)},
                    "expected": "projection does not expand the rearranged weighted norm",
                    "observed": {"ratio": rd},
                }
            )
        xg = garling_norm(x, w, bs.p)
        pg = garling_norm(px.to_coeffvec(), w, bs.p) if not px.is_zero() else 0.0
        rg = pg / xg
        hi_g = max(hi_g, rg)
        if rg > 2.0 + 1e-9:
            failures.append(
                {
                    "input": {"vector": _vec_obj(x)},
                    "expected": "projection expands the subsequence norm by at most 2",
                    "observed": {"ratio": rg},
                }
            )
    stats = {"max_ratio_lorentz": hi_d, "max_ratio_garling": hi_g}
    return _finish(
        "projection",
        failures,
        cases,
        stats,
        seed,
        samples,
        {"idempotence_rel": tol, "lorentz_ratio": 1.0 + 1e-9, "garling_ratio": 2.0 + 1e-9},
        t0,
    )


# ---------------------------------------------------------------------------
# direct-sum suite
# ---------------------------------------------------------------------------

_FDD_POOL = (
    "lp:p=1",
    "lp:p=2",
    "lp:p=inf",
    "lorentz:w=harmonic,p=1",
    "garling:w=harmonic,p=2",
    "tandori:p=1",
)


def _suite_fdd(samples: int, seed: int, tol: float, t0: float, **_):
    from .blocks import fdd_block_check

    failures, cases, worst = [], 0, 0.0

    def check(blocks, comps, p, c, label):
        nonlocal cases, worst
        lhs, rhs = fdd_block_check(blocks, comps, p, c)
        cases += 1
        d = _rel(lhs, rhs)
        worst = max(worst, d)
        if d > tol:
            failures.append(
                {
                    "input": label,
                    "expected": "direct-sum identity holds",
                    "observed": {"lhs": lhs, "rhs": rhs, "rel_diff": d},
                }
            )

    # Two blocks of component norms 1 and 2, p = 2: both sides sqrt(5).
    comps = [("lp:p=1", 2), ("lp:p=1", 3)]
    z1 = CoeffVec(np.array([1]), np.array([1.0]))
    z2 = CoeffVec(np.array([3, 4]), np.array([1.0, 1.0]))
    check([z1, z2], comps, 2.0, [1.0, 1.0], {"case": "norms 1 and 2, p=2"})

    for j in range(samples):
        rng = rng_for(seed, j)
        n_comp = int(rng.integers(2, 6))
        comps = []
        for _i in range(n_comp):
            dim = int(rng.integers(1, 7))
            spec = _FDD_POOL[int(rng.integers(0, len(_FDD_POOL)))]
            comps.append((spec, dim))
        offsets = np.concatenate(([0], np.cumsum([d for _, d in comps])))
        # Partition the components into consecutive groups, one block each.
        n_blocks = int(rng.integers(1, n_comp + 1))
        cut = np.sort(rng.choice(np.arange(1, n_comp), size=n_blocks - 1, replace=False))
        bounds = [0, *cut.tolist(), n_comp]
        blocks, cs = [], []
        for b in range(n_blocks):
            glo = int(offsets[bounds[b]]) + 1
            ghi = int(offsets[bounds[b + 1]])
            width = ghi - glo + 1
            m = int(rng.integers(1, width + 1))
            idx = np.sort(rng.choice(np.arange(glo, ghi + 1), size=m, replace=False))
            vals = rng.uniform(-1.0, 1.0, size=m)
            if not np.any(vals):
                vals[0] = 1.0
            blocks.append(CoeffVec(idx, vals))
            cs.append(float(rng.uniform(-2.0, 2.0)) or 1.0)
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        check(blocks, comps, p, cs, {"case": j, "components": comps, "p": p})
    return _finish(
        "fdd", failures, cases, {"max_rel_diff": worst}, seed, samples, {"rel": tol}, t0
    )


# ---------------------------------------------------------------------------
# axioms and weight profile suites
# ---------------------------------------------------------------------------

_AXIOM_POOL = (
    "lp:p=1",
    "lp:p=2.5",
    "lp:p=inf",
    "lorentz:w=harmonic,p=1",
    "lorentz:w=power:a=0.5,p=2",
    "garling:w=harmonic,p=1",
    "tandori:p=1.5",
    "cesaro:p=2",
    "blocksum:lengths=dyadic,inner=inf,outer=2",
    "epw:n=512,p=1,w=0.5",
)


def _suite_norm_axioms(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases = [], 0
    for j in range(samples):
        spec = parse_space(_AXIOM_POOL[j % len(_AXIOM_POOL)])
        rng = rng_for(seed, j)
        u = random_coeffvec(rng, max_support=12, max_index=300)
        v = random_coeffvec(rng, max_support=12, max_index=300)
        c = float(rng.uniform(0.1, 8.0))
        nu = norm(u, spec)
        nv = norm(v, spec)
        # Homogeneity.
        nc = norm(u.scale(c), spec)
        cases += 1
        slack = tol * max(nu.mid * c, 1.0) + c * nu.width + nc.width
        if abs(nc.mid - c * nu.mid) > slack:
            failures.append(
                {
                    "input": {"space": spec.spec, "vector": _vec_obj(u), "c": c},
                    "expected": "norm(c v) == c norm(v)",
                    "observed": {"lhs": nc.mid, "rhs": c * nu.mid},
                }
            )
        # Triangle inequality.
        ns = norm(add_coeffvecs([(1.0, u), (1.0, v)]), spec)
        cases += 1
        bound = nu.hi + nv.hi
        if ns.lo > bound * (1.0 + tol):
            failures.append(
                {
                    "input": {"space": spec.spec, "u": _vec_obj(u), "v": _vec_obj(v)},
                    "expected": "norm(u + v) <= norm(u) + norm(v)",
                    "observed": {"lhs": ns.lo, "rhs": bound},
                }
            )
        # Absoluteness: sign flips leave the norm bit-identical.
        flips = rng.choice([-1.0, 1.0], size=len(u))
        uf = CoeffVec(u.indices, u.values * flips)
        nf = norm(uf, spec)
        cases += 1
        if not (nf.lo == nu.lo and nf.hi == nu.hi):
            failures.append(
                {
                    "input": {"space": spec.spec, "vector": _vec_obj(u)},
                    "expected": "sign flips leave the norm unchanged exactly",
                    "observed": {"flipped": nf.to_json_dict(), "plain": nu.to_json_dict()},
                }
            )
    return _finish(
        "norm-axioms",
        failures,
        cases,
        {},
        seed,
        samples,
        {"rel": tol, "absoluteness": 0.0},
        t0,
    )


def _suite_weight_profiles(samples: int, seed: int, tol: float, t0: float, **_):
    failures, cases = [], 0
    horizon = 1 << 16

    nuc_h = check_nuc(Weight.harmonic(), horizon)
    cases += 1
    ratios = np.asarray(nuc_h.profile_values)
    if not (
        nuc_h.verdict == "consistent"
        and float(ratios.min()) < 1.07
        and bool(np.all(np.diff(ratios) < 0.0))
    ):
        failures.append(
            {
                "input": {"weight": "harmonic", "condition": "nuc", "N": horizon},
                "expected": "ratios strictly decreasing with min < 1.07",
                "observed": {"min_ratio": float(ratios.min()), "verdict": nuc_h.verdict},
            }
        )

    nuc_p = check_nuc(Weight.power(0.5), horizon)
    cases += 1
    target = 2.0**0.5
    if not (abs(nuc_p.extremum - target) < 0.01 and nuc_p.verdict != "consistent"):
        failures.append(
            {
                "input": {"weight": "power:a=0.5", "condition": "nuc", "N": horizon},
                "expected": "min ratio within 0.01 of sqrt(2); flat limit never reached",
                "observed": {"min_ratio": nuc_p.extremum, "verdict": nuc_p.verdict},
            }
        )

    tsb = check_2sb(Weight.harmonic(), 100)
    cases += 1
    if not (tsb.extremum == 1.0 and tuple(tsb.arg_extremum) == (1, 1)):
        failures.append(
            {
                "input": {"weight": "harmonic", "condition": "2sb", "N": 100},
                "expected": "sup of S(nk)/(S(n)S(k)) equals 1 exactly, at (1,1)",
                "observed": {"sup": tsb.extremum, "arg": list(tsb.arg_extremum)},
            }
        )
    stats = {
        "harmonic_nuc_min": float(ratios.min()),
        "power_nuc_min": nuc_p.extremum,
        "harmonic_2sb_sup": tsb.extremum,
    }
    return _finish(
        "weight-profiles",
        failures,
        cases,
        stats,
        seed,
        samples,
        {"nuc_power_abs": 0.01, "2sb": 0.0},
        t0,
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_SUITES = {
    "garling-oracle": (_suite_garling_oracle, 200, 1e-12),
    "lorentz-oracle": (_suite_lorentz_oracle, 200, 1e-12),
    "tandori-vp": (_suite_tandori_vp, 250, 1e-12),
    "embed-isometry": (_suite_embed_isometry, 400, 1e-12),
    "holder": (_suite_holder, 500, 1e-10),
    "blocks-linf": (_suite_blocks_linf, 50, 1e-12),
    "blocks-wp": (_suite_blocks_wp, 400, 1e-12),
    "projection": (_suite_projection, 500, 1e-12),
    "fdd": (_suite_fdd, 300, 1e-12),
    "duality": (_suite_duality, 0, 0.0),
    "norm-axioms": (_suite_norm_axioms, 300, 1e-10),
    "weight-profiles": (_suite_weight_profiles, 0, 0.0),
}

SUITE_NAMES = tuple(sorted(_SUITES))


def run_suite(name: str, samples: int | None = None, seed: int = 0, tol: float | None = None, **params) -> SuiteReport:
    """Run a named suite; None samples/tol pick the suite's defaults.

    Extra keyword params (weight, p, K, levels, scan_cap, space) configure
    the block-system suites and are ignored elsewhere.
    """
    if name not in _SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    fn, d_samples, d_tol = _SUITES[name]
    eff_samples = d_samples if samples is None else int(samples)
    eff_tol = d_tol if tol is None else float(tol)
    if eff_samples < 0:
        raise DomainError("sample count must be nonnegative")
    t0 = time.perf_counter()
    return fn(eff_samples, int(seed), eff_tol, t0, **params)
