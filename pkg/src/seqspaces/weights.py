"""Weight sequences and their asymptotic diagnostics.

A weight is a positive nonincreasing null sequence w with w_1 = 1 that is
not summable.  Three kinds are supported:

* ``harmonic``: w_i = 1/i,
* ``power:a=<a>``: w_i = i**(-a) for a in (0, 1],
* ``explicit:<json array or path>``: a finite prefix given literally.

Prefix sums S(n) = w_1 + ... + w_n are the package's central quantity.  They
are accumulated by a single compensated (Kahan) chain per weight, evaluated
element by element in index order, so S(n) is a pure function of n: the same
value is produced no matter how the cache was grown.  The chain state is
checkpointed at every queried position, which makes random access to S at
indices around 1e8 cheap enough for the block-size scans.

The condition checks report three-valued verdicts.  A finite horizon can
witness that a prefix is *consistent* with an asymptotic condition, or that
a closed-form criterion is *violated*, but it can never certify a liminf or
a sup over all n; such cases are reported as *inconclusive* with a note.
"""

from __future__ import annotations

import bisect
import json
import math
import os
import threading
from dataclasses import dataclass, field

import numpy as np

from ._kernels import kahan_scan
from .errors import DomainError, ParseError

__all__ = [
    "Weight",
    "ConditionReport",
    "make_weight",
    "prefix_sum",
    "check_nuc",
    "check_2sb",
    "check_summable",
]

_CHUNK = 1 << 20
_DENSE_LIMIT = 1 << 21
_HORIZON_CAP = 1 << 28  # guard against runaway horizons in the checks


class Weight:
    """A weight sequence with cached compensated prefix sums."""

    def __init__(self, kind: str, a: float | None = None, data: np.ndarray | None = None):
        if kind == "harmonic":
            pass
        elif kind == "power":
            if a is None or not (0.0 < a <= 1.0):
                raise DomainError(f"power weight needs an exponent in (0, 1], got {a!r}")
        elif kind == "explicit":
            if data is None or data.size == 0:
                raise DomainError("explicit weight needs a nonempty value list")
            if data[0] != 1.0:
                raise DomainError("explicit weight must start with w_1 = 1")
            if np.any(data <= 0.0):
                raise DomainError("explicit weight values must be positive")
            if np.any(np.diff(data) > 0.0):
                raise DomainError("explicit weight values must be nonincreasing")
        else:
            raise DomainError(f"unknown weight kind {kind!r}")
        self.kind = kind
        self.a = float(a) if a is not None else None
        self.data = data
        self._lock = threading.RLock()
        # Dense S values for n <= frontier, S[0] = 0.  Grown lazily.
        self._dense = np.zeros(1, dtype=np.float64)
        self._dense_state = (0.0, 0.0)  # Kahan (sum, comp) at the dense frontier
        # Sparse chain states {n: (sum, comp)} beyond the dense range.
        self._ckpt: dict[int, tuple[float, float]] = {0: (0.0, 0.0)}
        self._ckpt_keys: list[int] = [0]

    # -- value access -------------------------------------------------

    @property
    def limit(self) -> int | None:
        """Largest accessible index, or None when unbounded."""
        return int(self.data.size) if self.kind == "explicit" else None

    def values(self, lo: int, hi: int) -> np.ndarray:
        """Weight values w_i for i in [lo, hi), 1-based."""
        if lo < 1 or hi < lo:
            raise DomainError("invalid index range")
        if self.kind == "harmonic":
            return 1.0 / np.arange(lo, hi, dtype=np.float64)
        if self.kind == "power":
            return np.arange(lo, hi, dtype=np.float64) ** (-self.a)
        if hi - 1 > self.data.size:
            raise DomainError(
                f"explicit weight has {self.data.size} values, index {hi - 1} is out of range"
            )
        return self.data[lo - 1 : hi - 1]

    def value(self, i: int) -> float:
        return float(self.values(i, i + 1)[0])

    # -- prefix sums ----------------------------------------------------

    def _grow_dense(self, n: int) -> None:
        cur = self._dense.size - 1
        target = min(max(n, 2 * cur, _CHUNK), _DENSE_LIMIT)
        if target <= cur:
            return
        out, s, c = kahan_scan(self.values(cur + 1, target + 1), *self._dense_state)
        self._dense = np.concatenate((self._dense, out))
        self._dense_state = (s, c)
        self._store_ckpt(target, (s, c))

    def _store_ckpt(self, n: int, state: tuple[float, float]) -> None:
        if n not in self._ckpt:
            self._ckpt[n] = state
            bisect.insort(self._ckpt_keys, n)

    def _state_at(self, n: int) -> tuple[float, float]:
        """Kahan chain state after term n, walking from the nearest anchor."""
        j = bisect.bisect_right(self._ckpt_keys, n) - 1
        anchor = self._ckpt_keys[j]
        s, c = self._ckpt[anchor]
        pos = anchor
        while pos < n:
            step = min(_CHUNK, n - pos)
            _, s, c = kahan_scan(self.values(pos + 1, pos + step + 1), s, c)
            pos += step
            self._store_ckpt(pos, (s, c))
        return s, c

    def prefix_sum(self, n: int) -> float:
        """S(n) = w_1 + ... + w_n. S(0) = 0."""
        if n < 0:
            raise DomainError("prefix sum index must be >= 0")
        if n == 0:
            return 0.0
        if self.limit is not None and n > self.limit:
            raise DomainError(
                f"explicit weight has {self.limit} values, S({n}) is not available"
            )
        with self._lock:
            if n <= _DENSE_LIMIT:
                if n > self._dense.size - 1:
                    self._grow_dense(n)
                return float(self._dense[n])
            s, _ = self._state_at(n)
            return s

    def prefix_sums_range(self, lo: int, hi: int) -> np.ndarray:
        """S(n) for every n in [lo, hi], as an array of length hi - lo + 1."""
        if lo < 1 or hi < lo:
            raise DomainError("invalid prefix-sum range")
        if self.limit is not None and hi > self.limit:
            raise DomainError(
                f"explicit weight has {self.limit} values, S({hi}) is not available"
            )
        with self._lock:
            if hi <= _DENSE_LIMIT:
                if hi > self._dense.size - 1:
                    self._grow_dense(hi)
                return self._dense[lo : hi + 1].copy()
            s, c = self._state_at(lo - 1)
            out = np.empty(hi - lo + 1, dtype=np.float64)
            pos = lo - 1
            while pos < hi:
                step = min(_CHUNK, hi - pos)
                seg, s, c = kahan_scan(self.values(pos + 1, pos + step + 1), s, c)
                out[pos - (lo - 1) : pos - (lo - 1) + step] = seg
                pos += step
                self._store_ckpt(pos, (s, c))
            return out

    # -- misc -----------------------------------------------------------

    @property
    def spec(self) -> str:
        if self.kind == "harmonic":
            return "harmonic"
        if self.kind == "power":
            return f"power:a={self.a!r}"
        return "explicit:" + json.dumps(self.data.tolist())

    def __repr__(self) -> str:
        return f"Weight({self.spec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Weight) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    @staticmethod
    def harmonic() -> "Weight":
        return Weight("harmonic")

    @staticmethod
    def power(a: float) -> "Weight":
        return Weight("power", a=a)

    @staticmethod
    def explicit(values) -> "Weight":
        return Weight("explicit", data=np.asarray(list(values), dtype=np.float64))


def make_weight(spec: str) -> Weight:
    """Parse a weight spec: harmonic | power:a=<a> | explicit:<array or path>."""
    if not isinstance(spec, str):
        raise ParseError("weight spec must be a string")
    s = spec.strip()
    if s == "harmonic":
        return Weight.harmonic()
    if s.startswith("power:"):
        body = s[len("power:") :]
        if not body.startswith("a="):
            raise ParseError(f"power weight spec must look like power:a=0.5, got {spec!r}")
        try:
            a = float(body[2:])
        except ValueError:
            raise ParseError(f"bad power exponent in {spec!r}") from None
        try:
            return Weight.power(a)
        except DomainError as e:
            raise ParseError(str(e)) from None
    if s.startswith("explicit:"):
        body = s[len("explicit:") :].strip()
        if body.startswith("["):
            try:
                arr = json.loads(body)
            except json.JSONDecodeError as e:
                raise ParseError(f"bad explicit weight array: {e}") from None
        else:
            if not os.path.exists(body):
                raise ParseError(f"explicit weight file not found: {body}")
            with open(body) as f:
                try:
                    arr = json.load(f)
                except json.JSONDecodeError as e:
                    raise ParseError(f"bad explicit weight file {body}: {e}") from None
        if not isinstance(arr, list) or not arr:
            raise ParseError("explicit weight must be a nonempty JSON array")
        try:
            return Weight.explicit(arr)
        except DomainError as e:
            raise ParseError(str(e)) from None
    raise ParseError(f"unknown weight spec {spec!r}")


def prefix_sum(w: Weight, n: int) -> float:
    """Module-level alias for Weight.prefix_sum."""
    return w.prefix_sum(n)


@dataclass
class ConditionReport:
    """Outcome of a finite-horizon weight-condition check."""

    condition: str
    params: dict
    horizon: int
    profile_args: np.ndarray
    profile_values: np.ndarray
    extremum: float
    arg_extremum: int | tuple[int, int]
    verdict: str  # consistent | violated | inconclusive
    note: str

    def sampled_profile(self, max_points: int = 129) -> list[list[float]]:
        """Geometrically subsampled profile, always including the extremum."""
        n = self.profile_args.shape[0]
        if n == 0:
            return []
        if n <= max_points:
            sel = np.arange(n)
        else:
            sel = np.unique(np.geomspace(1, n, max_points).astype(np.int64) - 1)
        if isinstance(self.arg_extremum, int):
            hits = np.nonzero(self.profile_args == self.arg_extremum)[0]
            if hits.size:
                sel = np.unique(np.append(sel, hits[0]))
        return [[int(self.profile_args[i]), float(self.profile_values[i])] for i in sel]

    def to_json_dict(self) -> dict:
        arg = self.arg_extremum
        return {
            "condition": self.condition,
            "params": self.params,
            "horizon": self.horizon,
            "extremum": self.extremum,
            "arg_extremum": list(arg) if isinstance(arg, tuple) else arg,
            "verdict": self.verdict,
            "note": self.note,
            "profile": self.sampled_profile(),
        }


def check_nuc(w: Weight, horizon: int, slack: float = 0.1) -> ConditionReport:
    """Profile r(n) = S(2n)/S(n) for n <= horizon against inf_n r(n) = 1.

    The verdict is ``consistent`` when min r(n) - 1 < slack and
    ``inconclusive`` otherwise: a finite prefix can bound the infimum from
    above but can never certify that it equals 1.
    """
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    if 2 * horizon > _HORIZON_CAP:
        raise DomainError(f"horizon {horizon} is beyond the supported range")
    if slack <= 0:
        raise DomainError("slack must be positive")
    S = w.prefix_sums_range(1, 2 * horizon)  # S[i] = S(i+1)
    ns = np.arange(1, horizon + 1, dtype=np.int64)
    ratios = S[2 * ns - 1] / S[ns - 1]
    k = int(np.argmin(ratios))
    mn = float(ratios[k])
    if mn - 1.0 < slack:
        verdict = "consistent"
        note = (
            "min ratio is within the slack of 1; a finite prefix cannot certify "
            "that the infimum over all n equals 1"
        )
    else:
        verdict = "inconclusive"
        note = (
            "min ratio stays above 1 + slack on this horizon; the infimum over "
            "all n may still reach 1 beyond it"
        )
    return ConditionReport(
        condition="nuc",
        params={"slack": slack},
        horizon=horizon,
        profile_args=ns,
        profile_values=ratios,
        extremum=mn,
        arg_extremum=int(ns[k]),
        verdict=verdict,
        note=note,
    )


def check_2sb(w: Weight, horizon: int) -> ConditionReport:
    """Profile q(n,k) = S(nk)/(S(n) S(k)) for n <= k <= horizon.

    Reports the sup over the triangle.  A finite sup is always consistent
    with the boundedness condition; the report says the horizon is finite.
    """
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    if horizon * horizon > _HORIZON_CAP:
        raise DomainError(f"horizon {horizon} is beyond the supported range")
    S = np.concatenate(([0.0], w.prefix_sums_range(1, horizon * horizon)))
    ns = np.arange(1, horizon + 1, dtype=np.int64)
    q = S[np.outer(ns, ns)] / np.outer(S[ns], S[ns])
    iu = np.triu_indices(horizon)
    tri = q[iu]
    k = int(np.argmax(tri))
    sup = float(tri[k])
    arg = (int(iu[0][k] + 1), int(iu[1][k] + 1))
    return ConditionReport(
        condition="2sb",
        params={},
        horizon=horizon,
        profile_args=ns,
        profile_values=np.max(np.triu(q), axis=1),  # row-wise sup profile
        extremum=sup,
        arg_extremum=arg,
        verdict="consistent",
        note="finite sup over a finite horizon; boundedness beyond it is not certified",
    )


def check_summable(w: Weight, r: float, horizon: int) -> ConditionReport:
    """Profile partial sums of w_i**r and decide summability where possible.

    For the parametric kinds the verdict uses the closed form: i**(-a*r) is
    summable iff a*r > 1 (harmonic has a = 1).  For explicit weights only a
    finite prefix is known, so the verdict is inconclusive.
    """
    if r <= 0:
        raise DomainError("summability exponent must be positive")
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    if horizon > _HORIZON_CAP:
        raise DomainError(f"horizon {horizon} is beyond the supported range")
    terms = w.values(1, horizon + 1) ** r
    partial, _, _ = kahan_scan(terms, 0.0, 0.0)
    ns = np.arange(1, horizon + 1, dtype=np.int64)
    if w.kind in ("harmonic", "power"):
        a = 1.0 if w.kind == "harmonic" else w.a
        summable = a * r > 1.0
        verdict = "consistent" if summable else "violated"
        note = (
            f"closed-form criterion a*r > 1 with a = {a}: "
            + ("series converges" if summable else "series diverges")
        )
    else:
        verdict = "inconclusive"
        note = "explicit weight gives only a finite prefix; summability is undetermined"
    return ConditionReport(
        condition="summable",
        params={"r": r},
        horizon=horizon,
        profile_args=ns,
        profile_values=partial,
        extremum=float(partial[-1]),
        arg_extremum=int(horizon),
        verdict=verdict,
        note=note,
    )
