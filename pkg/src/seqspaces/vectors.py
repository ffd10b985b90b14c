"""Finitely supported coefficient vectors.

CoeffVec is the package-wide sparse vector type: a list of (index, value)
entries with strictly increasing 1-based indices.  Exact zeros are dropped
at construction, so the zero vector is the empty entry list and the stored
support is the true support.

RunVec is a run-length encoded variant used for vectors that are constant
on long disjoint index ranges.  The block construction produces vectors
whose support can reach a few 1e8 coordinates; those are representable (and
their rearrangement-invariant norms computable) only in run form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParseError

__all__ = ["CoeffVec", "RunVec", "add_coeffvecs", "parse_vector_json"]

# Densification guard for RunVec.to_coeffvec and run-based norm paths.
DENSIFY_CAP = 1 << 21


@dataclass(frozen=True)
class CoeffVec:
    """Sparse vector with strictly increasing 1-based indices."""

    indices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    values: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.float64))

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        if idx.shape != val.shape or idx.ndim != 1:
            raise DomainError("indices and values must be 1-d arrays of equal length")
        if idx.size:
            if idx[0] < 1:
                raise DomainError("indices must be >= 1")
            if np.any(np.diff(idx) <= 0):
                raise DomainError("indices must be strictly increasing")
        if not np.all(np.isfinite(val)):
            raise DomainError("values must be finite")
        keep = val != 0.0
        if not np.all(keep):
            idx = idx[keep]
            val = val[keep]
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @staticmethod
    def from_pairs(pairs) -> "CoeffVec":
        pairs = sorted(pairs, key=lambda iv: iv[0])
        if not pairs:
            return CoeffVec()
        for i, _ in pairs:
            if int(i) != i:
                raise DomainError(f"index {i!r} is not an integer")
        idx = np.array([int(i) for i, _ in pairs], dtype=np.int64)
        val = np.array([float(v) for _, v in pairs], dtype=np.float64)
        return CoeffVec(idx, val)

    @staticmethod
    def from_dense(values) -> "CoeffVec":
        val = np.asarray(list(values), dtype=np.float64)
        return CoeffVec(np.arange(1, val.size + 1, dtype=np.int64), val)

    @staticmethod
    def basis(k: int, value: float = 1.0) -> "CoeffVec":
        if k < 1:
            raise DomainError("basis index must be >= 1")
        return CoeffVec(np.array([k], dtype=np.int64), np.array([value]))

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return zip(self.indices.tolist(), self.values.tolist())

    @property
    def support_max(self) -> int:
        return int(self.indices[-1]) if self.indices.size else 0

    def is_zero(self) -> bool:
        return self.indices.size == 0

    def abs(self) -> "CoeffVec":
        return CoeffVec(self.indices, np.abs(self.values))

    def scale(self, c: float) -> "CoeffVec":
        return CoeffVec(self.indices, c * self.values)

    def dense(self, length: int | None = None) -> np.ndarray:
        n = self.support_max if length is None else int(length)
        if n < self.support_max:
            raise DomainError("dense length is smaller than the support")
        if n > DENSIFY_CAP:
            raise DomainError(f"refusing to densify beyond {DENSIFY_CAP} coordinates")
        out = np.zeros(n, dtype=np.float64)
        if self.indices.size:
            out[self.indices - 1] = self.values
        return out

    def to_json_obj(self):
        """Dense list when the support is small, sparse object otherwise."""
        if self.support_max <= 64:
            return self.dense().tolist()
        return {"indices": self.indices.tolist(), "values": self.values.tolist()}

    def __repr__(self) -> str:
        return f"CoeffVec({list(zip(self.indices.tolist(), self.values.tolist()))!r})"


def add_coeffvecs(parts: list[tuple[float, CoeffVec]]) -> CoeffVec:
    """Linear combination sum c_j * v_j, combining duplicate indices exactly.

    Duplicate-index contributions are accumulated with fsum so the result
    does not depend on the order of the parts.
    """
    if not parts:
        return CoeffVec()
    idx = np.concatenate([v.indices for _, v in parts]) if parts else np.empty(0, np.int64)
    val = np.concatenate([c * v.values for c, v in parts]) if parts else np.empty(0)
    if idx.size == 0:
        return CoeffVec()
    order = np.argsort(idx, kind="stable")
    idx = idx[order]
    val = val[order]
    out_i: list[int] = []
    out_v: list[float] = []
    j = 0
    while j < idx.size:
        k = j
        while k < idx.size and idx[k] == idx[j]:
            k += 1
        out_i.append(int(idx[j]))
        out_v.append(math.fsum(val[j:k]))
        j = k
    return CoeffVec(np.array(out_i, dtype=np.int64), np.array(out_v))


@dataclass(frozen=True)
class RunVec:
    """Vector equal to values[r] on [starts[r], starts[r]+lengths[r]) per run.

    Runs are disjoint and sorted by start.  Entries outside all runs are 0.
    """

    starts: np.ndarray
    lengths: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        st = np.asarray(self.starts, dtype=np.int64)
        ln = np.asarray(self.lengths, dtype=np.int64)
        vl = np.asarray(self.values, dtype=np.float64)
        if not (st.shape == ln.shape == vl.shape) or st.ndim != 1:
            raise DomainError("starts, lengths, values must be 1-d arrays of equal length")
        if st.size:
            if st[0] < 1 or np.any(ln < 1):
                raise DomainError("runs need start >= 1 and length >= 1")
            ends = st + ln
            if np.any(st[1:] < ends[:-1]):
                raise DomainError("runs must be disjoint and sorted by start")
        if not np.all(np.isfinite(vl)):
            raise DomainError("run values must be finite")
        keep = vl != 0.0
        if not np.all(keep):
            st, ln, vl = st[keep], ln[keep], vl[keep]
        object.__setattr__(self, "starts", st)
        object.__setattr__(self, "lengths", ln)
        object.__setattr__(self, "values", vl)

    @property
    def support_size(self) -> int:
        return int(self.lengths.sum()) if self.lengths.size else 0

    @property
    def support_max(self) -> int:
        if not self.starts.size:
            return 0
        return int(self.starts[-1] + self.lengths[-1] - 1)

    def is_zero(self) -> bool:
        return self.starts.size == 0

    def to_coeffvec(self, cap: int = DENSIFY_CAP) -> CoeffVec:
        total = self.support_size
        if total > cap:
            raise DomainError(f"run vector has {total} entries, above the cap {cap}")
        idx = np.empty(total, dtype=np.int64)
        val = np.empty(total, dtype=np.float64)
        pos = 0
        for s, l, v in zip(self.starts.tolist(), self.lengths.tolist(), self.values.tolist()):
            idx[pos : pos + l] = np.arange(s, s + l, dtype=np.int64)
            val[pos : pos + l] = v
            pos += l
        return CoeffVec(idx, val)

    @staticmethod
    def from_coeffvec(v: CoeffVec) -> "RunVec":
        """Collapse maximal constant consecutive stretches into runs."""
        if v.is_zero():
            return RunVec(np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
        idx = v.indices
        val = v.values
        breaks = np.nonzero((np.diff(idx) != 1) | (np.diff(val) != 0.0))[0] + 1
        starts = np.concatenate(([0], breaks))
        ends = np.concatenate((breaks, [idx.size]))
        return RunVec(idx[starts], ends - starts, val[starts])


def parse_vector_json(text_or_obj) -> CoeffVec:
    """Parse the vector JSON forms: dense [..] or {"indices":[..],"values":[..]}."""
    obj = text_or_obj
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"vector is not valid JSON: {e}") from None
    if isinstance(obj, list):
        try:
            return CoeffVec.from_dense([float(x) for x in obj])
        except (TypeError, ValueError):
            raise ParseError("dense vector must be a list of numbers") from None
    if isinstance(obj, dict):
        if set(obj) != {"indices", "values"}:
            raise ParseError('sparse vector must have exactly the keys "indices" and "values"')
        idx, val = obj["indices"], obj["values"]
        if not isinstance(idx, list) or not isinstance(val, list) or len(idx) != len(val):
            raise ParseError("indices and values must be lists of equal length")
        try:
            return CoeffVec.from_pairs(zip(idx, val))
        except DomainError as e:
            raise ParseError(str(e)) from None
        except (TypeError, ValueError):
            raise ParseError("sparse vector entries must be numbers") from None
    raise ParseError("vector JSON must be a list or an object")
