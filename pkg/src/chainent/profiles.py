from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EntropyProfile:
    """Table of block entropies ``S_L`` (bits) against block size ``L``.

    ``model`` is a free-form tag and ``params`` records the parameters that
    produced the data, so profiles can be serialized without the model object.
    """

    L: np.ndarray
    S: np.ndarray
    model: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        L = np.asarray(self.L, dtype=np.int64)
        S = np.asarray(self.S, dtype=float)
        if L.ndim != 1 or L.shape != S.shape:
            raise ValueError("L and S must be 1D arrays of equal length")
        if L.size > 1 and np.any(np.diff(L) <= 0):
            raise ValueError("L must be strictly increasing")
        if np.any(S < 0):
            raise ValueError("entropies must be non-negative")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "S", S)

    def __len__(self):
        return self.L.size

    def at(self, L: int) -> float:
        idx = np.searchsorted(self.L, L)
        if idx >= self.L.size or self.L[idx] != L:
            raise KeyError(f"L={L} not in profile")
        return float(self.S[idx])

    def window(self, L_min: int, L_max: int) -> "EntropyProfile":
        mask = (self.L >= L_min) & (self.L <= L_max)
        return EntropyProfile(self.L[mask], self.S[mask], self.model, dict(self.params))
