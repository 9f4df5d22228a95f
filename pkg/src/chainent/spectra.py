"""Entropy functionals and spectra of Gaussian reduced density matrices.

A block described by mode occupations ``nu`` has a reduced density matrix
that factorizes over ``L`` independent fermionic modes.  Its ``2**L``
eigenvalues are all products ``prod_m (1 +/- nu_m) / 2``; this module
enumerates them (fully, or only the largest ``k``), compares spectra in the
majorization order and counts the levels above a threshold.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

#: 2**24 doubles is 128 MB; larger blocks must go through the top-k search.
FULL_SPECTRUM_MAX_L = 24


@dataclass(frozen=True)
class ProbabilitySpectrum:
    """Eigenvalues of a density matrix, sorted descending.

    ``complete`` is False when only a leading prefix of the spectrum is held.
    """

    probabilities: np.ndarray
    complete: bool = True

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1:
            raise ValueError("probabilities must be one-dimensional")
        if p.size and (p.min() < 0.0 or p.max() > 1.0):
            raise ValueError("probabilities must lie in [0, 1]")
        if p.size > 1 and np.any(np.diff(p) > 0):
            raise ValueError("probabilities must be sorted descending")
        total = math.fsum(p)
        if self.complete and abs(total - 1.0) > 1e-10:
            raise ValueError(f"complete spectrum sums to {total!r}, not 1")
        if not self.complete and total > 1.0 + 1e-10:
            raise ValueError(f"partial spectrum sums to {total!r} > 1")
        object.__setattr__(self, "probabilities", p)

    def __len__(self):
        return self.probabilities.size

    @classmethod
    def from_eigenvalues(cls, eigenvalues, tol: float = 1e-10) -> "ProbabilitySpectrum":
        """Build a complete spectrum from raw density-matrix eigenvalues.

        Negative roundoff down to ``-tol`` is clipped to zero.
        """
        w = np.asarray(eigenvalues, dtype=float)
        if w.size and w.min() < -tol:
            raise ValueError(f"eigenvalue {w.min()!r} below -{tol}: matrix is not PSD")
        w = np.clip(w, 0.0, 1.0)
        return cls(np.sort(w)[::-1], complete=True)


@dataclass(frozen=True)
class MajorizationReport:
    holds: bool
    max_violation: float
    worst_index: int


def binary_entropy(x):
    """Binary entropy ``-x log2 x - (1-x) log2 (1-x)`` in bits, with 0 log 0 = 0.

    Accepts scalars or arrays; values outside [0, 1] by more than 1e-12 raise.
    """
    arr = np.asarray(x, dtype=float)
    if np.any((arr < -1e-12) | (arr > 1.0 + 1e-12)) or np.any(np.isnan(arr)):
        raise ValueError("binary_entropy argument outside [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    out = _plogp(arr) + _plogp(1.0 - arr)
    return float(out) if np.ndim(out) == 0 else out


def _plogp(p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = -p[pos] * np.log2(p[pos])
    return out


def shannon_entropy(spec: ProbabilitySpectrum) -> float:
    if not spec.complete:
        raise ValueError("entropy of a truncated spectrum is undefined; use the full spectrum")
    return math.fsum(_plogp(spec.probabilities))


def _mode_factors(nu):
    nu = np.asarray(getattr(nu, "nu", nu), dtype=float)
    return nu, (1.0 + nu) / 2.0, (1.0 - nu) / 2.0


def reduced_spectrum_full(nu) -> ProbabilitySpectrum:
    """All ``2**L`` eigenvalues of the block density matrix.

    Bit ``m`` of the enumeration index selects the ``(1 - nu_m)/2`` factor.
    Products are accumulated mode by mode, left to right, which
    :func:`reduced_spectrum_topk` reproduces bit for bit.
    """
    nu, plus, minus = _mode_factors(nu)
    if nu.size > FULL_SPECTRUM_MAX_L:
        raise ValueError(
            f"full spectrum needs 2**{nu.size} entries (cap is L <= {FULL_SPECTRUM_MAX_L}); "
            "use reduced_spectrum_topk instead"
        )
    p = np.ones(1)
    for m in range(nu.size):
        # index bit m is the most recent (lowest) axis after ravel
        p = np.stack([p * plus[m], p * minus[m]], axis=-1).ravel()
    return ProbabilitySpectrum(np.sort(p)[::-1], complete=True)


def _product(plus, minus, flipped) -> float:
    value = 1.0
    for m in range(plus.size):
        value = value * (minus[m] if m in flipped else plus[m])
    return value


def reduced_spectrum_topk(nu, k: int) -> ProbabilitySpectrum:
    """The ``k`` largest eigenvalues, by best-first search over flip sets.

    Starting from the all-``+`` assignment, flipping mode ``m`` multiplies the
    eigenvalue by ``(1 - nu_m)/(1 + nu_m) <= 1``.  Modes are ordered by that
    ratio (cheapest flip first) and each flip set, written as a sorted index
    tuple, has two children: append the next mode, or advance the last one.
    Every set is reached exactly once and children never beat their parent,
    so a heap on log-probability pops the spectrum in descending order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    nu, plus, minus = _mode_factors(nu)
    L = nu.size
    if k >= 2 ** L:
        return reduced_spectrum_full(nu)
    with np.errstate(divide="ignore"):
        log_plus = np.log(plus)
        cost = np.log(plus) - np.log(minus)  # +inf for nu == 1
    order = np.argsort(cost, kind="stable")
    cost = cost[order]
    base = math.fsum(log_plus)

    heap: list[tuple[float, tuple[int, ...]]] = [(-base, ())]
    popped: list[tuple[float, tuple[int, ...]]] = []
    cutoff = None
    while heap:
        neg_logp, flips = heap[0]
        if len(popped) >= k:
            if cutoff is None:
                cutoff = popped[k - 1][0]
            # keep popping near-ties so the exact products can settle the order
            if -neg_logp < cutoff - 1e-9 or neg_logp == math.inf:
                break
        heapq.heappop(heap)
        logp = -neg_logp
        popped.append((logp, flips))
        if flips:
            last = flips[-1]
            # flipping a pure mode (nu == 1) gives exactly zero; the zero tail is padded below
            if last + 1 < L and cost[last + 1] < math.inf:
                heapq.heappush(heap, (-(logp + cost[last] - cost[last + 1]), flips[:-1] + (last + 1,)))
                heapq.heappush(heap, (-(logp - cost[last + 1]), flips + (last + 1,)))
        elif L and cost[0] < math.inf:
            heapq.heappush(heap, (-(logp - cost[0]), (0,)))

    values = np.array(
        [_product(plus, minus, {int(order[i]) for i in flips}) for _, flips in popped]
    )
    values = np.sort(values)[::-1][:k]
    if values.size < k:
        values = np.concatenate([values, np.zeros(k - values.size)])
    return ProbabilitySpectrum(values, complete=False)


def _partial_sums(p: np.ndarray) -> np.ndarray:
    # extended precision keeps ~1e6-term running sums well inside 1e-10
    return np.cumsum(p.astype(np.longdouble))


def majorization_compare(p: ProbabilitySpectrum, q: ProbabilitySpectrum,
                         tol: float = 1e-10) -> MajorizationReport:
    """Test whether ``q`` is majorized by ``p``.

    Every partial sum of descending ``q`` must not exceed the matching partial
    sum of descending ``p`` by more than ``tol``.  The shorter vector is padded
    with zeros.  ``worst_index`` is the 0-based position of the largest excess
    (0 when there is none).
    """
    if not (p.complete and q.complete):
        raise ValueError("majorization needs complete spectra")
    n = max(len(p), len(q))
    a = np.zeros(n)
    b = np.zeros(n)
    a[: len(p)] = p.probabilities
    b[: len(q)] = q.probabilities
    excess = _partial_sums(b) - _partial_sums(a)
    worst = int(np.argmax(excess)) if n else 0
    violation = float(max(excess[worst], 0.0)) if n else 0.0
    if violation == 0.0:
        worst = 0
    return MajorizationReport(holds=violation <= tol, max_violation=violation, worst_index=worst)


def effective_rank(spec: ProbabilitySpectrum, epsilon: float) -> int:
    """Number of eigenvalues ``>= epsilon``.

    A truncated spectrum is accepted only if its smallest retained value is
    already below ``epsilon``, otherwise the count would be a lower bound.
    """
    p = spec.probabilities
    if not spec.complete and (p.size == 0 or p[-1] >= epsilon):
        raise ValueError("truncated spectrum too short to count levels above epsilon")
    return int(np.count_nonzero(p >= epsilon))


def effective_rank_from_modes(nu, epsilon: float, k0: int = 64) -> int:
    """Effective rank straight from mode occupations, growing the top-k prefix as needed."""
    nu = np.asarray(getattr(nu, "nu", nu), dtype=float)
    k = k0
    while True:
        spec = reduced_spectrum_topk(nu, k)
        if spec.complete or spec.probabilities[-1] < epsilon:
            return effective_rank(spec, epsilon)
        k *= 4
