"""Thermodynamic-limit block entropies of the XY chain.

The chain is

    H = -sum_l [ (a/2) ((1+gamma) X_l X_{l+1} + (1-gamma) Y_l Y_{l+1}) + Z_l ]

and is parameterized here by ``h = 1/a`` so that the field-free XX point
(``a = inf``) is simply ``h = 0``.

After a Jordan-Wigner transformation the ground state is Gaussian and is fixed
by the Majorana two-point function ``<c_m c_n> = delta_mn + i B_mn``.  ``B`` is
block Toeplitz with 2x2 blocks ``Pi_l = [[0, g_l], [-g_{-l}, 0]]``, where

    g_l = 1/(2 pi) int_0^{2 pi} dphi e^{-i l phi}
          (cos phi - h - i gamma sin phi) / |cos phi - h - i gamma sin phi| .

Restricting ``B`` to ``L`` consecutive sites gives ``B_L``; its canonical-form
values ``nu_m`` define ``L`` uncorrelated fermionic modes, and the block entropy
is ``sum_m H2((1 + nu_m)/2)``.  Cost is polynomial in ``L``.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import (
    CorrelationMatrixInvalidError,
    DimensionError,
    NumericalSingularityError,
    ToleranceNotMetError,
)
from .profiles import EntropyProfile
from .spectra import binary_entropy

DEFAULT_TOL = 1e-10
MAX_EVALUATIONS = 2 ** 22
_GL_ORDER = 24
_NU_SLACK = 1e-8


@dataclass(frozen=True)
class XYModel:
    """XY chain with inverse coupling ``h = 1/a`` and anisotropy ``gamma``.

    ``h = 0`` is the field-free XX chain; ``h = inf`` is the infinitely strong
    field limit with a product ground state.
    """

    h: float
    gamma: float

    def __post_init__(self):
        if not (self.h >= 0):
            raise ValueError(f"h must be >= 0, got {self.h!r}")
        if not (0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")

    @classmethod
    def from_a(cls, a: float, gamma: float) -> "XYModel":
        if a <= 0:
            raise ValueError("a must be positive")
        return cls(h=0.0 if math.isinf(a) else 1.0 / a, gamma=gamma)

    @property
    def a(self) -> float:
        if self.h == 0:
            return math.inf
        return 1.0 / self.h

    @property
    def critical(self) -> bool:
        return (self.h == 1.0 and self.gamma > 0) or (self.gamma == 0 and self.h <= 1.0)

    def describe(self) -> dict:
        return {"h": self.h, "gamma": self.gamma, "a": self.a}


@dataclass(frozen=True)
class CouplingSequence:
    """``g_l`` for ``l = -max_lag .. max_lag``, stored in that order."""

    max_lag: int
    values: np.ndarray
    achieved_tolerance: float
    method: str = "quadrature"

    def __post_init__(self):
        if self.values.shape != (2 * self.max_lag + 1,):
            raise DimensionError("values must hold 2*max_lag + 1 coefficients")

    def __getitem__(self, lag):
        return self.values[np.asarray(lag) + self.max_lag]

    @property
    def lags(self) -> np.ndarray:
        return np.arange(-self.max_lag, self.max_lag + 1)


@dataclass(frozen=True)
class BlockCorrelationMatrix:
    """Real antisymmetric ``2L x 2L`` block of the Majorana correlation matrix."""

    L: int
    entries: np.ndarray

    def block(self, j: int, k: int) -> np.ndarray:
        return self.entries[2 * j:2 * j + 2, 2 * k:2 * k + 2]


@dataclass(frozen=True)
class ModeOccupations:
    """Canonical-form values ``nu_m`` in [0, 1], sorted descending."""

    nu: np.ndarray

    @property
    def L(self) -> int:
        return self.nu.size

    def __len__(self):
        return self.nu.size


# --------------------------------------------------------------------------
# coupling coefficients
# --------------------------------------------------------------------------

def analytic_coefficients(model: XYModel, max_lag: int) -> np.ndarray | None:
    """Closed-form ``g_l`` where the integrand is piecewise constant or a pure phase.

    Returns None when no closed form applies.
    """
    lags = np.arange(-max_lag, max_lag + 1)
    if math.isinf(model.h):
        return np.where(lags == 0, -1.0, 0.0)
    if model.gamma == 0:
        # integrand is sign(cos phi - h): +1 on |phi| < phi_a, -1 elsewhere
        phi_a = math.acos(min(model.h, 1.0))
        g = np.empty(lags.size)
        nz = lags != 0
        g[~nz] = 2.0 * phi_a / math.pi - 1.0
        g[nz] = 2.0 * np.sin(lags[nz] * phi_a) / (lags[nz] * math.pi)
        return g
    if model.h == 1.0 and model.gamma == 1.0:
        # integrand is -i exp(-i phi / 2) on (0, 2 pi)
        return -2.0 / (math.pi * (2.0 * lags + 1.0))
    return None


def _integrand_parts(model: XYModel, phi: np.ndarray):
    # cos(phi) - h written as (1 - h) - 2 sin^2(phi/2) to avoid cancellation near phi = 0
    re = (1.0 - model.h) - 2.0 * np.sin(0.5 * phi) ** 2
    im = -model.gamma * np.sin(phi)
    r = np.hypot(re, im)
    if np.any(r == 0.0):
        bad = float(phi[np.argmin(r)])
        raise NumericalSingularityError(
            f"integrand denominator vanishes at phi={bad!r} for h={model.h}, gamma={model.gamma}"
        )
    return re / r, im / r


def _breakpoints(model: XYModel) -> list[float]:
    points = [0.0, math.pi]
    if model.gamma == 0 and 0.0 < model.h < 1.0:
        points.insert(1, math.acos(model.h))
    return points


def _composite_nodes(breaks: list[float], panels: int):
    x, w = np.polynomial.legendre.leggauss(_GL_ORDER)
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes.append((mid[:, None] + half[:, None] * x[None, :]).ravel())
        weights.append((half[:, None] * w[None, :]).ravel())
    return np.concatenate(nodes), np.concatenate(weights)


def _quadrature_pass(model: XYModel, max_lag: int, panels: int) -> np.ndarray:
    """One composite Gauss-Legendre evaluation of every ``g_l`` on [0, pi].

    With ``f(-phi) = conj f(phi)`` the full-period integral folds onto
    [0, pi]: ``g_{+-l} = C_l +- S_l`` with
    ``C_l = (1/pi) int cos(l phi) Re f`` and ``S_l = (1/pi) int sin(l phi) Im f``.
    """
    phi, w = _composite_nodes(_breakpoints(model), panels)
    re, im = _integrand_parts(model, phi)
    wre, wim = w * re / math.pi, w * im / math.pi
    lags = np.arange(max_lag + 1, dtype=float)
    C = np.zeros(max_lag + 1)
    S = np.zeros(max_lag + 1)
    chunk = max(1, 2 ** 21 // (max_lag + 1))
    for start in range(0, phi.size, chunk):
        arg = np.outer(lags, phi[start:start + chunk])
        C += np.cos(arg) @ wre[start:start + chunk]
        S += np.sin(arg) @ wim[start:start + chunk]
    g = np.empty(2 * max_lag + 1)
    g[max_lag:] = C + S
    g[:max_lag + 1] = (C - S)[::-1]
    return g


def quadrature_coefficients(model: XYModel, max_lag: int, tol: float = DEFAULT_TOL):
    """Adaptive composite Gauss-Legendre evaluation of ``g_l``.

    Panels are halved until two successive passes agree to ``tol`` in every
    coefficient.  Returns ``(values, achieved_tolerance)``.
    """
    segments = len(_breakpoints(model)) - 1
    # start with roughly one oscillation of the highest harmonic per panel
    panels = max(4, int(math.ceil(max_lag / 2)))
    previous = _quadrature_pass(model, max_lag, panels)
    while True:
        panels *= 2
        if panels * segments * _GL_ORDER > MAX_EVALUATIONS:
            raise ToleranceNotMetError(
                f"quadrature did not reach tol={tol} within {MAX_EVALUATIONS} evaluations "
                f"(h={model.h}, gamma={model.gamma})"
            )
        current = _quadrature_pass(model, max_lag, panels)
        change = float(np.max(np.abs(current - previous)))
        if change <= tol:
            return current, change
        previous = current


def coupling_coefficients(model: XYModel, max_lag: int, tol: float = DEFAULT_TOL,
                          method: str = "auto") -> CouplingSequence:
    """Coefficients ``g_l`` for ``|l| <= max_lag``.

    ``method="auto"`` uses the closed forms at ``gamma = 0``, at the critical
    Ising point and at ``h = inf``, and adaptive quadrature elsewhere;
    ``"quadrature"`` and ``"analytic"`` force one route.
    """
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if method not in ("auto", "quadrature", "analytic"):
        raise ValueError(f"unknown method {method!r}")
    if method != "quadrature":
        exact = analytic_coefficients(model, max_lag)
        if exact is not None:
            return CouplingSequence(max_lag, exact, 0.0, method="analytic")
        if method == "analytic":
            raise ValueError(f"no closed form for h={model.h}, gamma={model.gamma}")
    if math.isinf(model.h):
        raise NumericalSingularityError("h = inf has no finite integrand; use the analytic route")
    values, achieved = quadrature_coefficients(model, max_lag, tol)
    return CouplingSequence(max_lag, values, achieved, method="quadrature")


# --------------------------------------------------------------------------
# block matrix, modes, entropy
# --------------------------------------------------------------------------

def block_correlation(g: CouplingSequence, L: int) -> BlockCorrelationMatrix:
    """Assemble ``B_L`` with ``block(j, k) = Pi_{k-j}``."""
    if L < 1:
        raise ValueError("L must be >= 1")
    if L > g.max_lag + 1:
        raise DimensionError(f"L={L} needs lags up to {L - 1}, have {g.max_lag}")
    idx = np.arange(L)
    lag = idx[None, :] - idx[:, None]  # k - j
    B = np.zeros((2 * L, 2 * L))
    B[0::2, 1::2] = g[lag]
    B[1::2, 0::2] = -g[-lag]
    return BlockCorrelationMatrix(L, B)


def mode_occupations(B: BlockCorrelationMatrix) -> ModeOccupations:
    """Nonnegative eigenvalues of the Hermitian matrix ``i B_L``.

    The spectrum comes in ``+-nu`` pairs; the upper half is kept.  Roundoff up
    to 1e-8 outside [0, 1] is clamped, anything larger means the input is not
    a valid correlation matrix.
    """
    L = B.L
    try:
        w = linalg.eigvalsh(1j * B.entries)
    except linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise CorrelationMatrixInvalidError(f"eigensolver failed: {exc}") from exc
    nu = w[L:][::-1]
    if nu[0] > 1.0 + _NU_SLACK or nu[-1] < -_NU_SLACK:
        raise CorrelationMatrixInvalidError(
            f"mode values span [{nu[-1]!r}, {nu[0]!r}], outside [0, 1]"
        )
    return ModeOccupations(np.clip(nu, 0.0, 1.0))


def block_entropy(nu: ModeOccupations) -> float:
    """Entropy in bits of a block with mode occupations ``nu``."""
    return math.fsum(np.atleast_1d(binary_entropy((1.0 + nu.nu) / 2.0)))


def block_modes(model: XYModel, L: int, tol: float = DEFAULT_TOL,
                g: CouplingSequence | None = None) -> ModeOccupations:
    if g is None:
        g = coupling_coefficients(model, L - 1, tol)
    return mode_occupations(block_correlation(g, L))


def entropy_profile(model: XYModel, L_max: int, tol: float = DEFAULT_TOL,
                    workers: int = 1) -> EntropyProfile:
    """``S_L`` for ``L = 1 .. L_max`` from one shared coefficient sequence.

    Each block is independent, so ``workers > 1`` spreads them over threads
    without changing any result.
    """
    if L_max < 1:
        raise ValueError("L_max must be >= 1")
    g = coupling_coefficients(model, L_max - 1, tol)

    def one(L):
        return block_entropy(mode_occupations(block_correlation(g, L)))

    Ls = list(range(1, L_max + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            S = list(pool.map(one, Ls))
    else:
        S = [one(L) for L in Ls]
    return EntropyProfile(np.array(Ls), np.array(S), model="xy", params=model.describe())


def half_chain_entropy(model: XYModel) -> float:
    """Near-critical Ising saturation entropy ``(1/6) log2 (1/|1 - a|)`` in bits.

    Only meaningful for ``gamma = 1`` and ``a`` close to 1; farther out the
    value drifts from the true saturation entropy (and turns negative past
    ``|1 - a| = 1``), which is reported with a warning rather than refused.
    """
    if model.gamma != 1.0:
        raise ValueError("half_chain_entropy applies to the Ising chain (gamma = 1) only")
    if model.h == 1.0:
        raise NumericalSingularityError("entropy diverges at the critical point a = 1")
    if model.h == 0 or math.isinf(model.h):
        raise ValueError("a must be finite and nonzero")
    dist = abs(1.0 - model.a)
    if dist >= 0.5:
        warnings.warn(
            f"|1 - a| = {dist:.3g} is far from the critical point; the formula is a "
            "near-critical approximation",
            stacklevel=2,
        )
    return math.log2(1.0 / dist) / 6.0
