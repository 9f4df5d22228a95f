"""Exact ground states and block entropies of finite XXZ chains.

    H = s * sum_l ( X_l X_{l+1} + Y_l Y_{l+1} + delta Z_l Z_{l+1} + lam Z_l )

with ``s = -1`` for the ``"paper-ferro"`` sign and ``s = +1`` for
``"antiferro"``.  States are plain numpy vectors of length ``2**N``; bit ``l`` of
the basis index is spin ``l``, and bit value 0 means ``Z_l = +1``.

The total magnetization commutes with ``H``, so the ground state is searched
sector by sector with a Lanczos iteration and the lowest sector wins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg, sparse

from .errors import ConvergenceError, DegenerateGroundStateError, DimensionError
from .profiles import EntropyProfile
from .spectra import ProbabilitySpectrum, shannon_entropy

N_MAX = 24
TIE_TOL = 1e-10

SIGNS = {"paper-ferro": -1.0, "antiferro": 1.0}
BOUNDARIES = ("periodic", "open")


@dataclass(frozen=True)
class XXZModel:
    delta: float
    lam: float
    N: int
    sign_convention: str = "antiferro"
    boundary: str = "periodic"

    def __post_init__(self):
        if not (2 <= self.N <= N_MAX):
            raise ValueError(f"N must lie in [2, {N_MAX}], got {self.N}")
        if self.sign_convention not in SIGNS:
            raise ValueError(f"sign_convention must be one of {sorted(SIGNS)}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")

    @property
    def sign(self) -> float:
        return SIGNS[self.sign_convention]

    @property
    def dim(self) -> int:
        return 1 << self.N

    def bonds(self) -> list[tuple[int, int]]:
        pairs = [(l, l + 1) for l in range(self.N - 1)]
        # a 2-site ring would double the single bond
        if self.boundary == "periodic" and self.N > 2:
            pairs.append((self.N - 1, 0))
        return pairs

    def describe(self) -> dict:
        return {"delta": self.delta, "lambda": self.lam, "N": self.N,
                "sign_convention": self.sign_convention, "boundary": self.boundary}


@dataclass(frozen=True)
class GroundState:
    energy: float
    state: np.ndarray
    sector: int  # total sigma^z = N - 2 * (number of down spins)
    residual: float


# --------------------------------------------------------------------------
# Hamiltonian action
# --------------------------------------------------------------------------

def _bit(idx, l):
    return (idx >> l) & 1


def apply_hamiltonian(model: XXZModel, state: np.ndarray) -> np.ndarray:
    """Matrix-free ``H |state>`` on the full ``2**N`` space (not normalized)."""
    state = np.asarray(state)
    if state.shape != (model.dim,):
        raise DimensionError(f"state has shape {state.shape}, expected ({model.dim},)")
    s = model.sign
    idx = np.arange(model.dim, dtype=np.int64)
    diag = np.zeros(model.dim)
    out = np.zeros_like(state, dtype=np.result_type(state, float))
    for l in range(model.N):
        diag += s * model.lam * (1 - 2 * _bit(idx, l))
    for l, m in model.bonds():
        bl, bm = _bit(idx, l), _bit(idx, m)
        diag += s * model.delta * (1 - 2 * bl) * (1 - 2 * bm)
        # XX + YY = 2 (S+S- + S-S+): swaps antiparallel neighbours
        src = idx[bl != bm]
        out[src ^ ((1 << l) | (1 << m))] += 2.0 * s * state[src]
    out += diag * state
    return out


def sector_basis(N: int, n_down: int) -> np.ndarray:
    """Sorted basis indices with exactly ``n_down`` set bits."""
    idx = np.arange(1 << N, dtype=np.int64)
    return idx[np.bitwise_count(idx) == n_down]


def sector_hamiltonian(model: XXZModel, basis: np.ndarray) -> sparse.csr_matrix:
    """``H`` restricted to one magnetization sector, from the same bit rules."""
    s = model.sign
    n = basis.size
    diag = np.zeros(n)
    for l in range(model.N):
        diag += s * model.lam * (1 - 2 * _bit(basis, l))
    rows, cols = [np.arange(n)], [np.arange(n)]
    vals = []
    for l, m in model.bonds():
        bl, bm = _bit(basis, l), _bit(basis, m)
        diag += s * model.delta * (1 - 2 * bl) * (1 - 2 * bm)
        src = np.nonzero(bl != bm)[0]
        dst = np.searchsorted(basis, basis[src] ^ ((1 << l) | (1 << m)))
        rows.append(dst)
        cols.append(src)
        vals.append(np.full(src.size, 2.0 * s))
    data = np.concatenate([diag] + vals)
    H = sparse.coo_matrix((data, (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    return H.tocsr()


def _gershgorin_lower_bound(H: sparse.csr_matrix) -> float:
    d = H.diagonal()
    off = np.asarray(abs(H).sum(axis=1)).ravel() - np.abs(d)
    return float(np.min(d - off))


# --------------------------------------------------------------------------
# Lanczos
# --------------------------------------------------------------------------

def lanczos_ground(matvec, v0: np.ndarray, tol: float = 1e-10, max_iter: int = 500):
    """Lowest eigenpair of a real symmetric operator.

    Full reorthogonalization (two Gram-Schmidt passes) against every stored
    Krylov vector.  The Ritz residual estimate decides when to assemble the
    Ritz vector; the true residual ``||H psi - E psi||`` decides when to stop.

    Returns ``(energy, vector, residual, iterations)``.
    """
    n = v0.size
    v = v0 / np.linalg.norm(v0)
    V = np.empty((min(64, n), n))
    V[0] = v
    alphas: list[float] = []
    betas: list[float] = []
    w = matvec(v)
    for j in range(min(max_iter, n)):
        alpha = float(V[j] @ w)
        alphas.append(alpha)
        w = w - alpha * V[j]
        if j:
            w = w - betas[-1] * V[j - 1]
        for _ in range(2):
            w = w - V[: j + 1].T @ (V[: j + 1] @ w)
        beta = float(np.linalg.norm(w))

        theta, s = linalg.eigh_tridiagonal(np.array(alphas), np.array(betas),
                                           select="i", select_range=(0, 0))
        estimate = beta * abs(s[-1, 0])
        exhausted = j + 1 == n or beta <= 1e-13 * max(1.0, abs(theta[0]))
        if estimate <= 0.1 * tol or exhausted:
            psi = V[: j + 1].T @ s[:, 0]
            psi /= np.linalg.norm(psi)
            Hpsi = matvec(psi)
            energy = float(psi @ Hpsi)
            residual = float(np.linalg.norm(Hpsi - energy * psi))
            if residual <= tol:
                return energy, psi, residual, j + 1
            if exhausted:
                raise ConvergenceError(
                    f"Krylov space exhausted with residual {residual:.3e} > tol={tol}"
                )
        if j + 1 >= V.shape[0]:
            grown = np.empty((min(2 * V.shape[0], n), n))
            grown[: V.shape[0]] = V
            V = grown
        V[j + 1] = w / beta
        betas.append(beta)
        w = matvec(V[j + 1])
    raise ConvergenceError(f"Lanczos did not reach residual {tol} in {max_iter} iterations")


def ground_state(model: XXZModel, tol: float = 1e-10, max_iter: int = 500,
                 seed: int = 0) -> GroundState:
    """Lowest eigenpair of ``H`` over all magnetization sectors.

    Sectors are visited in order of increasing ``|total sigma^z|``; a sector
    whose Gershgorin lower bound already lies above the best energy found (by
    more than the tie tolerance) cannot hold or tie the ground state and is
    skipped.  Equal lowest energies in two sectors raise
    :class:`DegenerateGroundStateError`.
    """
    N = model.N
    order = sorted(range(N + 1), key=lambda n: (abs(N - 2 * n), n))
    best: GroundState | None = None
    candidates: list[tuple[float, int]] = []
    for n_down in order:
        basis = sector_basis(N, n_down)
        H = sector_hamiltonian(model, basis)
        if best is not None and _gershgorin_lower_bound(H) > best.energy + TIE_TOL:
            continue
        rng = np.random.default_rng([seed, n_down])
        v0 = rng.standard_normal(basis.size)
        energy, vec, residual, _ = lanczos_ground(lambda x: H @ x, v0, tol, max_iter)
        candidates.append((energy, N - 2 * n_down))
        if best is None or energy < best.energy:
            full = np.zeros(model.dim)
            full[basis] = vec
            best = GroundState(energy, full, N - 2 * n_down, residual)
    ties = [m for e, m in candidates if m != best.sector and abs(e - best.energy) <= TIE_TOL]
    if ties:
        raise DegenerateGroundStateError(
            f"ground energy {best.energy:.12g} shared by sectors {sorted([best.sector] + ties)}; "
            "pick a sector explicitly"
        )
    return best


def sector_ground_state(model: XXZModel, sector: int, tol: float = 1e-10,
                        max_iter: int = 500, seed: int = 0) -> GroundState:
    """Lowest eigenpair inside one fixed total-``sigma^z`` sector."""
    if (model.N - sector) % 2 or abs(sector) > model.N:
        raise ValueError(f"sector {sector} impossible for N={model.N}")
    n_down = (model.N - sector) // 2
    basis = sector_basis(model.N, n_down)
    H = sector_hamiltonian(model, basis)
    rng = np.random.default_rng([seed, n_down])
    energy, vec, residual, _ = lanczos_ground(lambda x: H @ x, rng.standard_normal(basis.size),
                                              tol, max_iter)
    full = np.zeros(model.dim)
    full[basis] = vec
    return GroundState(energy, full, sector, residual)


# --------------------------------------------------------------------------
# reduced density matrices
# --------------------------------------------------------------------------

def _block_matrix(state: np.ndarray, N: int, L: int) -> np.ndarray:
    state = np.asarray(state)
    if state.shape != (1 << N,):
        raise DimensionError(f"state has shape {state.shape}, expected ({1 << N},)")
    if not 1 <= L <= N:
        raise ValueError(f"block size L={L} outside [1, {N}]")
    # rows: sites L..N-1 (high bits); columns: sites 0..L-1 (low bits)
    return state.reshape(1 << (N - L), 1 << L)


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Verify Hermiticity, PSD and unit trace; return the eigenvalues."""
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-10:
        raise ValueError(f"density matrix trace {np.trace(rho)!r} != 1")
    w = linalg.eigvalsh(rho)
    if w[0] < -1e-10:
        raise ValueError(f"density matrix has eigenvalue {w[0]!r} < 0")
    return w


def reduced_density_matrix(state: np.ndarray, N: int, L: int, check: bool = True) -> np.ndarray:
    """``rho_L`` of sites ``0 .. L-1``: partial trace over sites ``L .. N-1``."""
    M = _block_matrix(state, N, L)
    rho = M.T @ M.conj()
    rho = 0.5 * (rho + rho.conj().T)
    if check:
        check_density_matrix(rho)
    return rho


def block_spectrum(state: np.ndarray, N: int, L: int) -> ProbabilitySpectrum:
    """Eigenvalues of ``rho_L``.

    When the complement is smaller, the spectrum is read off the complement's
    Gram matrix, which shares every nonzero eigenvalue; zeros beyond the
    Schmidt rank are then not listed.
    """
    if L <= N - L:
        w = check_density_matrix(reduced_density_matrix(state, N, L, check=False))
    else:
        M = _block_matrix(state, N, L)
        gram = M @ M.conj().T
        w = check_density_matrix(0.5 * (gram + gram.conj().T))
    return ProbabilitySpectrum.from_eigenvalues(w)


def translate(state: np.ndarray, N: int, shift: int) -> np.ndarray:
    """Cyclically move spin ``l`` to site ``l - shift``; block 0.. then covers shift.."""
    idx = np.arange(1 << N, dtype=np.int64)
    shift %= N
    mask = (1 << N) - 1
    rotated = ((idx >> shift) | (idx << (N - shift))) & mask
    out = np.empty_like(state)
    out[rotated] = state
    return out


def entropy_profile_ed(model: XXZModel, tol: float = 1e-10, max_iter: int = 500,
                       seed: int = 0, gs: GroundState | None = None) -> EntropyProfile:
    """``S_L`` for ``L = 1 .. N-1`` of the ground state of ``model``."""
    if gs is None:
        gs = ground_state(model, tol, max_iter, seed)
    Ls = np.arange(1, model.N)
    S = [max(shannon_entropy(block_spectrum(gs.state, model.N, int(L))), 0.0) for L in Ls]
    params = model.describe() | {"energy": gs.energy, "sector": gs.sector}
    return EntropyProfile(Ls, np.array(S), model="xxz", params=params)

