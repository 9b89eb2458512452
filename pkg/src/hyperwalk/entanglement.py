"""Reduced density matrices, partial transposes and negativity between two DoF.

Each kept factor is stored on a compressed basis: only the index values that
are actually populated (polarization always keeps ``[H, V]``). The density
matrix lives on the full product of the two compressed bases, which keeps the
tensor structure needed by the partial transpose.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import List, Sequence, Tuple

import numpy as np

from .kernels import jacobi_eigvalsh
from .operators import SU2Params, WalkKind, WalkVariant, evolve, trajectory
from .state import InitialStateParams, WalkState, make_initial_state

__all__ = [
    "DOF_LABELS",
    "JACOBI_MAX_DIM",
    "NEGATIVITY_FLOOR",
    "FactorBasis",
    "DensityMatrix",
    "normalize_dof",
    "parse_pair",
    "factor_bases",
    "state_tensor",
    "reduced_density_matrix",
    "partial_transpose",
    "hermitian_eigenvalues",
    "negativity",
    "state_negativity",
    "all_pair_negativities",
    "negativity_curve",
    "sweep_angles",
    "parameter_sweep",
]

DOF_LABELS = ("polarization", "path", "oam")
_ALIASES = {"pol": "polarization", "polarisation": "polarization", "x": "path", "pos": "path", "m": "oam"}

#: Above this dimension the eigenproblem goes to LAPACK instead of Jacobi.
JACOBI_MAX_DIM = 256
#: Eigenvalues with smaller modulus count as zero in the negativity sum.
NEGATIVITY_FLOOR = 1e-12
HERMITIAN_TOL = 1e-10


def normalize_dof(label: str) -> str:
    label = _ALIASES.get(label.lower(), label.lower())
    if label not in DOF_LABELS:
        raise ValueError(f"unknown degree of freedom {label!r}")
    return label


def parse_pair(text: str) -> Tuple[str, str]:
    """``"pol-oam"`` -> ``("polarization", "oam")``; identical labels are rejected."""
    parts = text.replace(",", "-").split("-")
    if len(parts) != 2:
        raise ValueError(f"expected two DoF labels like 'pol-oam', got {text!r}")
    a, b = normalize_dof(parts[0]), normalize_dof(parts[1])
    if a == b:
        raise ValueError(f"the two DoF must differ, got {text!r}")
    return a, b


@dataclass(frozen=True)
class FactorBasis:
    label: str
    values: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DensityMatrix:
    """Matrix on ``first x second``; row index is ``i * len(second) + j``."""

    first: FactorBasis
    second: FactorBasis
    matrix: np.ndarray

    def __post_init__(self):
        d = len(self.first) * len(self.second)
        if self.matrix.shape != (d, d):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match bases ({d}x{d})")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))


def factor_bases(state: WalkState) -> dict:
    xs = sorted({x for (_, x, _) in state.amplitudes})
    ms = sorted({m for (_, _, m) in state.amplitudes})
    return {
        "polarization": FactorBasis("polarization", (0, 1)),
        "path": FactorBasis("path", tuple(xs)),
        "oam": FactorBasis("oam", tuple(ms)),
    }


def state_tensor(state: WalkState) -> Tuple[np.ndarray, dict]:
    """Dense ``psi[coin, x, m]`` on the compressed bases, plus the bases."""
    bases = factor_bases(state)
    xi = {x: i for i, x in enumerate(bases["path"].values)}
    mi = {m: i for i, m in enumerate(bases["oam"].values)}
    psi = np.zeros((2, len(xi), len(mi)), dtype=complex)
    for (c, x, m), a in state.amplitudes.items():
        psi[c, xi[x], mi[m]] = a
    return psi, bases


def reduced_density_matrix(state: WalkState, keep: Sequence[str]) -> DensityMatrix:
    """Trace out the third DoF of ``|psi><psi|`` and keep ``keep`` in that order."""
    first, second = (normalize_dof(k) for k in keep)
    if first == second:
        raise ValueError(f"keep labels must differ, got {tuple(keep)}")
    psi, bases = state_tensor(state)
    traced = next(d for d in DOF_LABELS if d not in (first, second))
    axes = [DOF_LABELS.index(traced), DOF_LABELS.index(first), DOF_LABELS.index(second)]
    t = np.transpose(psi, axes)
    da, db = t.shape[1], t.shape[2]
    rho = np.einsum("tab,tcd->abcd", t, t.conj()).reshape(da * db, da * db)
    return DensityMatrix(bases[first], bases[second], rho)


def partial_transpose(rho: DensityMatrix, which: str = "second") -> DensityMatrix:
    da, db = len(rho.first), len(rho.second)
    r = rho.matrix.reshape(da, db, da, db)
    if which == "second":
        r = r.transpose(0, 3, 2, 1)
    elif which == "first":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"which must be 'first' or 'second', got {which!r}")
    return DensityMatrix(rho.first, rho.second, np.ascontiguousarray(r).reshape(da * db, da * db))


def hermitian_eigenvalues(matrix, method: str = "auto") -> np.ndarray:
    """Real eigenvalues in ascending order.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    :data:`JACOBI_MAX_DIM`, LAPACK above).
    """
    a = matrix.matrix if isinstance(matrix, DensityMatrix) else np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    err = float(np.max(np.abs(a - a.conj().T), initial=0.0))
    if err > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (max asymmetry {err:.3g})")
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        return jacobi_eigvalsh(a)[0]
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    raise ValueError(f"unknown eigensolver {method!r}")


def negativity(rho: DensityMatrix, transpose_which: str = "second", method: str = "auto") -> float:
    """Sum of the moduli of the negative eigenvalues of the partial transpose."""
    eig = hermitian_eigenvalues(partial_transpose(rho, transpose_which), method)
    neg = eig[eig < -NEGATIVITY_FLOOR]
    return 0.0 - math.fsum(neg)  # 0.0 - x avoids printing -0.0


def state_negativity(state: WalkState, pair: Sequence[str], method: str = "auto") -> float:
    return negativity(reduced_density_matrix(state, pair), "second", method)


def all_pair_negativities(state: WalkState) -> dict:
    pairs = [("polarization", "path"), ("polarization", "oam"), ("path", "oam")]
    return {p: state_negativity(state, p) for p in pairs}


def negativity_curve(
    variant: WalkVariant,
    init: InitialStateParams,
    pair: Sequence[str],
    n_max: int,
) -> List[Tuple[int, float]]:
    """Negativity after each of steps ``1..n_max`` from a single evolution."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    out = []
    for state in trajectory(make_initial_state(init), variant, n_max):
        if state.steps:
            out.append((state.steps, state_negativity(state, pair)))
    return out


def sweep_angles(start: float, stop: float, step: float) -> List[float]:
    """``start, start + step, ...`` up to ``stop`` (inclusive, with a small slack)."""
    if step <= 0:
        raise ValueError(f"sweep step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"sweep end {stop} is below its start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _sweep_point(angle, param, fixed, init, n, pair, kind):
    values = {"xi": fixed.xi, "zeta": fixed.zeta, "theta": fixed.theta}
    values[param] = angle
    variant = WalkVariant(kind, SU2Params(**values))
    state = evolve(make_initial_state(init), variant, n)
    return state_negativity(state, pair)


def parameter_sweep(
    param: str,
    start: float,
    stop: float,
    step: float,
    fixed: SU2Params,
    init: InitialStateParams,
    n: int,
    pair: Sequence[str],
    kind: WalkKind = WalkKind.MODIFIED_PAULI,
    workers: int | None = None,
) -> List[Tuple[float, float]]:
    """Negativity after ``n`` steps while one plate angle runs over a grid.

    With ``workers > 1`` the points are evaluated in separate processes; the
    result is ordered by angle either way.
    """
    if param not in ("xi", "zeta", "theta"):
        raise ValueError(f"param must be xi, zeta or theta, got {param!r}")
    angles = sweep_angles(start, stop, step)
    point = partial(_sweep_point, param=param, fixed=fixed, init=init, n=n, pair=tuple(pair), kind=WalkKind(kind))
    if workers and workers > 1 and len(angles) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(point, angles))
    else:
        values = [point(a) for a in angles]
    return list(zip(angles, values))
