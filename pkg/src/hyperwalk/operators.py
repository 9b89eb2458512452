"""Coin and J-plate matrices, shift operators, and the walk step.

Every operator acts on :class:`~hyperwalk.state.WalkState` and returns a new
state. Products of operators are applied right to left, so the modified
Pauli step ``S_x S'_sigma`` runs the OAM plate first and the PBS second.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

import numpy as np

from .state import WalkState

__all__ = [
    "SU2Params",
    "OrthoPair",
    "WalkKind",
    "WalkVariant",
    "SIGMA_X",
    "coin_matrix",
    "pair_from_params",
    "pair_matrix",
    "qplate_pair",
    "hv_pair",
    "jplate_matrix",
    "jplate_tilde_matrix",
    "apply_coin",
    "shift_x",
    "shift_x_inverse",
    "shift_y",
    "shift_y_modified",
    "shift_sigma",
    "shift_sigma_modified",
    "coined_line_step",
    "step",
    "evolve",
    "trajectory",
    "parse_plate",
    "parse_variant",
]

UNITARY_TOL = 1e-12
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class SU2Params:
    """Angles ``(xi, zeta, theta)`` of an SU(2) coin, in radians."""

    xi: float
    zeta: float
    theta: float


@dataclass(frozen=True)
class OrthoPair:
    """Orthonormal Jones vectors ``u1``, ``u2`` that condition the OAM shift."""

    u1: tuple[complex, complex]
    u2: tuple[complex, complex]

    def __post_init__(self):
        u1 = tuple(complex(z) for z in self.u1)
        u2 = tuple(complex(z) for z in self.u2)
        if len(u1) != 2 or len(u2) != 2:
            raise ValueError("Jones vectors must have two components")
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)
        a, b = np.array(u1), np.array(u2)
        if (
            abs(np.vdot(a, a) - 1) > UNITARY_TOL
            or abs(np.vdot(b, b) - 1) > UNITARY_TOL
            or abs(np.vdot(a, b)) > UNITARY_TOL
        ):
            raise ValueError(f"vectors are not orthonormal: u1={u1}, u2={u2}")


class WalkKind(str, Enum):
    MODIFIED_PAULI = "modified-pauli"
    PAULI = "pauli"
    ALTERNATE = "alternate"
    MODIFIED_ALTERNATE = "modified-alternate"


@dataclass(frozen=True)
class WalkVariant:
    """Which step composition to apply, and the plate defining it.

    ``plate`` is either an :class:`OrthoPair` or :class:`SU2Params`; the
    latter is turned into a pair by taking the coin columns verbatim.
    """

    kind: WalkKind
    plate: Union[OrthoPair, SU2Params]

    def __post_init__(self):
        object.__setattr__(self, "kind", WalkKind(self.kind))

    @property
    def pair(self) -> OrthoPair:
        if isinstance(self.plate, SU2Params):
            return pair_from_params(self.plate)
        return self.plate

    @property
    def coin(self) -> np.ndarray:
        """Unitary whose columns are ``u1`` and ``u2``."""
        if isinstance(self.plate, SU2Params):
            return coin_matrix(self.plate)
        return pair_matrix(self.plate)


def coin_matrix(params: SU2Params) -> np.ndarray:
    c, s = math.cos(params.theta), math.sin(params.theta)
    exi, eze = cmath.exp(1j * params.xi), cmath.exp(1j * params.zeta)
    return np.array(
        [[exi * c, eze * s], [-eze.conjugate() * s, exi.conjugate() * c]],
        dtype=complex,
    )


def pair_from_params(params: SU2Params) -> OrthoPair:
    """Columns of :func:`coin_matrix`, phases included."""
    m = coin_matrix(params)
    return OrthoPair(tuple(m[:, 0]), tuple(m[:, 1]))


def pair_matrix(pair: OrthoPair) -> np.ndarray:
    return np.array([pair.u1, pair.u2], dtype=complex).T


def qplate_pair() -> OrthoPair:
    """Circular basis ``(|R>, |L>)`` with no extra phases."""
    r = 1 / math.sqrt(2)
    return OrthoPair((r, -1j * r), (r, 1j * r))


def hv_pair() -> OrthoPair:
    return OrthoPair((1, 0), (0, 1))


def _dyad(ket, bra) -> np.ndarray:
    return np.outer(np.asarray(ket, complex), np.conj(np.asarray(bra, complex)))


def jplate_matrix(phi: float, pair: OrthoPair) -> np.ndarray:
    """Jones matrix of a plate that swaps ``u1 <-> u2`` with azimuthal phases."""
    return cmath.exp(-1j * phi) * _dyad(pair.u2, pair.u1) + cmath.exp(1j * phi) * _dyad(pair.u1, pair.u2)


def jplate_tilde_matrix(phi: float, pair: OrthoPair) -> np.ndarray:
    """Jones matrix of a plate that keeps ``u1`` and ``u2`` and only adds phases."""
    return cmath.exp(-1j * phi) * _dyad(pair.u1, pair.u1) + cmath.exp(1j * phi) * _dyad(pair.u2, pair.u2)


def apply_coin(state: WalkState, c) -> WalkState:
    """Multiply the polarization vector at every site by the 2x2 matrix ``c``."""
    (c00, c01), (c10, c11) = np.asarray(c, dtype=complex).tolist()
    out = {}
    for (x, m), (h, v) in state.site_vectors().items():
        out[(0, x, m)] = c00 * h + c01 * v
        out[(1, x, m)] = c10 * h + c11 * v
    return WalkState.from_amplitudes(out, state.steps)


def shift_x(state: WalkState) -> WalkState:
    """PBS: H moves to ``x - 1``, V moves to ``x + 1``."""
    return WalkState(
        {(c, x - 1 if c == 0 else x + 1, m): a for (c, x, m), a in state.amplitudes.items()},
        state.steps,
    )


def shift_x_inverse(state: WalkState) -> WalkState:
    return WalkState(
        {(c, x + 1 if c == 0 else x - 1, m): a for (c, x, m), a in state.amplitudes.items()},
        state.steps,
    )


def shift_y(state: WalkState) -> WalkState:
    return WalkState(
        {(c, x, m - 1 if c == 0 else m + 1): a for (c, x, m), a in state.amplitudes.items()},
        state.steps,
    )


def shift_y_modified(state: WalkState) -> WalkState:
    """``sigma_x`` after ``shift_y``: H at m goes to V at m - 1 and vice versa."""
    return WalkState(
        {(1 - c, x, m - 1 if c == 0 else m + 1): a for (c, x, m), a in state.amplitudes.items()},
        state.steps,
    )


def _conditional_oam_shift(state: WalkState, pair: OrthoPair, swap: bool) -> WalkState:
    u1, u2 = pair.u1, pair.u2
    b1 = (u1[0].conjugate(), u1[1].conjugate())
    b2 = (u2[0].conjugate(), u2[1].conjugate())
    down, up = (u2, u1) if swap else (u1, u2)
    out: dict = defaultdict(complex)
    for (x, m), (h, v) in state.site_vectors().items():
        p1 = b1[0] * h + b1[1] * v
        p2 = b2[0] * h + b2[1] * v
        out[(0, x, m - 1)] += p1 * down[0]
        out[(1, x, m - 1)] += p1 * down[1]
        out[(0, x, m + 1)] += p2 * up[0]
        out[(1, x, m + 1)] += p2 * up[1]
    return WalkState.from_amplitudes(out, state.steps)


def shift_sigma(state: WalkState, pair: OrthoPair) -> WalkState:
    """u1-component moves to ``m - 1``, u2-component to ``m + 1``; polarization kept."""
    return _conditional_oam_shift(state, pair, swap=False)


def shift_sigma_modified(state: WalkState, pair: OrthoPair) -> WalkState:
    """As :func:`shift_sigma`, but u1 leaves as u2 and u2 leaves as u1 (q-plate action)."""
    return _conditional_oam_shift(state, pair, swap=True)


def coined_line_step(state: WalkState, c) -> WalkState:
    """One-dimensional coined step ``S_x (C x 1)``; the OAM label is untouched."""
    out = shift_x(apply_coin(state, c))
    return WalkState(out.amplitudes, state.steps + 1)


def step(state: WalkState, variant: WalkVariant) -> WalkState:
    kind = variant.kind
    if kind is WalkKind.MODIFIED_PAULI:
        out = shift_x(shift_sigma_modified(state, variant.pair))
    elif kind is WalkKind.PAULI:
        out = shift_x(shift_sigma(state, variant.pair))
    else:
        c = variant.coin
        y_shift = shift_y if kind is WalkKind.ALTERNATE else shift_y_modified
        out = shift_x(apply_coin(y_shift(apply_coin(state, c.conj().T)), c))
    return WalkState(out.amplitudes, state.steps + 1)


def trajectory(initial: WalkState, variant: WalkVariant, n: int) -> Iterator[WalkState]:
    """Yield the state after 0, 1, ..., n steps."""
    if n < 0:
        raise ValueError(f"number of steps must be nonnegative, got {n}")
    state = initial
    yield state
    for _ in range(n):
        state = step(state, variant)
        yield state


def evolve(initial: WalkState, variant: WalkVariant, n: int) -> WalkState:
    state = initial
    for state in trajectory(initial, variant, n):
        pass
    return state


_NAMED_PLATES = {
    "q": qplate_pair,
    "hv": hv_pair,
    # anti-diagonal/diagonal linear pair
    "diagonal": lambda: OrthoPair((1 / math.sqrt(2), -1 / math.sqrt(2)), (1 / math.sqrt(2), 1 / math.sqrt(2))),
    # elliptical pair
    "elliptic": lambda: OrthoPair((0.5, 0.5j * math.sqrt(3)), (0.5 * math.sqrt(3), -0.5j)),
}


def _jones_vector(values) -> np.ndarray:
    if len(values) != 4:
        raise ValueError(f"Jones vector needs [re, im, re, im], got {values!r}")
    v = np.array([complex(values[0], values[1]), complex(values[2], values[3])])
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("Jones vector must be nonzero")
    return v / norm


def parse_plate(spec) -> Union[OrthoPair, SU2Params]:
    """Turn a plate description into an :class:`OrthoPair` or :class:`SU2Params`.

    Accepted forms are a preset name (``"q"``, ``"hv"``, ``"diagonal"``,
    ``"elliptic"``), ``{"xi": .., "zeta": .., "theta": ..}``, or
    ``{"u1": [re, im, re, im], "u2": [...]}``, either as a dict or JSON text.
    Hand-typed vectors are normalized and ``u2`` is re-orthogonalized against
    ``u1`` when they are orthogonal to within 1e-6.
    """
    if isinstance(spec, str):
        text = spec.strip()
        if text in _NAMED_PLATES:
            return _NAMED_PLATES[text]()
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"unknown plate {spec!r}") from exc
    if isinstance(spec, str):
        return parse_plate(spec)
    if not isinstance(spec, dict):
        raise ValueError(f"malformed plate spec {spec!r}")
    if set(spec) == {"xi", "zeta", "theta"}:
        return SU2Params(float(spec["xi"]), float(spec["zeta"]), float(spec["theta"]))
    if set(spec) == {"u1", "u2"}:
        u1, u2 = _jones_vector(spec["u1"]), _jones_vector(spec["u2"])
        overlap = np.vdot(u1, u2)
        if abs(overlap) > 1e-6:
            raise ValueError(f"u1 and u2 are not orthogonal (overlap {abs(overlap):.3g})")
        u2 = u2 - overlap * u1
        u2 = u2 / np.linalg.norm(u2)
        return OrthoPair(tuple(u1), tuple(u2))
    raise ValueError(f"malformed plate spec {spec!r}")


def parse_variant(spec) -> WalkVariant:
    """Parse ``{"kind": ..., "plate": ...}`` (dict or JSON text)."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    try:
        kind = WalkKind(spec["kind"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed variant spec {spec!r}") from exc
    return WalkVariant(kind, parse_plate(spec.get("plate", "q")))
