"""Amplitude-grid recurrences for the modified Pauli walk.

This is a second, independent route to the walk amplitudes: it never builds
operators, it only updates two grids ``a`` (H) and ``b`` (V) site by site.

With the coin columns ``u1 = (e^{i xi} cos t, -e^{-i zeta} sin t)`` and
``u2 = (e^{i zeta} sin t, e^{-i xi} cos t)``, one step ``S_x S'_sigma``
gathers each new amplitude from its two diagonal neighbours on the side the
PBS shifts from (``x + 1`` for H, ``x - 1`` for V)::

    a'[x, m] = u2_H <u1|psi>[x+1, m+1] + u1_H <u2|psi>[x+1, m-1]
    b'[x, m] = u2_V <u1|psi>[x-1, m+1] + u1_V <u2|psi>[x-1, m-1]

where ``<u1|psi> = e^{-i xi} cos t * a - e^{i zeta} sin t * b`` and
``<u2|psi> = e^{-i zeta} sin t * a + e^{i xi} cos t * b``. Expanded:

    a'[x,m] =  e^{i(zeta-xi)} s c a[x+1,m+1] - e^{2i zeta} s^2 b[x+1,m+1]
             + e^{i(xi-zeta)} s c a[x+1,m-1] + e^{2i xi}  c^2 b[x+1,m-1]
    b'[x,m] =  e^{-2i xi} c^2 a[x-1,m+1] - e^{i(zeta-xi)} s c b[x-1,m+1]
             - e^{-2i zeta} s^2 a[x-1,m-1] - e^{i(xi-zeta)} s c b[x-1,m-1]

:func:`printed_recurrence_step` keeps the variant in which the
cross-polarization terms of the two equations are exchanged (``b`` read from
``x - 1`` inside the H update, ``a`` read from ``x + 1`` inside the V update).
It is still unitary but is a different walk; it only agrees with the operator
evolution on distributions for special parameters.
"""

from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

from .operators import SU2Params
from .state import PRUNE_THRESHOLD, InitialStateParams, WalkState

__all__ = [
    "AmplitudeGrids",
    "recurrence_step",
    "printed_recurrence_step",
    "oracle_evolve",
    "compare_with_operator",
    "grids_to_state",
]

Site = Tuple[int, int]


@dataclass(frozen=True)
class AmplitudeGrids:
    a: Dict[Site, complex] = field(default_factory=dict)
    b: Dict[Site, complex] = field(default_factory=dict)
    n: int = 0

    def norm_squared(self) -> float:
        return math.fsum(abs(z) ** 2 for z in self.a.values()) + math.fsum(abs(z) ** 2 for z in self.b.values())


def _coefficients(p: SU2Params):
    c, s = math.cos(p.theta), math.sin(p.theta)
    e = cmath.exp
    xi, ze = p.xi, p.zeta
    # (a-coefficient, b-coefficient) per source neighbour
    return {
        "a_pp": (e(1j * (ze - xi)) * s * c, -e(2j * ze) * s * s),
        "a_pm": (e(1j * (xi - ze)) * s * c, e(2j * xi) * c * c),
        "b_mp": (e(-2j * xi) * c * c, -e(1j * (ze - xi)) * s * c),
        "b_mm": (-e(-2j * ze) * s * s, -e(1j * (xi - ze)) * s * c),
    }


def _prune(d: Dict[Site, complex]) -> Dict[Site, complex]:
    return {k: v for k, v in d.items() if abs(v) >= PRUNE_THRESHOLD}


def recurrence_step(grids: AmplitudeGrids, params: SU2Params) -> AmplitudeGrids:
    """Advance the grids by one modified Pauli step (scatter form of the gather rule above)."""
    k = _coefficients(params)
    a_new: Dict[Site, complex] = defaultdict(complex)
    b_new: Dict[Site, complex] = defaultdict(complex)
    for (x, m) in set(grids.a) | set(grids.b):
        av = grids.a.get((x, m), 0j)
        bv = grids.b.get((x, m), 0j)
        # source (x, m) feeds a'[x-1, m-1], a'[x-1, m+1], b'[x+1, m-1], b'[x+1, m+1]
        ca, cb = k["a_pp"]
        a_new[(x - 1, m - 1)] += ca * av + cb * bv
        ca, cb = k["a_pm"]
        a_new[(x - 1, m + 1)] += ca * av + cb * bv
        ca, cb = k["b_mp"]
        b_new[(x + 1, m - 1)] += ca * av + cb * bv
        ca, cb = k["b_mm"]
        b_new[(x + 1, m + 1)] += ca * av + cb * bv
    return AmplitudeGrids(_prune(a_new), _prune(b_new), grids.n + 1)


def printed_recurrence_step(grids: AmplitudeGrids, params: SU2Params) -> AmplitudeGrids:
    """Gather-form update with the cross-polarization terms exchanged (kept for comparison)."""
    c, s = math.cos(params.theta), math.sin(params.theta)
    e = cmath.exp
    xi, ze = params.xi, params.zeta
    a, b = grids.a, grids.b
    sites = set(a) | set(b)
    targets = {(x + dx, m + dm) for (x, m) in sites for dx in (-1, 1) for dm in (-1, 1)}
    a_new, b_new = {}, {}
    for (x, m) in targets:
        a_new[(x, m)] = (
            a.get((x + 1, m + 1), 0j) * (e(1j * ze) * s) * (e(-1j * xi) * c)
            + a.get((x + 1, m - 1), 0j) * (e(1j * xi) * c) * (e(-1j * ze) * s)
            + b.get((x - 1, m + 1), 0j) * (e(-1j * xi) * c) * (e(-1j * xi) * c)
            + b.get((x - 1, m - 1), 0j) * (-e(-1j * ze) * s) * (e(-1j * ze) * s)
        )
        b_new[(x, m)] = (
            a.get((x + 1, m + 1), 0j) * (e(1j * ze) * s) * (-e(1j * ze) * s)
            + a.get((x + 1, m - 1), 0j) * (e(1j * xi) * c) * (e(1j * xi) * c)
            + b.get((x - 1, m + 1), 0j) * (e(-1j * xi) * c) * (-e(1j * ze) * s)
            + b.get((x - 1, m - 1), 0j) * (-e(-1j * ze) * s) * (e(1j * xi) * c)
        )
    return AmplitudeGrids(_prune(a_new), _prune(b_new), grids.n + 1)


def oracle_evolve(
    params_init: InitialStateParams,
    params: SU2Params,
    n: int,
    update: Callable[[AmplitudeGrids, SU2Params], AmplitudeGrids] = recurrence_step,
) -> AmplitudeGrids:
    if n < 0:
        raise ValueError(f"number of steps must be nonnegative, got {n}")
    grids = AmplitudeGrids(
        _prune({(0, 0): complex(math.cos(params_init.alpha))}),
        _prune({(0, 0): cmath.exp(1j * params_init.beta) * math.sin(params_init.alpha)}),
        0,
    )
    for _ in range(n):
        grids = update(grids, params)
    return grids


def compare_with_operator(grids: AmplitudeGrids, state: WalkState) -> float:
    """Largest ``|grid - state|`` over all populated entries (``a`` vs H, ``b`` vs V)."""
    if grids.n != state.steps:
        raise ValueError(f"step counts differ: grids at {grids.n}, state at {state.steps}")
    worst = 0.0
    for coin, grid in ((0, grids.a), (1, grids.b)):
        keys = set(grid) | {(x, m) for (c, x, m) in state.amplitudes if c == coin}
        for site in keys:
            worst = max(worst, abs(grid.get(site, 0j) - state.get(coin, *site)))
    return worst


def grids_to_state(grids: AmplitudeGrids) -> WalkState:
    amps = {(0, x, m): z for (x, m), z in grids.a.items()}
    amps.update({(1, x, m): z for (x, m), z in grids.b.items()})
    return WalkState.from_amplitudes(amps, grids.n)
