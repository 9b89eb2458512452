"""Pure state of a single photon over polarization, path and OAM.

The state is stored sparsely as a mapping ``(coin, x, m) -> amplitude`` where
``coin`` is 0 for H and 1 for V, ``x`` is the path site and ``m`` the OAM
quantum number. Only populated entries are kept, so memory follows the
support of the walk rather than its bounding box.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Mapping, Tuple

__all__ = [
    "Coin",
    "PRUNE_THRESHOLD",
    "InitialStateParams",
    "WalkState",
    "make_initial_state",
    "norm_squared",
    "probability_distribution",
    "marginal_distribution",
    "scale",
    "format_float",
    "distribution_to_csv",
]

#: Entries whose modulus falls below this are dropped after every step.
PRUNE_THRESHOLD = 1e-15

Key = Tuple[int, int, int]


class Coin(IntEnum):
    """Polarization basis label; ``H`` is ``[1, 0]`` and ``V`` is ``[0, 1]``."""

    H = 0
    V = 1


@dataclass(frozen=True)
class InitialStateParams:
    """Angles of ``cos(alpha)|H> + exp(i beta) sin(alpha)|V>``."""

    alpha: float = math.pi / 4
    beta: float = 0.0


@dataclass(frozen=True)
class WalkState:
    """Sparse complex amplitudes over ``(coin, x, m)``.

    Treat instances as immutable values: every operation returns a new state.
    """

    amplitudes: Dict[Key, complex] = field(default_factory=dict)
    steps: int = 0

    @classmethod
    def from_amplitudes(cls, amplitudes: Mapping[Key, complex], steps: int = 0) -> "WalkState":
        """Build a state, dropping entries below :data:`PRUNE_THRESHOLD`."""
        kept = {
            (int(c), int(x), int(m)): complex(a)
            for (c, x, m), a in amplitudes.items()
            if abs(a) >= PRUNE_THRESHOLD
        }
        return cls(kept, steps)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def get(self, coin: int, x: int, m: int) -> complex:
        return self.amplitudes.get((int(coin), x, m), 0j)

    def sites(self) -> list[tuple[int, int]]:
        """Populated ``(x, m)`` sites in lexicographic order."""
        return sorted({(x, m) for (_, x, m) in self.amplitudes})

    def site_vectors(self) -> Dict[tuple[int, int], tuple[complex, complex]]:
        """Group amplitudes per site as ``(amp_H, amp_V)`` pairs."""
        out: Dict[tuple[int, int], list] = defaultdict(lambda: [0j, 0j])
        for (c, x, m), a in self.amplitudes.items():
            out[(x, m)][c] = a
        return {k: (v[0], v[1]) for k, v in out.items()}

    def to_json(self) -> str:
        records = [
            {"coin": Coin(c).name, "x": x, "m": m, "re": a.real, "im": a.imag}
            for (c, x, m), a in sorted(self.amplitudes.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0]))
        ]
        return json.dumps({"steps": self.steps, "amplitudes": records}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "WalkState":
        data = json.loads(text)
        amps = {
            (Coin[r["coin"]].value, int(r["x"]), int(r["m"])): complex(r["re"], r["im"])
            for r in data["amplitudes"]
        }
        return cls.from_amplitudes(amps, int(data["steps"]))


def make_initial_state(params: InitialStateParams = InitialStateParams()) -> WalkState:
    """Polarized photon at path site 0 carrying no OAM."""
    h = math.cos(params.alpha)
    v = cmath.exp(1j * params.beta) * math.sin(params.alpha)
    return WalkState.from_amplitudes({(0, 0, 0): h, (1, 0, 0): v}, 0)


def norm_squared(state: WalkState) -> float:
    return math.fsum(abs(a) ** 2 for a in state.amplitudes.values())


def scale(state: WalkState, factor: complex) -> WalkState:
    return WalkState.from_amplitudes({k: factor * a for k, a in state.amplitudes.items()}, state.steps)


def probability_distribution(state: WalkState) -> Dict[tuple[int, int], float]:
    """Probability per ``(x, m)`` site, summed over polarization, sorted by site."""
    acc: Dict[tuple[int, int], list[float]] = defaultdict(list)
    for (_, x, m), a in state.amplitudes.items():
        acc[(x, m)].append(abs(a) ** 2)
    return {k: math.fsum(acc[k]) for k in sorted(acc)}


def marginal_distribution(state: WalkState, axis: str) -> Dict[int, float]:
    """Probability over one spatial axis, ``"path"`` or ``"oam"``."""
    if axis not in ("path", "oam"):
        raise ValueError(f"axis must be 'path' or 'oam', got {axis!r}")
    pos = 1 if axis == "path" else 2
    acc: Dict[int, list[float]] = defaultdict(list)
    for key, a in state.amplitudes.items():
        acc[key[pos]].append(abs(a) ** 2)
    return {k: math.fsum(acc[k]) for k in sorted(acc)}


def format_float(value: float) -> str:
    """Locale-free formatting with 10 significant digits; integral values keep a ``.0``."""
    text = format(float(value), ".10g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def distribution_to_csv(dist: Mapping[tuple[int, int], float]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "m", "probability"])
    for (x, m) in sorted(dist):
        writer.writerow([x, m, format_float(dist[(x, m)])])
    return buf.getvalue()
