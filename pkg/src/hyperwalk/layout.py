"""Component netlist of the PBS / plate network that realizes the walk.

The grid is a triangular, breadth-first expansion: step ``k`` holds ``k``
PBS at positions ``-(k-1), -(k-3), ..., k-1``. One plate sits on the input
beam, and one plate on each of the ``2k`` beams leaving row ``k`` towards row
``k + 1``. That gives ``1 + sum(2k for k < n) = n(n-1) + 1`` plates. Detector
units sit on the ``n + 1`` output positions ``-n, -n+2, ..., n``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import List, Optional

__all__ = [
    "REALIZATIONS",
    "ComponentCounts",
    "Element",
    "OpticalLayout",
    "component_counts",
    "emit_layout",
]

REALIZATIONS = ("jplate", "qplate-modified", "qplate-pauli")

_PLATE_KIND = {"jplate": "JPlate", "qplate-modified": "QPlate", "qplate-pauli": "QPlate"}


@dataclass(frozen=True)
class ComponentCounts:
    pbs: int
    jplates: int
    hwps: int


@dataclass(frozen=True)
class Element:
    kind: str
    step_index: int
    position_index: int
    source_position: Optional[int] = None
    slm: bool = False
    smf: bool = False
    spd: bool = False

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "step_index": self.step_index, "position_index": self.position_index}
        if self.source_position is not None:
            d["source_position"] = self.source_position
        if self.kind == "DetectorUnit":
            d.update(slm=self.slm, smf=self.smf, spd=self.spd)
        return d


def _check(n: int, realization: str):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"number of steps must be a positive integer, got {n!r}")
    if realization not in REALIZATIONS:
        raise ValueError(f"realization must be one of {REALIZATIONS}, got {realization!r}")


def component_counts(n: int, realization: str = "jplate") -> ComponentCounts:
    _check(n, realization)
    plates = n * (n - 1) + 1
    return ComponentCounts(
        pbs=n * (n + 1) // 2,
        jplates=plates,
        hwps=plates if realization == "qplate-pauli" else 0,
    )


@dataclass(frozen=True)
class OpticalLayout:
    steps: int
    realization: str
    elements: List[Element]

    def totals(self) -> ComponentCounts:
        kinds = [e.kind for e in self.elements]
        return ComponentCounts(
            pbs=kinds.count("PBS"),
            jplates=kinds.count("JPlate") + kinds.count("QPlate"),
            hwps=kinds.count("HWP"),
        )

    def detectors(self) -> List[Element]:
        return [e for e in self.elements if e.kind == "DetectorUnit"]

    def to_json(self) -> str:
        return json.dumps(
            {
                "steps": self.steps,
                "realization": self.realization,
                "counts": asdict(component_counts(self.steps, self.realization)),
                "elements": [e.to_dict() for e in self.elements],
            },
            indent=1,
        )

    def to_dot(self) -> str:
        """Graphviz digraph: one node per element, one edge per beam segment."""
        ids = {e: f"e{i}" for i, e in enumerate(self.elements)}
        lines = [f'digraph layout_{self.steps} {{', "  rankdir=LR;"]
        shapes = {"PBS": "box", "JPlate": "ellipse", "QPlate": "ellipse", "HWP": "diamond", "DetectorUnit": "doublecircle"}
        for e, nid in ids.items():
            label = f"{e.kind}\\nstep {e.step_index}, x={e.position_index}"
            lines.append(f'  {nid} [label="{label}", shape={shapes[e.kind]}];')

        pbs = {(e.step_index, e.position_index): ids[e] for e in self.elements if e.kind == "PBS"}
        hwp = {(e.step_index, e.position_index, e.source_position): ids[e] for e in self.elements if e.kind == "HWP"}
        for e in self.elements:
            if e.kind in ("JPlate", "QPlate"):
                key = (e.step_index, e.position_index, e.source_position)
                if e.source_position is not None:
                    lines.append(f"  {pbs[(e.step_index - 1, e.source_position)]} -> {ids[e]};")
                tail = ids[e]
                if key in hwp:
                    lines.append(f"  {tail} -> {hwp[key]};")
                    tail = hwp[key]
                lines.append(f"  {tail} -> {pbs[(e.step_index, e.position_index)]};")
            elif e.kind == "DetectorUnit":
                for src in (e.position_index - 1, e.position_index + 1):
                    if (self.steps, src) in pbs:
                        lines.append(f"  {pbs[(self.steps, src)]} -> {ids[e]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def emit_layout(n: int, realization: str = "jplate") -> OpticalLayout:
    _check(n, realization)
    plate = _PLATE_KIND[realization]
    with_hwp = realization == "qplate-pauli"
    elements: List[Element] = []

    def add_plate(step_index, position, source):
        elements.append(Element(plate, step_index, position, source))
        if with_hwp:
            elements.append(Element("HWP", step_index, position, source))

    add_plate(1, 0, None)
    for k in range(1, n + 1):
        positions = range(-(k - 1), k, 2)
        elements.extend(Element("PBS", k, p) for p in positions)
        if k < n:
            for p in positions:
                # H is reflected towards p - 1, V transmitted towards p + 1
                add_plate(k + 1, p - 1, p)
                add_plate(k + 1, p + 1, p)
    elements.extend(Element("DetectorUnit", n + 1, p, slm=True, smf=True, spd=True) for p in range(-n, n + 1, 2))
    return OpticalLayout(n, realization, elements)
