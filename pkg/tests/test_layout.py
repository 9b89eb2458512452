import json
import re
from collections import Counter

import pytest

from hyperwalk.layout import REALIZATIONS, ComponentCounts, component_counts, emit_layout


@pytest.mark.parametrize(
    "n, pbs, plates", [(1, 1, 1), (3, 6, 7), (5, 15, 21), (50, 1275, 2451)]
)
def test_counts(n, pbs, plates):
    assert component_counts(n, "jplate") == ComponentCounts(pbs, plates, 0)


def test_pauli_needs_hwps():
    assert component_counts(5, "qplate-pauli").hwps == 21
    assert component_counts(5, "qplate-modified").hwps == 0


@pytest.mark.parametrize("bad", [0, -3])
def test_counts_reject_nonpositive(bad):
    with pytest.raises(ValueError):
        component_counts(bad)
    with pytest.raises(ValueError):
        emit_layout(bad)


def test_unknown_realization():
    with pytest.raises(ValueError):
        component_counts(3, "mirror")


def test_smallest_layout():
    layout = emit_layout(1)
    kinds = Counter(e.kind for e in layout.elements)
    assert kinds == {"JPlate": 1, "PBS": 1, "DetectorUnit": 2}
    pbs = [e for e in layout.elements if e.kind == "PBS"][0]
    assert (pbs.step_index, pbs.position_index) == (1, 0)
    assert sorted(d.position_index for d in layout.detectors()) == [-1, 1]


@pytest.mark.parametrize("realization", REALIZATIONS)
def test_totals_match_counts(realization):
    for n in range(1, 101):
        assert emit_layout(n, realization).totals() == component_counts(n, realization)


def test_triangular_rows_and_detectors():
    n = 7
    layout = emit_layout(n, "qplate-modified")
    per_step = Counter(e.step_index for e in layout.elements if e.kind == "PBS")
    assert per_step == {k: k for k in range(1, n + 1)}
    for e in layout.elements:
        if e.kind == "PBS":
            assert (e.position_index - (e.step_index - 1)) % 2 == 0
    assert sorted(d.position_index for d in layout.detectors()) == list(range(-n, n + 1, 2))
    assert all(d.slm and d.smf and d.spd for d in layout.detectors())
    assert {e.kind for e in layout.elements} == {"QPlate", "PBS", "DetectorUnit"}


def test_quadratic_scaling():
    ratios = [component_counts(2 * n).pbs / component_counts(n).pbs for n in (10, 100, 1000)]
    assert abs(ratios[-1] - 4) < abs(ratios[0] - 4)
    assert abs(ratios[-1] - 4) < 0.01


def test_json_schema():
    data = json.loads(emit_layout(5, "jplate").to_json())
    assert data["steps"] == 5 and data["realization"] == "jplate"
    assert data["counts"] == {"pbs": 15, "jplates": 21, "hwps": 0}
    assert {"kind", "step_index", "position_index"} <= set(data["elements"][0])
    det = [e for e in data["elements"] if e["kind"] == "DetectorUnit"]
    assert all(e["slm"] and e["smf"] and e["spd"] for e in det)


def test_dot_structure():
    layout = emit_layout(3, "qplate-pauli")
    dot = layout.to_dot()
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    nodes = re.findall(r"^\s+(e\d+) \[", dot, flags=re.M)
    assert len(nodes) == len(layout.elements)
    edges = re.findall(r"^\s+(e\d+) -> (e\d+);", dot, flags=re.M)
    assert {a for a, b in edges} | {b for a, b in edges} <= set(nodes)
    # every element is wired into the network
    assert {a for a, b in edges} | {b for a, b in edges} == set(nodes)
    assert dot.count("{") == dot.count("}")
