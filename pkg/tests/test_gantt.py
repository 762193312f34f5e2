import xml.etree.ElementTree as ET

from pltr.gantt import _lane_states, render_svg
from pltr.model import Schedule

NS = "{http://www.w3.org/2000/svg}"


def rects(svg, cls):
    root = ET.fromstring(svg.split("\n", 1)[1])
    return [r for r in root.iter(f"{NS}rect") if r.get("class") == cls]


def test_lane_states_follow_cost_rule():
    assert _lane_states([0, 3], 2, 6) == ["busy", "idle", "idle", "busy", "off", "off"]
    assert _lane_states([0, 4], 2, 5) == ["busy", "off", "off", "off", "busy"]


def test_fixture_b_two_full_lanes():
    s = Schedule.from_placements([(t, k, j) for t in (0, 1) for k, j in ((1, "j1"), (2, "j2"))], 2)
    svg = render_svg(s, 1)
    assert len(rects(svg, "busy")) == 4
    assert len(rects(svg, "powerup")) == 2
    assert rects(svg, "off") == [] and rects(svg, "idle") == []


def test_power_up_markers_after_off_stretch():
    s = Schedule.from_placements([(0, 1, "a"), (5, 1, "a"), (7, 1, "b")], 8)
    svg = render_svg(s, 2)
    assert len(rects(svg, "powerup")) == 2
    assert len(rects(svg, "idle")) == 1


def test_empty_schedule_renders():
    svg = render_svg(Schedule.empty(), 0)
    assert rects(svg, "busy") == []
    ET.fromstring(svg.split("\n", 1)[1])
