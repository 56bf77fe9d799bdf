import re
from pathlib import Path

from brf.geometry import normalize
from brf.render import build_scene, render_svg
from brf.solver import solve

GOLDEN = Path(__file__).parent / "golden" / "four_crossing.svg"


def fixture():
    inst = normalize([(1, 3), (2, 1)], [(6, 4), (3, 6)])
    return inst, solve(inst)


def test_empty_instance():
    svg = render_svg(normalize([], []))
    assert svg.startswith("<?xml") and "</svg>" in svg


def test_byte_identical_runs():
    inst, sol = fixture()
    assert render_svg(inst, sol) == render_svg(inst, sol)


def test_golden():
    inst, sol = fixture()
    svg = render_svg(inst, sol)
    # regenerate with: python -c "from tests.test_render import *; GOLDEN.write_text(render_svg(*fixture()))"
    assert svg == GOLDEN.read_text()


def test_no_date_metadata():
    inst, sol = fixture()
    assert not re.search(r"<dc:date>", render_svg(inst, sol))


def test_crosses_inside_outlines():
    inst, sol = fixture()
    sc = build_scene(inst, sol)
    assert len(sc.hitting) == 1
    for x, y in sc.hitting:
        assert any(r[0] <= x <= r[2] and r[1] <= y <= r[3] for r in sc.minimal)
