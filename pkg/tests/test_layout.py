from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nodetrix.fileformat import read_instance
from nodetrix.generate import random_clustered_graph, sp_chain, wheel_instance
from nodetrix.layout import audit, audit_geometry, layout_nodetrix, segments_meet
from nodetrix.oracle import oracle_fixed
from nodetrix.render import audit_svg, render_png, render_svg

coord = st.integers(-6, 6)
point = st.tuples(coord, coord)


def _meet_exact(a, b, c, d) -> bool:
    # dense sampling is useless for touching cases, so solve exactly
    a, b, c, d = [tuple(map(Fraction, p)) for p in (a, b, c, d)]
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    qp = (c[0] - a[0], c[1] - a[1])
    if den != 0:
        t = (qp[0] * s[1] - qp[1] * s[0]) / den
        u = (qp[0] * r[1] - qp[1] * r[0]) / den
        return 0 <= t <= 1 and 0 <= u <= 1
    if qp[0] * r[1] - qp[1] * r[0] != 0:
        return False
    # collinear (or degenerate): compare projections on the dominant axis
    axis = 0 if (r[0], s[0], qp[0]) != (0, 0, 0) else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return max(lo1, lo2) <= min(hi1, hi2)


@given(point, point, point, point)
def test_segments_meet_matches_exact(a, b, c, d):
    # the audit drops zero-length pieces before testing
    assume(a != b and c != d)
    assert segments_meet(a, b, c, d) == _meet_exact(a, b, c, d)


def test_audit_geometry_flags_conflicts():
    assert audit_geometry({"p": [(0, 0), (2, 2)], "q": [(0, 2), (2, 0)]}, {})
    assert not audit_geometry({"p": [(0, 0), (1, 1)], "q": [(1, 1), (2, 0)]}, {})
    # sharing an endpoint but overlapping along a line
    assert audit_geometry({"p": [(0, 0), (2, 0)], "q": [(0, 0), (1, 0)]}, {})
    box = {"M": (1.0, -1.0, 2.0, 1.0)}
    assert audit_geometry({"p": [(0, 0), (3, 0)]}, box)
    assert not audit_geometry({"p": [(0, 0), (1, 0)]}, box, {"p": ["M"]})
    assert audit_geometry({"p": [(0, 0), (1, 0)]}, box)


def _planar_instances():
    rng = random.Random(20)
    out = [sp_chain(rng, 12), wheel_instance(rng, 5)]
    while len(out) < 12:
        g = random_clustered_graph(rng, rng.randint(3, 8), 3, shape="planar", light=rng.random() < 0.5, max_nontrivial=4)
        v = oracle_fixed(g)
        if v.planar:
            out.append(g)
    return out


@pytest.mark.parametrize("g", _planar_instances())
def test_layouts_are_clean(g):
    v = oracle_fixed(g)
    lay = layout_nodetrix(g, v.perms)
    assert audit(lay) == []
    assert set(lay.routes) == set(g.inter_edges)
    for (e, c), p in lay.attachments.items():
        u = e[0] if g.cluster_of(e[0]) == c else e[1]
        assert lay.matrices[c].attachment(u, g.side(e, c)) == pytest.approx(p)
        assert p in (tuple(lay.routes[e][0]), tuple(lay.routes[e][-1]))
    svg = render_svg(lay)
    assert audit_svg(svg) == []
    assert svg == render_svg(layout_nodetrix(g, v.perms))


@settings(max_examples=25)
@given(st.integers(0, 10**9))
def test_random_witness_layouts_are_clean(seed):
    g = random_clustered_graph(random.Random(seed), 6, 3, shape="planar", max_nontrivial=3)
    v = oracle_fixed(g)
    if v.planar:
        assert audit(layout_nodetrix(g, v.perms)) == []


def test_fixture_svg_and_png(nonlight_path, tmp_path):
    g = read_instance(nonlight_path)
    v = oracle_fixed(g)
    lay = layout_nodetrix(g, v.perms)
    svg = render_svg(lay)
    assert svg.count('class="matrix"') == 3
    assert svg.count('class="edge"') == len(g.inter_edges)
    assert svg.count('class="cell"') == 2 * len(g.intra_edges)
    png = tmp_path / "f.png"
    render_png(lay, str(png))
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_layout_needs_sides():
    g = random_clustered_graph(random.Random(2), 4, 2)
    with pytest.raises(ValueError):
        layout_nodetrix(g.forget_sides(), {})
