import pytest

from wallqueens.gadgets.library import load_tile, shipped_manifests
from wallqueens.gadgets.manifest import (
    EDGES, Gender, Kind, ManifestError, PortSpec, blank_manifest, female_offset, frame_xy, load_manifest,
    male_offset, rotate_coord, save_manifest,
)


def test_frame_offsets_run_clockwise():
    s = 16
    assert frame_xy("N", 0, 0, s) == (0, 0)
    assert frame_xy("E", 0, 0, s) == (15, 0)
    assert frame_xy("S", 0, 0, s) == (15, 15)
    assert frame_xy("W", 0, 0, s) == (0, 15)
    # a male port faces a female one: offsets t and S-1-t meet across the seam
    assert male_offset(s) + female_offset(s) == s - 1


def test_rotation_keeps_frame_offsets():
    s = 10
    for i, e in enumerate(EDGES):
        for d in (-1, 0, 2):
            for t in (0, 3, 9):
                c = frame_xy(e, d, t, s)
                assert rotate_coord(c, s, 1) == frame_xy(EDGES[(i + 1) % 4], d, t, s)


def test_port_geometry():
    m = PortSpec("E", male_offset(16), Gender.MALE)
    f = PortSpec("W", female_offset(16), Gender.FEMALE)
    assert len(m.protuberance(16)) == 2 and all(c[0] == 16 for c in m.protuberance(16))
    assert f.protuberance(16) == []
    # the male protuberance lands exactly on the female landing cells one tile to the right
    assert sorted((x - 16, y) for x, y in m.protuberance(16)) == sorted(f.landing(16))
    with pytest.raises(ManifestError):
        PortSpec("X", 0, Gender.MALE)


@pytest.mark.parametrize("g", shipped_manifests(), ids=lambda g: g.name)
def test_shipped_manifest_round_trips(g):
    text = save_manifest(g)
    assert load_manifest(text) == g
    assert save_manifest(load_manifest(text)) == text


@pytest.mark.parametrize("g", shipped_manifests(), ids=lambda g: g.name)
def test_four_quarter_turns_are_identity(g):
    r = g
    for _ in range(4):
        r = r.rotated(1)
    assert r == g


def test_blank_manifest():
    b = blank_manifest(16)
    assert b.kind is Kind.BLANK and b.tariff == 0 and not b.body.white
    assert load_tile("Blank") == b


def test_load_rejects_tampered_state_grid():
    text = save_manifest(load_tile("Turn"))
    lines = text.split("\n")
    i = lines.index("state 0:") + 1
    lines[i] = "." + lines[i][1:]  # whiten a frame cell in the state grid
    with pytest.raises(ManifestError):
        load_manifest("\n".join(lines))


@pytest.mark.parametrize("bad", ["kind: TwoState\nbody:\n", "name: x\nkind: Nope\nsize: 4\ntariff: 0\nbody:\n####\n####\n####\n####\n",
                                 "name: x\nkind: Blank\nsize: 4\ntariff: 0\nport Q 1 M T/F\nbody:\n"])
def test_load_rejects_malformed(bad):
    with pytest.raises(ManifestError):
        load_manifest(bad)


def test_state_size_must_match_tariff():
    g = load_tile("Turn")
    with pytest.raises(ManifestError):
        type(g)(g.name, g.kind, g.body, g.ports, g.tariff + 1, g.states, g.labels)
