import json

import numpy as np
import pytest

from geomeans.cli import (
    ConfigError,
    main,
    parse_config,
    read_means,
    read_report,
    write_means,
    write_pgm,
)
from geomeans.forward import default_tgrid, forward_means
from geomeans.phantoms import Bump, Phantom
from geomeans.spaces import EUCLIDEAN, SpaceSpec, boundary_grid

BASE = {
    "space": {"kind": "euclidean", "n": 2, "radius": 1.0},
    "phantom": [{"center": [0.25, 0.1], "geodesic_radius": 0.3, "amplitude": 1.0}],
    "grids": {
        "boundary_points": 64,
        "t_points": 400,
        "quadrature_order": 16,
        "fd_step": 0.01,
        "recon_grid": {"center": [0.25, 0.1], "half_width": 0.4,
                       "points_per_axis": 7, "ball_radius": 0.4},
    },
    "method": "direct",
    "seed": 7,
}


def cfg_with(**overrides):
    raw = json.loads(json.dumps(BASE))
    raw.update(overrides)
    return raw


def test_parse_valid_config():
    cfg = parse_config(cfg_with())
    assert cfg["space"].kind == EUCLIDEAN
    assert cfg["phantom"].bumps[0].amplitude == 1.0


def test_schema_errors_carry_field_paths():
    bad = cfg_with()
    del bad["space"]["radius"]
    with pytest.raises(ConfigError, match="config.space.radius"):
        parse_config(bad)
    bad = cfg_with()
    bad["phantom"][0]["center"] = [0.25]
    with pytest.raises(ConfigError, match=r"config.phantom\[0\].center"):
        parse_config(bad)
    bad = cfg_with(method="sideways")
    with pytest.raises(ConfigError, match="config.method"):
        parse_config(bad)
    bad = cfg_with()
    bad["grids"]["fd_step"] = -1.0
    with pytest.raises(ConfigError, match="fd_step"):
        parse_config(bad)


def test_phantom_margin_enforced():
    bad = cfg_with()
    bad["phantom"][0]["center"] = [0.75, 0.0]
    with pytest.raises(ConfigError, match="config.phantom"):
        parse_config(bad)


def test_means_csv_roundtrip_bitwise(tmp_path):
    space = SpaceSpec(EUCLIDEAN, 2, 1.0)
    ph = Phantom(space, (Bump(np.array([0.25, 0.1]), 0.3, 1.0),))
    bd = boundary_grid(space, 16)
    tg = default_tgrid(space, 100)
    data = forward_means(ph, bd, tg)
    p1 = tmp_path / "m1.csv"
    p2 = tmp_path / "m2.csv"
    write_means(data, str(p1))
    back = read_means(str(p1))
    assert np.array_equal(back.values, data.values)
    assert back.alpha is None and back.space == data.space
    write_means(back, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_means_magic_check(tmp_path):
    p = tmp_path / "bogus.csv"
    p.write_text("not a means file\n")
    with pytest.raises(ValueError, match="geomeans-means"):
        read_means(str(p))


def test_roundtrip_command_deterministic(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg_with()))
    out1 = tmp_path / "r1.csv"
    out2 = tmp_path / "r2.csv"
    assert main(["roundtrip", "--config", str(cfg_path), "--out", str(out1)]) == 0
    assert main(["roundtrip", "--config", str(cfg_path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header, rows, footer = read_report(str(out1))
    assert header == ["x_1", "x_2", "f_true", "f_rec"]
    assert float(footer["rel_l2"]) < 0.03


def test_forward_invert_pipeline(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg_with()))
    means = tmp_path / "means.csv"
    rep = tmp_path / "rep.csv"
    assert main(["forward", "--config", str(cfg_path), "--out", str(means)]) == 0
    assert main(["invert", "--config", str(cfg_path), "--means", str(means),
                 "--out", str(rep)]) == 0
    _, rows, footer = read_report(str(rep))
    assert rows.shape[1] == 4
    assert float(footer["rel_l2"]) < 0.03


def test_render_uniform_image(tmp_path):
    rep = tmp_path / "rep.csv"
    lines = ["x_1,x_2,f_true,f_rec"]
    for a in np.linspace(-1, 1, 5):
        for b in np.linspace(-1, 1, 5):
            lines.append(f"{float(a)!r},{float(b)!r},0.0,0.0")
    lines.append('# {"rel_l2": "0.0", "sup_err": "0.0", "calibration": "1.0", "method": "direct"}')
    rep.write_text("\n".join(lines) + "\n")
    out = tmp_path / "img.pgm"
    assert main(["render", "--report", str(rep), "--out", str(out)]) == 0
    content = out.read_text().splitlines()
    assert content[0] == "P2"
    pixels = " ".join(content[4:]).split()
    assert set(pixels) == {"0"}


def test_render_slice(tmp_path):
    rep = tmp_path / "rep.csv"
    lines = ["x_1,x_2,x_3,f_true,f_rec"]
    for a in np.linspace(-1, 1, 4):
        for b in np.linspace(-1, 1, 4):
            for c in (-0.5, 0.5):
                lines.append(f"{float(a)!r},{float(b)!r},{float(c)!r},0.0,{float(a * b)!r}")
    lines.append('# {"rel_l2": "0.0", "sup_err": "0.0", "calibration": "1.0", "method": "direct"}')
    rep.write_text("\n".join(lines) + "\n")
    out = tmp_path / "img.pgm"
    assert main(["render", "--report", str(rep), "--out", str(out),
                 "--slice", "x3=0.5"]) == 0
    content = out.read_text().splitlines()
    assert content[2] == "4 4"


def test_pgm_minmax_comment(tmp_path):
    out = tmp_path / "img.pgm"
    write_pgm(np.array([[0.0, 1.0], [2.0, 3.0]]), str(out))
    lines = out.read_text().splitlines()
    assert lines[1].startswith("# min=0.0 max=3.0")
    assert lines[3] == "255"
    assert lines[4].split() == ["0", "85"]
    assert lines[5].split() == ["170", "255"]


def test_verify_subcommand_fractional():
    assert main(["verify", "--suite", "fractional"]) == 0


def test_bad_config_returns_error_code(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text("{not json")
    assert main(["roundtrip", "--config", str(cfg_path), "--out", "/tmp/x.csv"]) == 2
