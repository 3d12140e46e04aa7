import json
import math

import numpy as np
import pytest

from widomlab import cli, sets


def _run(tmp_path, mode, cfg, extra=()):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "out"
    rc = cli.main([mode, "--config", str(cfg_path), "--out", str(out),
                   *extra])
    return rc, out


def test_config_parsing_strict():
    with pytest.raises(ValueError):
        cli.parse_config({"set": {"kind": "star_even", "m": 2},
                          "degrees": [1], "mystery": True})
    with pytest.raises(ValueError):
        cli.parse_config({"set": {"kind": "star_even", "m": 2},
                          "degrees": []})
    with pytest.raises(ValueError):
        cli.parse_config({"set": {"kind": "star_even", "m": 2},
                          "degrees": [500]})
    with pytest.raises(ValueError):
        cli.parse_config({"set": {"kind": "star_even", "m": 2},
                          "degrees": [3], "tol": 0.5})


def test_config_degrees_range_string():
    cfg = cli.parse_config({"set": {"kind": "star_even", "m": 2},
                            "degrees": "3..6"})
    assert cfg.degrees == (3, 4, 5, 6)


def test_bad_config_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"bogus": 1}')
    assert cli.main(["norms", "--config", str(p)]) == 2
    p.write_text("not json at all")
    assert cli.main(["norms", "--config", str(p)]) == 2


def test_norms_star_csv(tmp_path, capsys):
    cfg = {"set": {"kind": "star_even", "m": 3},
           "degrees": [1, 2, 3, 4, 5], "tol": 1e-8}
    rc, out = _run(tmp_path, "norms", cfg)
    assert rc == 0
    text = (out.parent / "out.csv").read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "degree,route,norm,capacity,widom_factor,gap"
    norms = [float(ln.split(",")[2]) for ln in lines[1:]]
    expected = [2 ** (1 / 3), 2 ** (2 / 3), 2.0, 2 ** (4 / 3), 2 ** (5 / 3)]
    np.testing.assert_allclose(norms, expected, rtol=1e-11)
    capsys.readouterr()


def test_norms_interval_factors(tmp_path, capsys):
    cfg = {"set": {"kind": "interval", "a": -2, "b": 2},
           "degrees": "1..5"}
    rc, out = _run(tmp_path, "norms", cfg)
    assert rc == 0
    for ln in (out.parent / "out.csv").read_text().strip().split("\n")[1:]:
        assert float(ln.split(",")[4]) == pytest.approx(2.0, rel=1e-11)
    capsys.readouterr()


def test_csv_byte_stable(tmp_path, capsys):
    cfg = {"set": {"kind": "arc", "alpha": 1.2}, "degrees": [2, 4],
           "tol": 1e-6}
    rc1, out = _run(tmp_path, "norms", cfg, ("--seed", "5"))
    first = (out.parent / "out.csv").read_bytes()
    rc2, out = _run(tmp_path, "norms", cfg, ("--seed", "5"))
    second = (out.parent / "out.csv").read_bytes()
    assert rc1 == rc2 == 0
    assert first == second
    capsys.readouterr()


def test_emitted_factors_lower_bound(tmp_path, capsys):
    cfg = {"set": {"kind": "star_even", "m": 2}, "degrees": "1..8"}
    rc, out = _run(tmp_path, "norms", cfg)
    assert rc == 0
    for ln in (out.parent / "out.csv").read_text().strip().split("\n")[1:]:
        assert float(ln.split(",")[4]) >= 1.0 - 1e-9
    capsys.readouterr()


def test_svg_emitted(tmp_path, capsys):
    cfg = {"set": {"kind": "star_even", "m": 2}, "degrees": [1, 2, 3],
           "emit": ["csv", "svg"]}
    rc, out = _run(tmp_path, "norms", cfg)
    assert rc == 0
    svg = (out.parent / "out.svg").read_text()
    assert svg.startswith("<svg")
    assert "<circle" in svg
    capsys.readouterr()


def test_limits_mode(tmp_path, capsys):
    cfg = {"set": {"kind": "quadratic", "a": 0, "b": 3}, "degrees": [1]}
    rc, out = _run(tmp_path, "limits", cfg)
    assert rc == 0
    text = (out.parent / "out.csv").read_text()
    odd = [ln for ln in text.strip().split("\n") if ln.startswith("odd")][0]
    assert float(odd.split(",")[1]) == pytest.approx(1 + math.sqrt(5))
    capsys.readouterr()


def test_limits_conjecture_flag(tmp_path, capsys):
    p, _ = sets.shabat_example()
    cfg = {"set": sets.shabat_spec().to_json(), "degrees": [1]}
    rc, out = _run(tmp_path, "limits", cfg)
    assert rc == 0
    assert "true" in (out.parent / "out.csv").read_text()
    capsys.readouterr()


def test_shabat_mode_small(tmp_path, capsys):
    cfg = {"degrees": [1, 7], "tol": 1e-6}
    rc, out = _run(tmp_path, "shabat", cfg)
    assert rc == 0
    lines = (out.parent / "out.csv").read_text().strip().split("\n")
    row7 = [ln for ln in lines if ln.startswith("7,")][0]
    assert float(row7.split(",")[4]) == pytest.approx(2.0, abs=1e-3)
    capsys.readouterr()


def test_shabat_rejects_large_degree(tmp_path, capsys):
    cfg = {"degrees": [41]}
    rc, _ = _run(tmp_path, "shabat", cfg)
    assert rc == 2
    capsys.readouterr()


def test_preimage_star(tmp_path, capsys):
    cfg = {"set": {"kind": "star_even", "m": 2}, "degrees": [9],
           "samples": 12, "emit": ["csv", "svg"]}
    rc, out = _run(tmp_path, "preimage", cfg)
    assert rc == 0
    lines = (out.parent / "out.csv").read_text().strip().split("\n")
    assert lines[0] == "re,im,group"
    spec = sets.SetSpec(kind="star_even", m=2)
    from widomlab.cheb_complex import star_norm
    T = star_norm(2, 9).poly
    nrm = star_norm(2, 9).norm
    pts = [complex(float(a), float(b))
           for a, b, g in (ln.split(",") for ln in lines[1:])
           if int(g) < 4]
    assert len(pts) == 4 * 12 * 9
    # every cloud point satisfies the defining relation: T(z)^4 real
    # in [0, norm^4]
    for z in pts[::17]:
        w = complex(T(z)) ** 4
        assert abs(w.imag) < 1e-5 * max(1.0, abs(w))
        assert -1e-6 <= w.real <= nrm ** 4 * (1 + 1e-6)
    # the cloud contains points close to the base star itself
    base = sets.discretize(spec, 20).as_array()
    d = np.abs(np.array(pts)[:, None] - base[None, :])
    assert np.median(np.min(d, axis=0)) < 0.1
    capsys.readouterr()


def test_preimage_shabat_tree(tmp_path, capsys):
    cfg = {"set": sets.shabat_spec().to_json(), "degrees": [7],
           "samples": 16}
    rc, out = _run(tmp_path, "preimage", cfg)
    assert rc == 0
    lines = (out.parent / "out.csv").read_text().strip().split("\n")[1:]
    assert len(lines) == 7 * 16
    p, (ta, tb) = sets.shabat_example()
    for ln in lines[::5]:
        re, im, _ = ln.split(",")
        v = p(complex(float(re), float(im)))
        assert abs(v.imag) < 1e-6
        assert ta - 1e-6 <= v.real <= tb + 1e-6
    capsys.readouterr()


def test_threads_env_respected(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WIDOMLAB_THREADS", "1")
    cfg = {"set": {"kind": "star_even", "m": 2}, "degrees": [1, 2, 3]}
    rc, out = _run(tmp_path, "norms", cfg)
    assert rc == 0
    capsys.readouterr()
