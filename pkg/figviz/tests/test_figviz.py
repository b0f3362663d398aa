import json
import math

import pytest

from figviz import disorder, histogram, phase, sweep, threshold_scaling, timetrace

ALL_SCRIPTS = [timetrace, sweep, threshold_scaling, disorder, phase, histogram]


def write_trajectory(d):
    lines = ["t,re_alpha_N,im_alpha_N,abs_alpha_N"]
    for k in range(400):
        t = 0.1 * k
        re = math.cos(t) * math.exp(-0.01 * t)
        im = math.sin(t) * math.exp(-0.01 * t)
        lines.append(f"{t},{re},{im},{math.hypot(re, im)}")
    (d / "trajectory.csv").write_text("\n".join(lines) + "\n")


def write_sweep(d):
    lines = ["N,mean_abs_alpha_N,sigma,n_realizations,n_failed"]
    for n in range(10, 101, 10):
        mean = 10.0 if n < 40 else 10.0 * (n / 40.0) ** -0.5
        sigma = 0.001 if n < 40 else 0.2
        lines.append(f"{n},{mean},{sigma},16,0")
    (d / "sweep.csv").write_text("\n".join(lines) + "\n")


def write_scaling(d, with_manifest=True):
    lines = ["value,n_t,n_t_end", "0.5,55,-1", "1,45,-1", "2,30,-1", "4,-1,-1"]
    (d / "scaling.csv").write_text("\n".join(lines) + "\n")
    if with_manifest:
        manifest = {"axis": "u",
                    "fit": {"model": "power", "exponent_or_rate": -0.44,
                            "prefactor": 44.0, "r_squared": 0.96,
                            "n_points": 3}}
        (d / "manifest.json").write_text(json.dumps(manifest))


def write_disorder(d):
    lines = ["N,mean_abs_alpha_N,median_abs_alpha_N,logmean_abs_alpha_N,"
             "sigma,n_configs,n_failed"]
    for k, n in enumerate((40, 80, 120, 160, 200)):
        y = 0.05 * math.exp(-0.02 * n)
        lines.append(f"{n},{y},{y * 0.9},{y * 0.8},{y * 0.3},64,0")
    (d / "disorder.csv").write_text("\n".join(lines) + "\n")


def write_phase(d):
    lines = ["U,W,classification,power_exponent,power_r2,exp_rate,exp_r2,"
             "n_points",
             "1,0,diffusive,-0.5,0.95,0.001,0.6,5",
             "1,5,insulating,-3,0.7,0.2,0.99,5",
             "0.5,2,inconclusive,-1,0.5,0.05,0.5,5"]
    (d / "phase.csv").write_text("\n".join(lines) + "\n")


def write_all(d):
    write_trajectory(d)
    write_sweep(d)
    write_scaling(d)
    write_disorder(d)
    write_phase(d)


@pytest.mark.parametrize("module", ALL_SCRIPTS)
def test_renders_and_is_deterministic(tmp_path, module):
    write_all(tmp_path)
    out_a = tmp_path / "a.png"
    out_b = tmp_path / "b.png"
    for out in (out_a, out_b):
        with pytest.raises(SystemExit) as exc_info:
            module.main(["--in", str(tmp_path), "--out", str(out)])
        assert exc_info.value.code == 0
        assert out.stat().st_size > 1000
    assert out_a.read_bytes() == out_b.read_bytes()


@pytest.mark.parametrize("module,csv_name", [
    (timetrace, "trajectory.csv"), (sweep, "sweep.csv"),
    (threshold_scaling, "scaling.csv"), (disorder, "disorder.csv"),
    (phase, "phase.csv"), (histogram, "trajectory.csv"),
])
def test_missing_csv_names_file(tmp_path, module, csv_name, capsys):
    with pytest.raises(SystemExit) as exc_info:
        module.main(["--in", str(tmp_path), "--out", str(tmp_path / "o.png")])
    assert exc_info.value.code == 1
    assert csv_name in capsys.readouterr().err


@pytest.mark.parametrize("module,csv_name", [
    (timetrace, "trajectory.csv"), (sweep, "sweep.csv"),
    (phase, "phase.csv"),
])
def test_wrong_header_rejected(tmp_path, module, csv_name, capsys):
    (tmp_path / csv_name).write_text("bogus,columns\n1,2\n")
    with pytest.raises(SystemExit) as exc_info:
        module.main(["--in", str(tmp_path), "--out", str(tmp_path / "o.png")])
    assert exc_info.value.code == 1
    err = capsys.readouterr().err
    assert csv_name in err and "schema" in err


def test_inputs_not_modified(tmp_path):
    write_all(tmp_path)
    before = {p.name: p.read_bytes() for p in tmp_path.glob("*.csv")}
    for module in ALL_SCRIPTS:
        with pytest.raises(SystemExit):
            module.main(["--in", str(tmp_path),
                         "--out", str(tmp_path / "o.png")])
    after = {p.name: p.read_bytes() for p in tmp_path.glob("*.csv")}
    assert before == after


def test_scaling_without_manifest_still_renders(tmp_path):
    write_scaling(tmp_path, with_manifest=False)
    out = tmp_path / "o.png"
    with pytest.raises(SystemExit) as exc_info:
        threshold_scaling.main(["--in", str(tmp_path), "--out", str(out)])
    assert exc_info.value.code == 0
    assert out.exists()


def test_phase_unknown_class_rejected(tmp_path, capsys):
    (tmp_path / "phase.csv").write_text(
        "U,W,classification,power_exponent,power_r2,exp_rate,exp_r2,n_points\n"
        "1,0,weird,0,0,0,0,5\n")
    with pytest.raises(SystemExit) as exc_info:
        phase.main(["--in", str(tmp_path), "--out", str(tmp_path / "o.png")])
    assert exc_info.value.code == 1
    assert "weird" in capsys.readouterr().err


def test_histogram_transient_filter(tmp_path):
    write_trajectory(tmp_path)
    out = tmp_path / "o.png"
    with pytest.raises(SystemExit) as exc_info:
        histogram.main(["--in", str(tmp_path), "--out", str(out),
                        "--transient", "20", "--bins", "20"])
    assert exc_info.value.code == 0
    assert out.exists()
