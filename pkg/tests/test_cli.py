import json
import os

import pytest

from bflab import report as rp, tensor as tz
from bflab.cli import main
from bflab.config import parse_config
from bflab.errors import ConfigError
from conftest import get_algebra

Z2_TOML = """
family = "group"
ring = "Q"
orders = [2]
label = "k[Z2]"
"""

TRUNC_TOML = """
family = "truncated_poly"
ring = "Fp:2"
p = 2
k = 2
label = "F2[X]/(X4)"
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_verify_group_all_suites(tmp_path, capsys):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    out = str(tmp_path / "report.json")
    assert main(["verify", "--config", cfg, "--out", out]) == 0
    report = json.loads(open(out).read())
    assert report["summary"]["ok"]
    assert report["summary"]["failed"] == 0
    assert report["algebra"]["label"] == "k[Z2]"
    # every selected check appears exactly once
    names = list(report["checks"])
    assert len(names) == len(set(names))
    assert os.path.exists(str(tmp_path / "report.tsv"))
    text = capsys.readouterr().out
    assert "summary:" in text


def test_verify_truncated_poly(tmp_path):
    cfg = write(tmp_path, "t.toml", TRUNC_TOML)
    assert main(["verify", "--config", cfg]) == 0


def test_verify_rejects_bad_orders(tmp_path, capsys):
    cfg = write(tmp_path, "bad.toml", 'family = "group"\nring = "Q"\norders = [0]\n')
    assert main(["verify", "--config", cfg]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_rejects_bad_config_text(tmp_path):
    cfg = write(tmp_path, "bad.toml", "family = [unbalanced")
    assert main(["verify", "--config", cfg]) == 2
    assert main(["verify", "--config", str(tmp_path / "missing.toml")]) == 2


def test_config_validation():
    with pytest.raises(ConfigError):
        parse_config('family = "group"\nring = "Q"\nsuites = []\n')
    with pytest.raises(ConfigError):
        parse_config('family = "group"\nring = "Q"\nsuites = ["nope"]\n')
    with pytest.raises(ConfigError):
        parse_config('family = "ring"\nring = "Q"\n')
    cfg = parse_config(Z2_TOML)
    assert cfg.suites and cfg.jobs == 1


def test_verify_is_deterministic(tmp_path):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    out1 = str(tmp_path / "r1.json")
    out2 = str(tmp_path / "r2.json")
    assert main(["verify", "--config", cfg, "--out", out1]) == 0
    assert main(["verify", "--config", cfg, "--out", out2]) == 0
    a = rp.strip_timings(json.loads(open(out1).read()))
    b = rp.strip_timings(json.loads(open(out2).read()))
    assert a == b


def test_verify_parallel_jobs_same_report(tmp_path):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    out1 = str(tmp_path / "r1.json")
    out2 = str(tmp_path / "r2.json")
    assert main(["verify", "--config", cfg, "--out", out1]) == 0
    assert main(["verify", "--config", cfg, "--out", out2, "--jobs", "4"]) == 0
    a = rp.strip_timings(json.loads(open(out1).read()))
    b = rp.strip_timings(json.loads(open(out2).read()))
    assert a == b


def test_verify_failing_algebra_exits_one(tmp_path):
    # an explicit algebra with a corrupted antipode: axioms are checked
    # lazily, the suite reports failures, dependents become errors
    h = get_algebra("kZ3/Q")
    bad_s = tz.serialize(h.id())
    toml = (
        'family = "explicit"\nring = "Q"\n'
        "[tensors]\n"
        f'mu = """{tz.serialize(h.mu)}"""\n'
        f'unit = """{tz.serialize(h.unit)}"""\n'
        f'delta = """{tz.serialize(h.delta)}"""\n'
        f'counit = """{tz.serialize(h.counit)}"""\n'
        f'antipode = """{bad_s}"""\n'
    )
    cfg = write(tmp_path, "bad_alg.toml", toml)
    out = str(tmp_path / "r.json")
    assert main(["verify", "--config", cfg, "--out", out]) == 1
    report = json.loads(open(out).read())
    assert report["checks"]["hopf_axioms.antipode"]["status"] == "fail"
    # dependents are errors, not cascading fails
    assert report["checks"]["integrals.element_rank_one"]["status"] == "error"
    assert report["checks"]["ybe.ybe"]["status"] == "error"


def test_verify_explicit_valid_algebra(tmp_path):
    h = get_algebra("kZ2/Q")
    toml = (
        'family = "explicit"\nring = "Q"\nsuites = ["hopf_axioms", "integrals"]\n'
        "[tensors]\n"
        f'mu = """{tz.serialize(h.mu)}"""\n'
        f'unit = """{tz.serialize(h.unit)}"""\n'
        f'delta = """{tz.serialize(h.delta)}"""\n'
        f'counit = """{tz.serialize(h.counit)}"""\n'
        f'antipode = """{tz.serialize(h.antipode)}"""\n'
    )
    cfg = write(tmp_path, "explicit.toml", toml)
    assert main(["verify", "--config", cfg]) == 0


def test_diagram_named_equation(tmp_path, capsys):
    cfg = write(tmp_path, "z3.toml", 'family = "group"\nring = "Q"\norders = [3]\n')
    assert main(["diagram", "--config", cfg, "--eq", "ybe"]) == 0
    assert "holds" in capsys.readouterr().out
    assert main(["diagram", "--config", cfg, "--eq", "cancelpair"]) == 0
    assert main(["diagram", "--config", cfg, "--eq", "nosuch"]) == 2


def test_diagram_inline(tmp_path, capsys):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    assert main(["diagram", "--config", cfg, "--inline",
                 "(id*cup)*id == id*(cup*id)"]) == 0
    assert main(["diagram", "--config", cfg, "--inline", "mu ; mu == mu"]) == 2
    cfg3 = write(tmp_path, "z3.toml", 'family = "group"\nring = "Q"\norders = [3]\n')
    assert main(["diagram", "--config", cfg3, "--inline", "S == id"]) == 1
    out = capsys.readouterr().out
    assert "witness" in out


def test_diagram_moves_file_and_report(tmp_path):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    moves = write(tmp_path, "extra.moves", "inverse_pair : beta ; betainv == id^4\n")
    out = str(tmp_path / "eq.json")
    assert main(["diagram", "--config", cfg, "--eq", "inverse_pair",
                 "--moves", moves, "--out", out]) == 0
    payload = json.loads(open(out).read())
    assert payload["holds"] is True


def test_export_round_trip(tmp_path):
    cfg = write(tmp_path, "f2x2.toml",
                'family = "truncated_poly"\nring = "Fp:2"\np = 2\nk = 1\n')
    out = str(tmp_path / "exp")
    assert main(["export", "--config", cfg, "--out", out]) == 0
    cap_text = open(os.path.join(out, "cap.tensor")).read()
    lines = set(cap_text.strip().splitlines()[1:])
    assert lines == {"(0,1) <- () : 1", "(1,0) <- () : 1"}
    for name in ("mu", "delta", "beta", "theta", "theta_loop",
                 "integral_element", "integral_functional", "cup"):
        text = open(os.path.join(out, name + ".tensor")).read()
        assert tz.serialize(tz.deserialize(text)) == text
    fingerprint = open(os.path.join(out, "fingerprint.txt")).read().strip()
    assert fingerprint == get_algebra("F2X2").fingerprint()


def test_export_of_failed_build_writes_nothing(tmp_path):
    h = get_algebra("kZ2/Q")
    toml = (
        'family = "explicit"\nring = "Q"\n'
        "[tensors]\n"
        f'mu = """{tz.serialize(tz.zero_map(h.ring, 2, 2, 1))}"""\n'
        f'unit = """{tz.serialize(h.unit)}"""\n'
        f'delta = """{tz.serialize(h.delta)}"""\n'
        f'counit = """{tz.serialize(h.counit)}"""\n'
        f'antipode = """{tz.serialize(h.antipode)}"""\n'
    )
    cfg = write(tmp_path, "broken.toml", toml)
    out = str(tmp_path / "never")
    assert main(["export", "--config", cfg, "--out", out]) == 3
    assert not os.path.exists(out)


def test_figure_rendering(tmp_path):
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    fig = str(tmp_path / "grid.png")
    assert main(["verify", "--config", cfg, "--fig", fig,
                 "--out", str(tmp_path / "r.json")]) == 0
    assert os.path.getsize(fig) > 0


def test_stream_threshold_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("BFL_STREAM_THRESHOLD", "1")
    assert tz.stream_threshold() == 1
    cfg = write(tmp_path, "z2.toml", Z2_TOML)
    assert main(["verify", "--config", cfg]) == 0
    monkeypatch.delenv("BFL_STREAM_THRESHOLD")
    assert tz.stream_threshold() == tz.DEFAULT_STREAM_THRESHOLD
