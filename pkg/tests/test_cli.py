import json

import numpy as np
import pytest

from quadhull import cli, codes, keyfile
from quadhull.keyfile import KeyFileError

PARAMS = ["-q", "7", "-m", "2", "-r", "4", "-n", "35"]


# -- key files -----------------------------------------------------------------


def test_keyfile_round_trip(inst74):
    for kf in (keyfile.public_file(inst74), keyfile.secret_file(inst74)):
        back = keyfile.loads(keyfile.dumps(kf))
        assert back.role == kf.role and back.tower.descriptor() == kf.tower.descriptor()
        assert set(back.matrices) == set(kf.matrices)
        for name, M in kf.matrices.items():
            assert np.array_equal(back.matrices[name], M)


def test_keyfile_goppa_and_q9():
    inst = codes.keygen(9, 2, 3, 60, seed=1, kind="goppa")
    back = keyfile.loads(keyfile.dumps(keyfile.secret_file(inst)))
    assert back.kind == "goppa"
    assert np.array_equal(back.vector("Gamma"), inst.Gamma)
    assert np.array_equal(back.get("H_sec"), inst.H_sec)


def test_keyfile_header(inst74):
    text = keyfile.dumps(keyfile.public_file(inst74))
    lines = text.splitlines()
    assert lines[:4] == ["ALTKEY v1", "p=7; qpoly=[]; mpoly=[1,0,1]", "7 2 4 35 11", "role public kind alternant"]
    assert lines[4] == "H_pub 8 35 prime"
    assert len(lines) == 4 + 1 + 8


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("ALTKEY v1", "ALTKEY v2"),
        lambda t: t.replace("role public", "role nobody"),
        lambda t: "\n".join(t.splitlines()[:-1]),
        lambda t: t.replace("mpoly=[1,0,1]", "mpoly=[1,0"),
        lambda t: t.replace("H_pub 8 35", "H_pub 8 36"),
        lambda t: t.replace("7 2 4 35", "7 3 4 35"),
        lambda t: t[:-3] + "9\n",
        "",
    ],
)
def test_malformed_key_files(inst74, mutate):
    text = keyfile.dumps(keyfile.public_file(inst74))
    bad = mutate(text) if callable(mutate) else mutate
    with pytest.raises(KeyFileError):
        keyfile.loads(bad)


def test_missing_entry(inst74):
    kf = keyfile.public_file(inst74)
    with pytest.raises(KeyFileError):
        kf.get("x")
    with pytest.raises(KeyFileError):
        kf.vector("H_pub")


# -- command line ----------------------------------------------------------------


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_keygen_attack_verify(tmp_path, capsys):
    prefix = str(tmp_path / "k")
    code, _ = run(capsys, "keygen", *PARAMS, "--seed", "4", "--out", prefix)
    assert code == 0
    code, out = run(capsys, "attack", prefix + ".pub", "--out", prefix + ".rec", "--json")
    assert code == 0
    report = json.loads(out.out)
    assert report["outcome"] == "success"
    rec = keyfile.read(prefix + ".rec")
    assert rec.role == "recovered"
    assert run(capsys, "verify", prefix + ".pub", prefix + ".rec")[0] == 0
    assert run(capsys, "verify", prefix + ".pub", prefix + ".sec")[0] == 0


def test_keygen_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "keygen", *PARAMS, "--seed", "9", "--out", str(a))
    run(capsys, "keygen", *PARAMS, "--seed", "9", "--out", str(b))
    for ext in (".pub", ".sec"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()
    assert "x " not in (tmp_path / "a.pub").read_text()


def test_verify_rejects_foreign_key(tmp_path, capsys):
    run(capsys, "keygen", *PARAMS, "--seed", "1", "--out", str(tmp_path / "a"))
    run(capsys, "keygen", *PARAMS, "--seed", "2", "--out", str(tmp_path / "b"))
    code, out = run(capsys, "verify", str(tmp_path / "a.pub"), str(tmp_path / "b.sec"))
    assert code == 1 and "REJECTED" in out.out


def test_distinguish_exit_codes(capsys):
    code, out = run(capsys, "distinguish", *PARAMS)
    assert code == 0 and "distinguishable   yes" in out.out
    code, out = run(capsys, "distinguish", "-q", "7", "-m", "2", "-r", "4", "-n", "20", "--json")
    assert code == 1 and json.loads(out.out)["distinguishable"] is False


def test_attack_inapplicable_exit_code(tmp_path, capsys):
    prefix = str(tmp_path / "g")
    run(capsys, "keygen", "-q", "2", "-m", "4", "-r", "3", "-n", "15", "--kind", "goppa", "--out", prefix)
    code, out = run(capsys, "attack", prefix + ".pub", "--out", prefix + ".rec")
    assert code == 2 and "inapplicable" in out.out
    assert not (tmp_path / "g.rec").exists()


def test_parameter_errors(capsys):
    code, out = run(capsys, "keygen", "-q", "7", "-m", "2", "-r", "4", "-n", "60")
    assert code == 64 and "parameter error" in out.err
    assert run(capsys, "distinguish", "-q", "7", "-m", "2", "-r", "1", "-n", "35")[0] == 64


def test_file_errors(tmp_path, capsys):
    assert run(capsys, "attack", str(tmp_path / "missing.pub"))[0] == 66
    bad = tmp_path / "bad.pub"
    bad.write_text("ALTKEY v1\ngarbage\n")
    code, out = run(capsys, "attack", str(bad))
    assert code == 66 and "file error" in out.err


def test_bench(capsys):
    code, out = run(capsys, "bench", *PARAMS, "--runs", "2", "--json", "--threads", "4")
    assert code == 0
    payload = json.loads(out.out)
    assert payload["counts"]["success"] == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "quadhull", "distinguish", *PARAMS],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "threshold         1" in proc.stdout
