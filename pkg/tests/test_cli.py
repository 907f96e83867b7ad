"""CLI contract: exit codes, JSON output, determinism, file inputs."""

import json

from hypersos.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cone_member_exit_codes(capsys):
    code, out, _ = run(
        capsys, "cone-member", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--a", "2,1,0", "--no-timings",
    )
    assert code == 0
    assert json.loads(out)["verdict"]["status"] == "CERTIFIED_YES"
    code, out, _ = run(
        capsys, "cone-member", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--a", "1,2,0", "--no-timings",
    )
    assert code == 1


def test_vamos_repro_cli(capsys):
    code, out, _ = run(capsys, "vamos-repro", "--no-timings")
    assert code == 1  # the restricted Wronskian is certifiably not SOS
    data = json.loads(out)
    assert data["gram_det"] == "-1/4"
    assert data["conclusion"]["status"] == "CERTIFIED_NO"


def test_gen_elementary_symmetric(capsys):
    code, out, _ = run(capsys, "gen", "elementary-symmetric", "--n", "4", "--d", "2", "--no-timings")
    assert code == 0
    data = json.loads(out)
    assert data["poly"] == "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4"


def test_gen_families(capsys):
    for argv in (
        ["gen", "product", "--n", "3"],
        ["gen", "lorentz", "--n", "4"],
        ["gen", "sym-det", "--d", "2"],
        ["gen", "cubic-example"],
        ["gen", "vamos"],
    ):
        code, out, _ = run(capsys, *argv, "--no-timings")
        assert code == 0
        data = json.loads(out)
        assert data["poly"]


def test_deterministic_output(capsys):
    argv = [
        "sos-cone-member", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--a", "2,1,0", "--seed", "7", "--no-timings",
    ]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_parse_error_exit_3(capsys):
    code, _, err = run(
        capsys, "delta", "--poly", "x^2 + $", "--vars", "x,y",
        "--e", "1,0", "--a", "0,1", "--no-timings",
    )
    assert code == 3
    data = json.loads(err)
    assert "position" in data


def test_missing_flag_exit_3(capsys):
    code, _, err = run(capsys, "cone-member", "--poly", "x^2", "--vars", "x", "--no-timings")
    assert code == 3


def test_delta_output(capsys):
    code, out, _ = run(
        capsys, "delta", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--a", "2,1,0", "--no-timings",
    )
    assert code == 0
    assert json.loads(out)["delta"] == "4*x^2 - 4*x*y + 4*y^2 + 4*z^2"


def test_poly_from_file(tmp_path, capsys):
    path = tmp_path / "poly.txt"
    path.write_text("x^2 - y^2 - z^2")
    code, out, _ = run(
        capsys, "check-hyperbolic", "--poly", f"@{path}", "--vars", "x,y,z",
        "--e", "1,0,0", "--trials", "16", "--no-timings",
    )
    assert code == 0
    assert "sampled=true" in json.loads(out)["verdict"]["detail"]


def test_detrep_build_verify_round_trip(tmp_path, capsys):
    rep_path = tmp_path / "rep.json"
    code, out, _ = run(
        capsys, "detrep-build", "--poly", "x1*x2 + x1*x3 + x2*x3", "--vars", "x1,x2,x3",
        "--dvars", "x1,x2", "--e", "1,1,1", "--cert-out", str(rep_path), "--no-timings",
    )
    assert code == 0
    assert rep_path.exists()
    code2, out2, _ = run(
        capsys, "detrep-verify", "--poly", "x1*x2 + x1*x3 + x2*x3", "--vars", "x1,x2,x3",
        "--rep", f"@{rep_path}", "--no-timings",
    )
    assert code2 == 0
    assert json.loads(out2)["ok"] is True
    # verification against the wrong polynomial fails with exit 1
    code3, out3, _ = run(
        capsys, "detrep-verify", "--poly", "x1*x2", "--vars", "x1,x2,x3",
        "--rep", f"@{rep_path}", "--no-timings",
    )
    assert code3 == 1


def test_detrep_build_obstruction_exit_1(capsys):
    code, out, _ = run(
        capsys, "detrep-build", "--poly", "x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4",
        "--vars", "x1,x2,x3,x4", "--dvars", "x1,x2", "--e", "1,1,1,1", "--no-timings",
    )
    assert code == 1
    data = json.loads(out)
    assert data["verdict"]["witness"]["pair"] == ["x1", "x2"]


def test_sos_certify_with_certificate_file(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(
        capsys, "sos-certify", "--poly", "x^2 + 2*x*y + y^2", "--vars", "x,y",
        "--cert-out", str(cert_path), "--no-timings",
    )
    assert code == 0
    data = json.loads(out)
    assert data["certificate_path"] == str(cert_path)
    from hypersos.soscert import SosCertificate

    cert = SosCertificate.from_json(cert_path.read_text())
    assert cert.verify()


def test_interlaces_cli(capsys):
    code, out, _ = run(
        capsys, "interlaces", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--g", "x", "--trials", "16", "--sos-budget", "1", "--no-timings",
    )
    assert code == 0


def test_stable_check_cli(capsys):
    code, out, _ = run(
        capsys, "stable-check", "--poly", "x1*x2 + x1*x3 + x2*x3", "--vars", "x1,x2,x3",
        "--sos-budget", "0", "--no-timings",
    )
    assert code == 0
    code2, _, err = run(
        capsys, "stable-check", "--poly", "x1^2", "--vars", "x1,x2", "--no-timings",
    )
    assert code2 == 3  # not multiaffine is an input error


def test_text_format(capsys):
    code, out, _ = run(
        capsys, "cone-member", "--poly", "x^2-y^2-z^2", "--vars", "x,y,z",
        "--e", "1,0,0", "--a", "2,1,0", "--no-timings", "--format", "text",
    )
    assert code == 0
    assert "CERTIFIED_YES" in out
