import json

from tmfkit import cli, elliptic, modforms, moonshine, qseries
from tmfkit.exactalg import MPoly
from tmfkit.modforms import MFPolynomial
from tmfkit.moonshine import JPolynomial
from tmfkit.qseries import QExpansion


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_jn_text_output(capsys):
    code, out, _ = run(capsys, "jn", "2", "--precision", "5")
    assert code == 0
    assert out.splitlines()[0] == "j^2 - 1488*j + 159768"
    code, out, _ = run(capsys, "jn", "3", "--precision", "5")
    assert out.splitlines()[0] == "j^3 - 2232*j^2 + 1069956*j - 36866976"


def test_jn_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "jn", "2", "--precision", "6")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "jn"
    poly = JPolynomial.from_dict(payload["result"]["polynomial"])
    exp = QExpansion.from_dict(payload["result"]["expansion"])
    want_poly, want_exp = moonshine.faber_jn(2, 6)
    assert poly == want_poly and exp == want_exp


def test_qexp_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "qexp", "delta", "--precision", "12")
    assert code == 0
    payload = json.loads(out)
    assert QExpansion.from_dict(payload["result"]) == qseries.discriminant_qexp(12)


def test_tmf_member_exit_codes(capsys):
    code, out, _ = run(capsys, "tmf-member", "Delta")
    assert code == 3 and "requires 24" in out and "non-member" in out
    code, out, _ = run(capsys, "tmf-member", "24*Delta")
    assert code == 0 and "member" in out
    assert run(capsys, "tmf-member", "c4^3 - 744*Delta")[0] == 0
    assert run(capsys, "tmf-member", "c6")[0] == 3
    assert run(capsys, "tmf-member", "2*c6")[0] == 0
    assert run(capsys, "tmf-member", "c4")[0] == 0


def test_tmf_member_json_certificate(capsys):
    code, out, _ = run(capsys, "--format", "json", "tmf-member", "24*Delta - 48*c4^3")
    assert code == 0
    payload = json.loads(out)
    cert = payload["certificate"]
    assert payload["result"]["member"] is True
    form = MFPolynomial.from_dict(cert["form"])
    assert form == 24 * modforms.DELTA - 48 * modforms.C4 ** 3


def test_tmf_member_error_classes(capsys):
    code, _, err = run(capsys, "tmf-member", "c4 +")
    assert code == 1 and "usage error" in err
    code, _, err = run(capsys, "tmf-member", "c4 + c6")
    assert code == 2 and "computation error" in err
    code, _, err = run(capsys, "tmf-member", "q5")
    assert code == 1


def test_witten_command(capsys):
    code, out, _ = run(capsys, "witten", "2")
    assert code == 0 and "member" in out
    code, out, _ = run(capsys, "--format", "json", "witten", "1")
    payload = json.loads(out)
    assert payload["result"]["member"] is True
    assert MFPolynomial.from_dict(payload["result"]["form"]) == moonshine.prize_form()


def test_prize_command(capsys):
    code, out, _ = run(capsys, "prize", "--precision", "12")
    assert code == 0
    assert "744 = 31*24" in out
    assert "matches Delta*(j - 744): True" in out
    code, out, _ = run(capsys, "--format", "json", "prize", "--precision", "10")
    payload = json.loads(out)
    assert payload["result"]["matches_delta_j_744"] is True
    assert payload["result"]["constant_term"] == 1


def test_genfun_check_command(capsys):
    code, out, _ = run(capsys, "genfun-check", "8")
    assert code == 0 and "global sign: +1" in out


def test_hecke_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "hecke", "2", "--precision", "61")
    assert code == 0
    exp = QExpansion.from_dict(json.loads(out)["result"])
    assert exp.val == -2 and exp.coeff(1) == 42987520


def test_curve_invariants_symbolic(capsys):
    code, out, _ = run(capsys, "curve-invariants", "a1", "0", "a3", "0", "0")
    assert code == 0
    assert "delta = a1^3*a3^3 - 27*a3^4" in out


def test_curve_invariants_integer_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "curve-invariants", "0", "-1", "1", "0", "1")
    assert code == 0
    result = json.loads(out)["result"]
    inv = elliptic.invariants(elliptic.integer_curve(0, -1, 1, 0, 1))
    assert result["delta"] == inv.delta


def test_curve_invariants_symbolic_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "curve-invariants", "a1", "0", "a3", "0", "0")
    assert code == 0
    result = json.loads(out)["result"]
    inv = elliptic.invariants(elliptic.curve_a1_a3())
    assert MPoly.from_dict(result["delta"]) == inv.delta
    assert MPoly.from_dict(result["b4"]) == inv.b4


def test_fgl_pseries_command(capsys):
    code, out, _ = run(capsys, "fgl-pseries", "3", "--precision", "8")
    assert code == 0
    assert "Hasse invariant: a2" in out
    assert "unit 1" in out
    assert "discriminant note" in out
    code, out, _ = run(capsys, "--format", "json", "fgl-pseries", "2", "--precision", "6")
    payload = json.loads(out)
    assert payload["result"]["routes_agree"] is True
    curve = elliptic.curve_a1_a3()
    assert MPoly.from_dict(payload["result"]["coefficients"][1]) == curve.ring.const(2)


def test_anss_survivors_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "anss-survivors", "p2", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["multipliers"] == [8, 4, 8, 2, 8, 4, 8, 1]
    # the rendered differential targets re-parse to the same normal form
    from tmfkit import anss

    pres = anss.E2Presentation.builtin("tmf-p2")
    target = payload["result"]["entries"][0]["steps"][0]["differential"]
    assert pres.format_class(anss.normal_form(pres, target)) == target
    code, out, _ = run(capsys, "anss-survivors", "p3", "3")
    assert code == 0 and "3" in out


def test_anss_presentation_override(tmp_path, capsys):
    custom = tmp_path / "tiny.txt"
    custom.write_text(
        "prime 3\n"
        "gen y stem=3 filt=5 order=3\n"
        "gen Delta stem=4 filt=0 order=inf invertible\n"
        "d 5 Delta -> y\n"
    )
    code, out, _ = run(capsys, "--format", "json", "anss-survivors", "p3", "2",
                       "--presentation", str(custom))
    assert code == 0
    assert json.loads(out)["result"]["multipliers"] == [3, 3]

    bad = tmp_path / "bad.txt"
    bad.write_text(
        "prime 3\n"
        "gen x stem=3 filt=1 order=3\n"
        "gen Delta stem=4 filt=0 order=inf invertible\n"
        "d 5 Delta x^2 -> x^3 Delta\n"  # violates the page-5 bidegree shift
    )
    code, _, err = run(capsys, "anss-survivors", "p3", "2", "--presentation", str(bad))
    assert code == 2 and "computation error" in err


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys)[0] == 1
    assert run(capsys, "qexp", "c4", "--precision", "0")[0] == 1
    assert run(capsys, "fgl-pseries", "5")[0] == 1


def test_json_payload_schema(capsys):
    for argv in (
        ["--format", "json", "qexp", "c4", "--precision", "6"],
        ["--format", "json", "witten", "1"],
        ["--format", "json", "anss-survivors", "p3", "2"],
    ):
        _, out, _ = run(capsys, *argv)
        payload = json.loads(out)
        assert set(payload) <= {"command", "inputs", "result", "certificate"}
        assert {"command", "inputs", "result"} <= set(payload)


def test_module_runner(capsys):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "tmfkit", "jn", "2", "--precision", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "j^2 - 1488*j + 159768"


def test_determinism(capsys):
    first = run(capsys, "--format", "json", "anss-survivors", "p2", "6")
    second = run(capsys, "--format", "json", "anss-survivors", "p2", "6")
    assert first == second
    a = run(capsys, "--format", "json", "qexp", "j", "--precision", "20")
    b = run(capsys, "--format", "json", "qexp", "j", "--precision", "20")
    assert a == b
