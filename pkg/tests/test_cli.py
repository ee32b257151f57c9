import json

from sblinks.cli import run


def test_bound_pass(capsys):
    assert run(["bound", "--m", "2", "--d", "6", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "5/2" in out


def test_bound_json(capsys):
    assert run(["bound", "--json", "--m", "2", "--d", "6", "--n", "2"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    for line in lines:
        obj = json.loads(line)
        assert obj["status"] == "pass"
        assert obj["payload"]["bound"] == "5/2"


def test_bound_small_e_fails(capsys):
    assert run(["bound", "--m", "2", "--d", "3", "--n", "2"]) == 1


def test_norm_test_no(capsys):
    assert run(["norm-test", "--xi", "t2", "--lambda", "t1", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out.strip())
    assert obj["payload"]["result"] == "no"
    assert obj["payload"]["certificate"]["kind"] == "norm-degree"


def test_norm_test_yes(capsys):
    assert run(["norm-test", "--xi", "t1", "--lambda", "t1"]) == 0
    assert "yes" in capsys.readouterr().out


def test_norm_test_unknown_exit_code(capsys):
    # 1 + t1 is a norm, but lies outside the decidable fragment
    assert run(["norm-test", "--xi", "1+t1", "--lambda", "t1"]) == 2


def test_usage_error_exit_64(capsys):
    assert run(["nonsense-command"]) == 64
    assert run(["bound", "--m", "2"]) == 64


def test_parse_error_exit_65(capsys):
    assert run(["norm-test", "--xi", "t9", "--lambda", "t1"]) == 65
    assert run(["norm-test", "--xi", "t2 +", "--lambda", "t1"]) == 65
    # literals must stay in the base field
    assert run(["norm-test", "--xi", "cbrt(t2)", "--lambda", "t1"]) == 65


def test_cocycle(capsys):
    assert run(["cocycle", "--count", "5", "--seed", "7"]) == 0


def test_surface_iso(capsys):
    assert run(["surface-iso", "--xi", "t2", "--xi2", "1/t2", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out.strip())
    assert obj["payload"]["result"] == "no"


def test_point_second(capsys):
    assert run(["point", "--kind", "second"]) == 0
    out = capsys.readouterr().out
    assert "degree=3" in out


def test_psi(capsys):
    assert run(["psi", "--count", "100", "--seed", "3"]) == 0


def test_link3(capsys):
    assert run(["link3", "--point", "coords"]) == 0


def test_expression_grammar(capsys):
    # rationals, zeta, powers, parentheses; the constant ratio 2/3 is outside
    # the decidable norm fragment, so the check may legitimately be undecided
    rc = run(["surface-iso", "--xi", "(2/3)*t2^2", "--xi2", "t2^2", "--json"])
    assert rc in (0, 2)
    obj = json.loads(capsys.readouterr().out.strip())
    assert obj["status"] in ("pass", "unknown")
    # a fragment-decidable literal with all grammar pieces
    assert (
        run(["surface-iso", "--xi", "8*t2^3*(t1 - t1)+t2", "--xi2", "t2", "--json"])
        == 0
    )
    obj = json.loads(capsys.readouterr().out.strip())
    assert obj["payload"]["result"] == "yes"


def test_reports_sorted_and_valid_json(capsys):
    assert run(["bound", "--json", "--a", "4"]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.strip()]
    names = [json.loads(l)["check"] for l in lines]
    assert names == sorted(names)


def test_sbk_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("SBK_SEED", "12345")
    assert run(["cocycle", "--count", "3"]) == 0
    monkeypatch.setenv("SBK_SEED", "999")
    assert run(["psi", "--count", "50"]) == 0
