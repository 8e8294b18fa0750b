"""CLI subcommands end to end (seed, enquire, analyze, serve wiring)."""

from __future__ import annotations

import json

import pytest

import netbank.cli as cli
from netbank.store import open_store


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_seed_then_enquire_balance(tmp_path, capsys):
    code, out, _ = run(capsys, "seed", "--dir", str(tmp_path))
    assert code == 0
    assert "20 transactions" in out

    code, out, _ = run(
        capsys, "enquire", "--dir", str(tmp_path),
        "--family", "0", "--service", "1", "--account", "ACC1",
    )
    assert code == 0
    body = json.loads(out)
    snapshot = open_store(tmp_path).snapshot()
    expected = sum(t.amount.amount_minor for t in snapshot.transactions_for("ACC1"))
    assert body["variant"] == "balance"
    assert body["payload"]["amount_minor"] == expected


def test_enquire_statement_with_period(tmp_path, capsys):
    run(capsys, "seed", "--dir", str(tmp_path))
    code, out, _ = run(
        capsys, "enquire", "--dir", str(tmp_path),
        "--family", "account", "--service", "statement", "--account", "ACC1",
        "--from", "2025-01-01T00:00:00Z", "--to", "2025-02-01T00:00:00Z",
    )
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["period_from"] == "2025-01-01T00:00:00.000Z"
    for line in payload["lines"]:
        assert "2025-01-01" <= line["timestamp"] < "2025-02-01"


def test_enquire_unbound_selector_fails(tmp_path, capsys):
    run(capsys, "seed", "--dir", str(tmp_path))
    code, out, err = run(
        capsys, "enquire", "--dir", str(tmp_path),
        "--family", "9", "--service", "0", "--account", "ACC1",
    )
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"] == "null_selection"


def test_enquire_mini_statement_depth(tmp_path, capsys):
    run(capsys, "seed", "--dir", str(tmp_path))
    code, out, _ = run(
        capsys, "enquire", "--dir", str(tmp_path),
        "--family", "1", "--service", "2", "--account", "CC1", "--depth", "2",
    )
    assert code == 0
    assert len(json.loads(out)["payload"]["lines"]) == 2


def test_analyze_bundled_default(capsys):
    code, out, _ = run(capsys, "analyze")
    assert code == 0
    assert "crosscutting (degree >= 2): MiniStatement, ViewBalance, ViewStatement" in out
    assert "Enquiry (Visitor)" in out


def test_analyze_json_on_custom_file(tmp_path, capsys):
    model = tmp_path / "tiny.bpm"
    model.write_text("service A { op X }\nservice B { op X op Y }\n")
    code, out, _ = run(capsys, "analyze", str(model), "--json")
    assert code == 0
    body = json.loads(out)
    assert body["crosscutting"] == ["X"]
    assert body["candidates"] == []


def test_analyze_bad_file_fails(tmp_path, capsys):
    model = tmp_path / "broken.bpm"
    model.write_text("service A { nope }")
    code, _, err = run(capsys, "analyze", str(model))
    assert code == 1
    assert json.loads(err)["error"] == "syntax_error"


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["enquire", "--dir"])  # missing value
    assert exc.value.code == 2


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_seeding_is_deterministic(tmp_path, capsys):
    dir_a, dir_b, dir_c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    run(capsys, "seed", "--dir", str(dir_a))
    run(capsys, "seed", "--dir", str(dir_b))
    run(capsys, "seed", "--dir", str(dir_c), "--seed", "99")
    for name in ("accounts.json", "ledger.jsonl", "customers.json"):
        assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
    assert (dir_a / "ledger.jsonl").read_bytes() != (dir_c / "ledger.jsonl").read_bytes()


def test_serve_wires_config(tmp_path, capsys, monkeypatch):
    calls = {}

    def fake_run(app, host, port):
        calls["host"], calls["port"] = host, port
        calls["depth"] = app.state.config.mini_statement_depth

    monkeypatch.setattr("uvicorn.run", fake_run)
    run(capsys, "seed", "--dir", str(tmp_path))
    code, _, _ = run(
        capsys, "serve", "--dir", str(tmp_path),
        "--host", "0.0.0.0", "--port", "9100", "--depth", "3",
    )
    assert code == 0
    assert calls == {"host": "0.0.0.0", "port": 9100, "depth": 3}


def test_serve_env_var_overrides_listen(tmp_path, capsys, monkeypatch):
    calls = {}
    monkeypatch.setattr("uvicorn.run", lambda app, host, port: calls.update(host=host, port=port))
    monkeypatch.setenv("NETBANK_LISTEN", "127.0.0.2:9200")
    run(capsys, "seed", "--dir", str(tmp_path))
    code, _, _ = run(capsys, "serve", "--dir", str(tmp_path), "--port", "9100")
    assert code == 0
    assert calls == {"host": "127.0.0.2", "port": 9200}
