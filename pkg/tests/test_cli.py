import json

import pytest

from twoedit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def without_timing(payload):
    if isinstance(payload, dict):
        return {k: without_timing(v) for k, v in payload.items() if k != "elapsed_ms"}
    if isinstance(payload, list):
        return [without_timing(v) for v in payload]
    return payload


@pytest.fixture
def word_file(tmp_path):
    def make(*words):
        p = tmp_path / "words.txt"
        p.write_text("\n".join(words) + "\n")
        return str(p)
    return make


def test_member_true(capsys):
    code, out, _ = run(capsys, "member", "code=C2S", "n=10", "b0=0", "b1=0", "b2=0", "x=0000000000")
    assert code == 0
    assert out.splitlines()[0] == "true"


def test_member_false_breakdown(capsys):
    code, data = run_json(capsys, "member", "code=C2S", "n=6", "b0=0", "b1=0", "b2=0", "x=100000")
    assert code == 0 and data["member"] is False


def test_verify_words_refutes(capsys, word_file):
    path = word_file("001001", "000110")
    code, data = run_json(capsys, "verify", "--words", path, "--channel", "0,2,0")
    assert code == 1
    assert data["verdict"] == "refuted"
    assert data["witness"]["common"] == "0000"
    assert set(data) == {"config", "verdict", "witness", "counts", "elapsed_ms"}
    assert data["config"]["property"] == "correcting"


def test_verify_class_certifies(capsys):
    code, data = run_json(capsys, "verify", "--code", "code=LEV n=8 a=0", "--edits", "1")
    assert code == 0 and data["verdict"] == "certified"
    assert "witness" not in data


def test_verify_all_classes(capsys):
    code, data = run_json(capsys, "verify", "--code", "code=CDS_L n=7", "--all-classes",
                          "--channel", "0,1,1", "--list", "2")
    assert code == 0 and data["counts"]["refuted_classes"] == 0


def test_verify_needs_a_channel(capsys, word_file):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--words", word_file("0101")])
    assert exc.value.code == 2


def test_lemma_suite(capsys):
    code, data = run_json(capsys, "lemma-suite", "--n-max", "5")
    assert code == 0 and data["verdict"] == "certified"


@pytest.mark.parametrize("argv", [
    ["syndrome", "0120"],
    ["syndrome"],
    ["member", "code=C2S", "n=6", "b0=0", "b1=0", "b2=0"],
    ["member", "code=NOPE", "n=6", "x=000000"],
    ["decode", "--code", "code=C2S n=6 b0=0 b1=0 b2=0", "--received", "0"],
    ["lemma-suite", "--n-max", "12"],
    ["channel", "0101", "--edits", "2"],
    ["verify", "--words", "/nonexistent/file", "--channel", "0,1,0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith(f"twoedit {argv[0]}: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["balance", "0101"])
    assert exc.value.code == 2


def test_decode_no_candidate(capsys):
    code, out, _ = run(capsys, "decode", "--code", "code=C2S n=6 b0=0 b1=0 b2=0", "--received", "111111")
    assert code == 3
    assert out.strip() == "111111 none"


def test_decode_unique_and_schema(capsys):
    code, data = run_json(capsys, "decode", "--code", "code=C2S n=6 b0=0 b1=0 b2=0", "--received", "000100")
    assert code == 0
    assert set(data) == {"config", "results"}
    row = data["results"][0]
    assert row["kind"] == "unique" and row["candidates"] == ["000000"]


def test_decode_with_channel_traces_errors(capsys):
    code, data = run_json(capsys, "decode", "--code", "code=LEV n=6", "--anchor", "x=011010",
                          "--channel", "0,1,0", "--received", "01010")
    assert code == 0
    row = data["results"][0]
    assert row["candidates"] == ["011010"] and row["errors"]


def test_syndrome_and_transform(capsys):
    code, out, _ = run(capsys, "syndrome", "10111001", "-k", "1")
    assert code == 0 and out.split()[-1] == str(sum(i for i, c in enumerate("10111001", 1) if c == "1"))


def test_ball_lists_members(capsys):
    code, data = run_json(capsys, "ball", "001001", "--channel", "0,2,0")
    assert code == 0
    assert data["members"] == ["0000", "0001", "0010", "0011", "0100", "0101", "1001"]


def test_channel_is_seeded(capsys):
    a = run(capsys, "channel", "01101001", "--edits", "2", "--seed", "7", "--count", "5")
    b = run(capsys, "channel", "01101001", "--edits", "2", "--seed", "7", "--count", "5")
    assert a == b and a[0] == 0


def test_enumerate_and_stats(capsys, tmp_path):
    code, data = run_json(capsys, "enumerate", "code=C2S", "n=6", "b0=0", "b1=0", "b2=0")
    assert code == 0 and data["codewords"] == ["000000"]
    plot = tmp_path / "sizes.png"
    code, data = run_json(capsys, "stats", "code=LEV", "n=8", "--plot", str(plot))
    assert code == 0 and data["max_size"] == 16
    assert plot.stat().st_size > 0


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "lemma-suite", "--n-max", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "certified"


@pytest.mark.parametrize("argv", [
    ["verify", "--code", "code=C2S n=8", "--all-classes", "--channel", "0,0,2", "--format", "json"],
    ["stats", "code=CDS_L", "n=8", "--format", "json"],
    ["lemma-suite", "--n-max", "4", "--format", "json"],
])
def test_json_output_is_deterministic(capsys, argv):
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    assert json.dumps(without_timing(first), sort_keys=True) == json.dumps(without_timing(second), sort_keys=True)
