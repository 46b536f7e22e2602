"""CLI contract: exit codes, report schemas, token output, corpus generation."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from grouplang import word_from_tokens
from grouplang.cli import main
from grouplang.groups import load_group
from grouplang.linear import load_grammar
from grouplang.regular import load_nfa

SAMPLES = Path(__file__).resolve().parent.parent / "sample_inputs"

CHECK_REPORT_SCHEMA = {
    "type": "object",
    "required": ["verdict", "witness", "witness_tokens", "reason", "counters", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "verdict": {"enum": ["holds", "fails", "resource_exceeded"]},
        "witness": {"type": ["array", "null"], "items": {"type": "integer"}},
        "witness_tokens": {"type": ["string", "null"]},
        "reason": {"type": ["string", "null"]},
        "counters": {
            "type": "object",
            "required": ["unions", "products", "stars", "diamonds", "triples"],
            "additionalProperties": False,
            "properties": {
                k: {"type": "integer", "minimum": 0}
                for k in ("unions", "products", "stars", "diamonds", "triples")
            },
        },
        "elapsed_ms": {"type": "number", "minimum": 0},
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def check_json(capsys, *argv):
    code, out, _err = run(capsys, *argv, "--json")
    report = json.loads(out)
    return code, report


def test_check_holds_exit_zero(capsys):
    code, report = check_json(
        capsys, "check", str(SAMPLES / "group_free1.json"), str(SAMPLES / "nfa_cancel.json")
    )
    assert code == 0
    assert report["verdict"] == "holds"
    jsonschema.validate(report, CHECK_REPORT_SCHEMA)


def test_check_fails_with_witness_tokens(capsys):
    code, report = check_json(
        capsys, "check", str(SAMPLES / "group_cyclic3.json"), str(SAMPLES / "grammar_squares.json")
    )
    assert code == 1
    assert report["verdict"] == "fails"
    assert report["witness"] == [1, 1]
    assert report["witness_tokens"] == "x1 x1"
    jsonschema.validate(report, CHECK_REPORT_SCHEMA)


def test_check_cap_exhaustion_exit_two(capsys):
    code, report = check_json(
        capsys,
        "check",
        str(SAMPLES / "group_free1.json"),
        str(SAMPLES / "grammar_mixed_steps.json"),
        "--set-cap",
        "2",
    )
    assert code == 2
    assert report["verdict"] == "resource_exceeded"
    assert "(1, 1)" in report["reason"]
    jsonschema.validate(report, CHECK_REPORT_SCHEMA)


def test_check_literal_mode_warns_and_fails(capsys):
    code, out, err = run(
        capsys,
        "check",
        str(SAMPLES / "group_free1.json"),
        str(SAMPLES / "grammar_mixed_steps.json"),
        "--literal-omega10",
    )
    assert code == 1
    assert "spurious" in err
    assert "fails" in out


def test_check_text_output(capsys):
    code, out, _ = run(
        capsys, "check", str(SAMPLES / "group_cyclic2.json"), str(SAMPLES / "nfa_star.json")
    )
    assert code == 1
    assert "verdict: fails" in out
    assert "witness_tokens: x1" in out


def test_check_rank_mismatch_exit_two(capsys):
    code, _, err = run(
        capsys, "check", str(SAMPLES / "group_free2.json"), str(SAMPLES / "nfa_star.json")
    )
    assert code == 2
    assert "rank" in err


def test_check_bad_json_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code, _, err = run(capsys, "check", str(bad), str(SAMPLES / "nfa_star.json"))
    assert code == 2
    assert "line" in err


def test_oracle_fails_single_generator(capsys):
    nfa_file = SAMPLES / "nfa_star.json"
    code, report = check_json(capsys, "oracle", str(SAMPLES / "group_free1.json"), str(nfa_file))
    assert code == 1
    assert report["witness_tokens"] == "x1"


def test_oracle_holds_at_bound(capsys):
    code, out, _ = run(
        capsys,
        "oracle",
        str(SAMPLES / "group_cyclic2.json"),
        str(SAMPLES / "nfa_even.json"),
        "--max-len",
        "12",
    )
    assert code == 0
    assert "holds-at-bound 12" in out


def test_oracle_empty_language(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text(
        json.dumps(
            {
                "kind": "linear_grammar",
                "nonterminals": 1,
                "alphabet_rank": 1,
                "productions": [{"lhs": 1, "alpha": [1], "rhs": 1, "beta": []}],
                "start": 1,
            }
        ),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "oracle", str(SAMPLES / "group_free1.json"), str(empty))
    assert code == 0
    assert "empty language" in out


def test_oracle_word_cap_exit_two(capsys):
    code, _, err = run(
        capsys,
        "oracle",
        str(SAMPLES / "group_cyclic2.json"),
        str(SAMPLES / "nfa_even.json"),
        "--max-len",
        "30",
        "--max-words",
        "3",
    )
    assert code == 2
    assert "max_words" in err


def test_enumerate_balanced_grammar(capsys):
    code, out, _ = run(
        capsys, "enumerate", str(SAMPLES / "grammar_balanced.json"), "--max-len", "4"
    )
    assert code == 0
    assert out.splitlines() == ["(eps)", "x1 X1", "x1 x1 X1 X1"]


def test_enumerate_single_word_automaton(tmp_path, capsys):
    nfa = tmp_path / "one.json"
    nfa.write_text(
        json.dumps(
            {
                "kind": "automaton",
                "states": 2,
                "alphabet_rank": 1,
                "transitions": [[1, 1, 2]],
                "start": 1,
                "finals": [2],
            }
        ),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "enumerate", str(nfa), "--max-len", "1")
    assert code == 0
    assert out.splitlines() == ["x1"]


def test_enumerate_no_finals_empty_output(tmp_path, capsys):
    nfa = tmp_path / "none.json"
    nfa.write_text(
        json.dumps(
            {
                "kind": "automaton",
                "states": 1,
                "alphabet_rank": 1,
                "transitions": [],
                "start": 1,
                "finals": [],
            }
        ),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "enumerate", str(nfa), "--max-len", "3")
    assert code == 0
    assert out == ""


def test_language_kind_inferred_without_kind_field(tmp_path, capsys):
    nfa = tmp_path / "nokind.json"
    nfa.write_text(
        json.dumps(
            {
                "states": 1,
                "alphabet_rank": 1,
                "transitions": [],
                "start": 1,
                "finals": [1],
            }
        ),
        encoding="utf-8",
    )
    code, _, _ = run(capsys, "check", str(SAMPLES / "group_free1.json"), str(nfa))
    assert code == 0


def test_gen_corpus_is_deterministic(tmp_path, capsys):
    args = [
        "gen-corpus",
        "--kind",
        "nfa",
        "--seed",
        "42",
        "--count",
        "3",
        "--rank",
        "2",
    ]
    code, _, _ = run(capsys, *args, "--out-dir", str(tmp_path / "a"))
    assert code == 0
    code, _, _ = run(capsys, *args, "--out-dir", str(tmp_path / "b"))
    assert code == 0
    for name in ("nfa_42_0000.json", "nfa_42_0001.json", "nfa_42_0002.json"):
        first = (tmp_path / "a" / name).read_text(encoding="utf-8")
        second = (tmp_path / "b" / name).read_text(encoding="utf-8")
        assert first == second
        load_nfa(tmp_path / "a" / name)


def test_gen_corpus_grammar_files_parse(tmp_path, capsys):
    code, out, _ = run(
        capsys,
        "gen-corpus",
        "--kind",
        "grammar",
        "--seed",
        "7",
        "--count",
        "4",
        "--out-dir",
        str(tmp_path),
    )
    assert code == 0
    files = sorted(tmp_path.glob("grammar_7_*.json"))
    assert len(files) == 4
    for path in files:
        load_grammar(path)


def _pairings():
    groups = {
        1: ["group_free1.json", "group_cyclic2.json", "group_cyclic3.json"],
        2: ["group_free2.json", "group_abelian2.json", "group_sym3.json"],
    }
    languages = {
        "nfa_cancel.json": 1,
        "nfa_star.json": 1,
        "nfa_even.json": 1,
        "nfa_outback.json": 2,
        "grammar_balanced.json": 1,
        "grammar_squares.json": 1,
        "grammar_mixed_steps.json": 1,
    }
    for lang, rank in languages.items():
        for group in groups[rank]:
            yield group, lang


def test_check_and_oracle_agree_on_all_bundled_examples(capsys):
    for group, lang in _pairings():
        check_code, check_out, _ = run(
            capsys, "check", str(SAMPLES / group), str(SAMPLES / lang)
        )
        oracle_code, _, _ = run(
            capsys, "oracle", str(SAMPLES / group), str(SAMPLES / lang)
        )
        assert check_code in (0, 1)
        assert check_code == oracle_code, (group, lang, check_out)


def test_witness_tokens_feed_back_into_membership(capsys):
    for group, lang in _pairings():
        code, report = check_json(capsys, "check", str(SAMPLES / group), str(SAMPLES / lang))
        if code != 1:
            continue
        word = word_from_tokens(report["witness_tokens"])
        assert list(word) == report["witness"]
        backend = load_group(SAMPLES / group)
        assert not backend.word_in_group_language(word)
        if lang.startswith("nfa_"):
            assert load_nfa(SAMPLES / lang).accepts(word)
        else:
            assert load_grammar(SAMPLES / lang).generates(word)
