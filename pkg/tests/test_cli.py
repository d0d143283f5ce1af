from pathlib import Path

import pytest
from click.testing import CliRunner

from blinker_align.cli import main

from test_store import corpus_tsv

NT = "∅"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("BLINKER_DB", raising=False)
    return tmp_path


@pytest.fixture
def corpus_file(workdir):
    path = workdir / "bitext.tsv"
    path.write_text(corpus_tsv(30), encoding="utf-8")
    return path


@pytest.fixture
def ingested(runner, workdir, corpus_file):
    result = runner.invoke(main, ["ingest", str(corpus_file), "--db", "state.db"])
    assert result.exit_code == 0, result.output
    return workdir / "state.db"


def write_alignments(workdir, lines, name="a.tsv"):
    path = workdir / name
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path


# Every corpus verse is "<4 words> ." on both sides: five tokens a side.
CLEAN = "0-0 1-1 2-2 3-3 4-4"
GAPPY = f"0-0 1-1 4-4 2-{NT} 3-{NT} {NT}-2 {NT}-3"
CROSSED = "0-1 1-0 2-2 3-3 4-4"


class TestIngest:
    def test_reports_count_and_creates_db(self, runner, ingested):
        assert ingested.exists()

    def test_reingest_is_idempotent(self, runner, corpus_file, ingested):
        result = runner.invoke(main, ["ingest", str(corpus_file), "--db", "state.db"])
        assert result.exit_code == 0
        assert "ingested 30 verse pairs" in result.output

    def test_bad_file_fails_cleanly(self, runner, workdir):
        bad = write_alignments(workdir, ["only\ttwo"], name="bad.tsv")
        result = runner.invoke(main, ["ingest", str(bad), "--db", "state.db"])
        assert result.exit_code == 1
        assert "Error" in result.output and "fields" in result.output


class TestCampaign:
    def test_new_prints_sets_and_tasks(self, runner, ingested):
        result = runner.invoke(main, [
            "campaign", "new", "--group", "a1,a2,a3,a4",
            "--group", "b1,b2,b3,b4,b5", "--set-size", "10", "--seed", "7",
            "--db", "state.db"])
        assert result.exit_code == 0, result.output
        assert "campaign c1" in result.output
        assert "2 groups, 9 annotators, 90 pending tasks" in result.output
        assert "set 0:" in result.output and "set 1:" in result.output

    def test_corpus_too_small(self, runner, ingested):
        result = runner.invoke(main, [
            "campaign", "new", "--group", "a1", "--set-size", "99", "--db", "state.db"])
        assert result.exit_code == 1
        assert "corpus has" in result.output

    def test_db_envvar(self, runner, ingested, monkeypatch):
        monkeypatch.setenv("BLINKER_DB", "state.db")
        result = runner.invoke(main, ["campaign", "new", "--group", "a1", "--set-size", "2"])
        assert result.exit_code == 0, result.output
        assert "2 pending tasks" in result.output


class TestLint:
    def test_clean_file_exits_zero(self, runner, workdir, ingested):
        path = write_alignments(workdir, [f"V000\ta1\t{CLEAN}"])
        result = runner.invoke(main, ["lint", str(path), "--db", "state.db"])
        assert result.exit_code == 0, result.output
        assert "checked 1 alignments: 0 errors" in result.output

    def test_errors_are_reported_and_exit_one(self, runner, workdir, ingested):
        path = write_alignments(workdir, ["V000\ta1\t0-0", f"V001\ta1\t{CLEAN}"])
        result = runner.invoke(main, ["lint", str(path), "--db", "state.db"])
        assert result.exit_code == 1
        lines = [l for l in result.output.splitlines() if l.startswith("V000")]
        assert lines and all("R1_COMPLETENESS\terror" in l for l in lines)
        assert "checked 2 alignments:" in result.output

    def test_corpus_flag_replaces_db(self, runner, workdir, corpus_file):
        path = write_alignments(workdir, [f"V000\ta1\t{CLEAN}"])
        result = runner.invoke(main, ["lint", str(path), "--corpus", str(corpus_file),
                                      "--db", "missing.db"])
        assert result.exit_code == 0, result.output

    def test_unknown_verse(self, runner, workdir, corpus_file):
        path = write_alignments(workdir, [f"ZZZ\ta1\t{CLEAN}"])
        result = runner.invoke(main, ["lint", str(path), "--corpus", str(corpus_file)])
        assert result.exit_code == 1
        assert "'ZZZ' not in corpus" in result.output

    def test_warning_only_file_exits_zero(self, runner, workdir):
        marks = workdir / "marks.tsv"
        marks.write_text("W0\ten\tfr\tone , two .\tun , deux .\n", encoding="utf-8")
        path = write_alignments(workdir, ["W0\ta1\t0-0 2-2 1-3 3-1"])
        result = runner.invoke(main, ["lint", str(path), "--corpus", str(marks)])
        assert result.exit_code == 0, result.output
        assert "R5_PUNCT_CROSSING\twarning" in result.output


class TestCompare:
    def panel(self, workdir):
        return write_alignments(workdir, [
            f"V000\ta1\t{CLEAN}",
            f"V000\ta2\t{CLEAN}",
            f"V000\ta3\t{GAPPY}",
            f"V001\ta1\t{CLEAN}",
            f"V001\ta2\t{CLEAN}",
        ])

    def test_prints_per_verse_and_overall(self, runner, workdir, ingested):
        result = runner.invoke(main, ["compare", str(self.panel(workdir)),
                                      "--db", "state.db"])
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[0].startswith("V000\t3 annotators\tmean F1 ")
        assert lines[1] == "V001\t2 annotators\tmean F1 1.0000"
        assert lines[2].startswith("overall mean F1 ")

    def test_report_dir_writes_tables_and_figures(self, runner, workdir, ingested):
        result = runner.invoke(main, ["compare", str(self.panel(workdir)),
                                      "--db", "state.db", "--report-dir", "out"])
        assert result.exit_code == 0, result.output
        out = workdir / "out"
        for name in ["pairwise.tsv", "votes.tsv", "variation.tsv",
                     "pairwise_f1.png", "vote_counts.png"]:
            assert (out / name).exists(), name
        header = (out / "pairwise.tsv").read_text(encoding="utf-8").splitlines()[0]
        assert header == "verse_id\tannotator_a\tannotator_b\tprecision\trecall\tf1"
        assert (out / "pairwise_f1.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert (out / "vote_counts.png").stat().st_size > 0

    def test_report_dir_without_corpus_skips_variation(self, runner, workdir, corpus_file):
        # no --corpus and no database: tables that need verse text are skipped
        result = runner.invoke(main, ["compare", str(self.panel(workdir)),
                                      "--db", "missing.db", "--report-dir", "out"])
        assert result.exit_code == 0, result.output
        assert (workdir / "out" / "pairwise.tsv").exists()
        assert not (workdir / "out" / "variation.tsv").exists()


class TestVote:
    def test_gold_on_stdout_unresolved_on_stderr(self, runner, workdir):
        path = write_alignments(workdir, [
            "V9\ta1\t0-0 1-1",
            "V9\ta2\t0-0 1-1",
            "V9\ta3\t0-1 1-0",
        ])
        result = runner.invoke(main, ["vote", str(path)])
        assert result.exit_code == 0, result.output
        assert result.stdout == "V9\tgold\t0-0 1-1\n"
        assert "1 verses, 0 unresolved tokens" in result.stderr

    def test_split_panel_reports_unresolved(self, runner, workdir):
        path = write_alignments(workdir, [
            "V9\ta1\t0-0",
            "V9\ta2\t0-0",
            "V9\ta3\t0-1",
            "V9\ta4\t0-1",
        ])
        result = runner.invoke(main, ["vote", str(path)])
        assert result.exit_code == 0
        assert result.stdout == "V9\tgold\t\n"
        assert "unresolved\tV9\tsource:0" in result.stderr
        assert "unresolved\tV9\ttarget:0" in result.stderr
        assert "unresolved\tV9\ttarget:1" in result.stderr

    def test_threshold_option(self, runner, workdir):
        path = write_alignments(workdir, [
            "V9\ta1\t0-0",
            "V9\ta2\t0-0",
            "V9\ta3\t0-1",
            "V9\ta4\t0-2",
        ])
        result = runner.invoke(main, ["vote", str(path), "--threshold", "0.4"])
        assert result.exit_code == 0
        assert result.stdout == "V9\tgold\t0-0\n"


class TestTopLevel:
    def test_help_lists_commands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for cmd in ["ingest", "campaign", "lint", "compare", "vote", "serve"]:
            assert cmd in result.output

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output
