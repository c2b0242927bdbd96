"""Command-line front end: dispatch, exit codes, one-shot and shell modes."""

import json
import shutil
import subprocess
import sys

import pytest

from stegdisc.disc import Disc, DiscConfig
from stegdisc.errors import UsageError
from stegdisc.osn import BackendConfig, DirectoryBackend, MemoryBackend
from stegdisc.shell import ShellSession, default_disc_path, main
from stegdisc.steghash import perm_to_hashtags


def session(tmp_path, backend_spec="memory", **kwargs):
    return ShellSession(disc_path=tmp_path / "sb.txt", backend_spec=backend_spec, **kwargs)


def run_cli(args, cwd, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "stegdisc", *args],
        input=stdin, capture_output=True, text=True, cwd=cwd, timeout=120,
    )


class TestDispatch:
    def test_format_ls_roundtrip(self, tmp_path, capsys):
        sess = session(tmp_path)
        assert sess.execute(["format", "C", "4", "16", "8", "--id", "t1"]) == 0
        assert sess.execute(["ls"]) == 0
        (tmp_path / "f.bin").write_bytes(b"hello shell")
        assert sess.execute(["put", str(tmp_path / "f.bin"), "doc"]) == 0
        assert sess.execute(["get", "doc", str(tmp_path / "out.bin")]) == 0
        assert (tmp_path / "out.bin").read_bytes() == b"hello shell"
        out = capsys.readouterr().out
        assert "stored doc" in out

    def test_rm_missing_is_user_error(self, tmp_path, capsys):
        sess = session(tmp_path)
        sess.execute(["format", "C", "4", "16", "8"])
        assert sess.execute(["rm", "missing"]) == 1
        assert "not found" in capsys.readouterr().out

    def test_unknown_command(self, tmp_path, capsys):
        sess = session(tmp_path)
        assert sess.execute(["frobnicate"]) == 1
        assert "unknown command" in capsys.readouterr().out

    def test_usage_error(self, tmp_path):
        sess = session(tmp_path)
        assert sess.execute(["put", "only-one-arg"]) == 1

    def test_edit_and_stat(self, tmp_path, capsys):
        sess = session(tmp_path)
        sess.execute(["format", "B", "4", "16", "8"])
        (tmp_path / "a").write_bytes(b"v1")
        (tmp_path / "b").write_bytes(b"v2 is longer")
        sess.execute(["put", str(tmp_path / "a"), "doc"])
        assert sess.execute(["edit", "doc", str(tmp_path / "b")]) == 0
        sess.execute(["get", "doc", str(tmp_path / "out")])
        assert (tmp_path / "out").read_bytes() == b"v2 is longer"
        assert sess.execute(["stat"]) == 0
        assert "file_count: 1" in capsys.readouterr().out

    def test_fsck_clean_exit_zero(self, tmp_path):
        sess = session(tmp_path)
        sess.execute(["format", "A", "4", "16", "8"])
        assert sess.execute(["fsck"]) == 0

    def test_backend_failure_exit_three(self, tmp_path):
        sess = session(tmp_path)
        sess.execute(["format", "C", "4", "16", "8"])
        sess.backend = MemoryBackend(BackendConfig(mode="memory", failure_rate=1.0))
        sess.disc = None  # force reopen against the failing backend
        assert sess.execute(["ls"]) == 0  # catalog is local, no backend query
        assert sess.execute(["fsck"]) == 3

    def test_json_output(self, tmp_path, capsys):
        sess = session(tmp_path, json_out=True)
        sess.execute(["format", "C", "4", "16", "8", "--id", "jj"])
        (tmp_path / "f").write_bytes(bytes(20))
        sess.execute(["put", str(tmp_path / "f"), "doc"])
        capsys.readouterr()
        assert sess.execute(["ls"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == 0
        assert payload["files"][0]["name"] == "doc"
        assert payload["files"][0]["length"] == 20

    def test_history_recorded(self, tmp_path):
        sess = session(tmp_path)
        sess.execute(["format", "C", "4", "16", "8"])
        sess.execute(["ls"])
        assert sess.history[-1] == "ls"


class TestDifferential:
    def test_shell_equals_library(self, tmp_path):
        """The same script through the shell and through the API must
        produce identical catalogs and contents."""
        blobs = {"one": b"first file", "two": bytes(range(100)), "three": b""}

        lib_backend = MemoryBackend()
        config = DiscConfig.create(n=4, p=16, m=8, mode="C", disc_id="same")
        lib = Disc.format(config, lib_backend, doc_path=tmp_path / "lib.sb")
        for name, blob in blobs.items():
            lib.write_file(name, blob)
        lib.delete_file("two")
        lib.modify_file("one", b"rewritten")

        sess = ShellSession(disc_path=tmp_path / "sh.sb")
        sess.execute(["format", "C", "4", "16", "8", "--id", "same"])
        for name, blob in blobs.items():
            src = tmp_path / f"in-{name}"
            src.write_bytes(blob)
            assert sess.execute(["put", str(src), name]) == 0
        assert sess.execute(["rm", "two"]) == 0
        rewrite = tmp_path / "rewrite"
        rewrite.write_bytes(b"rewritten")
        assert sess.execute(["edit", "one", str(rewrite)]) == 0

        lib_files = [(e.name, e.start_counter, e.length) for e in lib.list_files()]
        sh_files = [(e.name, e.start_counter, e.length) for e in sess.disc.list_files()]
        assert lib_files == sh_files
        for entry in lib.list_files():
            assert lib.read_file(entry.name) == sess.disc.read_file(entry.name)
        assert (tmp_path / "lib.sb").read_text() == sess.disc_path.read_text()


class TestSubprocess:
    def test_one_shot_round_trip(self, tmp_path):
        (tmp_path / "f.bin").write_bytes(b"subprocess payload" * 10)
        base = ["--disc", "sb.txt", "--backend", "dir:store"]
        assert run_cli([*base, "format", "C", "5", "16", "32"], tmp_path).returncode == 0
        assert run_cli([*base, "put", "f.bin", "doc"], tmp_path).returncode == 0
        out = run_cli([*base, "ls"], tmp_path)
        assert out.returncode == 0 and out.stdout.startswith("doc\t180")
        assert run_cli([*base, "get", "doc", "out.bin"], tmp_path).returncode == 0
        assert (tmp_path / "out.bin").read_bytes() == b"subprocess payload" * 10
        assert run_cli([*base, "fsck"], tmp_path).returncode == 0
        bad = run_cli([*base, "rm", "missing"], tmp_path)
        assert bad.returncode == 1
        assert "not found" in bad.stdout
        assert "Traceback" not in bad.stdout + bad.stderr

    def test_repl_matches_one_shot(self, tmp_path):
        (tmp_path / "f.bin").write_bytes(b"repl payload")
        lines = "\n".join([
            "format C 5 16 32 --id repl",
            "put f.bin doc",
            "ls",
            "get doc out.bin",
            "exit",
        ]) + "\n"
        proc = run_cli(["--disc", "sb.txt", "--backend", "dir:store"], tmp_path, stdin=lines)
        assert proc.returncode == 0
        assert "doc\t12" in proc.stdout
        assert (tmp_path / "out.bin").read_bytes() == b"repl payload"

    def test_corrupted_disc_exits_two(self, tmp_path):
        (tmp_path / "f.bin").write_bytes(bytes(64))
        base = ["--disc", "sb.txt", "--backend", "dir:store"]
        run_cli([*base, "format", "C", "4", "16", "8"], tmp_path)
        run_cli([*base, "put", "f.bin", "doc"], tmp_path)
        # knock one block out from under the disc
        disc = Disc.open(tmp_path / "sb.txt", DirectoryBackend(tmp_path / "store"))
        _, addr, _ = disc.chain_blocks()[2]
        digest = DirectoryBackend._digest(perm_to_hashtags(addr, disc.config.alphabet))
        shutil.rmtree(tmp_path / "store" / digest)
        proc = run_cli([*base, "fsck"], tmp_path)
        assert proc.returncode == 2
        assert "Traceback" not in proc.stdout + proc.stderr

    def test_json_flag(self, tmp_path):
        base = ["--disc", "sb.txt", "--backend", "dir:store", "--json"]
        run_cli([*base, "format", "C", "4", "16", "8"], tmp_path)
        proc = run_cli([*base, "fsck"], tmp_path)
        payload = json.loads(proc.stdout)
        assert payload == {"status": 0, "block_count": 1, "violations": []}


class TestEnvironment:
    def test_home_override(self, monkeypatch, tmp_path):
        monkeypatch.setenv("STEGDISC_HOME", str(tmp_path / "homedir"))
        assert default_disc_path() == tmp_path / "homedir" / "superblock.txt"

    def test_main_usage_error(self, capsys):
        assert main(["--no-such-flag"]) == 1
        assert "error" in capsys.readouterr().err

    def test_main_help(self, capsys):
        assert main(["--help"]) == 0
        assert "stegdisc" in capsys.readouterr().out


class TestBenchCommand:
    def test_bench_runs(self, tmp_path, capsys):
        sess = session(tmp_path)
        assert sess.execute(["bench", "--counts", "3,6", "--modes", "B,C", "--p", "16"]) == 0
        out = capsys.readouterr().out
        rows = [line for line in out.splitlines()[1:] if line]
        assert sorted(line.split()[0] for line in rows) == ["B", "B", "C", "C"]

    def test_bench_bad_spec(self, tmp_path):
        sess = session(tmp_path)
        assert sess.execute(["bench", "--modes", "Q"]) == 1
