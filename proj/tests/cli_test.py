"""End-to-end checks of the exnet command-line tool.

Usage: python3 cli_test.py /path/to/exnet
"""

import csv
import io
import json
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

EXE = None

CYCLE3 = {"n": 3, "edges": [[1, 2], [2, 3], [3, 1]]}


def run(*args, cwd=None):
    return subprocess.run([EXE, *map(str, args)], capture_output=True, text=True, cwd=cwd, timeout=300)


def strip_comments(text):
    return "\n".join(l for l in text.splitlines() if not l.startswith("#"))


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(strip_comments(text))))


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name, obj):
        p = self.dir / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return p

    def test_validate_exit_codes(self):
        ok = run("validate", "--graph", self.write("ok.json", CYCLE3))
        self.assertEqual(ok.returncode, 0, ok.stderr)
        self.assertTrue(json.loads(ok.stdout)["valid"])

        two = run("validate", "--graph", self.write("two.json", {"n": 2, "edges": [[1, 2], [2, 1]]}))
        self.assertEqual(two.returncode, 1)
        report = json.loads(two.stdout)
        self.assertEqual(report["violations"][0]["kind"], "TwoLoop")

        self.assertEqual(run("validate", "--graph", self.write("bad.json", "{not json")).returncode, 2)
        self.assertEqual(run("validate", "--graph", self.dir / "missing.json").returncode, 2)
        self.assertEqual(run("no-such-command").returncode, 2)

    def test_compile(self):
        g = self.write("g2.json", {"n": 2, "edges": [[1, 2]]})
        out = json.loads(run("compile", "--graph", g).stdout)
        w = out["weights"]
        self.assertAlmostEqual(w[0][0], 1.0)
        self.assertAlmostEqual(w[0][1], -0.7)
        self.assertAlmostEqual(w[1][0], 0.3)
        self.assertAlmostEqual(w[1][1], 1.0)

        empty = self.write("e.json", {"n": 3, "edges": []})
        rows = [l.split(",") for l in strip_comments(run("compile", "--graph", empty, "--format", "csv").stdout).split()]
        self.assertEqual([[float(x) for x in r] for r in rows], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

        cfg = self.write("c.json", {"graph": {"n": 2, "edges": [[1, 2]]}, "w_p_overrides": [[1, 2, 0.25]]})
        out = json.loads(run("compile", "--config", cfg).stdout)
        w = out["weights"]
        self.assertAlmostEqual(w[1][0], 0.25)

    def test_simulate_rest_is_constant(self):
        g = self.write("c3.json", CYCLE3)
        res = run("simulate", "--graph", g, "--wp", 0.3, "--T", 20, "--stride", 1000)
        self.assertEqual(res.returncode, 0, res.stderr)
        self.assertTrue(res.stdout.startswith("# config: "))
        rows = csv_rows(res.stdout)
        self.assertEqual(len(rows), 21)
        for key in ("y1", "y2", "y3"):
            vals = [float(r[key]) for r in rows]
            self.assertLess(max(vals) - min(vals), 1e-9)

    def test_simulate_noisy_cycle_and_determinism(self):
        g = self.write("c3.json", CYCLE3)
        base = ["simulate", "--graph", g, "--wp", 0.3, "--sigma", 0.05, "--T", 300, "--stride", 100]
        args = [*base, "--seed", 3]
        a = run(*args, "--out", self.dir / "a.csv", "--symbols", self.dir / "sa.csv")
        b = run(*args, "--out", self.dir / "b.csv", "--symbols", self.dir / "sb.csv")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(b.returncode, 0, b.stderr)
        self.assertEqual((self.dir / "a.csv").read_bytes(), (self.dir / "b.csv").read_bytes())
        self.assertEqual((self.dir / "sa.csv").read_bytes(), (self.dir / "sb.csv").read_bytes())

        sets = [r["active_set"] for r in csv_rows((self.dir / "sa.csv").read_text())]
        self.assertGreaterEqual(len(sets) - 1, 5)
        order = {"{1}": "{2}", "{2}": "{3}", "{3}": "{1}"}
        for prev, cur in zip(sets, sets[1:]):
            self.assertEqual(order[prev], cur)

        other = run(*base, "--seed", 4, "--out", self.dir / "c.csv")
        self.assertEqual(other.returncode, 0)
        self.assertNotEqual((self.dir / "a.csv").read_bytes(), (self.dir / "c.csv").read_bytes())

    def test_config_echo_reruns_identically(self):
        g = self.write("c3.json", CYCLE3)
        first = run("simulate", "--graph", g, "--wp", 0.301, "--sigma", 0.02, "--seed", 9, "--T", 20, "--stride", 50)
        header = first.stdout.splitlines()[0]
        self.assertTrue(header.startswith("# config: "))
        cfg = self.write("echo.json", header[len("# config: "):])
        second = run("simulate", "--config", cfg)
        self.assertEqual(second.returncode, 0, second.stderr)
        self.assertEqual(strip_comments(first.stdout), strip_comments(second.stdout))

    def test_jcoords(self):
        g = self.write("c3.json", CYCLE3)
        res = run("simulate", "--graph", g, "--wp", 0.305, "--T", 5, "--stride", 1000, "--jcoords")
        self.assertEqual(res.returncode, 0, res.stderr)
        rows = csv_rows(res.stdout)
        self.assertIn("J1", rows[0])
        for r in rows:
            for k in ("J1", "J2", "J3"):
                self.assertTrue(0.0 < float(r[k]) < 1.0)

    def test_verify(self):
        g = self.write("c3.json", CYCLE3)
        ok = run("verify", "--graph", g, "--delta", 0.4)
        self.assertEqual(ok.returncode, 0, ok.stderr)
        self.assertTrue(json.loads(ok.stdout)["verdict"])

        sink = self.write("sink.json", {"n": 3, "edges": [[1, 2], [2, 3]]})
        self.assertNotEqual(run("verify", "--graph", sink, "--delta", 0.4, "--strict").returncode, 0)
        self.assertEqual(run("verify", "--config", self.dir / "nope.json").returncode, 2)
        self.assertEqual(run("verify", "--graph", g).returncode, 2)

    def test_bifurcate(self):
        fold = json.loads(run("bifurcate", "--which", "fold2").stdout)
        self.assertAlmostEqual(fold["result"]["parameter_value"], 0.3027, delta=5e-4)
        self.assertEqual(round(fold["asymptotic"], 4), 0.3027)

        snic = json.loads(run("bifurcate", "--which", "snic3").stdout)
        self.assertAlmostEqual(snic["result"]["parameter_value"], 0.30287, delta=5e-4)

        self.assertEqual(run("bifurcate", "--which", "snic3", "--lo", 0.31, "--hi", 0.32).returncode, 1)

        scan = run("bifurcate", "--which", "fold2", "--scan-points", 5, "--scan-out", self.dir / "scan.csv")
        self.assertEqual(scan.returncode, 0, scan.stderr)
        rows = csv_rows((self.dir / "scan.csv").read_text())
        self.assertEqual(len(rows), 5)
        self.assertEqual(rows[0]["verdict"], "1")
        self.assertEqual(rows[-1]["verdict"], "0")

    def test_sweep(self):
        args = ["sweep", "--T", 40, "--dt", 0.002, "--seed", 5]
        a = run(*args, "--out", self.dir / "a.csv")
        b = run(*args, "--out", self.dir / "b.csv")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual((self.dir / "a.csv").read_bytes(), (self.dir / "b.csv").read_bytes())
        rows = csv_rows((self.dir / "a.csv").read_text())
        self.assertEqual(len(rows), 25)
        self.assertEqual(len({r["seed"] for r in rows}), 25)
        for r in rows:
            if r["ratio"]:
                self.assertTrue(0.0 <= float(r["ratio"]) <= 1.0)

    def test_randgraph(self):
        two = json.loads(run("randgraph", "--n", 2, "--seed", 1).stdout)
        self.assertEqual(two["n"], 2)
        self.assertEqual(len(two["edges"]), 1)

        a = run("randgraph", "--n", 10, "--p", 0.2, "--seed", 6, "--no-sink")
        b = run("randgraph", "--n", 10, "--p", 0.2, "--seed", 6, "--no-sink")
        self.assertEqual(a.stdout, b.stdout)
        g = self.write("r.json", a.stdout)
        self.assertEqual(run("validate", "--graph", g, "--strict").returncode, 0)

    def test_equilibria(self):
        g = self.write("c3.json", CYCLE3)
        res = run("equilibria", "--graph", g)
        self.assertEqual(res.returncode, 0, res.stderr)
        self.assertIn("3", res.stdout)


if __name__ == "__main__":
    EXE = str(Path(sys.argv.pop(1)).resolve())
    unittest.main(verbosity=2)
