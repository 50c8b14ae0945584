import json
import math
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from holonomy.management.commands.fidelity import COLUMNS as FIDELITY_COLUMNS


def run(name, **options):
    out = StringIO()
    call_command(name, stdout=out, **options)
    return out.getvalue()


def run_json(name, **options):
    return json.loads(run(name, format="json", no_timestamp=True, **options))


def csv_rows(text):
    return [line.split(",") for line in text.splitlines() if not line.startswith("#")]


class CommandTestCase(SimpleTestCase):
    def assertExitCode(self, code, name, **options):
        with self.assertRaises(CommandError) as raised:
            run(name, **options)
        self.assertEqual(raised.exception.returncode, code)
        return raised.exception


class GateCommandTests(CommandTestCase):
    def test_ideal_gate(self):
        document = run_json("gate", lx="1", ly="1")
        self.assertEqual(document["artifact_version"], "squeezeloop 1.0.0")
        self.assertEqual(document["command"], "gate")
        self.assertNotIn("generated_at", document)
        results = document["results"]
        self.assertLess(results["deviation"], 1e-12)
        self.assertAlmostEqual(results["d_x"], 0.7694854, places=6)
        self.assertAlmostEqual(results["sigma_I"], math.pi / 4, delta=1e-12)
        self.assertAlmostEqual(results["composed"][0][0][1], -1 / math.sqrt(2.0), delta=1e-12)

    def test_timestamp_is_included_by_default(self):
        document = json.loads(run("gate", format="json"))
        self.assertIn("generated_at", document)

    def test_singular_width_is_a_usage_error(self):
        error = self.assertExitCode(2, "gate", lx="0.7")
        self.assertIn("l_x must exceed pi/4", str(error))

    def test_csv_layout(self):
        text = run("gate", format="csv", no_timestamp=True)
        lines = text.splitlines()
        self.assertEqual(lines[0], "# artifact_version=squeezeloop 1.0.0")
        self.assertEqual(lines[1], "# command=gate")
        self.assertTrue(lines[2].startswith("# config={"))
        rows = csv_rows(text)
        self.assertEqual(rows[0], ["quantity", "real", "imag"])
        self.assertEqual(rows[-1][0], "deviation")

    def test_out_and_emitted_config_reproduce_the_run(self):
        with tempfile.TemporaryDirectory() as directory:
            first, config, second = (str(Path(directory) / name) for name in ("a.json", "run.env", "b.json"))
            message = run("gate", lx="2", ly="0.5", format="json", no_timestamp=True, out=first, emit_config=config)
            self.assertIn("Wrote gate artifact", message)
            self.assertIn("lx=2.0", Path(config).read_text())
            run("gate", config=config, out=second)
            self.assertEqual(Path(first).read_text(), Path(second).read_text())

    def test_flags_override_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / "run.env"
            config.write_text("lx=2\nly=3\n")
            results = run_json("gate", config=str(config), ly="1")["results"]
            self.assertEqual((results["l_x"], results["l_y"]), (2.0, 1.0))

    def test_bad_config_files(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / "run.env"
            config.write_text("lx=2\nbogus=1\n")
            error = self.assertExitCode(2, "gate", config=str(config))
            self.assertIn("bogus", str(error))
            self.assertExitCode(2, "gate", config=str(Path(directory) / "missing.env"))


class FidelityCommandTests(CommandTestCase):
    def test_zero_error_gives_unit_fidelity(self):
        results = run_json("fidelity", eps="0", samples="4")["results"]
        self.assertAlmostEqual(results["summary"]["mean_f"], 1.0, delta=1e-15)
        self.assertEqual(len(results["samples"]), 4)

    def test_same_seed_same_bytes(self):
        options = {"eps": "0.02", "samples": "5", "seed": "42", "no_timestamp": True}
        self.assertEqual(run("fidelity", **options), run("fidelity", **options))
        self.assertNotEqual(run("fidelity", **options), run("fidelity", **{**options, "seed": "43"}))

    def test_rows_and_summary(self):
        rows = csv_rows(run("fidelity", eps="0.02", samples="3", no_timestamp=True))
        self.assertEqual(rows[0], FIDELITY_COLUMNS)
        self.assertEqual([row[0] for row in rows[1:]], ["0", "1", "2", "summary"])
        self.assertEqual([row[1] for row in rows[1:4]], ["1234", "1235", "1236"])
        for row in rows[1:4]:
            values = dict(zip(FIDELITY_COLUMNS, row))
            self.assertLess(abs(float(values["f_exact_j0"]) - float(values["f_analytic"])), 1e-12)
            self.assertLess(abs(float(values["f_exact_j1"]) - float(values["f_analytic"])), 1e-12)

    def test_workers_do_not_change_the_artifact(self):
        options = {"eps": "0.02", "samples": "8", "no_timestamp": True}
        self.assertEqual(run("fidelity", **options), run("fidelity", workers="3", **options))

    def test_zero_mean_constant_is_a_usage_error(self):
        self.assertExitCode(2, "fidelity", family="constant", zero_mean=True)


class ScanLxCommandTests(CommandTestCase):
    def test_near_pi_over_four(self):
        results = run_json("scan-lx", lx_min="0.7854", lx_max="0.786", points="5")["results"]
        for point in results["points"]:
            self.assertLess(point["mean_one_minus_f_exact"], 1e-12)

    def test_first_revival_is_a_local_maximum(self):
        msq = run_json("scan-lx", lx_min="1", lx_max="2", points="2")["results"]["msq"]
        revival = math.pi / 4 + math.pi / (2 * msq)
        results = run_json(
            "scan-lx", lx_min=str(revival - 1950), lx_max=str(revival + 2050), points="41", include_revivals=True
        )["results"]
        self.assertEqual(len(results["revivals"]), 1)
        self.assertAlmostEqual(results["revivals"][0], revival, delta=1e-6)
        self.assertTrue(any(abs(length - revival) < 1e-6 for length in results["local_maxima"]))
        at_revival = min(results["points"], key=lambda point: abs(point["l_x"] - revival))
        self.assertLess(at_revival["mean_one_minus_f_exact"], 1e-4)

    def test_empty_range_is_a_usage_error(self):
        self.assertExitCode(2, "scan-lx", lx_min="2", lx_max="2")


class OrderFitCommandTests(CommandTestCase):
    def test_zero_mean_slope(self):
        results = run_json("order-fit", family="uniform", samples="200", expect_slope="4", tol="0.1")["results"]
        self.assertTrue(results["passed"])
        self.assertAlmostEqual(results["slope"], 4.0, delta=0.1)

    def test_constant_slope(self):
        results = run_json("order-fit", family="constant", samples="1", expect_slope="2")["results"]
        self.assertTrue(results["passed"])

    def test_missed_expectation_is_a_verification_failure(self):
        error = self.assertExitCode(1, "order-fit", family="uniform", samples="5", expect_slope="2")
        self.assertIn("Fitted slope", str(error))

    def test_two_eps_values_is_a_usage_error(self):
        self.assertExitCode(2, "order-fit", eps_list="0.01,0.02")


class VerifyOracleCommandTests(CommandTestCase):
    def test_defaults_pass(self):
        document = run_json("verify-oracle")
        results = document["results"]
        self.assertTrue(results["passed"], [check for check in results["checks"] if not check["passed"]])
        self.assertTrue(results["ladder_monotone"])
        self.assertEqual(document["config"]["fock_dim"], 64)

    def test_small_truncation_fails(self):
        out = StringIO()
        with self.assertLogs("holonomy", "WARNING"), self.assertRaises(CommandError) as raised:
            call_command("verify-oracle", fock_dim="8", format="json", no_timestamp=True, stdout=out)
        self.assertEqual(raised.exception.returncode, 1)
        results = json.loads(out.getvalue())["results"]
        self.assertFalse(results["passed"])
        failed = {check["check"] for check in results["checks"] if not check["passed"]}
        self.assertIn("max_leakage", failed)

    def test_controls_outside_the_envelope_are_usage_errors(self):
        for options in ({"lx": "20"}, {"r1_max": "2"}, {"eps": "1.5"}):
            self.assertExitCode(2, "verify-oracle", **options)
