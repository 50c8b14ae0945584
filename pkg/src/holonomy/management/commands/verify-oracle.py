import numpy as np

from holonomy.error_models import NoiseFamily, NoiseSpec, perturbed_hadamard, perturbed_sigma
from holonomy.fock import (
    MIN_STEPS_PER_EDGE,
    ControlDirection,
    ControlPoint,
    ConvergenceTarget,
    FockSpace,
    LadderRung,
    analytic_field_strength,
    centered_hadamard_loops,
    connection,
    convergence_check,
    field_strength,
    path_ordered_holonomy,
    perturbed_loop_path,
)
from holonomy.forms import VerifyOracleForm
from holonomy.loops import holonomy
from holonomy.management.experiment import ExperimentCommand
from holonomy.su2 import basis_fidelity, hadamard_target

# displacement range of the random field-strength points
POINT_DISPLACEMENT = 0.5


class Command(ExperimentCommand):
    """
    Check the closed-form loop holonomies against the Fock-space oracle.

    Checks, each against its own tolerance:
    - field strength F_x_r1 and F_y_r1 at random points, relative error
    - anti-Hermiticity of the finite-difference connection
    - path-ordered holonomy of both Hadamard loops and of their composition
    - fidelity and gate of loops with a constant squeezing error
    - Fock leakage of the code states along the loops
    - convergence of F_x_r1 along the truncation ladder

    Exits 1 when any check fails; the full table is written first.
    """

    help = "Verify the analytic holonomies with a truncated Fock-space oracle"
    form_class = VerifyOracleForm
    command_name = "verify-oracle"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--fock-dim", help="Fock-space truncation N_F")
        parser.add_argument("--step", help="Finite-difference step")
        parser.add_argument("--steps-per-edge", help="Path-ordering steps per loop edge")
        parser.add_argument("--lx", help="Side of the (x, r1) loop")
        parser.add_argument("--ly", help="Side of the (y, r1) loop")
        parser.add_argument("--points", help="Random field-strength points")
        parser.add_argument("--r1-max", help="Largest r1 of the field-strength points")
        parser.add_argument("--ladder", help="Comma-separated truncations for the convergence ladder")
        parser.add_argument("--eps", help="Constant squeezing error of the perturbed check")
        parser.add_argument("--top-nodes", help="Nodes on the perturbed top edge")
        for name in ("field", "skew", "holonomy", "gate", "fidelity"):
            parser.add_argument(f"--{name}-tol")
        parser.add_argument("--max-leakage")

    def run_experiment(self, form):
        data = form.cleaned_data
        space = FockSpace(data["fock_dim"])
        step, steps = data["step"], data["steps_per_edge"]
        checks = []

        def record(name, value, tolerance):
            checks.append({"check": name, "value": float(value), "tolerance": tolerance, "passed": bool(value <= tolerance)})

        rng = np.random.default_rng(data["seed"])
        max_skew = 0.0
        for index in range(data["points"]):
            s = rng.uniform(-POINT_DISPLACEMENT, POINT_DISPLACEMENT)
            r1 = rng.uniform(0.0, data["r1_max"])
            for direction, point in (
                (ControlDirection.X, ControlPoint(s, 0.0, r1)),
                (ControlDirection.Y, ControlPoint(0.0, s, r1)),
            ):
                numerical = field_strength(point, direction, ControlDirection.R1, step, space)
                reference = analytic_field_strength(direction, ControlDirection.R1, r1)
                error = np.max(np.abs(numerical - reference)) / np.max(np.abs(reference))
                record(f"field_strength_{direction.value}_r1[{index}]", error, data["field_tol"])
                max_skew = max(max_skew, connection(point, direction, step, space).skew_defect)
        record("connection_skew", max_skew, data["skew_tol"])

        loop_i, loop_ii = centered_hadamard_loops(data["lx"], data["ly"])
        oracle_i = path_ordered_holonomy(loop_i, steps, space, step)
        oracle_ii = path_ordered_holonomy(loop_ii, steps, space, step)
        composed = oracle_ii.gate @ oracle_i.gate
        target = hadamard_target().scaled(-1j)
        record("holonomy_C_I", oracle_i.gate.distance(holonomy(loop_i)), data["holonomy_tol"])
        record("holonomy_C_II", oracle_ii.gate.distance(holonomy(loop_ii)), data["holonomy_tol"])
        record("unitarity_defect", max(oracle_i.unitarity_defect, oracle_ii.unitarity_defect), data["holonomy_tol"])
        record("hadamard_gate", composed.distance(target), data["gate_tol"])

        noise = NoiseSpec(NoiseFamily.CONSTANT, data["eps"])
        top_nodes = data["top_nodes"]
        profile_x = noise.draw(loop_i.a, loop_i.b, top_nodes)
        profile_y = noise.draw(loop_ii.a, loop_ii.b, top_nodes)
        segment_steps = max(MIN_STEPS_PER_EDGE, steps // (top_nodes - 1))
        perturbed_i = path_ordered_holonomy(perturbed_loop_path(loop_i, profile_x), segment_steps, space, step)
        perturbed_ii = path_ordered_holonomy(perturbed_loop_path(loop_ii, profile_y), segment_steps, space, step)
        perturbed = perturbed_ii.gate @ perturbed_i.gate
        delta_sigma_i = perturbed_sigma(loop_i, profile_x).delta_sigma
        oracle_fidelity = basis_fidelity(target, perturbed, 0)
        record("perturbed_fidelity", abs(oracle_fidelity - abs(np.cos(delta_sigma_i))), data["fidelity_tol"])
        record(
            "perturbed_gate",
            perturbed.distance(perturbed_hadamard(data["lx"], data["ly"], profile_x, profile_y)),
            data["fidelity_tol"],
        )

        leakage = max(run.max_leakage for run in (oracle_i, oracle_ii, perturbed_i, perturbed_ii))
        record("max_leakage", leakage, data["max_leakage"])

        table = convergence_check(
            ConvergenceTarget.FIELD_STRENGTH_XR1,
            [LadderRung(dim, steps, step) for dim in data["ladder"]],
            r1=data["r1_max"],
        )
        record("ladder_final_error", table.errors[-1], data["field_tol"])
        checks.append({"check": "ladder_monotone", "value": float(table.monotone), "tolerance": 1.0, "passed": table.monotone})

        failed = [check["check"] for check in checks if not check["passed"]]
        results = {
            "passed": not failed,
            "fock_dim": space.dim,
            "oracle_fidelity": oracle_fidelity,
            "checks": checks,
            "ladder": [{"fock_dim": row.rung.dim, "error": row.error} for row in table.rows],
            "ladder_monotone": table.monotone,
        }
        rows = [[check["check"], check["value"], check["tolerance"], check["passed"]] for check in checks]
        failure = f"Oracle checks failed: {', '.join(failed)}" if failed else None
        return self.artifact(form, results, ["check", "value", "tolerance", "passed"], rows, failure=failure)
