from holonomy.forms import GateForm
from holonomy.loops import hadamard_dx, hadamard_dy, hadamard_loops, holonomy, surface_sigma
from holonomy.management.experiment import ExperimentCommand
from holonomy.reports import gate_entries
from holonomy.su2 import compose, hadamard_target


class Command(ExperimentCommand):
    """
    Build the ideal Hadamard gate from its two control loops.

    Reports the loop heights d_x and d_y, the enclosed angles, both loop
    holonomies, their composition -i H and its max-norm deviation from
    -i H0.

    Usage:
        python manage.py gate --lx 1 --ly 1
        python manage.py gate --lx 2 --ly 0.5 --format csv --no-timestamp
    """

    help = "Build the Hadamard gate from an (x, r1) loop and a (y, r1) loop"
    form_class = GateForm
    command_name = "gate"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--lx", help="Side of the (x, r1) loop, must exceed pi/4")
        parser.add_argument("--ly", help="Side of the (y, r1) loop, must be positive")

    def run_experiment(self, form):
        lx, ly = form.cleaned_data["lx"], form.cleaned_data["ly"]
        loop_i, loop_ii = hadamard_loops(lx, ly)
        gamma_i, gamma_ii = holonomy(loop_i), holonomy(loop_ii)
        composed = compose(gamma_ii, gamma_i)
        deviation = composed.distance(hadamard_target().scaled(-1j))
        results = {
            "l_x": lx,
            "l_y": ly,
            "d_x": hadamard_dx(lx),
            "d_y": hadamard_dy(ly),
            "sigma_I": surface_sigma(loop_i),
            "sigma_II": surface_sigma(loop_ii),
            "gamma_I": gate_entries(gamma_i),
            "gamma_II": gate_entries(gamma_ii),
            "composed": gate_entries(composed),
            "deviation": deviation,
        }

        rows = [[name, results[name], 0.0] for name in ("l_x", "l_y", "d_x", "d_y", "sigma_I", "sigma_II")]
        for name in ("gamma_I", "gamma_II", "composed"):
            for i, row in enumerate(results[name]):
                for j, (real, imag) in enumerate(row):
                    rows.append([f"{name}[{i}][{j}]", real, imag])
        rows.append(["deviation", deviation, 0.0])
        return self.artifact(form, results, ["quantity", "real", "imag"], rows)
