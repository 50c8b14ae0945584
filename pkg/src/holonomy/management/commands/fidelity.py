from holonomy.error_models import monte_carlo_fidelity
from holonomy.forms import FidelityForm
from holonomy.management.experiment import ExperimentCommand, add_noise_arguments

COLUMNS = [
    "sample_index",
    "seed",
    "l_x",
    "l_y",
    "eps",
    "msq",
    "delta_sigma_I",
    "delta_sigma_II",
    "f_exact_j0",
    "f_exact_j1",
    "f_analytic",
    "f_approx_cos",
    "f_approx_quartic",
]


class Command(ExperimentCommand):
    """
    Monte Carlo fidelity of the Hadamard gate under squeezing errors.

    Writes one row per sample (exact, analytic and approximate fidelities)
    and a final summary row holding the column means.
    """

    help = "Fidelity of the perturbed Hadamard gate over sampled squeezing errors"
    form_class = FidelityForm
    command_name = "fidelity"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--lx", help="Side of the (x, r1) loop, must exceed pi/4")
        parser.add_argument("--ly", help="Side of the (y, r1) loop")
        add_noise_arguments(parser)

    def run_experiment(self, form):
        data = form.cleaned_data
        noise = form.noise_spec()
        result = monte_carlo_fidelity(
            data["lx"],
            data["ly"],
            noise,
            data["samples"],
            data["seed"],
            grid_size=data["grid_size"],
            workers=data["workers"],
        )
        rows = [
            [
                index,
                data["seed"] + index,
                report.l_x,
                report.l_y,
                noise.scale,
                report.mean_square_error,
                report.delta_sigma_I,
                report.delta_sigma_II,
                report.f_exact_j0,
                report.f_exact_j1,
                report.f_analytic,
                report.f_approx_cos,
                report.f_approx_quartic,
            ]
            for index, report in enumerate(result.reports)
        ]
        means = [sum(row[column] for row in rows) / len(rows) for column in range(5, len(COLUMNS))]
        rows.append(["summary", None, data["lx"], data["ly"], noise.scale, *means])

        results = {
            "samples": [dict(zip(COLUMNS, row)) for row in rows[:-1]],
            "summary": {
                "mean_f": result.mean_f,
                "std_f": result.std_f,
                "min_f": result.min_f,
                "max_f": result.max_f,
                "mean_delta_sigma_I": result.mean_delta_sigma_I,
                "mean_one_minus_f": result.mean_one_minus_f,
            },
        }
        return self.artifact(form, results, COLUMNS, rows)
