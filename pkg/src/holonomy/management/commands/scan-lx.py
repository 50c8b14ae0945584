from holonomy.error_models import lx_grid, revival_points, scan_lx
from holonomy.forms import ScanLxForm
from holonomy.management.experiment import ExperimentCommand, add_noise_arguments

COLUMNS = [
    "l_x",
    "d_x",
    "msq",
    "mean_one_minus_f_exact",
    "f_approx_cos",
    "f_approx_quartic",
    "is_local_max",
]


class Command(ExperimentCommand):
    """
    Sweep the (x, r1) loop width at fixed squeezing-error realisations.

    The fidelity returns to 1 at the revival widths
    l_x^(n) = pi/4 + pi n / (2 <delta_r^2>); with --include-revivals those
    inside the range are added to the grid. Interior local maxima of the
    mean fidelity are flagged.

    Usage:
        python manage.py scan-lx --lx-min 45000 --lx-max 49000 --points 41 --include-revivals
    """

    help = "Sweep l_x and locate the fidelity revival points"
    form_class = ScanLxForm
    command_name = "scan-lx"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--lx-min", help="Smallest l_x, must exceed pi/4")
        parser.add_argument("--lx-max", help="Largest l_x")
        parser.add_argument("--points", help="Grid points in the sweep")
        parser.add_argument("--spacing", help="linear or log")
        parser.add_argument(
            "--include-revivals",
            action="store_true",
            default=None,
            help="Add the predicted revival widths to the grid",
        )
        parser.add_argument("--ly", help="Side of the (y, r1) loop")
        add_noise_arguments(parser)

    def run_experiment(self, form):
        data = form.cleaned_data
        grid = lx_grid(data["lx_min"], data["lx_max"], data["points"], data["spacing"])
        points = scan_lx(
            grid,
            data["ly"],
            form.noise_spec(),
            data["samples"],
            data["seed"],
            grid_size=data["grid_size"],
            workers=data["workers"],
            include_revivals=data["include_revivals"],
        )
        msq = points[0].msq
        rows = [
            [
                point.l_x,
                point.d_x,
                point.msq,
                point.mean_one_minus_f_exact,
                point.f_approx_cos,
                point.f_approx_quartic,
                point.is_local_max,
            ]
            for point in points
        ]
        revivals = revival_points(msq, data["lx_min"], data["lx_max"])
        results = {
            "msq": msq,
            "revivals": revivals,
            "local_maxima": [point.l_x for point in points if point.is_local_max],
            "points": [dict(zip(COLUMNS, row)) for row in rows],
        }
        metadata = {"msq": msq, "revivals": " ".join(format(length, ".17g") for length in revivals)}
        return self.artifact(form, results, COLUMNS, rows, metadata)
