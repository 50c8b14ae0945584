from holonomy.error_models import order_scan
from holonomy.forms import OrderFitForm
from holonomy.management.experiment import ExperimentCommand, add_noise_arguments


class Command(ExperimentCommand):
    """
    Fit the order of the fidelity deficit in the error magnitude.

    Runs the Monte Carlo fidelity at every eps of --eps-list with the same
    seeds and fits log(mean 1 - f) against log(eps). Zero-mean errors give
    a slope near 4, errors with a non-zero mean a slope near 2. With
    --expect-slope the command exits 1 when the fitted slope misses the
    expectation by more than --tol.

    Usage:
        python manage.py order-fit --family uniform --expect-slope 4 --tol 0.1
    """

    help = "Fit the scaling order of 1 - f against the squeezing error magnitude"
    form_class = OrderFitForm
    command_name = "order-fit"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--lx", help="Side of the (x, r1) loop, must exceed pi/4")
        parser.add_argument("--ly", help="Side of the (y, r1) loop")
        parser.add_argument("--eps-list", help="Comma-separated error magnitudes, at least 3")
        parser.add_argument("--expect-slope", help="Fail unless the slope is within --tol of this")
        parser.add_argument("--tol", help="Slope tolerance for --expect-slope")
        add_noise_arguments(parser)

    def run_experiment(self, form):
        data = form.cleaned_data
        scan = order_scan(
            data["lx"],
            form.noise_spec(),
            data["eps_list"],
            data["samples"],
            data["seed"],
            l_y=data["ly"],
            grid_size=data["grid_size"],
            workers=data["workers"],
        )
        rows = [[point.eps, point.mean_one_minus_f, point.mean_f, point.used] for point in scan.points]
        results = {
            "slope": scan.slope,
            "intercept": scan.intercept,
            "underflow": scan.underflow,
            "points": [
                {
                    "eps": point.eps,
                    "mean_one_minus_f": point.mean_one_minus_f,
                    "mean_f": point.mean_f,
                    "used": point.used,
                }
                for point in scan.points
            ],
        }

        failure = None
        expected = data["expect_slope"]
        if expected is not None:
            if scan.underflow:
                failure = "Slope fit underflowed: fewer than 2 points above the double-precision floor"
            elif abs(scan.slope - expected) > data["tol"]:
                failure = f"Fitted slope {scan.slope:.4f} is not within {data['tol']} of {expected}"
            results["expected_slope"] = expected
            results["passed"] = failure is None

        metadata = {"slope": scan.slope, "intercept": scan.intercept, "underflow": scan.underflow}
        return self.artifact(
            form, results, ["eps", "mean_one_minus_f", "mean_f", "used"], rows, metadata, failure
        )
