"""
Base class for the experiment management commands.

Every command shares the same flow:
- merge form defaults (from settings.SQUEEZELOOP), an optional config file
  and the command-line flags, in that order of precedence
- validate the merged values with the command's form
- run the experiment and render the artifact as JSON or CSV
- write it to --out or stdout, then fail with exit 1 if a check missed

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

import logging

from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone

from squeezeloop import ARTIFACT_VERSION

from ..exceptions import DomainError
from ..reports import Artifact, read_config_file, render, render_config_file, write_text

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
VERIFICATION_FAILURE = 1


def add_noise_arguments(parser):
    parser.add_argument("--family", help="constant, sinusoid, uniform or gaussian")
    parser.add_argument("--eps", help="Error magnitude")
    parser.add_argument(
        "--zero-mean",
        action="store_true",
        default=None,
        help="Subtract the grid mean from every profile (default for all but constant)",
    )
    parser.add_argument("--no-zero-mean", dest="zero_mean", action="store_false", default=None)
    parser.add_argument("--periods", help="Sinusoid periods over the loop side")
    parser.add_argument("--phase", help="Sinusoid phase")
    parser.add_argument("--grid-size", help="Profile grid points")
    parser.add_argument("--samples", help="Number of profile draws")


class ExperimentCommand(BaseCommand):
    """
    Management command driven by an experiment form.

    Subclasses set `form_class` and `command_name`, declare their own flags
    in `add_experiment_arguments` (every flag takes a string, parsed by the
    form) and implement `run_experiment(form) -> Artifact`.
    """

    form_class = None
    command_name = None

    def get_version(self):
        return ARTIFACT_VERSION

    def add_arguments(self, parser):
        parser.add_argument("--seed", help="Base seed; sample i uses seed + i")
        parser.add_argument("--config", help="Read parameters from a key=value config file")
        parser.add_argument("--format", help="Artifact format: csv or json")
        parser.add_argument("--out", help="Write the artifact to this path instead of stdout")
        parser.add_argument(
            "--no-timestamp",
            action="store_true",
            default=None,
            help="Leave the generation timestamp out of the artifact",
        )
        parser.add_argument("--emit-config", help="Write the resolved config to this path")
        parser.add_argument("--workers", help="Worker threads for independent samples")
        self.add_experiment_arguments(parser)

    def add_experiment_arguments(self, parser):
        pass

    def resolve_config(self, options):
        """Validate defaults < config file < flags with the command's form."""
        fields = self.form_class.base_fields
        data = self.form_class.defaults()
        if options.get("config"):
            try:
                values = read_config_file(options["config"])
            except DomainError as error:
                raise CommandError(str(error), returncode=USAGE_ERROR) from error
            unknown = sorted(set(values) - set(fields))
            if unknown:
                raise CommandError(
                    f"Unknown config keys for {self.command_name}: {', '.join(unknown)}",
                    returncode=USAGE_ERROR,
                )
            data.update(values)
        data.update({name: value for name, value in options.items() if name in fields and value is not None})

        form = self.form_class(data)
        if not form.is_valid():
            messages = "; ".join(
                f"{name}: {' '.join(errors)}" if name != "__all__" else " ".join(errors)
                for name, errors in form.errors.items()
            )
            raise CommandError(f"Invalid {self.command_name} config: {messages}", returncode=USAGE_ERROR)
        return form

    def handle(self, *args, **options):
        form = self.resolve_config(options)
        config = form.resolved_config()
        if options.get("emit_config"):
            write_text(options["emit_config"], render_config_file(config))

        try:
            artifact = self.run_experiment(form)
        except DomainError as error:
            raise CommandError(str(error), returncode=USAGE_ERROR) from error

        generated_at = None if config["no_timestamp"] else timezone.now()
        text = render(artifact, config["format"], generated_at)
        if options.get("out"):
            write_text(options["out"], text)
            if options["verbosity"] >= 1:
                self.stdout.write(self.style.SUCCESS(f"Wrote {self.command_name} artifact to {options['out']}"))
        else:
            self.stdout.write(text, ending="")

        if artifact.failure:
            logger.warning(f"{self.command_name} failed: {artifact.failure}")
            raise CommandError(artifact.failure, returncode=VERIFICATION_FAILURE)

    def artifact(self, form, results, header, rows, metadata=None, failure=None) -> Artifact:
        return Artifact(
            command=self.command_name,
            config=form.artifact_config(),
            results=results,
            header=header,
            rows=rows,
            metadata=metadata or {},
            failure=failure,
        )

    def run_experiment(self, form) -> Artifact:
        raise NotImplementedError("subclasses of ExperimentCommand must provide a run_experiment() method")
