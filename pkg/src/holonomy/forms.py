import math

from django import forms
from django.conf import settings

from .error_models import MAX_SCAN_EPS, NoiseFamily, NoiseSpec
from .exceptions import DomainError
from .fock import MAX_DISPLACEMENT, MAX_SQUEEZE, MAX_STEP, MIN_FOCK_DIM, MIN_STEP, MIN_STEPS_PER_EDGE
from .loops import hadamard_dx, hadamard_dy

FORMAT_CHOICES = [("csv", "csv"), ("json", "json")]
FAMILY_CHOICES = [(family.value, family.value) for family in NoiseFamily]
SPACING_CHOICES = [("linear", "linear"), ("log", "log")]


def parse_float_list(text, name: str) -> list[float]:
    """Parse "0.001,0.002,..." into finite floats."""
    items = [item for item in str(text).replace(" ", "").split(",") if item]
    values = []
    for item in items:
        try:
            value = float(item)
        except (TypeError, ValueError):
            raise forms.ValidationError(f"{name} entries must be numbers, got: {item}")
        if not math.isfinite(value):
            raise forms.ValidationError(f"{name} entries must be finite, got: {item}")
        values.append(value)
    return values


def _domain_check(check, *args):
    try:
        return check(*args)
    except DomainError as error:
        raise forms.ValidationError(str(error))


class ExperimentForm(forms.Form):
    """
    Fields shared by every experiment command.

    Forms receive the merged config (defaults, config file, flags) as plain
    values or strings and produce the resolved config that is embedded in
    every artifact. `setting_defaults` maps field names to keys of
    settings.SQUEEZELOOP that override the field's initial value.
    """

    seed = forms.IntegerField()
    format = forms.ChoiceField(choices=FORMAT_CHOICES, initial="json")
    no_timestamp = forms.BooleanField(required=False, initial=False)
    workers = forms.IntegerField(min_value=1)

    setting_defaults = {"seed": "SEED", "workers": "WORKERS"}
    # execution settings: emitted with the config file, never embedded in artifacts
    runtime_fields = ("workers",)

    @classmethod
    def defaults(cls) -> dict:
        values = {name: field.initial for name, field in cls.base_fields.items()}
        for name, key in cls.setting_defaults.items():
            values[name] = settings.SQUEEZELOOP[key]
        return values

    def resolved_config(self) -> dict:
        return {name: self.cleaned_data.get(name) for name in self.fields}

    def artifact_config(self) -> dict:
        config = self.resolved_config()
        for name in self.runtime_fields:
            config.pop(name, None)
        return config


class GateForm(ExperimentForm):
    """Loop widths for the ideal Hadamard construction."""

    lx = forms.FloatField(initial=1.0)
    ly = forms.FloatField(initial=1.0)

    def clean_lx(self):
        lx = self.cleaned_data["lx"]
        _domain_check(hadamard_dx, lx)
        return lx

    def clean_ly(self):
        ly = self.cleaned_data["ly"]
        _domain_check(hadamard_dy, ly)
        return ly


class NoiseForm(GateForm):
    """
    Loop widths plus a squeezing-error generator.

    zero_mean left unset means: zero-mean for every family except constant.
    """

    family = forms.ChoiceField(choices=FAMILY_CHOICES, initial=NoiseFamily.UNIFORM.value)
    eps = forms.FloatField(min_value=0.0, initial=0.01)
    zero_mean = forms.NullBooleanField(required=False, initial=None)
    periods = forms.IntegerField(min_value=1, initial=1)
    phase = forms.FloatField(initial=0.0)
    grid_size = forms.IntegerField(min_value=2)
    samples = forms.IntegerField(min_value=1, initial=100)

    setting_defaults = {**ExperimentForm.setting_defaults, "grid_size": "GRID_SIZE"}

    def clean(self):
        cleaned_data = super().clean()
        if cleaned_data.get("zero_mean") is None and "family" in cleaned_data:
            cleaned_data["zero_mean"] = cleaned_data["family"] != NoiseFamily.CONSTANT.value
        if not self.errors:
            _domain_check(self.noise_spec)
        return cleaned_data

    def noise_spec(self, scale: float | None = None) -> NoiseSpec:
        data = self.cleaned_data
        return NoiseSpec(
            family=NoiseFamily(data["family"]),
            scale=data["eps"] if scale is None else scale,
            periods=data["periods"],
            phase=data["phase"],
            zero_mean=data["zero_mean"],
        )


class FidelityForm(NoiseForm):
    format = forms.ChoiceField(choices=FORMAT_CHOICES, initial="csv")


class ScanLxForm(NoiseForm):
    """
    l_x sweep settings.

    A single realisation (samples=1) keeps the revival maxima sharp.
    """

    format = forms.ChoiceField(choices=FORMAT_CHOICES, initial="csv")
    samples = forms.IntegerField(min_value=1, initial=1)
    lx = None
    lx_min = forms.FloatField(initial=1.0)
    lx_max = forms.FloatField(initial=10.0)
    points = forms.IntegerField(initial=41)
    spacing = forms.ChoiceField(choices=SPACING_CHOICES, initial="linear")
    include_revivals = forms.BooleanField(required=False, initial=False)

    def clean_lx_min(self):
        lx_min = self.cleaned_data["lx_min"]
        _domain_check(hadamard_dx, lx_min)
        return lx_min

    def clean_points(self):
        points = self.cleaned_data["points"]
        if points < 2:
            raise forms.ValidationError(f"An l_x sweep needs at least 2 points, got: {points}")
        return points

    def clean(self):
        cleaned_data = super().clean()
        lx_min, lx_max = cleaned_data.get("lx_min"), cleaned_data.get("lx_max")
        if lx_min is not None and lx_max is not None and lx_max <= lx_min:
            raise forms.ValidationError(f"l_x range is empty: [{lx_min}, {lx_max}]")
        return cleaned_data


class OrderFitForm(NoiseForm):
    eps_list = forms.CharField(initial="0.001,0.002,0.005,0.01,0.02,0.03")
    samples = forms.IntegerField(min_value=1, initial=200)
    expect_slope = forms.FloatField(required=False, initial=None)
    tol = forms.FloatField(min_value=0.0, initial=0.1)

    def clean_eps_list(self):
        values = parse_float_list(self.cleaned_data["eps_list"], "eps_list")
        if len(values) < 3:
            raise forms.ValidationError(f"An order fit needs at least 3 eps values, got: {len(values)}")
        for value in values:
            if not 0 < value <= MAX_SCAN_EPS:
                raise forms.ValidationError(f"eps values must lie in (0, {MAX_SCAN_EPS}], got: {value}")
        return values


class VerifyOracleForm(ExperimentForm):
    """
    Oracle run settings and pass tolerances.

    The defaults keep every check inside the envelope where a 64-level
    truncation is accurate: r1 <= 0.5 for the point checks and loops of
    width pi/2 (height ln2/2) for the holonomy checks.
    """

    fock_dim = forms.IntegerField()
    step = forms.FloatField()
    steps_per_edge = forms.IntegerField()
    lx = forms.FloatField(initial=math.pi / 2)
    ly = forms.FloatField(initial=math.pi / 2)
    points = forms.IntegerField(min_value=1, initial=10)
    r1_max = forms.FloatField(min_value=0.0, initial=0.5)
    ladder = forms.CharField(initial="32,48,64,96")
    eps = forms.FloatField(min_value=0.0, initial=0.05)
    top_nodes = forms.IntegerField(min_value=2, initial=41)
    field_tol = forms.FloatField(min_value=0.0, initial=1e-3)
    skew_tol = forms.FloatField(min_value=0.0, initial=1e-4)
    holonomy_tol = forms.FloatField(min_value=0.0, initial=1e-3)
    gate_tol = forms.FloatField(min_value=0.0, initial=2e-3)
    fidelity_tol = forms.FloatField(min_value=0.0, initial=5e-3)
    max_leakage = forms.FloatField(min_value=0.0, initial=1e-8)

    setting_defaults = {
        **ExperimentForm.setting_defaults,
        "fock_dim": "FOCK_DIM",
        "step": "FD_STEP",
        "steps_per_edge": "STEPS_PER_EDGE",
    }

    def clean_fock_dim(self):
        fock_dim = self.cleaned_data["fock_dim"]
        if fock_dim < MIN_FOCK_DIM:
            raise forms.ValidationError(f"fock_dim must be at least {MIN_FOCK_DIM}, got: {fock_dim}")
        return fock_dim

    def clean_step(self):
        step = self.cleaned_data["step"]
        if not MIN_STEP <= step <= MAX_STEP:
            raise forms.ValidationError(f"step must lie in [{MIN_STEP:g}, {MAX_STEP:g}], got: {step}")
        return step

    def clean_steps_per_edge(self):
        steps = self.cleaned_data["steps_per_edge"]
        if steps < MIN_STEPS_PER_EDGE:
            raise forms.ValidationError(f"steps_per_edge must be at least {MIN_STEPS_PER_EDGE}, got: {steps}")
        return steps

    def clean_lx(self):
        lx = self.cleaned_data["lx"]
        _domain_check(hadamard_dx, lx)
        return lx

    def clean_ly(self):
        ly = self.cleaned_data["ly"]
        _domain_check(hadamard_dy, ly)
        return ly

    def clean_ladder(self):
        values = parse_float_list(self.cleaned_data["ladder"], "ladder")
        dims = [int(value) for value in values]
        if len(dims) < 3:
            raise forms.ValidationError(f"The ladder needs at least 3 rungs, got: {len(dims)}")
        if any(dim != value or dim < MIN_FOCK_DIM for dim, value in zip(dims, values)):
            raise forms.ValidationError(f"Ladder rungs must be integers of at least {MIN_FOCK_DIM}, got: {values}")
        return dims

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        lx, ly = cleaned_data["lx"], cleaned_data["ly"]
        # centred loops reach |eta| = l/2; the perturbed top edges reach d + eps
        if max(lx, ly) / 2 > MAX_DISPLACEMENT:
            raise forms.ValidationError(
                f"Loop displacement max(lx, ly)/2 must be at most {MAX_DISPLACEMENT}, got: {max(lx, ly) / 2}"
            )
        if cleaned_data["r1_max"] > MAX_SQUEEZE:
            raise forms.ValidationError(f"r1_max must be at most {MAX_SQUEEZE}, got: {cleaned_data['r1_max']}")
        height = max(hadamard_dx(lx), hadamard_dy(ly)) + cleaned_data["eps"]
        if height > MAX_SQUEEZE:
            raise forms.ValidationError(
                f"Loop squeezing height plus eps must be at most {MAX_SQUEEZE}, got: {height}"
            )
        return cleaned_data
