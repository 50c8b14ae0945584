from django.apps import AppConfig


class HolonomyConfig(AppConfig):
    """
    Django app configuration for the holonomy application.

    Holds the qubit gate algebra, the rectangular control loops of the
    squeezing/displacement Hadamard construction, the squeezing-error
    fidelity models, the truncated Fock-space oracle and the management
    commands that run experiments over them.
    """

    name = "holonomy"
    verbose_name = "Holonomic gates"
