__version__ = "1.0.0"

# embedded in every JSON/CSV artifact the commands write
ARTIFACT_VERSION = f"squeezeloop {__version__}"
