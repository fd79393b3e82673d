from .streams import ComplexGaussianStream, mix64, split_stream, trial_seeds
from .ensembles import (
    SUPPORTED_ENSEMBLES,
    Ensemble,
    EnsembleSpec,
    GeneratorConfig,
    generate,
    gram_schmidt,
)

__all__ = [
    "ComplexGaussianStream",
    "mix64",
    "split_stream",
    "trial_seeds",
    "SUPPORTED_ENSEMBLES",
    "Ensemble",
    "EnsembleSpec",
    "GeneratorConfig",
    "generate",
    "gram_schmidt",
]
