"""GANED: a genetic-algorithm-tuned, length-aware extension of the edit distance.

Also provides the baselines it is compared against (edit distance,
normalized edit distance, SAX with MINDIST), 1-NN evaluation, and the
genetic algorithm that tunes the frequency factors.
"""

from .classify import ErrorRate, LabeledDataset, holdout_error, loocv_error, nn1
from .distances import (
    UNIT_COSTS,
    EditCosts,
    FrequencyFactors,
    GanedPairwise,
    edit_distance,
    edit_distance_matrix,
    ganed,
    mindist,
    ned,
)
from .estimators import GanedClassifier, NearestNeighborClassifier, SAXMindistClassifier, SAXTransformer
from .ga import GaConfig, optimize
from .sax import Breakpoints, discretize, gaussian_breakpoints, paa, sax_transform, znormalize
from .sequence import (Alphabet, NGramProfile, SymbolicSequence, make_sequence, ngram_profile, overlap,
                       sequences_from_text)
from .ucr import load_ucr

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Breakpoints", "EditCosts", "ErrorRate", "FrequencyFactors", "GaConfig",
    "GanedClassifier", "GanedPairwise", "LabeledDataset", "NGramProfile", "NearestNeighborClassifier",
    "SAXMindistClassifier", "SAXTransformer", "SymbolicSequence", "UNIT_COSTS", "discretize",
    "edit_distance", "edit_distance_matrix", "ganed", "gaussian_breakpoints", "holdout_error",
    "load_ucr", "loocv_error", "make_sequence", "mindist", "ned", "ngram_profile", "nn1",
    "optimize", "overlap", "paa", "sax_transform", "sequences_from_text", "znormalize",
]
