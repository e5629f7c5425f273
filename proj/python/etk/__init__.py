"""Structural entropy encoding trees and the WL-ET graph kernel."""

from ._core import (
    Dataset,
    EncodingTree,
    Graph,
    InputError,
    NumericalError,
    brute_force_min_entropy,
    cross_validate,
    gram_matrix,
    load_tudataset,
    one_level_tree,
    optimize,
    smo_train,
    structural_entropy,
)

__all__ = [
    "Dataset",
    "EncodingTree",
    "Graph",
    "InputError",
    "NumericalError",
    "brute_force_min_entropy",
    "cross_validate",
    "gram_matrix",
    "load_tudataset",
    "one_level_tree",
    "optimize",
    "smo_train",
    "structural_entropy",
]
