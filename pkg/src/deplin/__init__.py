"""deplin: quantitative analysis of syntactic dependency trees and their
linear arrangements.

The package covers tree construction and validation from head vectors or
edge lists, arrangement metrics (edge-length sums, crossings, flux),
exact minimum-arrangement solvers under several planarity constraints,
exhaustive and uniformly random generation of trees and arrangements,
exact and Monte Carlo baseline estimation, and batch processing of
head-vector treebanks and CoNLL-U corpora.
"""

from .errors import (
    CycleError,
    DeplinError,
    DuplicateEdgeError,
    EnsembleTooLargeError,
    HeadOutOfRangeError,
    KindMismatchError,
    MalformedLineError,
    MultipleRootsError,
    NoEdgesError,
    NonContiguousIdsError,
    NoRootError,
    NotATreeError,
    OutOfRangeError,
    SelfHeadError,
    SelfLoopError,
    SizeLimitExceededError,
    SizeMismatchError,
    TooSmallError,
    TreeValidationError,
    UnknownMetricError,
)
from .trees import (
    Arrangement,
    FreeTree,
    RootedTree,
    from_edge_list,
    from_head_vector,
    parse_head_vector,
    root_at,
    to_free,
    to_head_vector,
)
from .linarr import (
    ArrangementFlags,
    FluxProfile,
    MinArrangementResult,
    classify_arrangement,
    flux,
    head_initial_ratio,
    min_D_planar,
    min_D_projective,
    min_D_unconstrained,
    num_crossings,
    sum_edge_lengths,
)
from .properties import (
    TreeShapeFlags,
    centre,
    centroid,
    degree_moment,
    expected_C_unconstrained,
    expected_D_unconstrained,
    hubiness,
    mean_hierarchical_distance,
    num_independent_edge_pairs,
    tree_shape,
)
from .isomorphism import are_isomorphic, canonical_code, free_canonical_code
from .generate import (
    ALL_KINDS,
    TreeKind,
    count_trees,
    exhaustive_arrangements,
    exhaustive_trees,
    num_arrangements,
    random_arrangement,
    random_tree,
)
from .baselines import (
    EstimationResult,
    estimate_over_arrangements,
    estimate_over_trees,
)
from .features import REGISTRY, default_features, evaluate, resolve
from .treebank import (
    CollectionReport,
    ProcessingReport,
    TreebankSource,
    process_collection,
    process_treebank,
    read_head_vectors,
)
from .conllu import (
    ConlluToken,
    ConversionReport,
    DEFAULT_FUNCTION_WORD_UPOS,
    PreprocessOptions,
    convert,
    parse_conllu,
    preprocess,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
