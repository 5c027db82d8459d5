"""Radio labelings of strong prismatic networks ``S_n ⊠ C_m``."""
from .construction import (
    ConstructionReport, FormulaResult, closed_form_rn, construct_best, heuristic_ordering,
    paper_literal_labeling,
)
from .errors import (
    DisconnectedGraphError, InvalidParameterError, MalformedLabelingError, OracleSizeError,
    StarPrismError, TheoremRangeError, UsageError,
)
from .graphs import (
    DistanceMatrix, Graph, VertexKey, all_pairs_distances, build_complete, build_cycle,
    build_star, export_graph, parse_graph, prismatic_network, strong_product,
)
from .labeling import RadioLabeling, Violation, greedy_from_ordering, required_gap, span, verify
from .solver import ExactResult, SweepRecord, brute_force_rn, exact_rn, sweep

__version__ = "0.1.0"
