"""cyclenest: nested noncrossing cycles in dense graphs.

Library plus CLI for extracting a robust-expansion candidate subgraph,
building k pairwise edge-disjoint nested cycles whose cyclic orders
agree layer to layer, and verifying every structural guarantee with
exact small-scale oracles.
"""

from .connect import (BallTrace, ConnectionBudget, grow_ball,
                      predicted_connectivity, robust_short_connect,
                      short_connect, vertex_connectivity_exact)
from .cycles import (Cycle, FamilyVerdict, NestedFamily, crossing_oracle,
                     cyclic_order_agrees, verify_family)
from .errors import (AcyclicGraphError, CycleNestError, GraphFormatError,
                     LinkageError, NoShortConnectionError, PipelineError,
                     TerminalStarvationError, WrapError)
from .expander import (ExpansionReport, ReductionResult, peel_to_candidate,
                       test_robust_expansion_exact,
                       test_robust_expansion_sampled, worst_case_survivors)
from .generate import gnp, gnp_average_degree, random_regular
from .graph import (Graph, average_degree, bfs_layers, external_neighborhood,
                    induced_subgraph, load_graph, save_graph)
from .pipeline import (Constants, RunReport, Schedule, compute_schedule,
                       find_nested_cycles, shortest_cycle)
from .wrap import (TerminalAssignment, WrapBudget, WrapResult,
                   choose_terminals, controlled_wrap, linked_wrap)
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "AcyclicGraphError", "BallTrace", "Constants", "ConnectionBudget",
    "CycleNestError", "Cycle", "ExpansionReport", "FamilyVerdict", "Graph",
    "GraphFormatError", "KERNEL_BACKEND", "LinkageError", "NestedFamily",
    "NoShortConnectionError", "PipelineError", "ReductionResult", "RunReport",
    "Schedule", "TerminalAssignment", "TerminalStarvationError", "WrapBudget",
    "WrapError", "WrapResult", "average_degree", "bfs_layers",
    "choose_terminals", "compute_schedule", "controlled_wrap",
    "crossing_oracle", "cyclic_order_agrees", "external_neighborhood",
    "find_nested_cycles", "gnp", "gnp_average_degree", "grow_ball",
    "induced_subgraph", "linked_wrap", "load_graph", "peel_to_candidate",
    "predicted_connectivity", "random_regular", "robust_short_connect",
    "save_graph", "short_connect", "shortest_cycle",
    "test_robust_expansion_exact", "test_robust_expansion_sampled",
    "verify_family", "vertex_connectivity_exact", "worst_case_survivors",
]
