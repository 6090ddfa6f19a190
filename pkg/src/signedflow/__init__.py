"""Integer flows on signed graphs: reduction to minimal Eulerian walks,
indecomposability via Eulerian cycle-trees, and circuit classification."""
from .core import (Edge, FlowError, GraphError, IntFlow, InvariantViolation, Orientation,
                   OrientationError, SignedFlowError, SignedGraph, boundary, coupling,
                   derived_orientation, is_flow, sign_of_edge_set, support, validate_graph)
from .cycletree import (CircuitClass, CircuitType, CycleTree, HalfDecomposition, NoDirection,
                        NotCycleTree, canonical_closed_walk, characteristic_flow, check_parity,
                        classify_circuit, detect_cycle_tree, find_direction,
                        half_integer_decomposition, indicator, is_direction)
from .fra import Decomposition, EmptySupport, TrivialFlow, decompose_flow, fra_run, is_indecomposable
from .walk import (DirectedWalk, WalkError, WalkStep, characteristic_vector, has_triple_vertex,
                   is_elementary_walk, is_eulerian_walk, is_midway_back_avoided, is_minimal_eulerian,
                   reverse_walk, validate_walk, walk_sign)

__version__ = "0.1.0"
