"""Floor diagram computations of double Gromov-Witten invariants of Hirzebruch surfaces."""

from .diagram import (
    Color,
    DivergenceSpec,
    FloorDiagram,
    MultiplicityVector,
    Template,
    derived_data,
    divergence,
    multiplicity,
    validate,
)
from .enumeration import (
    BudgetExceeded,
    EnumerationBudget,
    EnumerationQuery,
    InconsistentQuery,
    complete_weights,
    enumerate_diagrams,
    enumerate_templates,
)
from .invariants import InvariantQuery, adjunction_bound, compute_F, compute_N, gamma

__version__ = "0.1.0"
