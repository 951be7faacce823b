"""Homotopy colimits of additive categories over the index categories attached to a virtually cyclic group."""
from .ambient import Ambient
from .categories import STAR, CosetSpace, IndexCat, MonoidCat, MorphismFilter, TransportGroupoid
from .core import Biproduct, Hocolim, HocolimCoefficients, HocolimMorphism, HocolimObject, MatrixCategory
from .functors import (
    CoefficientMap,
    IndexFunctor,
    ev_sigma,
    inclusion,
    map_int_S,
    phi_twist,
    psi_inverse,
    psi_iso,
    pushforward_W,
    r_sigma,
    to_group_ring_matrix,
)
from .diagrams import DIAGRAMS, check_diagram, s_component, t_component
