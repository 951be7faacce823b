"""Exact computations with infinite virtually cyclic groups, homotopy colimits of additive
categories over their index categories, orientations, and twisted polynomial rings."""
from .catalog import catalog_group
from .config import Caps, default_caps, using_caps
from .errors import VcycError
from .finite_group import FiniteGroup, GroupAutomorphism, Subgroup
from .orientation import Orientation, OrientationDiagram, Unorientable, solve
from .vc import (
    Amalgam,
    SemidirectZ,
    VCElement,
    VCHom,
    VCType,
    abelianization,
    center_is_infinite,
    classify_type,
    gen_map,
    induced_q_map,
    maximal_finite_normal,
    quotient_data,
)

__version__ = "0.1.0"
