"""Connectivity of chamber graphs: Coxeter complexes, type-A buildings
over prime fields, and order complexes of geometric lattices."""

from .building import (
    Apartment,
    BuildingParameters,
    FlagBuilding,
    building_disjoint_paths,
    building_parameters,
    common_apartment,
    flag_building,
    path_fan,
)
from .complex import (
    ChamberGraph,
    PureComplex,
    TypeLabeling,
    balanced_type_labeling,
    chamber_graph_from_complex,
)
from .connectivity import (
    Certificate,
    ConnectivityReport,
    PathFamily,
    Violation,
    liu_check,
    local_connectivity,
    vertex_connectivity,
    verify_disjoint_family,
)
from .coxeter import (
    INF,
    CoxeterMatrix,
    affine_a,
    cayley_ball,
    coxeter_disjoint_fan,
    dihedral,
    dihedral_path,
    normalize_word,
    type_a,
    type_b,
)
from .errors import ChamberError
from .lattice import (
    DistanceTwoWitness,
    GeometricLattice,
    LocalWidthReport,
    build_lattice,
    distance2_witness,
    lattice_chamber_graph,
    lattice_disjoint_paths,
    q_of_lattice,
    validate_geometric,
)

__version__ = "0.1.0"
