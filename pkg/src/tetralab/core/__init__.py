from .det import det_cofactor, det_poly, det_row_ordered, rank_exact
from .laurent import Lp2
from .polygon import NewtonPolygon, polygon_points
from .rings import (
    CMat,
    ConditionWarning,
    SingularError,
    commutator_norm,
    distance,
    format_rat,
    inv,
    is_zero,
    one_like,
    parse_rat,
)
from .weyl import CyclicWeylPair, clock_shift, embed, root_of_unity, weyl_pair

__all__ = [
    "CMat",
    "ConditionWarning",
    "CyclicWeylPair",
    "Lp2",
    "NewtonPolygon",
    "SingularError",
    "clock_shift",
    "commutator_norm",
    "det_cofactor",
    "det_poly",
    "det_row_ordered",
    "rank_exact",
    "distance",
    "embed",
    "format_rat",
    "inv",
    "is_zero",
    "one_like",
    "parse_rat",
    "polygon_points",
    "root_of_unity",
    "weyl_pair",
]
