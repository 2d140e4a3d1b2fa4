from .geometric import (
    DegenerateConfiguration,
    GeoQuad,
    geo_F,
    geo_pentagon,
    geo_pentagon_inverse,
    geo_pentagon_inverse_newton,
    geo_pentagon_inverse_newton_pairs,
    geo_pentagon_inverse_pairs,
    geo_pentagon_pairs,
    quad_angles,
    random_convex_quad,
    verify_geometric,
    triangle_angles,
    triangle_phases,
)
from .local import WPair, pentagon_forward, pentagon_inverse, tetra_map, tetra_map_a, tetra_map_b
from .verify import (
    PHASE,
    RATIONAL,
    Sampler,
    cyclic_sampler,
    log_jacobian,
    structure_residual,
    verify_pentagon,
    verify_structure,
    verify_structure_random,
    verify_ten_term,
    verify_tetrahedron,
)
