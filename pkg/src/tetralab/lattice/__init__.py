from .hirota import (
    TauError,
    TauField,
    cube_residual,
    eom_images,
    hirota_propagate,
    legendre_uv,
    random_tau_init,
    unit_tau_init,
    verify_hirota_to_eom,
    wall_points,
)
from .kagome import (
    EvolutionError,
    KagomeState,
    cubic_coords,
    evolve,
    evolve_steps,
    from_cubic,
    kagome_from_params,
    kagome_from_values,
    kagome_random,
    simple_invariants,
    site_slot,
)
