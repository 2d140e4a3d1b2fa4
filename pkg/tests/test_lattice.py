import copy
from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetralab.core import SingularError
from tetralab.lattice import (
    EvolutionError,
    TauError,
    TauField,
    cubic_coords,
    eom_images,
    evolve,
    evolve_steps,
    from_cubic,
    hirota_propagate,
    kagome_from_values,
    kagome_random,
    legendre_uv,
    random_tau_init,
    simple_invariants,
    unit_tau_init,
    verify_hirota_to_eom,
)
from tetralab.lattice.hirota import StencilError
from tetralab.maps import tetra_map_a


def test_random_state_shapes_and_determinism():
    s = kagome_random(1, seed=7)
    assert len(s.pairs) == 3
    assert len(kagome_random(3, seed=1).pairs) == 27
    assert kagome_random(2, seed=5) == kagome_random(2, seed=5)
    with pytest.raises(ValueError):
        kagome_random(0)


def test_evolve_n1_examples(n1_state):
    out = evolve(n1_state)
    assert [out.u(a, 0, 0) for a in (1, 2, 3)] == [Fr(17, 6), Fr(3, 7), 14]
    assert [out.v(a, 0, 0) for a in (1, 2, 3)] == [Fr(35, 6), Fr(24, 7), 17]
    assert simple_invariants(n1_state) == ([6], [20])
    assert simple_invariants(out) == ([6], [20])


@pytest.mark.parametrize("seed", range(5))
def test_evolve_n1_is_tetra_map(seed):
    s = kagome_random(1, seed=seed)
    out = evolve(s)
    assert [out[a, 0, 0] for a in (1, 2, 3)] == list(tetra_map_a(s[1, 0, 0], s[2, 0, 0], s[3, 0, 0]))


def test_evolve_is_pure():
    s = kagome_random(2, seed=3)
    snapshot = copy.deepcopy(s)
    twice = evolve(evolve(s))
    assert s == snapshot
    assert evolve_steps(snapshot, 2)[-1] == twice


def test_evolve_places_images():
    s = kagome_random(3, seed=11)
    out = evolve(s)
    i, j = 1, 2
    w1, w2, w3 = tetra_map_a(s[1, i, j], s[2, i, j], s[3, i, j])
    assert out[1, i + 1, j] == w1 and out[2, i, j] == w2 and out[3, i, j + 1] == w3


@pytest.mark.parametrize("N", [1, 2, 3])
def test_simple_invariants_conserved(N):
    for seed in range(20):
        s = kagome_random(N, seed=seed)
        assert simple_invariants(evolve(s)) == simple_invariants(s)


def test_cyclic_invariants_conserved():
    s = kagome_random(1, "cyclic", seed=0, M=2)
    U, V = simple_invariants(s)
    U2, V2 = simple_invariants(evolve(s))
    assert np.max(np.abs(U[0].a - U2[0].a)) <= 1e-9
    assert np.max(np.abs(V[0].a - V2[0].a)) <= 1e-9


def test_singular_site_reported():
    s = kagome_from_values(1, {(1, 0, 0): (1, 1), (2, 0, 0): (1, 1), (3, 0, 0): (-1, 1)})
    with pytest.raises(EvolutionError) as exc:
        evolve(s)
    assert exc.value.site == (0, 0)


def test_cubic_coords_examples():
    assert cubic_coords(0, 0, 0) == (0, 0, 0)
    assert cubic_coords(1, 2, 5) == (1, 2, 2)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_cubic_round_trip(i, j, t):
    assert from_cubic(cubic_coords(i, j, t)) == (i, j, t)


def test_unit_tau_values():
    tau = hirota_propagate(unit_tau_init((3, 3, 3)))
    assert tau[1, 1, 1] == 2
    assert tau[2, 1, 1] == 3
    assert tau[1, 2, 1] == 2
    assert tau[2, 2, 2] == 12


def test_unit_tau_legendre_and_eom():
    tau = hirota_propagate(unit_tau_init((3, 3, 3)))
    assert legendre_uv(tau, tau, (1, 0, 0))[0] == 2
    w = legendre_uv(tau, tau, (0, 0, 0))
    assert legendre_uv(tau, tau, (1, 0, 0))[0] == eom_images(w)[(1, "u1")]
    ones = TauField((2, 2, 2), {n: Fr(1) for n in np.ndindex(2, 2, 2)})
    assert legendre_uv(ones, ones, (0, 0, 0)) == (1,) * 6
    with pytest.raises(StencilError):
        legendre_uv(tau, tau, (2, 2, 2))


def test_random_tau_pairs_satisfy_eom():
    for k in range(20):
        tau1 = hirota_propagate(random_tau_init((3, 3, 3), 2 * k))
        tau2 = hirota_propagate(random_tau_init((3, 3, 3), 2 * k + 1))
        rep = verify_hirota_to_eom(tau1, tau2)
        assert rep.passed and rep.max_residual == 0
        assert rep.details["eom_sites"] == 8


def test_corrupted_tau_detected():
    tau1 = hirota_propagate(random_tau_init((3, 3, 3), 1))
    tau2 = hirota_propagate(random_tau_init((3, 3, 3), 2))
    bad = dict(tau2.values)
    bad[(1, 1, 1)] += 1
    assert not verify_hirota_to_eom(tau1, TauField(tau2.block, bad)).passed


def test_degenerate_tau():
    with pytest.raises(TauError):
        TauField((2, 2, 2), {(0, 0, 0): Fr(0)})
    init = unit_tau_init((2, 2, 2)).values
    init = {**init, (0, 1, 1): Fr(-1)}
    # 1*(-1) + 1*1 = 0 at the top corner
    with pytest.raises(SingularError):
        hirota_propagate(TauField((2, 2, 2), init))
    with pytest.raises(ValueError):
        hirota_propagate(TauField((2, 2, 2), {(0, 0, 0): Fr(1)}))
