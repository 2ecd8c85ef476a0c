"""Network synthesis and micro-step simulation."""

from fractions import Fraction

import numpy as np
import pytest

from godelnet import (
    PhasePoint,
    embed,
    mcl_projection,
    na_micro_step,
    na_run,
    nda_run,
    require_sound,
    synthesize,
)
from godelnet.errors import DivergenceError, ResourceLimitError
from godelnet.network import RAMP, STEP, NaRun, network_csv, trajectory_csv


@pytest.fixture(scope="module")
def plain_net(plain_nda):
    return synthesize(plain_nda)


def test_unit_count_formula(plain_nda, plain_net):
    p, q = plain_nda.x_cells, plain_nda.y_cells
    assert plain_net.n == 3 + 3 * (p + q) + 3 * p * q == 72
    assert plain_net.micro_steps_per_macro == 5


def test_unit_budget(plain_nda):
    with pytest.raises(ResourceLimitError):
        synthesize(plain_nda, unit_budget=10)


def test_bias_free_construction(plain_net):
    assert not plain_net.biases.any()
    assert plain_net.activations[plain_net.always_on] == STEP
    assert plain_net.activations[plain_net.mcl[0]] == RAMP
    assert set(plain_net.phases) == {1, 2, 3, 4, 5}


def test_embed_and_project(plain_net, plain_start):
    state = embed(plain_net, plain_start)
    y1, y2 = mcl_projection(state)
    assert (y1, y2) == plain_start.as_floats()
    assert state.x[plain_net.always_on] == 1.0
    assert state.at_boundary()


def test_phase_schedule_updates_one_bank_per_micro(plain_net, plain_start):
    state = embed(plain_net, plain_start)
    for phase in range(1, 6):
        before = state.x.copy()
        state = na_micro_step(plain_net, state)
        changed = {u for u in range(plain_net.n) if state.x[u] != before[u]}
        allowed = {u for u in range(plain_net.n) if plain_net.phases[u] == phase}
        assert changed <= allowed
    assert state.macro == 1 and state.micro == 0


def test_branch_bank_one_hot_for_every_cell(plain_nda, plain_net):
    for cell in plain_nda.cells:
        interior = PhasePoint(
            cell.x_interval.lo + Fraction(1, 1000),
            cell.y_interval.lo + Fraction(1, 1000),
        )
        state = embed(plain_net, interior)
        for _ in range(3):
            state = na_micro_step(plain_net, state)
        bank = {key: state.x[unit] for key, unit in plain_net.bsl_index.items()}
        assert bank[(cell.i, cell.j)] == 1.0
        assert sum(bank.values()) == 1.0


def test_point_just_below_a_corner_reads_as_the_corner(plain_net):
    # a float one ulp under a cell boundary must select the boundary's cell
    state = embed(plain_net, (np.nextafter(1 / 3, 0.0), np.nextafter(2 / 5, 0.0)))
    for _ in range(3):
        state = na_micro_step(plain_net, state)
    active = [key for key, unit in plain_net.bsl_index.items() if state.x[unit] == 1.0]
    assert active == [(1, 2)]


def test_macro_run_follows_exact_orbit(plain_nda, plain_net, plain_start, plain_orbit):
    run = na_run(plain_net, embed(plain_net, plain_start), 6,
                 reference=plain_nda, tol=1e-9, point=plain_start)
    assert not run.diverged
    assert run.max_divergence <= 1e-9
    assert len(run.macro_states) == 7
    for state, expected in zip(run.macro_states, plain_orbit):
        y1, y2 = mcl_projection(state)
        assert abs(y1 - float(expected[0])) <= 1e-9
        assert abs(y2 - float(expected[1])) <= 1e-9
    require_sound(run)


def test_runs_are_deterministic(plain_net, plain_start):
    a = na_run(plain_net, embed(plain_net, plain_start), 6)
    b = na_run(plain_net, embed(plain_net, plain_start), 6)
    for sa, sb in zip(a.states, b.states):
        assert (sa.x == sb.x).all()


def test_states_stay_in_unit_box(plain_net, plain_nda, plain_start):
    run = na_run(plain_net, embed(plain_net, plain_start), 6)
    for state in run.states:
        assert state.x.min() >= 0.0 and state.x.max() <= 1.0


def test_require_sound_raises():
    broken = NaRun(states=(), macro_states=(), max_divergence=0.5,
                   diverged=True, divergence_step=2)
    with pytest.raises(DivergenceError):
        require_sound(broken)


def test_divergence_detection_against_wrong_reference(plain_nda, mixed_nda, plain_net, plain_start):
    # comparing the plain network against the mixed table must diverge
    run = na_run(plain_net, embed(plain_net, plain_start), 6,
                 reference=mixed_nda, tol=1e-9, point=plain_start)
    assert run.diverged and run.divergence_step >= 1


def test_csv_exports(plain_net, plain_start):
    net_lines = network_csv(plain_net).strip().splitlines()
    assert net_lines[0] == "record,a,b,c,d"
    assert sum(1 for l in net_lines if l.startswith("unit,")) == plain_net.n
    assert not any(l.startswith("bias,") for l in net_lines)
    run = na_run(plain_net, embed(plain_net, plain_start), 2)
    traj_lines = trajectory_csv(run).strip().splitlines()
    assert traj_lines[0].startswith("t,micro,x1,")
    assert len(traj_lines) == 1 + 1 + 2 * plain_net.micro_steps_per_macro
