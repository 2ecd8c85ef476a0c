"""Macroscopic observables over phase points and network states.

The step observable assigns one coefficient per equality-pattern class of
the window rectangle a state's machine configuration lies in.  Because the
classes are unions of digit-permutation orbits, the observable takes the
same value on a run and on its recoded twin; the classical aggregates
(mean activation, harmony, dissimilarity) do not, which is the contrast the
experiment harness reports.

rho_pi realizes a recoding pair as a rigid motion of the unit square: decode
the window corner, permute the digits per side, translate the point by the
corner displacement.  alpha_pi pulls an observable back along rho_pi.
"""

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DomainError
from .nda import PhasePoint
from .network import NeuralState, mcl_projection
from .patterns import square_partition
from .symbols import check_permutation, digits_to_index, index_to_digits, recode

#: Tolerance (on the scaled digit grid) for snapping float coordinates to
#: cell corners; generous against the 1e-9 macro soundness bound, tight
#: against the >= 1/m cell width.
DEFAULT_SNAP = 1e-6


def digits_from_float(y, m, window, snap=DEFAULT_SNAP):
    """First ``window`` base-m digits of a float in [0, 1), snap-corrected.

    A value within ``snap`` (in units of the m**window grid) of a corner is
    read as that corner, so encodings perturbed by float error decode to the
    cell they came from.
    """
    if not -snap <= y < 1.0 + snap:
        raise DomainError("float coordinate %r outside the unit interval" % (y,))
    z = y * (m**window)
    k = math.floor(z)
    nearest = round(z)
    if abs(z - nearest) <= snap:
        k = nearest
    k = min(max(k, 0), m**window - 1)
    return index_to_digits(k, m, window)


def _coordinates(obj):
    if isinstance(obj, PhasePoint):
        return obj.y1, obj.y2, True
    if isinstance(obj, NeuralState):
        y1, y2 = mcl_projection(obj)
        return y1, y2, False
    y1, y2 = obj
    return y1, y2, False


@dataclass(frozen=True)
class StepObservableSpec:
    """Window geometry, pattern-class map and per-class coefficients.

    The class map lives on the phase plane: x axis = input side, window
    length r, base m_in; y axis = stack side, window length l, base m_st.
    Coefficients are drawn once from a seeded shuffle of the uniform grid
    {1/s, ..., s/s}, so they are pairwise distinct and reproducible.
    """

    l: int
    r: int
    m_in: int
    m_st: int
    mode: str
    class_map: object
    coefficients: tuple
    seed: int
    snap: float = DEFAULT_SNAP

    def cell_of(self, obj):
        y1, y2, exact = _coordinates(obj)
        if exact:
            i = (y1 * self.m_in**self.r).__floor__()
            j = (y2 * self.m_st**self.l).__floor__()
        else:
            i = digits_to_index(digits_from_float(y1, self.m_in, self.r, self.snap), self.m_in)
            j = digits_to_index(digits_from_float(y2, self.m_st, self.l, self.snap), self.m_st)
        return i, j

    def class_of(self, obj):
        return self.class_map.class_of(self.cell_of(obj))


def build_step_observable(l, r, m_in, m_st, seed, mode="product", blank_pinned=True,
                          snap=DEFAULT_SNAP):
    """Construct the seeded pattern-class observable for a window (l, r)."""
    class_map = square_partition(
        m=m_in, l=r, r=l, m_right=m_st, mode=mode, blank_pinned=blank_pinned,
    )
    count = class_map.class_count
    rng = random.Random(seed)
    grid = rng.sample(range(1, count + 1), count)
    coefficients = tuple(v / count for v in grid)
    return StepObservableSpec(
        l=l, r=r, m_in=m_in, m_st=m_st, mode=mode,
        class_map=class_map, coefficients=coefficients, seed=seed, snap=snap,
    )


def step_observable(spec, obj):
    """Coefficient of the pattern class of the state's window rectangle."""
    return spec.coefficients[spec.class_of(obj)]


def amari(state):
    """Mean activation of the full state vector (not recoding-invariant)."""
    x = state.x if isinstance(state, NeuralState) else state
    return float(sum(x) / len(x))


def harmony(weights, state):
    """Quadratic form x . W x of a state under the network weights."""
    x = state.x if isinstance(state, NeuralState) else state
    return float(x @ weights @ x)


def dissimilarity(previous, current):
    """1 - cosine similarity of consecutive states; 0 when either is null."""
    xp = previous.x if isinstance(previous, NeuralState) else previous
    xc = current.x if isinstance(current, NeuralState) else current
    np_ = math.sqrt(float(sum(v * v for v in xp)))
    nc = math.sqrt(float(sum(v * v for v in xc)))
    if np_ == 0.0 or nc == 0.0:
        return 0.0
    dot = float(sum(a * b for a, b in zip(xp, xc)))
    return 1.0 - dot / (np_ * nc)


@dataclass(frozen=True)
class PermutationPair:
    """Digit permutations (fixing 0) for the input and stack sides."""

    input_perm: tuple
    stack_perm: tuple

    def __post_init__(self):
        object.__setattr__(self, "input_perm", check_permutation(self.input_perm, len(self.input_perm)))
        object.__setattr__(self, "stack_perm", check_permutation(self.stack_perm, len(self.stack_perm)))
        for name, perm in (("input", self.input_perm), ("stack", self.stack_perm)):
            if perm[0] != 0:
                raise DomainError("%s permutation must fix the blank digit 0, got %r" % (name, perm))


def _rigid_move(y, perm, m, window, exact, snap):
    if exact:
        k = (y * m**window).__floor__()
        digits = index_to_digits(k, m, window)
    else:
        digits = digits_from_float(y, m, window, snap)
        k = digits_to_index(digits, m)
    k_new = digits_to_index(recode(digits, perm), m)
    if exact:
        return y + Fraction(k_new - k, m**window)
    return y + (k_new - k) / (m**window)


def rho_pi(obj, pair, window, bases, snap=DEFAULT_SNAP):
    """Rigid square motion induced by a recoding pair.

    ``window`` is (l, r) = (stack, input) lengths; ``bases`` is
    (m_in, m_st).  Phase points transform exactly; neural states transform
    in their MCL components only (identity elsewhere), with corner snapping.
    """
    l, r = window
    m_in, m_st = bases
    if isinstance(obj, PhasePoint):
        y1 = _rigid_move(obj.y1, pair.input_perm, m_in, r, True, snap)
        y2 = _rigid_move(obj.y2, pair.stack_perm, m_st, l, True, snap)
        return PhasePoint(y1, y2)
    if isinstance(obj, NeuralState):
        x = obj.x.copy()
        x[0] = _rigid_move(float(x[0]), pair.input_perm, m_in, r, False, snap)
        x[1] = _rigid_move(float(x[1]), pair.stack_perm, m_st, l, False, snap)
        return replace(obj, x=x)
    y1, y2 = obj
    return (
        _rigid_move(float(y1), pair.input_perm, m_in, r, False, snap),
        _rigid_move(float(y2), pair.stack_perm, m_st, l, False, snap),
    )


def alpha_pi(observable, pair, window, bases, snap=DEFAULT_SNAP):
    """Pullback of an observable along rho_pi."""

    def pulled(obj):
        return observable(rho_pi(obj, pair, window, bases, snap))

    return pulled
