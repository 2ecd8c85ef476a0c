"""Shared fixtures: the demo machine, its two encodings, frozen orbits."""

from fractions import Fraction

import pytest

from godelnet import encode_tape, from_versatile_shift, initial_state
from godelnet.checks import DEMO_SENTENCE, demo_encodings, demo_machine

@pytest.fixture(scope="session")
def plain_orbit():
    """Exact phase-point orbit of the demo parse under the "plain" encoding;
    the run accepts at t=5 and then stays at the origin."""
    return (
        (Fraction(16, 27), Fraction(4, 5)),
        (Fraction(16, 27), Fraction(8, 25)),
        (Fraction(7, 9), Fraction(3, 5)),
        (Fraction(7, 9), Fraction(11, 25)),
        (Fraction(1, 3), Fraction(1, 5)),
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0)),
    )


@pytest.fixture(scope="session")
def mixed_orbit():
    """The same orbit under the "mixed" encoding."""
    return (
        (Fraction(23, 27), Fraction(2, 5)),
        (Fraction(23, 27), Fraction(21, 25)),
        (Fraction(5, 9), Fraction(1, 5)),
        (Fraction(5, 9), Fraction(19, 25)),
        (Fraction(2, 3), Fraction(4, 5)),
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0)),
    )


@pytest.fixture(scope="session")
def machine():
    return demo_machine()


@pytest.fixture(scope="session")
def encodings(machine):
    return demo_encodings(machine)


@pytest.fixture(scope="session")
def plain(encodings):
    return encodings["plain"]


@pytest.fixture(scope="session")
def mixed(encodings):
    return encodings["mixed"]


@pytest.fixture(scope="session")
def start_state(machine):
    return initial_state(machine, DEMO_SENTENCE, "S")


@pytest.fixture(scope="session")
def plain_nda(machine, plain):
    return from_versatile_shift(machine, plain)


@pytest.fixture(scope="session")
def mixed_nda(machine, mixed):
    return from_versatile_shift(machine, mixed)


@pytest.fixture(scope="session")
def plain_start(start_state, plain):
    return encode_tape(start_state, plain)


@pytest.fixture(scope="session")
def mixed_start(start_state, mixed):
    return encode_tape(start_state, mixed)
