import pytest

from twistlab.invariants import Factorization
from twistlab.schema import load_fixture
from twistlab.surfaces import Curve
from twistlab.words import TwistLetter, TwistWord

CURVE_A = Curve("a", (1, 0), word=(1,))
CURVE_B = Curve("b", (0, 1), word=(2,))


def e1_word(copies: int = 1) -> TwistWord:
    letters = []
    for _ in range(copies):
        for _ in range(6):
            letters += [TwistLetter(CURVE_A), TwistLetter(CURVE_B)]
    return TwistWord(1, tuple(letters))


def e1_factorization(copies: int = 1) -> Factorization:
    return Factorization(
        fiber_genus=1,
        base_genus=0,
        word=e1_word(copies),
        curves=(CURVE_A, CURVE_B),
    )


@pytest.fixture
def fixture_e1():
    return load_fixture("E1")


@pytest.fixture
def fixture_genus2():
    return load_fixture("genus2-paper")


@pytest.fixture
def fixture_genus3():
    return load_fixture("genus3-b1")


@pytest.fixture
def fixture_wajnryb():
    return load_fixture("wajnryb-map21")


@pytest.fixture
def fixture_amalgam():
    return load_fixture("sl2z-amalgam")
