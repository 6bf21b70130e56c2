from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dihedral_tower.affine import AffineMap
from dihedral_tower.freeprod import normalize
from dihedral_tower.hnn import Word
from dihedral_tower.tower import TowerState, ensure_letter
from dihedral_tower import verifier

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero_rationals = small_rationals.filter(lambda q: q != 0)
affine_maps = st.builds(AffineMap, nonzero_rationals, small_rationals)
nontrivial_affine = affine_maps.filter(lambda g: not g.is_identity)
z_powers = st.integers(-3, 3).filter(bool)


@st.composite
def fp_words(draw, max_len=5):
    n = draw(st.integers(0, max_len))
    use_z = draw(st.booleans())
    out = []
    for _ in range(n):
        out.append(draw(z_powers) if use_z else draw(nontrivial_affine))
        use_z = not use_z
    return normalize(out)


@st.composite
def tower_words(draw, letters=2, max_f=2, max_base=4):
    """Unreduced words over the first `letters` stable letters."""
    nf = draw(st.integers(0, max_f)) if letters else 0
    parts = [draw(fp_words(max_len=max_base)) for _ in range(nf + 1)]
    lets = [(draw(st.integers(1, letters)), draw(st.sampled_from((1, -1)))) for _ in range(nf)]
    return Word(tuple(parts), tuple(lets))


def Q(x):
    return Fraction(x)


@pytest.fixture
def empty():
    return TowerState()


@pytest.fixture
def one_letter():
    s = TowerState()
    ensure_letter(s, s.parse("z^-1 t z"))
    return s


@pytest.fixture
def primed():
    s = TowerState()
    verifier.prime_tower(s)
    return s


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
