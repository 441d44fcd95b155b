"""Shared helpers: independent oracles used across the test suite."""

from fractions import Fraction

import pytest

from flagke import rootspace as rs

FAMILY_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 3}


def trace_inner(alg: rs.Algebra, x: rs.Weight, y: rs.Weight) -> Fraction:
    """Killing-form pairing via explicit diagonal matrix representatives.

    The dual of a weight v is the diagonal (hermitian) matrix diag(v)/(2c),
    embedded once for su_n and as (D, -D) (plus a zero row for odd
    orthogonal) otherwise; the Killing form is the family multiple of the
    trace form.  Independent of the epsilon-dot shortcut in rootspace.
    """
    c = alg.killing_constant
    xp = x.projected()
    yp = y.projected()
    if alg.family == "A":
        n = alg.ambient_dim
        factor = 2 * Fraction(n)  # B = 2n tr(XY)
        diag_x = [v / (2 * c) for v in xp]
        diag_y = [v / (2 * c) for v in yp]
    else:
        n = alg.rank
        factor = {
            "B": Fraction(2 * n - 1),
            "C": 2 * Fraction(n + 1),
            "D": 2 * Fraction(n - 1),
        }[alg.family]
        diag_x = [v / (2 * c) for v in xp] + [-v / (2 * c) for v in xp]
        diag_y = [v / (2 * c) for v in yp] + [-v / (2 * c) for v in yp]
        if alg.family == "B":
            diag_x.append(Fraction(0))
            diag_y.append(Fraction(0))
    return factor * sum(a * b for a, b in zip(diag_x, diag_y))


def all_diagrams(family: str, rank: int):
    """Every painting of the given diagram, all-white included."""
    from flagke import painted as pd

    alg = rs.Algebra(family, rank)
    for bits in range(1 << rank):
        black = frozenset(i + 1 for i in range(rank) if bits >> i & 1)
        yield pd.PaintedDiagram(alg, black)


@pytest.fixture
def a11_diagram():
    from flagke import diagram

    return diagram("A", 11, {3, 6})
