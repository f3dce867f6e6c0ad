"""Worked instances used by tests, sanity laws and the sample documents.

States are 0-based.
"""

from fractions import Fraction

from rcdkit.core.measures import Kernel, Measure

_THIRD = Fraction(1, 3)
_HALF = Fraction(1, 2)


def trivial_not_total_kernel() -> Kernel:
    """Idempotent 4x4 kernel satisfying (SR), trivial but not total on its atoms.

    Atoms of sigma(R) are {0}, {1}, {2,3}; row 0 puts no mass on its own atom.
    """
    return Kernel(
        (
            (0, _THIRD, _THIRD, _THIRD),
            (0, 1, 0, 0),
            (0, 0, _HALF, _HALF),
            (0, 0, _HALF, _HALF),
        )
    )


def three_state_block_kernel() -> Kernel:
    """Block-diagonal 3x3 kernel with atoms {0} and {1,2}."""
    return Kernel(
        (
            (1, 0, 0),
            (0, _HALF, _HALF),
            (0, _HALF, _HALF),
        )
    )


def stationary_measure_for_trivial_kernel() -> Measure:
    """The measure (0, 1/3, 1/3, 1/3) under which the 4x4 kernel is an r.c.d."""
    return Measure((0, _THIRD, _THIRD, _THIRD))


def unbalanced_three_state_measure() -> Measure:
    """(1/3, 1/2, 1/6): breaks stationarity of the 3x3 kernel while totality holds."""
    return Measure((_THIRD, _HALF, Fraction(1, 6)))
