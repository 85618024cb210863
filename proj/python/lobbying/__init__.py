"""Solver and simulator for the government-vs-interest-groups lobbying game."""

from ._lobbying import *  # noqa: F401,F403
from ._lobbying import __version__  # noqa: F401


def segments(*rows):
    """Segments from (mass, pi, alpha) or (mass, pi, alpha, z, beta) tuples."""
    return [Segment(r[0], LawProfile(*r[1:])) for r in rows]  # noqa: F405


def roster(pis, alpha):
    """Roster groups 1..n with common alpha."""
    return [Group(i + 1, LawProfile(pi, alpha)) for i, pi in enumerate(pis)]  # noqa: F405
