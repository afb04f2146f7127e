"""Triply graded Khovanov-Rozansky homology of braid closures.

Every function takes the strand count n and a braid word as a list of
nonzero integers (i for sigma_i, -i for its inverse) and returns plain
Python data matching the JSON output of the khr command-line tool.
"""

from ._khr import (
    CONVENTION_VERSION,
    hhh,
    homfly,
    resolve_max_degree,
    rouquier,
    suite_names,
    verify,
)

__all__ = [
    "CONVENTION_VERSION",
    "hhh",
    "homfly",
    "resolve_max_degree",
    "rouquier",
    "suite_names",
    "verify",
]
