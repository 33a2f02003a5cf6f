"""Property testing of equation systems in permutations.

Library layout:

- ``words`` / ``dsl`` / ``presets``: free-group words, the equation
  text format, and named systems;
- ``perms`` / ``localstats``: tuples, metrics, solution spaces, and
  exact local-statistics distributions;
- ``graphs`` / ``partial``: the edge-labelled graph view, expansion,
  and partial-graph machinery with exact inclusion probabilities;
- ``testers``: the sampling testers with query accounting;
- ``transfer``: presentation-change maps and their per-instance bounds;
- ``kernels``: compiled hot loops with a pure-Python fallback.
"""

from .words import (  # noqa: F401
    EquationSystem,
    Letter,
    Word,
    WordSet,
    ball,
    concat,
    invert,
    reduce,
    relators,
    to_inverseless,
    word,
)
from .dsl import parse_system, render  # noqa: F401
from .presets import preset  # noqa: F401
from .perms import (  # noqa: F401
    PermTuple,
    Permutation,
    enumerate_solutions,
    evaluate,
    evaluate_point,
    flexible_distance,
    flexible_nearest_solution,
    hamming,
    is_solution,
    local_defect,
    nearest_solution,
    tuple_distance,
)
from .localstats import (  # noqa: F401
    LocalDistribution,
    local_distribution,
    stab_fragment,
    tv_distance,
)

__version__ = "0.1.0"
