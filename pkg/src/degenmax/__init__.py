"""degenmax: randomized search for maximum induced d-degenerate subgraphs.

Core pieces:

* :mod:`degenmax.graph`     -- immutable graphs, degeneracy peeling.
* :mod:`degenmax.constants` -- feasible parameter tuples and the success base.
* :mod:`degenmax.sampler`   -- the randomized rule-dispatch sampler.
* :mod:`degenmax.oracle`    -- brute force, maximal-set census, exact run law.
* :mod:`degenmax.driver`    -- amplified search with per-run RNG streams.
* :mod:`degenmax.graphio`   -- file formats and random-graph generators.
* :mod:`degenmax.service`   -- FastAPI wrapper; the CLI is a thin client of it.
"""

from .constants import Constants, constants_for, defaults, tune
from .driver import SearchReport, estimate_probability, search_max
from .graph import Graph, from_edges, is_degenerate, is_maximal_degenerate
from .oracle import Distribution, brute_force_max, enumerate_maximal, exact_distribution
from .sampler import SampleOutcome, run

__version__ = "0.1.0"

__all__ = [
    "Constants",
    "Distribution",
    "Graph",
    "SampleOutcome",
    "SearchReport",
    "brute_force_max",
    "constants_for",
    "defaults",
    "enumerate_maximal",
    "estimate_probability",
    "exact_distribution",
    "from_edges",
    "is_degenerate",
    "is_maximal_degenerate",
    "run",
    "search_max",
    "tune",
    "__version__",
]
