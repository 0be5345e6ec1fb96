"""Covering theorems on finite metric spaces, computed exactly.

Distances and radii are :class:`fractions.Fraction`; ball membership never
touches floating point.  See the submodules for the individual tools:
:mod:`~besicover.metric`, :mod:`~besicover.nets`, :mod:`~besicover.doubling`,
:mod:`~besicover.covering`, :mod:`~besicover.besicovitch` and
:mod:`~besicover.gallery`.
"""

from importlib.metadata import PackageNotFoundError, version

from .besicovitch import (BesicovitchReport, OverlapReport, besicovitch_constant, bilipschitz_compare,
                          intersecting_family_check, is_besicovitch_family, max_overlap)
from .covering import (BesicovitchCover, CoverResult, GenerationBucket, besicovitch_cover,
                       disjoint_rearrangement, equal_radius_cover, find_inner_ball, localized_cover,
                       ultrametric_greedy_disjoint_cover)
from .doubling import (DoublingReport, doubling_constant, doubling_number, maximal_net_cover,
                       packing_bound_check, scaled_cover)
from .errors import (BesicoverError, BoundViolated, CoverIncomplete, NotAMetric, NotUltrametric,
                     PreconditionViolated, RadiusOutOfRange, SpaceParseError, UnknownCase)
from .exact import as_rational, ceil_neg_log2
from .gallery import GalleryReport, run_case
from .generators import (make_grid_square, make_lattice, make_paper_ultrametric, make_random_ultrametric,
                         make_zero_one, parse_gen)
from .metric import (Ball, BallFamily, FiniteMetricSpace, Kind, critical_radii, has_approx_midpoint,
                     is_ultrametric, validate_metric)
from .nets import Net, greedy_maximal_net, net_ball_duality, verify_net
from .spaceio import dumps_space, load_space, loads_space, save_space

try:
    __version__ = version("besicover")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_") and name not in {"version", "PackageNotFoundError"}]
