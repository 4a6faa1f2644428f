"""Fast near-s_max construction, s-metric statistics, BA tree simulation and
sliding-window preferential attachment estimation."""

from .degseq import (CumHistogram, DegreeSequence, DomainError, build_phi, erdos_gallai,
                     havel_hakimi, is_graphical, is_graphical_phi, revcdf, tripathi_vijay)
from .extremal import (ConstructionError, NotGraphicalError, WorkingState, bcd, construct,
                       drop, exact_extrema)
from .graph import Graph
from .metrics import (SMetricReport, assortativity, coefficient_of_variation, s_metric,
                      s_min_approx, s_report)

__version__ = "0.1.0"
