"""rtlab: exact thresholds, counts, and certificates for edge colorings in
which no k-clique may carry s or more distinct colors."""

__version__ = "0.1.0"

from .exactnum import PowerProduct, Rational, least_integer_greater, pp_compare, pp_floor
from .graphs import Graph, complete, complete_multipartite, parse_graph6, turan_graph, \
    write_graph6
from .thresholds import emit_tables, r0, r1, threshold_report, turan_ex

__all__ = [
    "__version__",
    "PowerProduct", "Rational", "least_integer_greater", "pp_compare", "pp_floor",
    "Graph", "complete", "complete_multipartite", "parse_graph6", "turan_graph",
    "write_graph6",
    "emit_tables", "r0", "r1", "threshold_report", "turan_ex",
]
