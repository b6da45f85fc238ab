"""Flow polytopes of bipartite extension graphs: DKK cliques, clique vectors,
matchings of the whiskered graph, framing-lattice covers and Ehrhart data."""

from .cliques import (
    CliqueVector,
    enumerate_clique_vectors,
    enumerate_maximal_cliques_oracle,
    make_vector,
    phi,
    phi_inverse,
    validate_clique_vector,
)
from .ehrhart import (
    count_lattice_points,
    ehrhart_polynomial,
    half_open_locate,
    hstar_via_covers,
    hstar_via_ehrhart,
    unimodularity_check,
)
from .graphs import (
    BipartiteGraph,
    GraphError,
    SimpleGraph,
    corona,
    corpus_graph,
    dimension,
    extend,
    parse_bipartite,
    whisker,
)
from .lattice import build_lattice, cover_count, covers, covers_oracle, upper_covers
from .matchings import enumerate_matchings, matching_polynomial, psi, psi_inverse
from .polynomial import Polynomial
from .routes import Route, coherence_graph, conflict, cw_cmp, enumerate_routes, framing_less
from .verify import verify_all

__version__ = "0.1.0"
