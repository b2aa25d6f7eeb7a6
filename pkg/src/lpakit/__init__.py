"""Exact computations with Leavitt path algebras of finite graphs."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fields import QQ, GF, FieldSpec, Polynomial, parse_field  # noqa: E402
from .graph import (  # noqa: E402
    Edge,
    Graph,
    Path,
    eliminate_sources,
    full_closure,
    is_hereditary,
    is_saturated,
    quotient,
    restriction,
    saturated_closure,
    sink_source_free_core,
    sinks,
    sources,
)
from .algebra import AlgebraElement, Monomial, normal_form  # noqa: E402
from .structure import Cycle, enumerate_cycles, recollement_triple, stratify  # noqa: E402
from .simples import matrix_decomposition, simple_census  # noqa: E402
from .graphio import fixture, load_graph, parse_graph, serialize_graph  # noqa: E402
