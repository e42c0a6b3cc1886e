"""Knot diagrams, low-order Vassiliev invariants, and band calculus."""

__version__ = "0.1.0"

from .diagram import (  # noqa: F401
    DiagramError,
    GaussDiagram,
    PlanarDiagram,
    UNKNOT,
    UnrepresentableDiagramError,
    canonical,
    connected_sum,
    faces,
    gauss_diagram,
    mirror,
    parse_pd,
    reidemeister,
    reidemeister_sites,
    serialize,
    simplify,
    switch_crossing,
    validate,
)
