"""Dual-metric building energy engine.

Parses gbXML building models and EPW weather years, then computes annual
heating/cooling loads (single-node lumped-capacitance zones, explicit Euler)
together with embodied energy and water (material takeoff against a
provenance-tracked property store). Comparative runs substitute assembly
definitions on the parsed model and re-run both metrics.
"""

__version__ = "0.1.0"
