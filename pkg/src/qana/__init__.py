"""qana: an interactive quantum-computing teaching environment.

A dense statevector simulator with Bloch-sphere introspection, a small
circuit description language, desk-scale algorithm demos (Grover, Shor,
QFT, eavesdrop detection) next to their classical baselines, and a
lesson catalog served over a CLI and an HTTP API.
"""

__version__ = "0.1.0"
