"""Exact-arithmetic tensor engine for almost paracomplex pseudo-Riemannian
structures on Lie groups: twin metrics, Levi-Civita connections, the
Staikova-Gribachev classification, curvature, and the twin-interchange
invariants, all over exact rationals."""

__version__ = "0.1.0"
