"""Exact-arithmetic certificates of non-semi-ampleness for nef line bundles
on blown-up quadric surfaces over finite fields, plus the supporting curve,
Jacobian, cohomology, and intersection-lattice toolkits."""

__version__ = "0.1.0"
