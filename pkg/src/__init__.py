"""Left-invariant sub-Riemannian Engel structures: frames, families, flows, conjugate times."""

__version__ = "0.1.0"
SPEC_VERSION = "1.0"
