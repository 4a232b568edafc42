"""N=4 supersymmetric quantum mechanics: construction and verification workflows for AiiDA."""

__version__ = "0.1.0"
