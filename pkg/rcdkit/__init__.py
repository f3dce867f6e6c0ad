"""rcdkit - exact analysis of probability kernels and regular conditional distributions."""

__version__ = "0.1.0"
