"""
BRIDGEcheck - spectral diagnostics for frequency-biased graph sparsification.
"""

__version__ = "1.0.0"
