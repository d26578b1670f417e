"""
cvnn-cost: Metered Complex-Valued Neural Networks
Counts every real multiplication six CVNN architectures execute and checks the
counts against their closed-form cost model
"""

__version__ = "0.1.0"
