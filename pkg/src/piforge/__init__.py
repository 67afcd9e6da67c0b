"""piforge: high-precision pi computation and verification.

Exact arithmetic (integers, rationals, surds, Gaussian integers), a
fixed-point real type, the classical and modern pi algorithms, isolated
digit extraction, exact WZ-pair certification, PSLQ relation search, and
a benchmark harness cross-validating everything against a dual-certified
digit reference.
"""

__version__ = "0.1.0"
