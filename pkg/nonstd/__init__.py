"""
nonstd: executable non-standard analysis.

Limits, continuity, derivatives, series and Riemann integrals checked two
ways: through a computable field with infinitesimals, and through certified
epsilon-delta interval verification.
"""

__version__ = "1.0.0"
