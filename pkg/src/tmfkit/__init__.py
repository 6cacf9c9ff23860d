"""Exact arithmetic for level-one modular forms, tmf-image divisibility
certificates, Weierstrass formal group laws, and presented E2-page bookkeeping.
"""

__version__ = "0.1.0"
