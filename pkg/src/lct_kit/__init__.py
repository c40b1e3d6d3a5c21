"""Exact log canonical thresholds and related invariants of monomial ideals."""
