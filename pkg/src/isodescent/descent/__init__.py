"""Descent machinery: homogeneous spaces, local solvability, Selmer groups, search, reports."""
