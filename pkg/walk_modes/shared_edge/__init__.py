"""Shared-edge walk mode: two cycles with one common cell."""
