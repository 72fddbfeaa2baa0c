"""Single-cycle walk mode."""
