"""Profile classes of 0/±1 matrices: containment, partial well-order and antichains."""

__version__ = "0.1.0"
