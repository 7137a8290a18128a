"""spinor-lab - numerical checks for self/anti-self charge-conjugate spinors."""

__version__ = "0.1.0"
