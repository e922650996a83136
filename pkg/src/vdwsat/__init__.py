"""SAT-based computation and verification of van der Waerden numbers w(2;3,t)
and their palindromic variants."""

__version__ = "0.1.0"
