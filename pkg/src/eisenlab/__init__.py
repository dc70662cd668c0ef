"""eisenlab: arithmetic invariants attached to a pair of primes (N, p).

Computes Merel's number and its power status, the Mazur-Tate zeta element
and its augmentation order, the Z_p-rank / distinguished polynomial /
Newton polygon of the Eisenstein-local cuspidal Hecke algebra, good-prime
generator checks, and a formal Massey-product calculus over finite groups,
with a sweep/statistics/verification harness on top.
"""

__version__ = "0.1.0"

from . import corering, hecke, invariants, massey  # noqa: F401
