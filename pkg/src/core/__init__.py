"""
FRANEL Core Module
Farey enumeration, totient sieving, compensated summation and the worker pool
"""

from .farey import FareyFraction, brute_force_farey, iter_interior_chunks, rank_of, stream_farey
from .hasher import FileHasher
from .summation import KahanAccumulator, split_bincount
from .totient import TotientTable, farey_interior_count, mobius_sieve, primes_up_to, totient_sieve

__all__ = [
    "FareyFraction",
    "stream_farey",
    "iter_interior_chunks",
    "brute_force_farey",
    "rank_of",
    "TotientTable",
    "totient_sieve",
    "farey_interior_count",
    "primes_up_to",
    "mobius_sieve",
    "KahanAccumulator",
    "split_bincount",
    "FileHasher"
]
