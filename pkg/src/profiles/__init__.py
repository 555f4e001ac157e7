"""
Distance profiles and exact matrix profiles.
"""

from .models import NO_NEIGHBOR, DistanceProfile, JoinKind, MatrixProfile
from .distance import distance_profile_mass, distance_profile_naive, sliding_dot_product
from .joins import ab_join, join_arrays, self_join

__all__ = [
    "NO_NEIGHBOR",
    "DistanceProfile",
    "JoinKind",
    "MatrixProfile",
    "distance_profile_mass",
    "distance_profile_naive",
    "sliding_dot_product",
    "ab_join",
    "join_arrays",
    "self_join"
]
