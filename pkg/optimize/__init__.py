# Optimize Module
# 높이 / 질량 예산 아래 λ₁ 최소화 (bang-bang patch)

from .bang_bang import (
    Budget,
    ProfileCandidate,
    brute_force_optimum,
    local_search,
    evaluate,
    is_contiguous,
)

__all__ = [
    "Budget",
    "ProfileCandidate",
    "brute_force_optimum",
    "local_search",
    "evaluate",
    "is_contiguous",
]
