# Jobs Module
# 배치 작업
#
# 사용 가능한 작업:
# - reproduce_figures: 속도 곡선 / c*-λ₁ 곡선 CSV 일괄 생성
#
# 실행 방법:
#   python -m jobs.reproduce_figures

__all__ = [
    "reproduce_figures",
]
