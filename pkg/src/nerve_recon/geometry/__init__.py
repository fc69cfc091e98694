from src.nerve_recon.geometry.enclosing_ball import (
    EnclosingBall,
    cech_face_test,
    circumscribed_ball,
    min_enclosing_ball,
)
from src.nerve_recon.geometry.metric import (
    Point,
    PointCloud,
    as_cloud,
    as_point,
    distance,
    pairwise_distances,
    proximity_pairs,
)

__all__ = [
    "EnclosingBall",
    "Point",
    "PointCloud",
    "as_cloud",
    "as_point",
    "cech_face_test",
    "circumscribed_ball",
    "distance",
    "min_enclosing_ball",
    "pairwise_distances",
    "proximity_pairs",
]
