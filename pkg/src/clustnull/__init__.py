"""clustnull: cluster-validity diagnostics against matched null baselines.

Classical and spherical K-means with pinned deterministic behavior,
model-selection metrics (silhouette, SSE/elbow, adjusted Rand index,
initialization stability), synthetic null/positive-control generators,
and PCA-based diagnostic plots.
"""

from .datagen import (
    DataMatrix,
    MixtureSpec,
    default_multimodal_spec,
    gen_correlated_gaussian,
    gen_cytometer,
    gen_multimodal,
    gen_random,
    gen_unimodal_gaussian,
)
from .errors import ClustnullError, InvalidArgumentError, NumericFailureError
from .kmeans import (
    CentroidModel,
    ClusteringResult,
    Partition,
    kmeans_fit,
    kmeanspp_init,
    lloyd,
)
from .metrics import (
    KSweepReport,
    SilhouetteBreakdown,
    StabilityReport,
    SweepConfig,
    ari,
    elbow_k,
    k_sweep,
    silhouette,
    sse,
    stability,
)
from .pca import PcaModel, Projection, pca_fit, pca_project
from .preprocess import StandardizationModel, load_csv, normalize_rows, standardize
from .rng import RngStream, mvn_sample
from .skmeans import skmeans_fit, spherical_assign, spherical_update

__version__ = "0.1.0"

__all__ = [
    "CentroidModel",
    "ClusteringResult",
    "ClustnullError",
    "DataMatrix",
    "InvalidArgumentError",
    "KSweepReport",
    "MixtureSpec",
    "NumericFailureError",
    "Partition",
    "PcaModel",
    "Projection",
    "RngStream",
    "SilhouetteBreakdown",
    "StabilityReport",
    "StandardizationModel",
    "SweepConfig",
    "ari",
    "default_multimodal_spec",
    "elbow_k",
    "gen_correlated_gaussian",
    "gen_cytometer",
    "gen_multimodal",
    "gen_random",
    "gen_unimodal_gaussian",
    "k_sweep",
    "kmeans_fit",
    "kmeanspp_init",
    "lloyd",
    "load_csv",
    "mvn_sample",
    "normalize_rows",
    "pca_fit",
    "pca_project",
    "silhouette",
    "skmeans_fit",
    "spherical_assign",
    "spherical_update",
    "sse",
    "stability",
    "standardize",
]
