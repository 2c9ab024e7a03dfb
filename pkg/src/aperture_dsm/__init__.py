"""Direct sampling imaging of small objects from limited-aperture bistatic data."""
from .errors import *  # noqa: F401,F403
from .forward import (
    MaskedMeasurementMatrix,
    ObjectSet,
    Scatterer,
    contrast,
    disk_scattered_field,
    matrix_modulus,
    point_scattered_field,
    synthesize,
)
from .geometry import (
    EPS_0,
    MU_0,
    IndexSets,
    MeasurementConfig,
    index_sets,
    measured_mask,
    receiver_position,
    transmitter_position,
)
from .indicator import (
    ImagingGrid,
    IndicatorMap,
    f_dsm,
    f_msm,
    image,
    inner_l2,
    local_maxima,
    test_vector_rx,
    test_vector_tx,
)
from .presets import fresnel_2diel, get_preset
from .structure import (
    SeriesTruncation,
    StructureEvaluation,
    disturb_e1,
    disturb_e2,
    f1_f2_profile,
    jacobi_anger_discrete,
    lambda_gamma,
    phi_psi,
    structure_vs_direct,
)

__version__ = "0.1.0"
