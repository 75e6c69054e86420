"""Cross resolvable designs and the multi-access coded caching scheme they carry."""

from .baselines import ManPoint, SpeStructural, man_point, spe_structural
from .caps import DEFAULT_CAPS, SizeCaps
from .constructions import (
    affine_geometry_bibd,
    affine_plane,
    catalog_example,
    from_spec,
    hadamard_crd,
)
from .designs import (
    CrdProfile,
    Design,
    Resolution,
    crd_profile,
    cross_intersection_number,
    design_to_json,
    resolution_from_json,
    users_per_cache_subfile,
    users_per_subfile,
    validate_design,
    validate_resolution,
)
from .errors import CrdCacheError
from .gf import GF
from .scheme import (
    DeliverySchedule,
    SchemeInstance,
    SchemeMetrics,
    build_delivery_schedule,
    build_scheme,
    coding_gain,
    delivery_rate,
    enumerate_users,
    per_user_rate_ratio,
    placement,
    scheme_metrics,
    schedule_to_json,
    subpacketization_from_counts,
    user_memory_fraction,
)
from .simulator import (
    FileStore,
    SimulationReport,
    decode_user,
    encode_payloads,
    make_file_store,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "CrdCacheError",
    "CrdProfile",
    "DEFAULT_CAPS",
    "DeliverySchedule",
    "Design",
    "FileStore",
    "GF",
    "ManPoint",
    "Resolution",
    "SchemeInstance",
    "SchemeMetrics",
    "SimulationReport",
    "SizeCaps",
    "SpeStructural",
    "affine_geometry_bibd",
    "affine_plane",
    "build_delivery_schedule",
    "build_scheme",
    "catalog_example",
    "coding_gain",
    "crd_profile",
    "cross_intersection_number",
    "decode_user",
    "delivery_rate",
    "design_to_json",
    "encode_payloads",
    "enumerate_users",
    "from_spec",
    "hadamard_crd",
    "make_file_store",
    "man_point",
    "per_user_rate_ratio",
    "placement",
    "resolution_from_json",
    "schedule_to_json",
    "scheme_metrics",
    "spe_structural",
    "subpacketization_from_counts",
    "user_memory_fraction",
    "users_per_cache_subfile",
    "users_per_subfile",
    "validate_design",
    "validate_resolution",
    "verify_all",
]
