"""Tree-based LDPC codes: construction, structural checks and decoding."""

from .finite_field import FieldSpec, MolsFamily, build_mols, field_add, field_mul, make_field, validate_mols
from .tanner import (
    INFINITE,
    BinaryMatrix,
    NodeLabel,
    TannerGraph,
    degree_profile,
    girth,
    read_alist,
    to_check_matrix,
    write_alist,
)
from .constructions import (
    Family,
    build_type1a,
    build_type1b,
    build_type2_l3,
    build_type2_l3_eg,
    build_type2_l4,
    construct,
    reduce_to_eg,
    type1a_permutations,
)
from .metrics import (
    CodeProfile,
    dmin_exact,
    dmin_search_upper,
    generator_basis,
    gf2_rank,
    low_weight_search,
    profile,
    tree_bound,
)
from .channel import (
    ChannelPoint,
    DecoderConfig,
    build_random_regular,
    channel_llr,
    decode,
    ml_decode,
    run_sweep,
)

__version__ = "0.1.0"
