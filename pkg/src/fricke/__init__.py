"""Exact q-expansion arithmetic for Fricke-group Hauptmoduls, Kohnen
plus-space forms of weight 1/2 and 3/2, Hurwitz class numbers, traces of
singular moduli, and the Borcherds product identities relating them."""

from .errors import (
    BadDiscriminant,
    DomainError,
    FractionalExponent,
    FrickeError,
    LinearAlgebraFailure,
    LowerHalfPlane,
    NonIntegralResult,
    NoSuchIndex,
    RoundingTooLarge,
    UnsupportedLevel,
    UnsupportedWeight,
    ZeroSeries,
)
from .forms import EtaQuotientSpec, delta, eisenstein, eta_quotient, j_function, theta
from .hauptmodul import (
    SUPPORTED_LEVELS,
    FaberPoly,
    HauptmodulSpec,
    check_composition,
    check_compression,
    faber,
    faber_expansion,
    hauptmodul_expand,
    hecke_T,
    replicate,
)
from .plusspace import (
    PlusForm,
    build_fd,
    build_gD,
    cohen_bracket,
    duality_check,
    hecke_half_integral,
    v_transport,
)
from .product import (
    ProductCertificate,
    a_star,
    a_star_table,
    product_side,
    recursion_A_from_c,
    recursion_c_from_A,
    trace_J,
    trace_side,
    verify_theorem,
)
from .quadforms import (
    BinaryQF,
    ClassList,
    class_number_H,
    classes_level,
    is_heegner,
    reduce_gamma,
    reduced_forms,
)
from .series import (
    QSeries,
    add,
    derivative,
    exp_series,
    inv,
    log_series,
    mul,
    pow_int,
    scale_exponents,
    u_operator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
