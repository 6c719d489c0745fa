"""Ideal spaces of finite commutative rings.

Rings are given by operation tables (or built from strings such as
``"Z2[x]/(x^2+x+1) x Z3"``); the package enumerates their ideals, topologizes
the proper ideals by the closed subbase ``V(a)``, compares the result with the
Zariski topology on prime ideals, studies polynomial zero sets, and certifies
what ring homomorphisms induce on these spaces.
"""

from .config import DEFAULT_CAPS, Caps
from .errors import (
    DomainError,
    InvalidRingError,
    KSpaceError,
    ResourceLimitError,
    RingSpecError,
    SearchExhaustedError,
    UnsupportedModulusError,
    VerificationError,
)
from .ideals import (
    Ideal,
    IdealFamily,
    enumerate_ideals,
    family,
    generate,
    principal,
    quotient_ring,
    radical,
    spec,
    spi,
    spm,
)
from .morphisms import (
    Certificate,
    MultiplicativeSet,
    RingHom,
    continuity_check,
    density_check,
    find_homomorphisms,
    localization_embedding_check,
    localize,
    pullback,
    quotient_corollary_check,
    surjection_homeo_check,
    universal_property_check,
)
from .poly import Polynomial, annihilators_of, exact_variety_witness, solution_set, table1
from .rings import FiniteRing, make_poly_quotient, make_product, make_zmod
from .ringspec import parse_ring
from .spectra import (
    I,
    V,
    build_kspace,
    build_zariski,
    compare_spaces,
    kspace_suite,
    prop22_suite,
    zariski_suite,
)
from .topology import FiniteSpace

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
