"""Spectra and essential spectra of Hardy-space composition operators
whose symbols have finite, order-2 boundary contact.

The pipeline: build a symbol (rational coefficients or explicit
boundary data), certify the order-2 contact conditions, partition the
boundary contact set by its orbit behavior, and synthesize the spectrum
and essential spectrum in closed form.  A finite-matrix laboratory
independently verifies the annihilation-sum spectral lemmas the
synthesis rests on.
"""

from .config import Tolerances, DEFAULT_TOL
from .errors import (CompspecError, DegenerateMapError, PoleError,
                     InvalidDataError, NotInScopeError, NotCertifiedError,
                     AmbiguousMatchError, RootFindingError)
from .mobius import (MobiusMap, SecondOrderData, compose, evaluate,
                     derivative, second_derivative, fixed_points,
                     halfplane_incarnation, lfm_from_data,
                     is_disk_automorphism, IDENTITY_FIXED, AT_INFINITY)
from .symbol import (RationalSymbol, BoundaryDataSymbol, Symbol,
                     DenjoyWolffRecord, Location, TypeClass, ClarkAtoms,
                     contact_set, contact_points, second_order_data,
                     contact_order_two, denjoy_wolff, classify_type,
                     certify_s2, clark_atoms, essential_norm_sq)
from .dynamics import (Cycle, OrbitPartition, boundary_step, partition,
                       cycle_multiplier, primitive_lead_ins)
from .spectrum import (Disk, Spiral, Points, GeometricTail, SpectralRegion,
                       region, contains, max_modulus, region_equal,
                       SpectrumReport, lft_spectra, rho, rho_star,
                       synthesize, spectral_radius_check,
                       kms2t_essential_union)
from .algebra_lab import (Pattern, AnnihilationFamily, eigenvalues,
                          make_family, check_inclusion_FL, check_union_FLC,
                          check_equality_TA, check_equality_CTA, check_LIP,
                          check_n2c, check_RSM, run_checker,
                          truncated_matrix)

__version__ = "0.1.0"
