"""Counting rational primes represented by norms of prime ideals of quadratic
fields, restricted to narrow Hecke sectors, short intervals, and residue
classes, together with the Selberg polynomial / smooth window toolkit used to
approximate those counts."""

from .approx import (DefaultParams, PolytopeSpec, SelbergApprox, SmoothWindow,
                     default_params, mellin, selberg_box, selberg_interval,
                     tile, window_eval)
from .bv import BVQuery, BVReport, bv_discrepancy, q_admissible, residue_counts
from .counting import (CountQuery, CountReport, SmoothedSumReport,
                       asymptotic_fit, inclusion_exclusion_identity,
                       sector_prime_sum, smoothed_sum, von_mangoldt_sum)
from .hecke import (AngleVec, HeckeBasis, SectorSpec, angle_of,
                    character_pullback, in_sector, make_basis, sector_polytope)
from .quadfield import (FieldSpec, NarrowClassGroup, PrimeIdealRec,
                        galois_conjugate, make_field, narrow_class_group,
                        primes_over, split_type)
from .util import InvariantError, ResourceLimitError

__version__ = "0.1.0"
