"""acikit: exact computational commutative algebra.

Groebner bases and ideal arithmetic over QQ or Z/p, minimal (bi)graded
free resolutions with Betti tables and regularity, Rees and symmetric
algebra presentations with mapping-cone resolutions, d-sequence and
regularity-of-powers verification, Pfaffian ideal families, and diagonal
subalgebra bounds.
"""

__version__ = "0.1.0"

from .field import QQ, GF32003, CoefficientField
from .order import GREVLEX, LEX, MonomialOrder, mono_cmp
from .ring import Ring, parse_ring_line
from .poly import Polynomial
from .gb import HilbertData, Ideal
from .complexes import (ChainComplex, ChainMap, FreeModule, ModuleMap,
                        buchsbaum_rim, koszul_complex, lift_chain_map,
                        mapping_cone, regrade_complex)
from .resolve import (BettiTable, RegularityReport, Resolution, TorOracle,
                      depth_check, minimal_resolution, presentation_resolution,
                      regularity, resolution_on_generators, tor_oracle)
from .rees import (CompareReport, ConeResolution, ReesData, compare_resolutions,
                   cone_resolution, rees_data, rees_ideal, rees_ring, sym_ideal)
from .seqcheck import (PowersReport, dseq_identities, is_d_sequence,
                       is_regular_sequence, pfaffian_closed_form,
                       powers_formula, powers_formula_value, verify_powers)
from .gallery import (GeneratorSequence, SkewMatrix, aci_grade3_ideal,
                      ci_plus_one, cm_type, hilbert_burch_ideal, pfaffian_aci)
from .diagonal import (DiagonalBounds, DiagonalSpec, aci_family_betti,
                       cm_bound, diagonal_report, koszul_bound,
                       shift_inequality_holds)
