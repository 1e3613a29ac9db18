"""Local cohomology and chromatic localization of BP_*-modules.

Symbolic computation of H^*_{I_{n+1}} and Cech cohomology (the derived
functors T_n^* and L_n^*) on finite sums of cyclic chromatic modules, with a
Koszul-complex oracle, the chromatic-resolution route, and E_2-page
bookkeeping for the localization spectral sequence.
"""

from .chromatic import (CanonicalMap, ChromaticResolution, apply_Ln,
                        build_chromatic_resolution, chromatic_route_derived_L)
from .cohomology import (CohomologyTable, cech_cohomology, derived_L,
                         derived_T, local_cohomology,
                         local_cohomology_closed_form,
                         local_cohomology_iterative)
from .errors import (AmbiguousExtension, BPLocalError, ExpressionError,
                     NonFiniteDegreewise, NonZeroComposite, NoStabilization,
                     NotCollapsed, TruncationExceeded, UnsupportedModule)
from .expr import parse_expression
from .grading import (ExponentConstraint, ExponentRange, IdealSpec,
                      RingDescriptor, generator_degree, monomials_of_degree)
from .koszul import (KoszulDescriptor, colim_stabilize, compare_with_symbolic,
                     dual_koszul_tensor, ext_group, snf_cohomology)
from .modules import (CCM, INF, ModuleSum, PerDegreeGroup, direct_sum,
                      local_cokernel, localize, per_degree_evaluate, render,
                      suspend, torsion_part)
from .spectral import (AbutmentReport, E2Page, abutment_report, assemble_E2,
                       detect_collapse)

__version__ = "0.1.0"
