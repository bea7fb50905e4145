"""Exact computations with Lie algebras carrying Hermitian, locally conformally
Kaehler, Vaisman, Sasaki and Kaehler-algebra structures."""
from .catalog import CatalogEntry, catalog_get, catalog_names, verify
from .constructions import (CentralExtensionData, CentralizedStructure, ClassificationVerdict, ModificationMap,
                            canonical_vaisman, centralize, classify_vaisman, compatible_derivations, delta_sum,
                            kahler_pair, kahler_quotient, modify, modify_pair, quantize, validate_modification)
from .errors import *  # noqa: F401,F403
from .forms import KForm, ce_d, interior, solve_lee_form, solve_primitive, wedge
from .lie import (LieAlgebra, Subspace, center, derived_algebra, direct_sum, is_nilpotent, is_semisimple,
                  is_solvable, is_unimodular, jacobi_defect, killing_form, quotient, series)
from .report import Check, StructureReport
from .structures import (HermitianData, KahlerAlgebraData, SasakiData, check_hermitian, check_kahler_algebra,
                         check_lck, check_sasaki, fundamental_form, is_positive_definite, koszul_form,
                         lee_field, nijenhuis_defect, ricci_form)

__version__ = "0.1.0"
