"""Toolkit for the computations behind contractible 4-manifold splitting:
surgery-diagram group presentations, a hyperbolic triangle-group
nontriviality certificate, simplicial collapsibility search for spines,
and the free-product pro-isomorphism invariant of factor sequences.
"""

from .words import Word, cyclic_reduce, free_reduce
from .presentations import (Presentation, abelianization, substitute,
                            tietze_apply, verify_homomorphism)
from .links import (LinkDiagram, SurgeryRelator, adjoin_relators,
                    longitude_word, meridian_word, validate_diagram, wirtinger)
from .hyperbolic import (Geodesic, HPoint, Isometry, classify, evaluate_word,
                         is_identity, reflect, rotation, triangle_from_angles,
                         triangle_group_rep)
from .complexes import (CollapseSequence, IdentificationPolygon,
                        SimplicialComplex, elementary_collapse,
                        euler_characteristic, free_faces, is_collapsible,
                        polygon_identification_complex, split_check,
                        verify_collapse_sequence)
from .prosequences import (FactorSequence, FiniteGroup, FreeProduct,
                           FreeProductWord, Ladder, build_ladder,
                           conjugate_into_factor, group_isomorphic,
                           is_admissible_factor, ladder_verify, normal_form,
                           pro_isomorphic, projection)

__version__ = "0.1.0"
