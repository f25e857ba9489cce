"""Free monoids in monoidal categories, computed by coequalizer chains.

Pick a backend (finite sets, spans over a vertex set, finite groups), point
an object, and `run_chain` computes the stage quotients whose colimit is the
free monoid: word monoids, free categories, abelianizations.
"""

from .engine import (ActionObject, ChainResult, LawReport, MonoidObject,
                     MonoidTruncation, PointedObject, StageQuotient,
                     UniversalReport, action, alg_free_condition, chains_agree,
                     connecting, dubuc_chain, extend_chain, insertion, monoid,
                     monoid_laws, run_chain, stable_monoid, stage, stage_mult,
                     truncation, universal_map)
from .fingrp import FinGrpBackend, TableGroup, abelianize, group_by_name, pointed_group
from .finset import FinSetBackend, free_monoid_on_set, pointed_set
from .kernel import (Backend, Capabilities, CapabilityError, Coproduct,
                     KernelError, Morphism, NotComposable, NotInduced,
                     NotInvertible, NotParallel, Object, RegularEpi,
                     ValidationError, coequalizer, cointersect, compose,
                     coproduct, copair, equal_mor, identity, identity_epi,
                     induce, inverse, is_iso, joint_coequalizer, morphism,
                     power_iso, power_mor, power_obj, pushout, tensor_mor,
                     tensor_obj)
from .span import SpanBackend, free_category, pointed_graph

__version__ = "0.1.0"
