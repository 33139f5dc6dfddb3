"""Finite categories, finite 2-categories, quasi-colimits and the quasi-Yoneda maps."""
from .category import (
    BudgetExceeded, CategoryError, FiniteCategory, Functor, NatTrans, functor_candidates,
    hcomp_nat, identity_functor, identity_nat,
)
from .comma import Undecided, cell_mode, comma_truncate
from .equivalence import (
    Equivalence, find_equivalence, find_isomorphism, is_fully_faithful, quasi_inverse,
)
from .presented import Presentation, enumerate_presentation, quotient_by_congruence
from .qcolim import COCONES, QuasiColimit, grothendieck, qcolim
from .twocat import FiniteTwoCategory, TwoDiagram, find_relative_terminal
from .yoneda import (
    Modification, QuasiNat, enumerate_modifications, enumerate_qnats, is_qnat,
    modification_problems, psi, psi_modification, psihat, psihat_morphism, qnat_problems,
    representable_functor, unit_modification,
)
