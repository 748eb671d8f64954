"""Exact arithmetic for reduced Albert algebras, hermitian Jordan triples,
inner-ideal geometry and the Pfister-form invariants f3, f5."""

from .errors import *  # noqa: F401,F403
from .fieldcore import QQ, EtaleAlgebra, FiniteField, RationalField, etale_make, parse_field, square_class
from .octonion import CayleyDicksonAlgebra, ZornAlgebra, composition_law_check, make_octonion
from .albert import AlbertAlgebra, AlbertElement, adjoint, cross, identity_suite, norm, t_bil, trace, u_op
from .idealgeom import is_inner_ideal, psi, psi_table_check
from .hermtriple import HermTriple, embed_kxK, isotropy_witness_search, witness_classify
from .wittforms import AlbertData, EtaleData, TowerField, pfister, tits_index, witt_decompose
from .config import Scenario, load_scenario

__version__ = "0.1.0"
