"""Exact slash and Galois actions on level-N q-expansions, with machine checks of
Shimura's commutation rule (f|g)^sigma = f^sigma | g_lambda."""

from .cyclotomic import CycElement, cyclotomic_polynomial, dft_matrices, galois_apply
from .eisenstein import EisSymbol, eisenstein_qexp
from .levelstruct import LevelStructure, act_g, sigma_twist, verify_commutation
from .modgroup import ResMat, UniMat, g_lambda, reduce_mod, sl2_lift, theorem_target
from .qexpansion import QExpansion, series_galois
from .shimura import FormExpr, expand, form_galois, form_slash, remark_check, verify_theorem

__version__ = "0.1.0"
