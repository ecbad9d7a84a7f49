"""Exact representations of a q-deformed infinite-rank algebra on C-patterns."""
from .action import (LinComb, OperatorWord, apply_e, apply_f, apply_f_closedform, apply_h,
                     apply_word, gl_H, hat_generator, locality_radius, series_I_partial,
                     weyl_generator)
from .patterns import (CPattern, Signature, WeightValue, depth_requirement, enumerate_basis,
                       highest_weight, make_signature, shift, validate, weight)

__version__ = "0.1.0"
