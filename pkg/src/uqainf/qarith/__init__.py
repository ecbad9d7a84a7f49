"""Exact q-arithmetic in ``v = q^(1/2)``: Laurent polynomials, rational functions,
radical scalars and expression trees with randomized identity testing."""
from .cyclo import bracket_factors, cyclo_product
from .expr import (PRIME, Bracket, Const, DegenerateError, Env, Expr, Prod, Q, SamplingError,
                   Sum, Sym, Verdict, bracket, bracket_mutations, make_domain, pit_equal,
                   qpower_mutations, reached_brackets, reached_qpowers, sym)
from .poly import ONE, V, ZERO, LaurentPoly, cyclotomic, squarefree_int, yun
from .radical import (NegativeRadicandWarning, PoleError, RadicalScalar, eval_numeric,
                      parse_poly, parse_text, qbracket, rad_from_brackets, rad_make,
                      sqrt_poly, squarefree_split, to_text)
from .ratfun import RatFun

__all__ = [
    "PRIME", "Bracket", "Const", "DegenerateError", "Env", "Expr", "Prod", "Q", "SamplingError",
    "Sum", "Sym", "Verdict", "bracket", "bracket_mutations", "make_domain", "pit_equal", "qpower_mutations",
    "reached_brackets", "reached_qpowers", "sym",
    "ONE", "V", "ZERO", "LaurentPoly", "cyclotomic", "squarefree_int", "yun",
    "NegativeRadicandWarning", "PoleError", "RadicalScalar", "eval_numeric", "parse_poly",
    "parse_text", "qbracket", "rad_from_brackets", "rad_make", "sqrt_poly", "squarefree_split",
    "to_text", "RatFun", "bracket_factors", "cyclo_product",
]
