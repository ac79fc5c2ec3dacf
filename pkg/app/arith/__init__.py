from app.arith.primes import (
    Factorization,
    factorize,
    is_prime,
    squarefree_decomposition,
    valuation,
)
from app.arith.residues import (
    crt,
    generic_element_order,
    is_perfect_square,
    legendre_symbol,
    multiplicative_order,
    rational_square_root,
    sqrt_mod_p,
)
from app.arith.squares import gauss_two_k, is_three_square_exception, three_squares

__all__ = [
    "Factorization",
    "crt",
    "factorize",
    "gauss_two_k",
    "generic_element_order",
    "is_perfect_square",
    "is_prime",
    "is_three_square_exception",
    "legendre_symbol",
    "multiplicative_order",
    "rational_square_root",
    "sqrt_mod_p",
    "squarefree_decomposition",
    "three_squares",
    "valuation",
]
