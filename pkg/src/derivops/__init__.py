"""Derived operations on polynomial algebras with derivations, and their standard identities."""
from .bounds import BoundResult, bound_fd, bound_fg, bound_rc
from .catalog import CatalogEntry, catalog_list, get_entry, rc_weight_identity_check
from .derived import (DerivedOperation, OperationOrders, apply, bivector_bracket,
                      leibniz_expand_product_rule, opposite, orders, rankin_cohen)
from .diffops import (Derivation, DiffOperator, apply_operator, apply_word,
                      binomial_in_operator, derivation_commutator, derive)
from .identities import (Limits, Mode, Sampler, Side, Verdict, VerificationReport,
                         jacobiator, kary_standard, leibnizator, search_min_degree,
                         standard_left_dp, standard_left_naive, standard_right, verify)
from .parsing import PolynomialSyntaxError, parse_polynomial
from .poly import AlgebraContext, Polynomial, poly_add, poly_mul, weight_of

__version__ = "0.1.0"
