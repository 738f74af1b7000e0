"""Computational paths: term rewriting, lambda paths, surface groups and proof scripts."""
from .engine import (FuelExhausted, Redex, RewriteStep, RewriteTrace, contract_once,
                     find_redexes, normalize, rw_equal)
from .rules import RULES, RewriteRule, get_rule, sub_left, sub_right
from .terms import (Atom, Mu, Nu, PathTerm, Rho, Sigma, SubL, SubR, Tau, Xi,
                    format_path_term, parse_path_term, replace_at, subterm_at)

__version__ = "0.1.0"
