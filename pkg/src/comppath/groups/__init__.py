from .abelian import AbelianInvariants, abelian_image, abelianize, smith_diagonal
from .solvers import (UnsupportedPresentation, dehn_reduce, is_trivial, klein_mul,
                      klein_normal_form, klein_oracle_eval, klein_word, parse_surface,
                      reduce_word, relator_rotations, torus_normal_form, torus_word,
                      words_equal)
from .vankampen import (TRIVIAL, commutator, free_presentation, klein_pieces,
                        overlap_presentation, polygon_presentation, surface_presentation,
                        torus_pieces, vankampen_pushout)
from .words import (Presentation, UnknownGenerator, Word, WordSyntaxError, cyclic_reduce,
                    exponent_sums, format_presentation, format_word, free_reduce, inverse,
                    parse_presentation, parse_word, power)
