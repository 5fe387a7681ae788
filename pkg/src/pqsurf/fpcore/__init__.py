"""Finitely presented groups: words, coset tables, rewriting, abelian invariants."""
from .words import (Presentation, Word, commutator, cyclic_reduce, free_reduce,
                    inverse, parse_word, format_word)
from .snf import AbelianInvariants, smith_normal_form
from .todd_coxeter import CosetLimitExceeded, CosetTable, todd_coxeter
