"""Exact-arithmetic workbench for diagrammatic hom-spaces, trace
characters, Gram radicals and their quotient algebras."""

__version__ = "0.1.0"

from .diagram import (Diagram, LinCombo, Signature, SignatureError,
                      WiringError, format_diagram, parse_diagram)
from .spans import (EnumerationBudgetError, SpanningSet, enumerate_brauer,
                    enumerate_cobordism, enumerate_generic,
                    enumerate_partition, enumerate_permutations)
from .models import (Model, ModelError, direct_sum, endo_model,
                     evaluate_closed, frobenius_model, group_algebra_model,
                     load_model, orth_model, realize, realize_combo,
                     realized_rank, save_model, sep_algebra_model,
                     symp_model, tensor_product, wreath_bar_model)
from .characters import (Character, CharacterError, ConsistencyError,
                         char_add, char_closed_form, char_from_model,
                         char_mul, char_scale, interpolate_family)
from .gram import (GramError, GramReport, analyze, gram_matrix,
                   gram_rank_at, hom_dim, pair_diagrams)
from .endalg import (EndalgError, QuotientAlgebra, algebra_coords,
                     check_associativity, coords_product,
                     generic_specializations, is_semisimple,
                     nilpotent_trace_check, quotient_algebra, simple_count)
from .goodness import (GoodnessReport, RationalSeriesFit, check_goodness,
                       check_loyal, fit_rational, trace_series)
from .presets import (PRESET_NAMES, PresetBundle, PresetError,
                      check_agreement, dvr_character, preset,
                      sample_closed_diagrams, wreath_bar)

__all__ = [
    "__version__",
    "Diagram", "LinCombo", "Signature", "SignatureError", "WiringError",
    "format_diagram", "parse_diagram",
    "EnumerationBudgetError", "SpanningSet", "enumerate_brauer",
    "enumerate_cobordism", "enumerate_generic", "enumerate_partition",
    "enumerate_permutations",
    "Model", "ModelError", "direct_sum", "endo_model", "evaluate_closed",
    "frobenius_model", "group_algebra_model", "load_model", "orth_model",
    "realize", "realize_combo", "realized_rank", "save_model",
    "sep_algebra_model", "symp_model", "tensor_product", "wreath_bar_model",
    "Character", "CharacterError", "ConsistencyError", "char_add",
    "char_closed_form", "char_from_model", "char_mul", "char_scale",
    "interpolate_family",
    "GramError", "GramReport", "analyze", "gram_matrix", "gram_rank_at",
    "hom_dim", "pair_diagrams",
    "EndalgError", "QuotientAlgebra", "algebra_coords",
    "check_associativity", "coords_product", "generic_specializations",
    "is_semisimple", "nilpotent_trace_check", "quotient_algebra",
    "simple_count",
    "GoodnessReport", "RationalSeriesFit", "check_goodness", "check_loyal",
    "fit_rational", "trace_series",
    "PRESET_NAMES", "PresetBundle", "PresetError", "check_agreement",
    "dvr_character", "preset", "sample_closed_diagrams", "wreath_bar",
]
