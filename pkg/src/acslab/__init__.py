"""Approximate-adder ACS workbench.

Plug approximate adders into the add-compare-select recursion of Viterbi
decoders (channel decoding and HMM tagging), measure end-to-end accuracy,
join with per-adder hardware cost records and explore the
accuracy/area/power design space.
"""

__version__ = "0.1.0"

from .adders import (AdderModel, ErrorReport, builtin_from_spec, error_metrics,
                     exact_adder, load_netlist, make_parametric)
from .dse import (CostRecord, DesignPoint, filter_budget, join_points,
                  load_accuracy, load_costs, pareto_front, savings_report)
from .huffman import HuffmanCodebook, huffman_build
from .pipeline import BerResult, PipelineConfig, ber_sweep, run_pipeline
from .pos import HmmModel, QuantizedHmm, accuracy, float_viterbi, quantize_hmm, tag
from .viterbi import ConvCode, Trellis, conv_encode, viterbi_decode

__all__ = [
    "AdderModel", "BerResult", "ConvCode", "CostRecord", "DesignPoint",
    "ErrorReport", "HmmModel", "HuffmanCodebook", "PipelineConfig",
    "QuantizedHmm", "Trellis", "accuracy", "ber_sweep", "builtin_from_spec",
    "conv_encode", "error_metrics", "exact_adder", "filter_budget",
    "float_viterbi", "huffman_build", "join_points", "load_accuracy",
    "load_costs", "load_netlist", "make_parametric", "pareto_front",
    "quantize_hmm", "run_pipeline", "savings_report", "tag", "viterbi_decode",
]
