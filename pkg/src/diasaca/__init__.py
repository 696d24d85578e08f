"""Suffix array construction algorithms expressed as dataflow over DIAs."""
from .common import Trace, check_suffix_array, naive_rank_names, oracle_suffix_sort
from .dataflow import DIA, Context, merge, union, zip_dias
from .dcx import DC3, DC7, DifferenceCover, dc3, dc7, dcx
from .pd import pd_discarding, pd_isa, pd_quadrupling, pd_sorting

__all__ = [
    "DIA", "Context", "merge", "union", "zip_dias",
    "Trace", "check_suffix_array", "naive_rank_names", "oracle_suffix_sort",
    "pd_sorting", "pd_isa", "pd_discarding", "pd_quadrupling",
    "DifferenceCover", "DC3", "DC7", "dcx", "dc3", "dc7",
]
