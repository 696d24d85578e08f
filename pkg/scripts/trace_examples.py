"""Print the intermediate arrays of the worked examples.

    python scripts/trace_examples.py [pd-sort|pd-isa|pd-discard|pq|dc3|dc7 ...]
"""
import sys

from diasaca.common import Trace
from diasaca.dcx import dc3, dc7
from diasaca.pd import pd_discarding, pd_isa, pd_quadrupling, pd_sorting

RUNS = {
    "pd-sort": (pd_sorting, "bdacbdacb"),
    "pd-isa": (pd_isa, "bdacbdacb"),
    "pd-discard": (pd_discarding, "bdacbdacb"),
    "pq": (pd_quadrupling, "bdacbdacb"),
    "dc3": (dc3, "dbacbacbd"),
    "dc7": (dc7, "dbacbacbd"),
}


def main(names):
    for name in names or RUNS:
        f, text = RUNS[name]
        tr = Trace()
        f(text, trace=tr)
        print(f"# {name} on {text}")
        tr.write(sys.stdout)
        print()


if __name__ == "__main__":
    main(sys.argv[1:])
