#!/usr/bin/env python3
"""Survey the graded-identity kernels of the builtin fleet.

For each algebra and every multilinear cell up to a total degree, print the
ambient Lyndon dimension, the kernel dimension, and the kernel polynomials.
A quick way to see where two algebras' identities start to differ.

    python3 scripts/kernel_survey.py --max-total-degree 3
    python3 scripts/kernel_survey.py --algebras sl2_z2 gl2_z2 b2_z2
"""

import argparse

from gradedpi import builtin, identity_kernel, make_field
from gradedpi.dsl import PROFILES
from gradedpi.engine import multilinear_cells

PROFILE_OF_GROUP = {"Z2": "Z2", "Z3": "Z3", "Z2xZ2": "Z2Z2", "Z": "Z"}

DEFAULT_FLEET = ["sl2_z2", "gl2_z2", "b2_z2", "sl2_z3", "m1_z3", "m2_z3",
                 "m_pair_z3", "sl2_z2z2", "n_z2z2"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--algebras", nargs="*", default=DEFAULT_FLEET)
    ap.add_argument("--max-total-degree", type=int, default=3)
    args = ap.parse_args()
    for name in args.algebras:
        ctx = make_field(7 if "z3" in name else 5)
        A = builtin(name, ctx)
        profile_name = PROFILE_OF_GROUP.get(A.group.label)
        if profile_name is None:
            print(f"== {name}: no variable profile for group {A.group.label}, skipped")
            continue
        profile = PROFILES[profile_name]
        print(f"== {name} over {ctx!r} ({A.group.label}-graded)")
        for cell in multilinear_cells(profile, sorted(profile.family_grades),
                                      args.max_total_degree):
            span = identity_kernel(A, cell)
            polys = "; ".join(p.to_text() for p in span.polys(ctx)) or "-"
            print(f"  {{{cell.format()}}}: kernel {span.dim}/{span.ambient_dim}  {polys}")


if __name__ == "__main__":
    main()
