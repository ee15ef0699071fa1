#!/usr/bin/env python3
"""Scan even positive-definite forms by discriminant for the 2p^2 obstruction.

For every reduced class of each discriminant D up to --max-disc, realize the
charge on the standard blocks and report:

  * whether sqrt(D) is integral (the rationality hypothesis of the pipeline),
  * whether the finite fibration certificate passes (D != 2 * p^2) or is
    obstructed by the exact class (0, +-sigma0, 0).

With p^2 = a, obstruction means D = 2a; among reduced forms that forces
a <= 8/3, so [2, 0, 2] is the only reduced representative that is obstructed.
Non-reduced charge bases of the same class can still be obstructed (for
instance [8, 4, 4] ~ [4, 0, 4] has 2 p^2 = 16 = D), which is why the
certificate is tied to the charge, not to the equivalence class.
"""

import argparse

from k3stab.exact import squarefree_split
from k3stab.forms import enumerate_reduced
from k3stab.scenario import build_scenario
from k3stab.stability import fibration_obstruction


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-disc", type=int, default=64)
    args = parser.parse_args()
    print(f"{'D':>4} {'form':>12} {'sqrtD':>6} {'2p^2':>5}  verdict")
    for disc in range(1, args.max_disc + 1):
        for form in enumerate_reduced(disc):
            sc = build_scenario(form=form.as_list())
            ob = fibration_obstruction(sc.charge, sc.split)
            s, m = squarefree_split(disc)
            sqrt_str = str(s) if m == 1 else f"{s}*sqrt({m})" if s != 1 else f"sqrt({m})"
            verdict = (
                f"obstructed by (0, {'+-sigma0'}, 0)"
                if ob.obstructed
                else f"certificate (residuals {[str(r) for r in ob.residuals]})"
            )
            print(f"{disc:>4} {str(form):>12} {sqrt_str:>6} {2 * ob.p2:>5}  {verdict}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
