"""Sweep random concepts and compare tableau verdicts with the finite-model oracle.

    python3 scripts/random_agreement.py --count 2000 --seed 1 --gcis
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import random_concept, random_role_axioms  # noqa: E402
from sdl.errors import UnsupportedFeature  # noqa: E402
from sdl.logic import role_axioms, role_closure, to_gcis  # noqa: E402
from sdl.model import SubClassOf  # noqa: E402
from sdl.oracle import find_model  # noqa: E402
from sdl.syntax import render_concept  # noqa: E402
from sdl.tableau import satisfiable  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--domain", type=int, default=3, help="largest oracle domain")
    ap.add_argument("--gcis", action="store_true", help="add one random GCI per case")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    checked = skipped = unsat = larger = 0
    bad = []
    start = time.perf_counter()
    while checked < args.count:
        c = random_concept(rng, args.depth)
        axs = random_role_axioms(rng)
        if args.gcis:
            axs.append(SubClassOf(random_concept(rng, 1), random_concept(rng, 2)))
        rbox = role_closure(role_axioms(axs), extra_roles={"r", "s"})
        try:
            res = satisfiable(to_gcis(axs), rbox, c)
        except UnsupportedFeature:
            skipped += 1
            continue
        model = find_model(axs, c, args.domain)
        checked += 1
        unsat += not res.satisfiable
        if model is not None and not res.satisfiable:
            bad.append(render_concept(c))
            print("DISAGREE", render_concept(c), axs)
        elif model is None and res.satisfiable:
            larger += 1  # models exist only beyond the oracle's bound
    elapsed = time.perf_counter() - start
    print(f"checked={checked} unsat={unsat} skipped={skipped} "
          f"sat-beyond-bound={larger} disagreements={len(bad)} time={elapsed:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
