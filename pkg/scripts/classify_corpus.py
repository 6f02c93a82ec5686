"""Classify the bundled corpus and print the taxonomy with timings."""
import argparse
import time

from sdl.classify import classify, unsatisfiable_classes
from sdl.corpus import load_corpus, verify
from sdl.lint import provenance_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    t0 = time.perf_counter()
    kb, entries = load_corpus()
    t1 = time.perf_counter()
    tax = classify(kb)
    t2 = time.perf_counter()
    outcomes = verify(kb, entries)
    t3 = time.perf_counter()

    pf = kb.root.prefixes
    print(tax.to_json(pf) if args.json else tax.to_text(pf))
    print(f"# load {t1 - t0:.2f}s, classify {t2 - t1:.2f}s, manifest {t3 - t2:.2f}s")
    print(f"# classes {len(kb.signature.class_names)}, unsatisfiable {len(unsatisfiable_classes(kb))}, "
          f"manifest {sum(o.ok for o in outcomes)}/{len(outcomes)}")
    print("# sources " + ", ".join(f"{k}={v}" for k, v in provenance_summary(kb).items()))


if __name__ == "__main__":
    main()
