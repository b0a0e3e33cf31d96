"""Regenerate tests/data/genericity_corpus.json.

Twenty planar fields of degree 2 with no constant terms and nonzero integer
coefficients in [-9, 9] on x, y, x^2, xy and y^2, drawn from a fixed seed.
Candidates are drawn in order and a candidate with a rational Darboux
polynomial of degree <= 3 is set aside, with its witness, under "excluded".
The file is committed; this script only documents how it was produced.
"""

import argparse
import json
import random
import time
from pathlib import Path

MONOMIALS = ("x", "y", "x^2", "x*y", "y^2")
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "genericity_corpus.json"


def component(rng):
    terms = []
    for m in MONOMIALS:
        c = rng.choice([k for k in range(-9, 10) if k != 0])
        terms.append(f"{c}*{m}")
    return " + ".join(terms).replace("+ -", "- ")


def candidates(seed=2024):
    rng = random.Random(seed)
    while True:
        yield {"vars": ["x", "y"], "components": [component(rng), component(rng)]}


def main():
    from vfcert import VectorField, darboux_search

    argparse.ArgumentParser(description=__doc__).parse_args()
    fields, excluded = [], []
    for i, data in enumerate(candidates()):
        t = time.perf_counter()
        r = darboux_search(VectorField.from_json(data), 3)
        print(f"candidate {i:2d}: {r.status} found={len(r.found)} {time.perf_counter() - t:.2f}s")
        if r.status != "COMPLETE":
            raise SystemExit(f"candidate {i} did not complete")
        if r.found:
            excluded.append(dict(data, candidate=i, witnesses=[{"g": str(p.g), "h": str(p.h)} for p in r.found]))
        else:
            fields.append(data)
        if len(fields) == 20:
            break
    doc = {"seed": 2024, "D": 3, "fields": fields, "excluded": excluded}
    OUT.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {OUT}: {len(fields)} fields, {len(excluded)} excluded")


if __name__ == "__main__":
    main()
