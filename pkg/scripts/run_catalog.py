"""Validate every catalog instance and print a one-line summary for each.

    python3 scripts/run_catalog.py
"""
import time

from postgroupoid.bracoid import bracoid_from_post, validate_bracoid
from postgroupoid.catalog import catalog
from postgroupoid.constructions import grossman_larson
from postgroupoid.core import validate_groupoid
from postgroupoid.post_groupoid import validate_post_groupoid
from postgroupoid.rota_baxter import identity_rb, matched_pair_from_rb, validate_matched_pair
from postgroupoid.yang_baxter import solution_from_post_groupoid, verify_nondegenerate, verify_ybe


def flag(rep):
    return "ok" if rep.ok else "fail"


def main():
    bad = 0
    for name, inst in catalog().items():
        t0 = time.perf_counter()
        p = inst.post_groupoid()
        ybe = verify_ybe(solution_from_post_groupoid(p))
        reps = {
            "post": validate_post_groupoid(p),
            "gl": validate_groupoid(grossman_larson(p)),
            "ybe": ybe,
            "nondeg": verify_nondegenerate(solution_from_post_groupoid(p)),
            "matched": validate_matched_pair(matched_pair_from_rb(identity_rb(p))),
            "bracoid": validate_bracoid(bracoid_from_post(p)),
        }
        bad += sum(not r.ok for r in reps.values())
        cols = " ".join(f"{k}={flag(r)}" for k, r in reps.items())
        print(f"{name:10} arrows={p.n:3} triples={ybe.info.get('triples', '?'):4} {cols} "
              f"({time.perf_counter() - t0:.3f} s)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
