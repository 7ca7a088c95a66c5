"""Count post-group structures on small groups, optionally against brute force.

    python3 scripts/count_post_groups.py [--check]

``--check`` recounts with the row-factored brute force kept in tests/oracles.py.
"""
import argparse
import os
import sys
import time

from postgroupoid.catalog import point_groups
from postgroupoid.core import bundle_from_group
from postgroupoid.post_groupoid import enumerate_post_structures


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    if args.check:
        sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests"))
        import oracles
    for name, g in point_groups().items():
        t0 = time.perf_counter()
        res = enumerate_post_structures(bundle_from_group(g), [0] * g.n)
        line = f"{name:3} order={g.n} count={res.count} nodes={res.nodes}"
        if args.check:
            line += f" oracle={oracles.post_group_count([list(r) for r in g.mul])}"
        print(f"{line} ({time.perf_counter() - t0:.3f} s)")


if __name__ == "__main__":
    main()
