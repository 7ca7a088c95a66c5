"""Regenerate tests/golden/*.pgx from the catalog.

    python3 scripts/make_golden.py [outdir]
"""
import os
import sys

from postgroupoid import io
from postgroupoid.bracoid import bracoid_from_post
from postgroupoid.catalog import catalog
from postgroupoid.constructions import grossman_larson_group
from postgroupoid.core import bundle_from_group, cyclic
from postgroupoid.post_groupoid import enumerate_post_structures
from postgroupoid.rota_baxter import identity_rb
from postgroupoid.yang_baxter import solution_from_post_groupoid

HERE = os.path.dirname(os.path.abspath(__file__))


def documents():
    cat = catalog()
    a = cat["z3_on_z3"]
    pa = a.post_groupoid()
    meta = lambda name, comment="": {"name": name, **({"comment": comment} if comment else {})}

    yield "z3_action", io.to_document(io.GroupAction(a.group, a.n_base, a.act),
                                      meta("z3_on_z3", "Z/3 acting on itself by addition"))
    yield "s3_action", io.to_document(io.GroupAction(cat["s3_on_3"].group, 3, cat["s3_on_3"].act),
                                      meta("s3_on_3", "S3 acting on three points"))
    for key, fname in (("z3_on_z3", "z3_post"), ("s3_on_3", "s3_post"), ("z2_on_z2", "z2_post"),
                       ("z4_point", "z4_post"), ("z2_point", "z2_post_point")):
        yield fname, io.to_document(cat[key].post_groupoid(), meta(key))
    for name in ("z2", "z3", "z4", "v4", "s3"):
        g = cat[f"{name}_point"].group
        yield f"{name}_point", io.to_document(io.GroupBundleSpec(bundle_from_group(g)),
                                              meta(f"{name}_point", "one-point bundle"))
    yield "z3_rb", io.to_document(identity_rb(pa), meta("z3_on_z3", "identity operator"))
    yield "z3_bracoid", io.to_document(bracoid_from_post(pa), meta("z3_on_z3"))
    yield "z3_braided", io.to_document(solution_from_post_groupoid(pa), meta("z3_on_z3"))
    yield "z4_to_z2", io.to_document([x % 2 for x in range(4)], meta("mod 2"))

    # a post-group on Z/4 with nontrivial |>, acted on through its own regular action
    g4 = cyclic(4)
    res = enumerate_post_structures(bundle_from_group(g4), [0] * 4)
    pg = next(p for p in res.structures if any(p.tri[x][y] != y for x in range(4) for y in range(4)))
    star = grossman_larson_group(pg)
    yield "z4_post_action", io.to_document(
        io.GroupAction(g4, 4, [list(r) for r in star.mul], pg.tri),
        meta("z4_post_action", "regular action of the Grossman-Larson group"))

    # fixtures for the exit-code contract
    bad = io.to_document(pa, meta("violating", "tri entry [1][5] changed from 2 to 1"))
    bad.payload["tri"][1][5] = 1
    yield "violating", bad
    broken = io.to_document(pa, meta("malformed", "tri entry [1][5] out of range"))
    broken.payload["tri"][1][5] = 9
    yield "malformed", broken


def main(outdir=None):
    outdir = outdir or os.path.join(HERE, "..", "tests", "golden")
    os.makedirs(outdir, exist_ok=True)
    for name, doc in documents():
        path = os.path.join(outdir, name + ".pgx")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(io.emit(doc))
        print(path)


if __name__ == "__main__":
    main(*sys.argv[1:])
