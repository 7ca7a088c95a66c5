"""``pgx``: validate and transform ``.pgx`` documents.

Exit codes: 0 ok, 1 axiom violations, 2 malformed input or wrong kind.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .bracoid import (bracoid_from_post, bracoid_from_rb, post_from_bracoid, solution_from_bracoid,
                      validate_bracoid)
from .constructions import (from_group_action, from_post_group_action, grossman_larson,
                            grossman_larson_group)
from .core import (InvalidStructure, MalformedInput, TableError, ViolationReport,
                   check_groupoid_homomorphism, check_right_action, validate_group,
                   validate_group_bundle, validate_groupoid)
from .post_groupoid import (check_post_homomorphism, enumerate_post_structures,
                            section_algebra, validate_post_groupoid)
from .rota_baxter import (descendent_groupoid, induced_post_groupoid, matched_pair_from_rb,
                          validate_matched_pair, validate_rb)
from .yang_baxter import (check_braided_homomorphism, solution_from_post_groupoid,
                          solution_from_rb, verify_nondegenerate, verify_ybe)


class WrongKind(Exception):
    pass


class Outcome:
    """Buffered stdout, an optional document to write, and the exit code."""

    def __init__(self):
        self.lines: list[str] = []
        self.notes: list[str] = []
        self.code = 0

    def say(self, line: str) -> None:
        self.lines.append(line)

    def report(self, rep: ViolationReport) -> None:
        self.lines.extend(rep.lines())
        self.notes.extend(rep.notes)
        if not rep.ok:
            self.code = 1


def _expect(doc: io.Document, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise WrongKind(f"expected a document of kind {' or '.join(kinds)}, got {doc.kind}")


def _flag(v: bool) -> str:
    return "true" if v else "false"


def _status(rep: ViolationReport) -> str:
    return "ok" if rep.ok else "fail"


# -- subcommands -----------------------------------------------------------

def cmd_check(args, out: Outcome):
    doc = io.read(args.file)
    obj = io.to_object(doc)
    kind = doc.kind
    if kind == "group":
        rep = validate_group(obj)
    elif kind == "group_bundle":
        rep = validate_group_bundle(obj.bundle)
        if rep.ok and obj.phi is not None:
            for m in range(obj.bundle.n_base):
                if obj.phi[obj.bundle.unit[m]] != m:
                    rep.add("phi_unit", (m,))
    elif kind == "groupoid":
        rep = validate_groupoid(obj)
    elif kind == "post_groupoid":
        rep = validate_post_groupoid(obj)
    elif kind == "group_action":
        rep = validate_group(obj.group)
        rep.violations = [("group." + r, w) for r, w in rep.violations]
        if rep.ok and obj.tri is not None:
            # with a post-group structure the acting group is the Grossman-Larson one
            rep.extend(validate_post_groupoid(obj.post_group()), "post.")
            if rep.ok:
                rep.extend(check_right_action(grossman_larson_group(obj.post_group()),
                                              obj.n_base, obj.act))
        elif rep.ok:
            rep.extend(check_right_action(obj.group, obj.n_base, obj.act))
    elif kind == "rb_instance":
        rep = validate_rb(obj)
    elif kind == "braided_quiver":
        rep = verify_ybe(obj, all_witnesses=True)
        rep.extend(verify_nondegenerate(obj))
    elif kind == "bracoid":
        rep = validate_bracoid(obj)
    elif kind == "matched_pair":
        rep = validate_matched_pair(obj)
    else:
        raise WrongKind(f"nothing to check for kind {kind}")
    out.report(rep)
    if "fibers_isomorphic" in rep.info and rep.info["fibers_isomorphic"] is not None:
        out.say(f"fibers_isomorphic={_flag(rep.info['fibers_isomorphic'])}")
    if rep.ok:
        out.say("ok")


def cmd_gl(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "post_groupoid")
    return io.to_document(grossman_larson(io.to_object(doc)), doc.meta)


def cmd_from_action(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "group_action")
    ga = io.to_object(doc)
    if args.post:
        p = from_post_group_action(ga.post_group(), ga.n_base, ga.act)
    else:
        p = from_group_action(ga.group, ga.n_base, ga.act)
    return io.to_document(p, doc.meta)


def _triple_count(q) -> int:
    out_deg = [0] * q.n_base
    for a in q.alpha:
        out_deg[a] += 1
    by_source = [0] * q.n_base
    for y in range(q.n):
        by_source[q.alpha[y]] += out_deg[q.beta[y]]
    return sum(by_source[q.beta[x]] for x in range(q.n))


def cmd_ybe(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "post_groupoid", "bracoid", "rb_instance", "braided_quiver")
    obj = io.to_object(doc)
    bq = {"post_groupoid": solution_from_post_groupoid, "bracoid": solution_from_bracoid,
          "rb_instance": solution_from_rb, "braided_quiver": lambda b: b}[doc.kind](obj)
    ybe = verify_ybe(bq, all_witnesses=args.all_witnesses)
    nondeg = verify_nondegenerate(bq, None if args.all_witnesses else 1)
    out.say(f"pairs={ybe.info['pairs']} triples={_triple_count(bq.quiver)} "
            f"ybe={_status(ybe)} nondeg={_status(nondeg)}")
    out.report(ybe)
    out.report(nondeg)
    return io.to_document(bq, doc.meta) if args.output else None


def cmd_convert(args, out: Outcome):
    doc = io.read(args.file)
    obj = io.to_object(doc)
    if args.to == "bracoid":
        _expect(doc, "post_groupoid", "rb_instance")
        sb = bracoid_from_post(obj) if doc.kind == "post_groupoid" else bracoid_from_rb(obj)
        return io.to_document(sb, doc.meta)
    _expect(doc, "bracoid")
    return io.to_document(post_from_bracoid(obj), doc.meta)


def cmd_rb(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "rb_instance")
    r = io.to_object(doc)
    if args.validate:
        rep = validate_rb(r)
        out.report(rep)
        if rep.ok:
            out.say("ok")
        return None
    rep = validate_rb(r, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a relative Rota-Baxter operator", rep)
    if args.induced:
        return io.to_document(induced_post_groupoid(r), doc.meta)
    if args.descendent:
        return io.to_document(descendent_groupoid(r), doc.meta)
    return io.to_document(matched_pair_from_rb(r), doc.meta)


def cmd_sections(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "post_groupoid")
    p = io.to_object(doc)
    rep = validate_post_groupoid(p, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a post-groupoid", rep)
    alg = section_algebra(p)
    mask = alg.bisection_mask
    bis = alg.check_bisections()
    if not args.bisections_only:
        weak = alg.check_weak_laws()
        out.say(f"sections={alg.size}")
        out.say(f"weak_laws={_status(weak)} triples={weak.info.get('triples', 0)}")
        out.say("left_bijective_mask=" + "".join("1" if v else "0" for v in alg.bijective_mask()))
        out.report(weak)
    out.say(f"bisections={int(mask.sum())}")
    out.say("bisection_mask=" + "".join("1" if v else "0" for v in mask))
    out.say(f"bisection_left_bijective={_status(bis)}")
    out.say(f"bisections_closed_under_mul={_flag(bis.info['bisections_closed_under_mul'])}")
    out.say(f"bisections_closed_under_star={_flag(bis.info['bisections_closed_under_star'])}")
    out.report(bis)


def cmd_enumerate(args, out: Outcome):
    doc = io.read(args.file)
    _expect(doc, "group_bundle", "post_groupoid")
    obj = io.to_object(doc)
    if doc.kind == "post_groupoid":
        b, phi = obj.bundle, obj.phi
    else:
        b = obj.bundle
        phi = obj.phi if obj.phi is not None else b.pi
    res = enumerate_post_structures(b, phi, budget=args.budget)
    out.say(f"count={res.count}")
    if res.partial:
        out.say(f"partial=true nodes={res.nodes}")
    if args.count_only:
        return None
    docs = [io.to_document(p, doc.meta) for p in res.structures]
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        for i, d in enumerate(docs):
            io.write(os.path.join(args.output, f"structure_{i:04d}.pgx"), d)
    else:
        for i, d in enumerate(docs):
            out.say(f"structure {i}")
            out.lines.extend(io.emit(d).splitlines())
    return None


def cmd_hom(args, out: Outcome):
    dp, dq, dm = io.read(args.p), io.read(args.q), io.read(args.psi)
    _expect(dm, "map")
    if dp.kind != dq.kind:
        raise WrongKind(f"source is {dp.kind} but target is {dq.kind}")
    _expect(dp, "post_groupoid", "groupoid", "braided_quiver")
    check = {"post_groupoid": check_post_homomorphism, "groupoid": check_groupoid_homomorphism,
             "braided_quiver": check_braided_homomorphism}[dp.kind]
    rep = check(io.to_object(dp), io.to_object(dq), io.to_object(dm))
    out.report(rep)
    out.say(f"hom={_status(rep)}")


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgx", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, output=True):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        if output:
            p.add_argument("-o", "--output", help="write the resulting document here")
        return p

    add("check", cmd_check, "validate a document of any kind", output=False).add_argument("file")
    add("gl", cmd_gl, "Grossman-Larson groupoid of a post-groupoid").add_argument("file")
    p = add("from-action", cmd_from_action, "post-groupoid from a group action")
    p.add_argument("file")
    p.add_argument("--post", action="store_true", help="use the post-group structure in the file")
    p = add("ybe", cmd_ybe, "build the braided quiver and verify the Yang-Baxter equation")
    p.add_argument("file")
    p.add_argument("--all-witnesses", action="store_true")
    p = add("convert", cmd_convert, "post-groupoid <-> skew-left bracoid")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=["bracoid", "post_groupoid"])
    p = add("rb", cmd_rb, "relative Rota-Baxter transforms")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    for flag in ("--validate", "--induced", "--descendent", "--matched-pair"):
        g.add_argument(flag, action="store_true")
    p = add("sections", cmd_sections, "section and bisection algebra report", output=False)
    p.add_argument("file")
    p.add_argument("--bisections-only", action="store_true")
    p = add("enumerate", cmd_enumerate, "all post structures on a bundle")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--budget", type=int, default=10**6, help="search node budget")
    p = add("hom", cmd_hom, "homomorphism check", output=False)
    for name in ("p", "q", "psi"):
        p.add_argument(name)
    return ap


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    out = Outcome()
    try:
        doc = args.fn(args, out)
    except WrongKind as e:
        print(f"pgx {args.command}: {e}", file=stderr)
        print(f"usage hint: pgx {args.command} -h", file=stderr)
        return 2
    except (io.ParseError, MalformedInput, TableError, OSError) as e:
        print(f"pgx {args.command}: malformed input: {e}", file=stderr)
        return 2
    except MemoryError as e:
        print(f"pgx {args.command}: {e}", file=stderr)
        return 2
    except InvalidStructure as e:
        print(f"pgx {args.command}: {e}", file=stderr)
        if e.report is not None:
            out.report(e.report)
        out.code = 1
        doc = None
    for note in out.notes:
        print(f"note: {note}", file=stderr)
    if doc is not None:
        if getattr(args, "output", None):
            io.write(args.output, doc)
        else:
            stdout.write(io.emit(doc))
    if out.lines:
        stdout.write("\n".join(out.lines) + "\n")
    return out.code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
