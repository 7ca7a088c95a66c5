"""Acceptance criteria 1-8.  Each test records PASS/FAIL and its wall time;
the lines are printed in the terminal summary (see conftest)."""
import functools
import io as stdio
import os
import subprocess
import sys
import time

import pytest

from postgroupoid import io
from postgroupoid.bracoid import bracoid_from_post, post_from_bracoid
from postgroupoid.catalog import point_groups
from postgroupoid.cli import run_cli
from postgroupoid.constructions import action_groupoid, from_group_action, grossman_larson
from postgroupoid.core import bundle_from_group, composable_triples
from postgroupoid.post_groupoid import (enumerate_post_structures, section_algebra,
                                        validate_post_groupoid)
from postgroupoid.rota_baxter import (check_lemma_f1, descendent_groupoid, identity_rb,
                                      induced_post_groupoid, matched_pair_from_rb,
                                      validate_matched_pair, validate_rb)
from postgroupoid.yang_baxter import (braided_groupoid_from_post, post_from_braided,
                                      solution_from_post_groupoid, verify_nondegenerate,
                                      verify_ybe)

import oracles
from conftest import GOLDEN

RESULTS = {}

TITLES = {
    1: "axiom engine on action post-groupoids",
    2: "Grossman-Larson groupoid is the action groupoid",
    3: "Yang-Baxter solutions",
    4: "round trips post <-> braided groupoid <-> bracoid",
    5: "identity Rota-Baxter operator",
    6: "sections and bisections on Z/2 acting on {0,1}",
    7: "post-group enumeration against brute force",
    8: "CLI determinism and exit codes",
}

ACTIONS = ("z3_on_z3", "s3_on_3", "z2_on_z2")


def criterion(n):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kw):
            t0 = time.perf_counter()
            try:
                fn(*args, **kw)
            except BaseException:
                RESULTS[n] = ("FAIL", time.perf_counter() - t0)
                raise
            RESULTS[n] = ("PASS", time.perf_counter() - t0)
        return run
    return wrap


def summary_lines():
    out = []
    for n in sorted(TITLES):
        status, dt = RESULTS.get(n, ("FAIL", 0.0))
        out.append(f"{status} criterion {n}: {TITLES[n]} ({dt:.3f} s)")
    return out


@criterion(1)
def test_criterion_1_axiom_engine(instances):
    for name in ACTIONS:
        inst = instances[name]
        t0 = time.perf_counter()
        p = from_group_action(inst.group, inst.n_base, inst.act)
        rep = validate_post_groupoid(p)
        assert rep.ok, (name, rep.violations[:3])
        assert time.perf_counter() - t0 < 1.0, name


@criterion(2)
def test_criterion_2_gl_is_action_groupoid(instances):
    for name in ACTIONS:
        inst = instances[name]
        gl = grossman_larson(from_group_action(inst.group, inst.n_base, inst.act))
        ref = action_groupoid(inst.group, inst.n_base, inst.act)
        assert (gl.n_base, gl.alpha, gl.beta, gl.mul, gl.unit, gl.inv) == \
            (ref.n_base, ref.alpha, ref.beta, ref.mul, ref.unit, ref.inv)
        # independent dictionary-based oracle
        k = inst.group.n
        _, src, tgt, prod = oracles.action_gl([list(r) for r in inst.group.mul],
                                              inst.group.identity, inst.n_base, inst.act)
        pair = lambda x: (x // k, x % k)
        assert {pair(x): gl.alpha[x] for x in range(gl.n)} == src
        assert {pair(x): gl.beta[x] for x in range(gl.n)} == tgt
        assert {(pair(x), pair(y)): pair(gl.mul[x][y])
                for x in range(gl.n) for y in range(gl.n) if gl.beta[x] == gl.alpha[y]} == prod


@criterion(3)
def test_criterion_3_ybe(cat, instances):
    t0 = time.perf_counter()
    for name, p in cat.items():
        bq = solution_from_post_groupoid(p)
        rep = verify_ybe(bq, all_witnesses=True)
        assert rep.ok and rep.violations == [], name
        assert rep.info["triples"] == len(composable_triples(bq.quiver)), name
        assert verify_nondegenerate(bq).ok, name
        if name == "z3_on_z3":
            assert rep.info["triples"] == 81
    inst = instances["z3_on_z3"]
    bq = solution_from_post_groupoid(cat["z3_on_z3"])
    ref = oracles.action_r_closed_form([list(r) for r in inst.group.mul], inst.group.identity,
                                       inst.n_base, inst.act)
    pair = lambda x: (x // 3, x % 3)
    got = {(pair(x), pair(y)): tuple(map(pair, bq.r(x, y))) for (x, y) in
           ((x, y) for x in range(bq.n) for y in range(bq.n)
            if bq.quiver.beta[x] == bq.quiver.alpha[y])}
    assert got == ref
    assert time.perf_counter() - t0 < 5.0


@criterion(4)
def test_criterion_4_round_trips(cat):
    for name, p in cat.items():
        bg = braided_groupoid_from_post(p)
        assert post_from_braided(bg) == p, name
        assert braided_groupoid_from_post(post_from_braided(bg)) == bg, name
        sb = bracoid_from_post(p)
        assert post_from_bracoid(sb) == p, name
        assert bracoid_from_post(post_from_bracoid(sb)) == sb, name


@criterion(5)
def test_criterion_5_rota_baxter(cat):
    for name, p in cat.items():
        r = identity_rb(p)
        assert validate_rb(r).ok, name
        assert induced_post_groupoid(r) == p, name
        assert descendent_groupoid(r) == grossman_larson(p), name
        rep = validate_matched_pair(matched_pair_from_rb(r))
        assert rep.ok, (name, rep.violations[:3])
        assert check_lemma_f1(r).ok, name


@criterion(6)
def test_criterion_6_sections(instances):
    inst = instances["z2_on_z2"]
    alg = section_algebra(inst.post_groupoid())
    assert alg.size == 4
    assert alg.check_weak_laws().ok
    assert not alg.bijective_mask().all()
    assert int(alg.bisection_mask.sum()) == 2
    constant = {alg.index_of([m * 2 + g for m in range(2)]) for g in range(2)}
    assert set(map(int, alg.bisection_mask.nonzero()[0])) == constant
    rep = alg.check_bisections()
    assert rep.ok and rep.info["bisections_closed_under_mul"]
    # independent oracle
    ref = oracles.sections_report([list(r) for r in inst.group.mul], inst.group.identity,
                                  inst.n_base, inst.act)
    assert len(ref["sections"]) == 4 and ref["weak"]
    assert not all(ref["left_bijective"])
    assert sorted(ref["bisections"]) == [(0, 0), (1, 1)]
    assert ref["bisection_left_bijective"]


# frozen from the brute-force oracle
POST_GROUP_COUNTS = {"z2": 1, "z3": 1, "z4": 2, "v4": 4}


@criterion(7)
def test_criterion_7_enumeration():
    t0 = time.perf_counter()
    for name, frozen in POST_GROUP_COUNTS.items():
        g = point_groups()[name]
        mul = [list(r) for r in g.mul]
        res = enumerate_post_structures(bundle_from_group(g), [0] * g.n)
        assert not res.partial
        oracle = oracles.post_group_count(mul)
        if g.n <= 3:
            assert oracles.post_group_count_flat(mul) == oracle
        assert res.count == oracle == frozen, name
        assert all(validate_post_groupoid(p).ok for p in res.structures)
        assert len({tuple(map(tuple, p.tri)) for p in res.structures}) == res.count
    assert time.perf_counter() - t0 < 60.0


def cli(argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_cli([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def commands_for(path):
    kind = io.read(path).kind
    table = {
        "post_groupoid": [["check"], ["gl"], ["ybe"], ["sections"], ["convert", "--to", "bracoid"]],
        "group_action": [["check"], ["from-action"]],
        "group_bundle": [["check"], ["enumerate"]],
        "rb_instance": [["rb", "--validate"], ["rb", "--descendent"], ["ybe"]],
        "bracoid": [["check"], ["convert", "--to", "post_groupoid"]],
        "braided_quiver": [["check"], ["ybe"]],
        "map": [["check"]],
    }
    return [[c[0], path, *c[1:]] for c in table[kind]]


@criterion(8)
def test_criterion_8_cli():
    files = sorted(p for p in GOLDEN.glob("*.pgx") if p.stem != "malformed")
    assert files
    for path in files:
        for argv in commands_for(path):
            assert cli(argv) == cli(argv), argv
    assert cli(["check", GOLDEN / "malformed.pgx"]) == cli(["check", GOLDEN / "malformed.pgx"])
    assert cli(["check", GOLDEN / "malformed.pgx"])[0] == 2
    assert cli(["check", GOLDEN / "violating.pgx"])[0] == 1
    assert cli(["check", GOLDEN / "z3_post.pgx"])[0] == 0
    # separate interpreters with different hash seeds
    for path in files:
        runs = [fresh(["check", path], seed) for seed in ("1", "2")]
        assert runs[0] == runs[1], path
    assert [fresh(["check", GOLDEN / f], "0")[0]
            for f in ("malformed.pgx", "violating.pgx", "z3_post.pgx")] == [2, 1, 0]


def fresh(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=seed)
    res = subprocess.run([sys.executable, "-m", "postgroupoid.cli", *map(str, argv)],
                         capture_output=True, env=env)
    return res.returncode, res.stdout, res.stderr


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
