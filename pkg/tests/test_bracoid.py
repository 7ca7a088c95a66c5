from hypothesis import given, strategies as st

import pytest

from postgroupoid.bracoid import (SkewLeftBracoid, bracoid_from_post, bracoid_from_rb,
                                  check_rule, post_from_bracoid, solution_from_bracoid,
                                  validate_bracoid)
from postgroupoid.catalog import point_groups
from postgroupoid.constructions import action_groupoid, from_group_action, grossman_larson
from postgroupoid.core import Groupoid, InvalidStructure, bundle_from_group
from postgroupoid.post_groupoid import enumerate_post_structures
from postgroupoid.rota_baxter import identity_rb
from postgroupoid.yang_baxter import solution_from_post_groupoid, verify_ybe

from strategies import right_actions


def idx(m, g, k=3):
    return m * k + g


def test_action_bracoid_z3(instances):
    inst = instances["z3_on_z3"]
    sb = SkewLeftBracoid(inst.post_groupoid().bundle,
                         action_groupoid(inst.group, inst.n_base, inst.act))
    assert validate_bracoid(sb).ok


def test_catalog_bracoids_and_round_trips(cat):
    for name, p in cat.items():
        sb = bracoid_from_post(p)
        assert validate_bracoid(sb).ok, name
        assert post_from_bracoid(sb) == p, name
        assert bracoid_from_post(post_from_bracoid(sb)) == sb, name


@given(right_actions(max_points=6))
def test_round_trips_random(action):
    p = from_group_action(*action)
    sb = bracoid_from_post(p)
    assert validate_bracoid(sb).ok
    assert post_from_bracoid(sb) == p


@pytest.mark.parametrize("name", ["z4", "v4", "s3"])
def test_skew_braces_from_post_groups(name):
    g = point_groups()[name]
    for pg in enumerate_post_structures(bundle_from_group(g), [0] * g.n).structures:
        sb = bracoid_from_post(pg)
        assert validate_bracoid(sb).ok
        b, s = sb.bundle, sb.gpd
        # one-point brace law a*(b.c) = (a*b) a^-1 (a*c)
        for x in range(g.n):
            for y in range(g.n):
                for z in range(g.n):
                    assert s.m(x, b.m(y, z)) == b.m(b.m(s.m(x, y), b.inv[x]), s.m(x, z))
        assert post_from_bracoid(sb) == pg


def test_spot_triple(cat):
    sb = bracoid_from_post(cat["z3_on_z3"])
    b, g = sb.bundle, sb.gpd
    x, y, y2 = idx(0, 1), idx(1, 1), idx(1, 2)
    assert b.m(y, y2) == idx(1, 0)
    assert g.m(x, idx(1, 0)) == idx(0, 1)
    assert (g.m(x, y), b.inv[x], g.m(x, y2)) == (idx(0, 2), idx(0, 2), idx(0, 0))
    assert b.m(b.m(idx(0, 2), idx(0, 2)), idx(0, 0)) == idx(0, 1)


def test_reverse_spot_value(cat):
    sb = bracoid_from_post(cat["z3_on_z3"])
    b, g = sb.bundle, sb.gpd
    x, y = idx(0, 1), idx(1, 2)
    assert b.inv[x] == idx(0, 2) and g.m(x, y) == idx(0, 0)
    assert post_from_bracoid(sb).t(x, y) == b.m(b.inv[x], g.m(x, y)) == idx(0, 2)


def test_trivial_one_point_brace(cat):
    sb = bracoid_from_post(cat["z2_point"])
    assert sb.gpd.mul == sb.bundle.mul


@given(st.data())
def test_corrupted_star(cat, data):
    sb = bracoid_from_post(cat["z3_on_z3"])
    g = sb.gpd
    x = data.draw(st.integers(0, g.n - 1))
    ys = [y for y in range(g.n) if g.beta[x] == g.alpha[y]]
    y = data.draw(st.sampled_from(ys))
    # another arrow with the right ends: swap two products in row x
    y2 = data.draw(st.sampled_from([z for z in ys if z != y]))
    mul = [list(r) for r in g.mul]
    mul[x][y], mul[x][y2] = mul[x][y2], mul[x][y]
    bad = SkewLeftBracoid(sb.bundle, Groupoid(g.n_base, g.alpha, g.beta, mul, g.unit, g.inv))
    rep = validate_bracoid(bad)
    assert not rep.ok
    assert all(not check_rule(bad, r, w) for r, w in rep.violations)


def test_rb_route(cat):
    for p in cat.values():
        assert bracoid_from_rb(identity_rb(p)) == bracoid_from_post(p)


def test_solution_from_bracoid(cat):
    for p in cat.values():
        sb = bracoid_from_post(p)
        bq = solution_from_bracoid(sb)
        assert bq == solution_from_post_groupoid(post_from_bracoid(sb))
        assert verify_ybe(bq).ok


def test_inverses_agree(cat):
    for p in cat.values():
        sb = bracoid_from_post(p)
        assert sb.gpd.inv == grossman_larson(post_from_bracoid(sb)).inv


def test_invalid_bracoid_rejected(cat):
    sb = bracoid_from_post(cat["z3_on_z3"])
    g = sb.gpd
    mul = [list(r) for r in g.mul]
    mul[1][3], mul[1][4] = mul[1][4], mul[1][3]
    bad = SkewLeftBracoid(sb.bundle, Groupoid(g.n_base, g.alpha, g.beta, mul, g.unit, g.inv))
    with pytest.raises(InvalidStructure):
        post_from_bracoid(bad)
