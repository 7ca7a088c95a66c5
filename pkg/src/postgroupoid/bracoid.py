"""Skew-left bracoids and their correspondence with post-groupoids."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .constructions import grossman_larson
from .core import (UNDEF, BUNDLE_RULES, GROUPOID_RULES, GroupBundle, Groupoid,
                   InvalidStructure, MalformedInput, ViolationReport, composable_pairs,
                   holds, scan, validate_group_bundle, validate_groupoid)
from .post_groupoid import PostGroupoid
from .rota_baxter import RelativeRotaBaxter, descendent_groupoid, validate_rb
from .yang_baxter import BraidedQuiver


@dataclass(frozen=True)
class SkewLeftBracoid:
    bundle: GroupBundle
    gpd: Groupoid

    def __post_init__(self):
        if self.bundle.n != self.gpd.n or self.bundle.n_base != self.gpd.n_base:
            raise MalformedInput("bundle and groupoid must share carrier and base")

    @property
    def n(self) -> int:
        return self.bundle.n


def _shared_units(sb, m):
    return sb.bundle.unit[m] == sb.gpd.unit[m]


def _source_is_pi(sb, x):
    return sb.gpd.alpha[x] == sb.bundle.pi[x]


def _well_defined(sb, x, y, y2):
    pi = sb.bundle.pi
    g = sb.gpd
    return pi[g.m(x, y)] == pi[x] == pi[g.m(x, y2)]


def _bracoid_law(sb, x, y, y2):
    b, g = sb.bundle, sb.gpd
    return g.m(x, b.m(y, y2)) == b.m(b.m(g.m(x, y), b.inv[x]), g.m(x, y2))


BRACOID_RULES = {"shared_units": _shared_units, "source_is_pi": _source_is_pi,
                 "well_defined": _well_defined, "bracoid": _bracoid_law}


def _law_cases(sb: SkewLeftBracoid):
    fibers = sb.bundle.fibers()
    for x in range(sb.n):
        f = fibers[sb.gpd.beta[x]]
        for y, y2 in itertools.product(f, f):
            yield x, y, y2


def validate_bracoid(sb: SkewLeftBracoid, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    rep.extend(validate_group_bundle(sb.bundle, max_witnesses), "bundle.")
    rep.extend(validate_groupoid(sb.gpd, max_witnesses), "groupoid.")
    if not rep.ok:
        return rep
    lim = max_witnesses
    (scan(rep, "shared_units", _shared_units, sb, ((m,) for m in range(sb.bundle.n_base)), lim)
     and scan(rep, "source_is_pi", _source_is_pi, sb, ((x,) for x in range(sb.n)), lim))
    if not rep.ok:
        return rep
    (scan(rep, "well_defined", _well_defined, sb, _law_cases(sb), lim)
     and scan(rep, "bracoid", _bracoid_law, sb, _law_cases(sb), lim))
    return rep


def check_rule(sb: SkewLeftBracoid, rule: str, witness: Sequence[int]) -> bool:
    if rule.startswith("bundle."):
        return holds(BUNDLE_RULES[rule[7:]], sb.bundle, *witness)
    if rule.startswith("groupoid."):
        return holds(GROUPOID_RULES[rule[9:]], sb.gpd, *witness)
    return holds(BRACOID_RULES[rule], sb, *witness)


def _require(sb: SkewLeftBracoid) -> None:
    rep = validate_bracoid(sb, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a skew-left bracoid", rep)


def bracoid_from_post(p: PostGroupoid) -> SkewLeftBracoid:
    return SkewLeftBracoid(p.bundle, grossman_larson(p))


def post_from_bracoid(sb: SkewLeftBracoid) -> PostGroupoid:
    """``phi = beta`` and ``x |> y = inv(x) . (x * y)``."""
    _require(sb)
    b, g = sb.bundle, sb.gpd
    n = sb.n
    tri = [[b.m(b.inv[x], g.m(x, y)) if g.beta[x] == b.pi[y] else UNDEF for y in range(n)]
           for x in range(n)]
    return PostGroupoid(b, g.beta, tri)


def bracoid_from_rb(r: RelativeRotaBaxter) -> SkewLeftBracoid:
    rep = validate_rb(r, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a relative Rota-Baxter operator", rep)
    return SkewLeftBracoid(r.h, descendent_groupoid(r))


def solution_from_bracoid(sb: SkewLeftBracoid) -> BraidedQuiver:
    """``R(x, y) = (u, ibar(u) * x * y)`` with ``u = inv(x) . (x * y)``."""
    _require(sb)
    b, g = sb.bundle, sb.gpd
    n = sb.n
    left = [[UNDEF] * n for _ in range(n)]
    right = [[UNDEF] * n for _ in range(n)]
    for x, y in composable_pairs(g):
        u = b.m(b.inv[x], g.m(x, y))
        left[x][y] = u
        right[x][y] = g.m(g.m(g.inv[u], x), y)
    return BraidedQuiver(g.quiver, left, right)
