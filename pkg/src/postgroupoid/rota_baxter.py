"""Relative Rota-Baxter operators on groupoids and the structures they induce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (UNDEF, BUNDLE_RULES, GROUPOID_RULES, GroupBundle, Groupoid,
                   InvalidStructure, MalformedInput, Table, Undefined, ViolationReport,
                   _read, as_table, as_vector, check_groupoid_homomorphism,
                   composable_pairs, holds, is_bijection, scan, validate_group_bundle,
                   validate_groupoid)
from .post_groupoid import PostGroupoid


@dataclass(frozen=True)
class GroupoidAction:
    """Left action of ``g`` on the bundle ``h``; ``act[x][d]`` defined iff ``beta(x) == pi(d)``."""
    g: Groupoid
    h: GroupBundle
    act: Table

    def __post_init__(self):
        if self.g.n_base != self.h.n_base:
            raise MalformedInput("groupoid and bundle have different bases")
        beta, pi = self.g.beta, self.h.pi
        object.__setattr__(self, "act", as_table(self.act, self.g.n, self.h.n, self.h.n, "act",
                                                 lambda x, d: beta[x] == pi[d]))

    def a(self, x: int, d: int) -> int:
        if self.g.beta[x] != self.h.pi[d]:
            raise Undefined((x, d))
        return _read(self.act, x, d, "act")

    def inverse_tables(self) -> list[dict[int, int]]:
        """Per arrow ``x``, the inverse of ``d -> x |> d`` (fiber over alpha(x) -> fiber over beta(x))."""
        out = []
        for x in range(self.g.n):
            out.append({self.a(x, d): d for d in self.h.fiber(self.g.beta[x])})
        return out


def _act_fiber(a, x, d):
    return a.h.pi[a.a(x, d)] == a.g.alpha[x]


def _act_compat(a, x, y, d):
    return a.a(x, a.a(y, d)) == a.a(a.g.m(x, y), d)


def _act_unit(a, d):
    return a.a(a.g.unit[a.h.pi[d]], d) == d


def _act_hom(a, x, d, d2):
    return a.a(x, a.h.m(d, d2)) == a.h.m(a.a(x, d), a.a(x, d2))


def _act_bijective(a, x):
    return is_bijection({d: a.a(x, d) for d in a.h.fiber(a.g.beta[x])},
                        a.h.fiber(a.g.beta[x]), a.h.fiber(a.g.alpha[x]))


ACTION_RULES = {"act_fiber": _act_fiber, "act_compat": _act_compat, "act_unit": _act_unit,
                "act_hom": _act_hom, "act_bijective": _act_bijective}


def _action_pairs(a: GroupoidAction):
    fibers = a.h.fibers()
    return [(x, d) for x in range(a.g.n) for d in fibers[a.g.beta[x]]]


def validate_action(a: GroupoidAction, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    sub = validate_groupoid(a.g, max_witnesses)
    rep.extend(sub, "groupoid.")
    rep.extend(validate_group_bundle(a.h, max_witnesses), "bundle.")
    if not rep.ok:
        return rep
    fibers = a.h.fibers()
    pairs = _action_pairs(a)
    lim = max_witnesses
    (scan(rep, "act_fiber", _act_fiber, a, pairs, lim)
     and scan(rep, "act_unit", _act_unit, a, ((d,) for d in range(a.h.n)), lim)
     and scan(rep, "act_compat", _act_compat, a,
              ((x, y, d) for x, y in composable_pairs(a.g) for d in fibers[a.g.beta[y]]), lim)
     and scan(rep, "act_hom", _act_hom, a,
              ((x, d, d2) for x in range(a.g.n)
               for d, d2 in itertools.product(fibers[a.g.beta[x]], repeat=2)), lim)
     and scan(rep, "act_bijective", _act_bijective, a, ((x,) for x in range(a.g.n)), lim))
    return rep


@dataclass(frozen=True)
class RelativeRotaBaxter:
    action: GroupoidAction
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", as_vector(self.b, self.action.h.n, self.action.g.n, "b"))

    @property
    def g(self) -> Groupoid:
        return self.action.g

    @property
    def h(self) -> GroupBundle:
        return self.action.h


def _rb_source(r, d):
    return r.g.alpha[r.b[d]] == r.h.pi[d]


def _rb_unit(r, m):
    return r.b[r.h.unit[m]] == r.g.unit[m]


def _rb_identity(r, d1, d2):
    b, g, h = r.b, r.g, r.h
    return g.m(b[d1], b[d2]) == b[h.m(d1, r.action.a(b[d1], d2))]


RB_RULES = {"rb_source": _rb_source, "rb_unit": _rb_unit, "rb_identity": _rb_identity}


def _rb_pairs(r: RelativeRotaBaxter):
    fibers = r.h.fibers()
    return [(d1, d2) for d1 in range(r.h.n) for d2 in fibers[r.g.beta[r.b[d1]]]]


def validate_rb(r: RelativeRotaBaxter, max_witnesses: int | None = None) -> ViolationReport:
    rep = validate_action(r.action, max_witnesses)
    rep.violations = [("action." + k, w) for k, w in rep.violations]
    if not rep.ok:
        return rep
    lim = max_witnesses
    (scan(rep, "rb_source", _rb_source, r, ((d,) for d in range(r.h.n)), lim)
     and scan(rep, "rb_unit", _rb_unit, r, ((m,) for m in range(r.h.n_base)), lim)
     and scan(rep, "rb_identity", _rb_identity, r, _rb_pairs(r), lim))
    return rep


def check_rule(obj, rule: str, witness: Sequence[int]) -> bool:
    """Replay a rule from :func:`validate_rb`, :func:`validate_action` or :func:`check_lemma_f1`."""
    if isinstance(obj, RelativeRotaBaxter):
        if rule.startswith("action."):
            return check_rule(obj.action, rule[7:], witness)
        if rule == "lemma_f1":
            return holds(_lemma_f1, obj, *witness)
        return holds(RB_RULES[rule], obj, *witness)
    if rule.startswith("groupoid."):
        return holds(GROUPOID_RULES[rule[9:]], obj.g, *witness)
    if rule.startswith("bundle."):
        return holds(BUNDLE_RULES[rule[7:]], obj.h, *witness)
    return holds(ACTION_RULES[rule], obj, *witness)


def _require(r: RelativeRotaBaxter) -> None:
    rep = validate_rb(r, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a relative Rota-Baxter operator", rep)


def identity_rb(p: PostGroupoid) -> RelativeRotaBaxter:
    """``Id`` on the Grossman-Larson groupoid with respect to ``|>``."""
    from .constructions import gl_action
    return RelativeRotaBaxter(gl_action(p), tuple(range(p.n)))


def induced_post_groupoid(r: RelativeRotaBaxter) -> PostGroupoid:
    """``phi_B = beta o B`` and ``d1 |>_B d2 = B(d1) |> d2``."""
    _require(r)
    h, g, b = r.h, r.g, r.b
    phi = [g.beta[b[d]] for d in range(h.n)]
    tri = [[r.action.a(b[d1], d2) if phi[d1] == h.pi[d2] else UNDEF for d2 in range(h.n)]
           for d1 in range(h.n)]
    return PostGroupoid(h, phi, tri)


def descendent_groupoid(r: RelativeRotaBaxter) -> Groupoid:
    _require(r)
    h, g, b = r.h, r.g, r.b
    beta_b = [g.beta[b[d]] for d in range(h.n)]
    mul = [[h.m(d1, r.action.a(b[d1], d2)) if beta_b[d1] == h.pi[d2] else UNDEF
            for d2 in range(h.n)] for d1 in range(h.n)]
    back = r.action.inverse_tables()
    inv = [back[b[d]][h.inv[d]] for d in range(h.n)]
    return Groupoid(h.n_base, h.pi, beta_b, mul, h.unit, inv)


def check_b_homomorphism(r: RelativeRotaBaxter, max_witnesses: int | None = None) -> ViolationReport:
    """``B`` as a groupoid map from the descendent groupoid to ``g``."""
    return check_groupoid_homomorphism(descendent_groupoid(r), r.g, r.b, max_witnesses)


def _lemma_f1(r, x, d1, d2):
    a, h, g, b = r.action, r.h, r.g, r.b
    # d1 *_B d2 evaluated directly so that broken operators still get a verdict
    star = h.m(d1, a.a(b[d1], d2))
    return a.a(x, star) == h.m(a.a(x, d1), a.a(g.m(x, b[d1]), d2))


def check_lemma_f1(r: RelativeRotaBaxter, max_witnesses: int | None = None) -> ViolationReport:
    """``x |> (d1 *_B d2) = (x |> d1) ((x B(d1)) |> d2)`` on every admissible triple."""
    fibers = r.h.fibers()
    cases = ((x, d1, d2) for x in range(r.g.n) for d1 in fibers[r.g.beta[x]]
             for d2 in fibers[r.g.beta[r.b[d1]]])
    rep = ViolationReport()
    scan(rep, "lemma_f1", _lemma_f1, r, cases, max_witnesses)
    return rep


@dataclass(frozen=True)
class MatchedPair:
    """``left[x][d]`` in ``k`` and ``right[x][d]`` in ``g`` for ``beta_g(x) == alpha_k(d)``."""
    g: Groupoid
    k: Groupoid
    left: Table
    right: Table

    def __post_init__(self):
        if self.g.n_base != self.k.n_base:
            raise MalformedInput("groupoids have different bases")
        beta, alpha = self.g.beta, self.k.alpha
        ok = lambda x, d: beta[x] == alpha[d]
        object.__setattr__(self, "left", as_table(self.left, self.g.n, self.k.n, self.k.n,
                                                  "left", ok))
        object.__setattr__(self, "right", as_table(self.right, self.g.n, self.k.n, self.g.n,
                                                   "right", ok))

    def lt(self, x: int, d: int) -> int:
        if self.g.beta[x] != self.k.alpha[d]:
            raise Undefined((x, d))
        return _read(self.left, x, d, "left")

    def rt(self, x: int, d: int) -> int:
        if self.g.beta[x] != self.k.alpha[d]:
            raise Undefined((x, d))
        return _read(self.right, x, d, "right")


def _sigma_quiver(mp, x, d):
    g, k = mp.g, mp.k
    l, r = mp.lt(x, d), mp.rt(x, d)
    return k.alpha[l] == g.alpha[x] and k.beta[l] == g.alpha[r] and g.beta[r] == k.beta[d]


def _mg1(mp, d):
    return mp.lt(mp.g.unit[mp.k.alpha[d]], d) == d


def _mg2(mp, x1, x2, d):
    return mp.lt(x1, mp.lt(x2, d)) == mp.lt(mp.g.m(x1, x2), d)


def _mg3(mp, x1, x2, d):
    return mp.rt(mp.g.m(x1, x2), d) == mp.g.m(mp.rt(x1, mp.lt(x2, d)), mp.rt(x2, d))


def _mg4(mp, x):
    return mp.rt(x, mp.k.unit[mp.g.beta[x]]) == x


def _mg5(mp, x, d1, d2):
    return mp.rt(mp.rt(x, d1), d2) == mp.rt(x, mp.k.m(d1, d2))


def _mg6(mp, x, d1, d2):
    return mp.lt(x, mp.k.m(d1, d2)) == mp.k.m(mp.lt(x, d1), mp.lt(mp.rt(x, d1), d2))


MATCHED_RULES = {"sigma_quiver": _sigma_quiver, "MG-1": _mg1, "MG-2": _mg2, "MG-3": _mg3,
                 "MG-4": _mg4, "MG-5": _mg5, "MG-6": _mg6}


def _by_alpha(gpd: Groupoid) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for x, a in enumerate(gpd.alpha):
        out.setdefault(a, []).append(x)
    return out


def double_groupoid(mp: MatchedPair) -> Groupoid:
    """``K x G`` with ``(d1, x1)(d2, x2) = (d1 (x1 |> d2), (x1 <| d2) x2)``.

    Pairs ``(d, x)`` with ``beta_k(d) == alpha_g(x)`` are indexed
    lexicographically; inverses are found by search.
    """
    g, k = mp.g, mp.k
    g_from = _by_alpha(g)
    elems = [(d, x) for d in range(k.n) for x in g_from.get(k.beta[d], ())]
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    alpha = [k.alpha[d] for d, _ in elems]
    beta = [g.beta[x] for _, x in elems]
    mul = [[UNDEF] * n for _ in range(n)]
    for i, (d1, x1) in enumerate(elems):
        for j, (d2, x2) in enumerate(elems):
            if beta[i] != alpha[j]:
                continue
            try:
                e = (k.m(d1, mp.lt(x1, d2)), g.m(mp.rt(x1, d2), x2))
                mul[i][j] = index[e]
            except (Undefined, KeyError):
                raise InvalidStructure(f"double product undefined at {i}, {j}")
    unit = [index[(k.unit[m], g.unit[m])] for m in range(g.n_base)]
    inv = []
    for i in range(n):
        found = [j for j in range(n) if beta[i] == alpha[j] and mul[i][j] == unit[alpha[i]]]
        if not found:
            raise InvalidStructure(f"double element {i} has no inverse")
        inv.append(found[0])
    return Groupoid(g.n_base, alpha, beta, mul, unit, inv)


def validate_matched_pair(mp: MatchedPair, max_witnesses: int | None = None,
                          check_double: bool = False) -> ViolationReport:
    g, k = mp.g, mp.k
    rep = ViolationReport()
    pairs = [(x, d) for x in range(g.n) for d in _by_alpha(k).get(g.beta[x], ())]
    k_from = _by_alpha(k)
    g_pairs = composable_pairs(g)
    lim = max_witnesses
    (scan(rep, "sigma_quiver", _sigma_quiver, mp, pairs, lim)
     and scan(rep, "MG-1", _mg1, mp, ((d,) for d in range(k.n)), lim)
     and scan(rep, "MG-2", _mg2, mp,
              ((x1, x2, d) for x1, x2 in g_pairs for d in k_from.get(g.beta[x2], ())), lim)
     and scan(rep, "MG-3", _mg3, mp,
              ((x1, x2, d) for x1, x2 in g_pairs for d in k_from.get(g.beta[x2], ())), lim)
     and scan(rep, "MG-4", _mg4, mp, ((x,) for x in range(g.n)), lim)
     and scan(rep, "MG-5", _mg5, mp,
              ((x, d1, d2) for x, d1 in pairs for d2 in k_from.get(k.beta[d1], ())), lim)
     and scan(rep, "MG-6", _mg6, mp,
              ((x, d1, d2) for x, d1 in pairs for d2 in k_from.get(k.beta[d1], ())), lim))
    if check_double and rep.ok:
        try:
            sub = validate_groupoid(double_groupoid(mp), max_witnesses)
            rep.extend(sub, "double.")
        except InvalidStructure:
            rep.add("double.construction", ())
    return rep


def check_matched_rule(mp: MatchedPair, rule: str, witness: Sequence[int]) -> bool:
    return holds(MATCHED_RULES[rule], mp, *witness)


def matched_pair_from_rb(r: RelativeRotaBaxter) -> MatchedPair:
    """``(g, H_B)`` with ``x <| d = B(x |> d)^{-1} x B(d)``."""
    desc = descendent_groupoid(r)
    g, b, a = r.g, r.b, r.action
    n, m = g.n, r.h.n
    left = [[UNDEF] * m for _ in range(n)]
    right = [[UNDEF] * m for _ in range(n)]
    for x in range(n):
        for d in r.h.fiber(g.beta[x]):
            l = a.a(x, d)
            left[x][d] = l
            right[x][d] = g.m(g.m(g.inv[b[l]], x), b[d])
    return MatchedPair(g, desc, left, right)
