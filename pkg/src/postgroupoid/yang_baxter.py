"""Quiver-theoretical Yang-Baxter solutions, braided groupoids and their post-groupoids."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .constructions import grossman_larson
from .core import (UNDEF, GroupBundle, Groupoid, InvalidStructure, MalformedInput, Quiver,
                   Table, Undefined, ViolationReport, _read, as_table, as_vector,
                   composable_pairs, holds, validate_groupoid, worker_count)
from .post_groupoid import PostGroupoid
from .rota_baxter import (MatchedPair, RelativeRotaBaxter, descendent_groupoid,
                          validate_matched_pair, validate_rb)

# triple counts above this are split across worker processes
PARALLEL_THRESHOLD = 200_000


@dataclass(frozen=True)
class BraidedQuiver:
    """``R(x, y) = (left[x][y], right[x][y])`` on composable pairs."""
    quiver: Quiver
    left: Table
    right: Table

    def __post_init__(self):
        q = self.quiver
        ok = lambda x, y: q.beta[x] == q.alpha[y]
        object.__setattr__(self, "left", as_table(self.left, q.n, q.n, q.n, "left", ok))
        object.__setattr__(self, "right", as_table(self.right, q.n, q.n, q.n, "right", ok))

    @property
    def n(self) -> int:
        return self.quiver.n

    def r(self, x: int, y: int) -> tuple[int, int]:
        q = self.quiver
        if q.beta[x] != q.alpha[y]:
            raise Undefined((x, y))
        return _read(self.left, x, y, "left"), _read(self.right, x, y, "right")

    def permutation(self) -> list[int]:
        """``R`` on the lexicographic index of composable pairs; -1 where not closed."""
        pairs = composable_pairs(self.quiver)
        index = {p: i for i, p in enumerate(pairs)}
        return [index.get(self.r(*p), UNDEF) for p in pairs]


def _r_closure(bq, x, y):
    u, v = bq.r(x, y)
    return bq.quiver.beta[u] == bq.quiver.alpha[v]


def _r_quiver(bq, x, y):
    q = bq.quiver
    u, v = bq.r(x, y)
    return q.alpha[u] == q.alpha[x] and q.beta[v] == q.beta[y]


def _ybe(bq, x, y, z):
    # R12 R23 R12 = R23 R12 R23; both sides are palindromic words
    a, b = bq.r(x, y)
    b, c = bq.r(b, z)
    a, b = bq.r(a, b)
    lhs = (a, b, c)
    b, c = bq.r(y, z)
    a, b = bq.r(x, b)
    b, c = bq.r(b, c)
    return lhs == (a, b, c)


YBE_RULES = {"r_closure": _r_closure, "r_quiver": _r_quiver, "ybe": _ybe}


def _ybe_chunk(args):
    bq, xs, limit = args
    q = bq.quiver
    from_src: dict[int, list[int]] = {}
    for y, a in enumerate(q.alpha):
        from_src.setdefault(a, []).append(y)
    bad = []
    count = 0
    for x in xs:
        for y in from_src.get(q.beta[x], ()):
            for z in from_src.get(q.beta[y], ()):
                count += 1
                if not holds(_ybe, bq, x, y, z):
                    bad.append((x, y, z))
                    if limit is not None and len(bad) >= limit:
                        return bad, count
    return bad, count


def verify_ybe(bq: BraidedQuiver, all_witnesses: bool = False,
               workers: int | None = None) -> ViolationReport:
    """Structure of ``R`` plus the braid relation on every composable triple.

    Stops at the first violation unless ``all_witnesses``.
    """
    rep = ViolationReport()
    limit = None if all_witnesses else 1
    pairs = composable_pairs(bq.quiver)
    rep.info["pairs"] = len(pairs)
    for rule, pred in (("r_closure", _r_closure), ("r_quiver", _r_quiver)):
        for p in pairs:
            if not holds(pred, bq, *p):
                rep.add(rule, p)
                if rep.full(limit):
                    return rep
    if not rep.ok:
        return rep
    perm = bq.permutation()
    seen: dict[int, int] = {}
    for i, j in enumerate(perm):
        if j in seen:
            rep.add("r_bijective", pairs[i])
            if rep.full(limit):
                return rep
        seen[j] = i

    xs = list(range(bq.n))
    workers = worker_count() if workers is None else workers
    n_triples_hint = len(pairs) * max(1, len(pairs) // max(1, bq.n))
    if workers > 1 and n_triples_hint > PARALLEL_THRESHOLD:
        chunks = [xs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_ybe_chunk, [(bq, c, limit) for c in chunks]))
    else:
        results = [_ybe_chunk((bq, xs, limit))]
    bad = sorted(w for ws, _ in results for w in ws)
    rep.info["triples"] = sum(c for _, c in results)
    for w in bad:
        rep.add("ybe", w)
        if rep.full(limit):
            break
    return rep


def _left_nondeg(bq, x):
    q = bq.quiver
    dom = [y for y in range(q.n) if q.alpha[y] == q.beta[x]]
    cod = {y for y in range(q.n) if q.alpha[y] == q.alpha[x]}
    image = [bq.r(x, y)[0] for y in dom]
    return len(set(image)) == len(dom) == len(cod) and set(image) == cod


def _right_nondeg(bq, x):
    q = bq.quiver
    dom = [y for y in range(q.n) if q.beta[y] == q.alpha[x]]
    cod = {y for y in range(q.n) if q.beta[y] == q.beta[x]}
    image = [bq.r(y, x)[1] for y in dom]
    return len(set(image)) == len(dom) == len(cod) and set(image) == cod


NONDEG_RULES = {"left_nondegenerate": _left_nondeg, "right_nondegenerate": _right_nondeg}


def verify_nondegenerate(bq: BraidedQuiver, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    for rule, pred in NONDEG_RULES.items():
        for x in range(bq.n):
            if not holds(pred, bq, x):
                rep.add(rule, (x,))
                if rep.full(max_witnesses):
                    return rep
    return rep


def check_rule(bq: BraidedQuiver, rule: str, witness: Sequence[int]) -> bool:
    if rule == "r_bijective":
        x, y = witness
        target = bq.r(x, y)
        return not any(bq.r(*p) == target for p in composable_pairs(bq.quiver) if p != (x, y))
    pred = YBE_RULES.get(rule) or NONDEG_RULES[rule]
    return holds(pred, bq, *witness)


def check_braided_homomorphism(bq1: BraidedQuiver, bq2: BraidedQuiver, f: Sequence[int],
                               max_witnesses: int | None = None) -> ViolationReport:
    """``f`` a quiver map with ``(f x f) R1 = R2 (f x f)``."""
    q1, q2 = bq1.quiver, bq2.quiver
    if q1.n_base != q2.n_base:
        raise MalformedInput("quivers have different bases")
    f = as_vector(f, q1.n, q2.n, "map")
    rep = ViolationReport()
    for x in range(q1.n):
        if q2.alpha[f[x]] != q1.alpha[x] or q2.beta[f[x]] != q1.beta[x]:
            rep.add("hom_quiver", (x,))
    for x, y in composable_pairs(q1):
        u, v = bq1.r(x, y)
        if (f[u], f[v]) != bq2.r(f[x], f[y]):
            rep.add("hom_braiding", (x, y))
            if rep.full(max_witnesses):
                break
    return rep


def _post_tables(p: PostGroupoid, gl: Groupoid) -> tuple[list[list[int]], list[list[int]]]:
    n = p.n
    left = [[UNDEF] * n for _ in range(n)]
    right = [[UNDEF] * n for _ in range(n)]
    for x, y in composable_pairs(gl):
        l = p.t(x, y)
        left[x][y] = l
        right[x][y] = gl.m(gl.m(gl.inv[l], x), y)
    return left, right


def solution_from_post_groupoid(p: PostGroupoid) -> BraidedQuiver:
    """``R(x, y) = (x |> y, (x |> y)^{-1} * x * y)`` in the Grossman-Larson groupoid."""
    gl = grossman_larson(p)
    left, right = _post_tables(p, gl)
    return BraidedQuiver(gl.quiver, left, right)


@dataclass(frozen=True)
class BraidedGroupoid:
    g: Groupoid
    left: Table
    right: Table

    def __post_init__(self):
        g = self.g
        ok = lambda x, y: g.beta[x] == g.alpha[y]
        object.__setattr__(self, "left", as_table(self.left, g.n, g.n, g.n, "left", ok))
        object.__setattr__(self, "right", as_table(self.right, g.n, g.n, g.n, "right", ok))

    @property
    def matched_pair(self) -> MatchedPair:
        return MatchedPair(self.g, self.g, self.left, self.right)

    @property
    def braided_quiver(self) -> BraidedQuiver:
        return BraidedQuiver(self.g.quiver, self.left, self.right)


def _braid_product(bg, x, y):
    mp = bg.matched_pair
    return bg.g.m(mp.lt(x, y), mp.rt(x, y)) == bg.g.m(x, y)


def validate_braided_groupoid(bg: BraidedGroupoid, max_witnesses: int | None = None) -> ViolationReport:
    rep = validate_groupoid(bg.g, max_witnesses)
    rep.violations = [("groupoid." + r, w) for r, w in rep.violations]
    if not rep.ok:
        return rep
    rep.extend(validate_matched_pair(bg.matched_pair, max_witnesses))
    if rep.full(max_witnesses):
        return rep
    for x, y in composable_pairs(bg.g):
        if not holds(_braid_product, bg, x, y):
            rep.add("braid_product", (x, y))
            if rep.full(max_witnesses):
                break
    return rep


def braided_groupoid_from_post(p: PostGroupoid) -> BraidedGroupoid:
    gl = grossman_larson(p)
    left, right = _post_tables(p, gl)
    return BraidedGroupoid(gl, left, right)


def post_from_braided(bg: BraidedGroupoid) -> PostGroupoid:
    """Bundle over ``alpha`` with ``x . y = x * (x^{-1} |> y)``, ``phi = beta``, ``|> = left``."""
    rep = validate_braided_groupoid(bg, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a braided groupoid", rep)
    g, mp = bg.g, bg.matched_pair
    n = g.n
    mul = [[g.m(x, mp.lt(g.inv[x], y)) if g.alpha[x] == g.alpha[y] else UNDEF
            for y in range(n)] for x in range(n)]
    # x |> inv(x) is the right inverse of x for the fiber product
    inv = [mp.lt(x, g.inv[x]) for x in range(n)]
    bundle = GroupBundle(g.n_base, g.alpha, mul, g.unit, inv)
    return PostGroupoid(bundle, g.beta, bg.left)


def solution_from_rb(r: RelativeRotaBaxter) -> BraidedQuiver:
    """``R_B(h, k) = (B(h) |> k, inv_B(B(h) |> k) *_B h *_B k)`` on the descendent groupoid."""
    rep = validate_rb(r, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a relative Rota-Baxter operator", rep)
    desc = descendent_groupoid(r)
    n = r.h.n
    left = [[UNDEF] * n for _ in range(n)]
    right = [[UNDEF] * n for _ in range(n)]
    for h, k in composable_pairs(desc):
        l = r.action.a(r.b[h], k)
        left[h][k] = l
        right[h][k] = desc.m(desc.m(desc.inv[l], h), k)
    return BraidedQuiver(desc.quiver, left, right)
