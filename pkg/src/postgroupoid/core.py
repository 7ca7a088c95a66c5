"""Finite groups, group bundles, groupoids and quivers stored as index tables.

Elements of every carrier are the integers ``0..n-1``.  Partial tables hold
``UNDEF`` (-1) outside their domain of definition.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

UNDEF = -1

Table = tuple[tuple[int, ...], ...]


class MalformedInput(ValueError):
    """Tables of the wrong shape, out-of-range entries, misplaced sentinels."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class TableError(RuntimeError):
    """A partial table holds the sentinel at a pair where it must be defined."""


class Undefined(LookupError):
    """A lookup outside the domain of a partial operation."""


class InvalidStructure(ValueError):
    """Input to a construction fails the axioms the construction needs."""

    def __init__(self, message: str, report: "ViolationReport | None" = None):
        if report is not None and report.violations:
            rule, wit = report.violations[0]
            message = f"{message} (first violation: {rule} {' '.join(map(str, wit))})"
        super().__init__(message)
        self.report = report


@dataclass
class ViolationReport:
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, witness: Sequence[int]) -> None:
        self.violations.append((rule, tuple(int(w) for w in witness)))

    def extend(self, other: "ViolationReport", prefix: str = "") -> None:
        self.violations.extend((prefix + r, w) for r, w in other.violations)
        self.notes.extend(other.notes)

    def full(self, limit: int | None) -> bool:
        return limit is not None and len(self.violations) >= limit

    def rules(self) -> set[str]:
        return {r for r, _ in self.violations}

    def lines(self) -> list[str]:
        return [" ".join([r, *map(str, w)]) for r, w in self.violations]

    def __bool__(self) -> bool:
        return self.ok


def holds(pred: Callable[..., bool], *args) -> bool:
    """Evaluate a rule predicate; an undefined composite counts as failure."""
    try:
        return bool(pred(*args))
    except Undefined:
        return False


def scan(report: ViolationReport, rule: str, pred: Callable[..., bool], obj,
         cases: Iterable[tuple[int, ...]], limit: int | None) -> bool:
    """Check ``pred(obj, *case)`` over ``cases``; False once the limit is hit."""
    for case in cases:
        if not holds(pred, obj, *case):
            report.add(rule, case)
            if report.full(limit):
                return False
    return True


def worker_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("PGX_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise MalformedInput(f"PGX_THREADS must be an integer, got {cap!r}")
    return n


# -- table normalisation ---------------------------------------------------

def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def as_vector(values, size: int, bound: int, name: str) -> tuple[int, ...]:
    try:
        vals = tuple(values)
    except TypeError:
        raise MalformedInput("expected a sequence", name)
    if len(vals) != size:
        raise MalformedInput(f"expected length {size}, got {len(vals)}", name)
    for i, v in enumerate(vals):
        if not _is_int(v):
            v = getattr(v, "item", lambda: v)()
            if not _is_int(v):
                raise MalformedInput(f"entry {i} is not an integer", name)
        if not 0 <= v < bound:
            raise MalformedInput(f"entry {i} = {v} out of range [0, {bound})", name)
    return tuple(int(v) for v in vals)


def as_table(rows, n_rows: int, n_cols: int, bound: int, name: str,
             defined: Callable[[int, int], bool] | None = None) -> Table:
    """Normalise a 2-d table.

    With ``defined`` given, the table is partial: entries outside the domain
    must be ``UNDEF``; inside the domain ``UNDEF`` is tolerated here and
    raises ``TableError`` when read.
    """
    try:
        rows = [list(r) for r in rows]
    except TypeError:
        raise MalformedInput("expected a list of rows", name)
    if len(rows) != n_rows:
        raise MalformedInput(f"expected {n_rows} rows, got {len(rows)}", name)
    out = []
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise MalformedInput(f"row {i} has length {len(row)}, expected {n_cols}", name)
        clean = []
        for j, v in enumerate(row):
            if not _is_int(v):
                v = getattr(v, "item", lambda: v)()
                if not _is_int(v):
                    raise MalformedInput(f"entry [{i}][{j}] is not an integer", name)
            if defined is None:
                if not 0 <= v < bound:
                    raise MalformedInput(f"entry [{i}][{j}] = {v} out of range [0, {bound})", name)
            elif defined(i, j):
                if not UNDEF <= v < bound:
                    raise MalformedInput(f"entry [{i}][{j}] = {v} out of range [-1, {bound})", name)
            elif v != UNDEF:
                raise MalformedInput(f"entry [{i}][{j}] must be -1 (pair not composable)", name)
            clean.append(int(v))
        out.append(tuple(clean))
    return tuple(out)


def _read(table: Table, a: int, b: int, what: str) -> int:
    v = table[a][b]
    if v == UNDEF:
        raise TableError(f"{what} table undefined at ({a}, {b}) inside its domain")
    return v


def is_bijection(mapping: dict[int, int], domain: Iterable[int], codomain: Iterable[int]) -> bool:
    dom = list(domain)
    cod = set(codomain)
    image = [mapping[d] for d in dom]
    return len(dom) == len(cod) and set(image) == cod


# -- groups ----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    mul: Table
    identity: int
    inv: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mul)
        if n < 1:
            raise MalformedInput("a group needs at least one element", "mul")
        object.__setattr__(self, "mul", as_table(self.mul, n, n, n, "mul"))
        if not _is_int(self.identity) or not 0 <= self.identity < n:
            raise MalformedInput(f"identity {self.identity!r} out of range", "identity")
        object.__setattr__(self, "inv", as_vector(self.inv, n, n, "inv"))

    @property
    def n(self) -> int:
        return len(self.mul)

    def order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
            if k > self.n:
                raise MalformedInput(f"element {a} has no finite order")
        return k

    @classmethod
    def from_table(cls, mul) -> "FiniteGroup":
        mul = [list(r) for r in mul]
        n = len(mul)
        units = [e for e in range(n)
                 if all(mul[e][a] == a and mul[a][e] == a for a in range(n))]
        if not units:
            raise MalformedInput("no two-sided identity", "mul")
        e = units[0]
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if mul[a][b] == e and mul[b][a] == e]
            if not cands:
                raise MalformedInput(f"element {a} has no inverse", "mul")
            inv.append(cands[0])
        return cls(mul, e, inv)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], 0,
                       [(-a) % n for a in range(n)])


def symmetric(k: int) -> FiniteGroup:
    """Sym(k) on ``0..k-1``; elements are image tuples in lexicographic order.

    Composition is right-to-left: ``mul[p][q]`` is ``x -> p(q(x))``.
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FiniteGroup.from_table(mul)


def symmetric_elements(k: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(k)))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Elements ``(a, b)`` indexed ``a * |h| + b``."""
    n = g.n * h.n
    mul = [[g.mul[i // h.n][j // h.n] * h.n + h.mul[i % h.n][j % h.n] for j in range(n)]
           for i in range(n)]
    inv = [g.inv[i // h.n] * h.n + h.inv[i % h.n] for i in range(n)]
    return FiniteGroup(mul, g.identity * h.n + h.identity, inv)


def _group_assoc(g, a, b, c):
    return g.mul[g.mul[a][b]][c] == g.mul[a][g.mul[b][c]]


def _group_unit(g, a):
    return g.mul[g.identity][a] == a == g.mul[a][g.identity]


def _group_inverse(g, a):
    return g.mul[a][g.inv[a]] == g.identity == g.mul[g.inv[a]][a]


GROUP_RULES = {"associativity": _group_assoc, "unit": _group_unit, "inverse": _group_inverse}


def validate_group(g: FiniteGroup, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    r = range(g.n)
    (scan(rep, "unit", _group_unit, g, ((a,) for a in r), max_witnesses)
     and scan(rep, "inverse", _group_inverse, g, ((a,) for a in r), max_witnesses)
     and scan(rep, "associativity", _group_assoc, g, itertools.product(r, r, r), max_witnesses))
    return rep


def _generating_words(g: FiniteGroup) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Greedy generators plus a BFS spanning tree ``(elem, parent, gen_pos)``."""
    gens: list[int] = []
    reached = {g.identity}
    tree: list[tuple[int, int, int]] = []
    for cand in range(g.n):
        if cand in reached:
            continue
        gens.append(cand)
        reached = {g.identity}
        tree = []
        frontier = [g.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for k, s in enumerate(gens):
                    y = g.mul[x][s]
                    if y not in reached:
                        reached.add(y)
                        tree.append((y, x, k))
                        nxt.append(y)
            frontier = nxt
    return gens, tree


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All group isomorphisms ``g -> h`` as image tuples, lexicographically by generator images."""
    if g.n != h.n:
        return
    gens, tree = _generating_words(g)
    h_orders = [h.order(b) for b in range(h.n)]
    cands = [[b for b in range(h.n) if h_orders[b] == g.order(s)] for s in gens]
    for images in itertools.product(*cands):
        f = [UNDEF] * g.n
        f[g.identity] = h.identity
        for y, x, k in tree:
            f[y] = h.mul[f[x]][images[k]]
        if len(set(f)) != g.n:
            continue
        if all(f[g.mul[a][b]] == h.mul[f[a]][f[b]] for a in range(g.n) for b in range(g.n)):
            yield tuple(f)


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return next(isomorphisms(g, h), None) is not None


# -- group bundles ---------------------------------------------------------

@dataclass(frozen=True)
class GroupBundle:
    n_base: int
    pi: tuple[int, ...]
    mul: Table
    unit: tuple[int, ...]
    inv: tuple[int, ...]

    def __post_init__(self):
        if not _is_int(self.n_base) or self.n_base < 1:
            raise MalformedInput("base must have at least one point", "n_base")
        n = len(self.pi)
        pi = as_vector(self.pi, n, self.n_base, "pi")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "mul", as_table(self.mul, n, n, n, "mul",
                                                 lambda a, b: pi[a] == pi[b]))
        object.__setattr__(self, "unit", as_vector(self.unit, self.n_base, n, "unit"))
        object.__setattr__(self, "inv", as_vector(self.inv, n, n, "inv"))

    @property
    def n(self) -> int:
        return len(self.pi)

    def m(self, a: int, b: int) -> int:
        if self.pi[a] != self.pi[b]:
            raise Undefined((a, b))
        return _read(self.mul, a, b, "bundle mul")

    def fiber(self, base_point: int) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if self.pi[x] == base_point)

    def fibers(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.n_base)]
        for x, p in enumerate(self.pi):
            out[p].append(x)
        return [tuple(f) for f in out]

    def fiber_group(self, base_point: int) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The fiber as a group on local indices, with the local->global list."""
        elems = self.fiber(base_point)
        if not elems:
            raise MalformedInput(f"fiber over {base_point} is empty", "pi")
        loc = {x: i for i, x in enumerate(elems)}
        try:
            mul = [[loc[self.m(a, b)] for b in elems] for a in elems]
            grp = FiniteGroup(mul, loc[self.unit[base_point]], [loc[self.inv[a]] for a in elems])
        except KeyError:
            raise Undefined(base_point)
        return grp, elems


def product_bundle(n_base: int, g: FiniteGroup) -> GroupBundle:
    """Trivial bundle ``M x G`` with ``(m, g)`` at index ``m * |G| + g``."""
    k = g.n
    n = n_base * k
    pi = [x // k for x in range(n)]
    mul = [[(a // k) * k + g.mul[a % k][b % k] if a // k == b // k else UNDEF
            for b in range(n)] for a in range(n)]
    unit = [m * k + g.identity for m in range(n_base)]
    inv = [(x // k) * k + g.inv[x % k] for x in range(n)]
    return GroupBundle(n_base, pi, mul, unit, inv)


def bundle_from_group(g: FiniteGroup) -> GroupBundle:
    return product_bundle(1, g)


def _bundle_unit(b, m):
    u = b.unit[m]
    return b.pi[u] == m and all(b.m(u, x) == x == b.m(x, u) for x in b.fiber(m))


def _bundle_closure(b, x, y):
    return b.pi[b.m(x, y)] == b.pi[x]


def _bundle_inverse(b, x):
    y = b.inv[x]
    u = b.unit[b.pi[x]]
    return b.pi[y] == b.pi[x] and b.m(x, y) == u == b.m(y, x)


def _bundle_assoc(b, x, y, z):
    return b.m(b.m(x, y), z) == b.m(x, b.m(y, z))


BUNDLE_RULES = {"unit": _bundle_unit, "closure": _bundle_closure,
                "inverse": _bundle_inverse, "associativity": _bundle_assoc}


def _fiber_pairs(b: GroupBundle):
    for f in b.fibers():
        yield from itertools.product(f, f)


def _fiber_triples(b: GroupBundle):
    for f in b.fibers():
        yield from itertools.product(f, f, f)


def validate_group_bundle(b: GroupBundle, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    fibers = b.fibers()
    for m, f in enumerate(fibers):
        if not f:
            rep.add("nonempty", (m,))
    if rep.ok:
        (scan(rep, "unit", _bundle_unit, b, ((m,) for m in range(b.n_base)), max_witnesses)
         and scan(rep, "closure", _bundle_closure, b, _fiber_pairs(b), max_witnesses)
         and scan(rep, "inverse", _bundle_inverse, b, ((x,) for x in range(b.n)), max_witnesses)
         and scan(rep, "associativity", _bundle_assoc, b, _fiber_triples(b), max_witnesses))
    if rep.ok:
        groups = [b.fiber_group(m)[0] for m in range(b.n_base)]
        rep.info["fibers_isomorphic"] = all(are_isomorphic(groups[0], h) for h in groups[1:])
    else:
        rep.info["fibers_isomorphic"] = None
    return rep


# -- groupoids -------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    n_base: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if not _is_int(self.n_base) or self.n_base < 1:
            raise MalformedInput("base must have at least one point", "n_base")
        n = len(self.alpha)
        object.__setattr__(self, "alpha", as_vector(self.alpha, n, self.n_base, "alpha"))
        object.__setattr__(self, "beta", as_vector(self.beta, n, self.n_base, "beta"))

    @property
    def n(self) -> int:
        return len(self.alpha)


def composable_pairs(q) -> list[tuple[int, int]]:
    """Pairs ``(x, y)`` with ``beta(x) == alpha(y)``, lexicographic."""
    by_source: dict[int, list[int]] = {}
    for y, a in enumerate(q.alpha):
        by_source.setdefault(a, []).append(y)
    return [(x, y) for x in range(q.n) for y in by_source.get(q.beta[x], ())]


def composable_triples(q) -> list[tuple[int, int, int]]:
    by_source: dict[int, list[int]] = {}
    for y, a in enumerate(q.alpha):
        by_source.setdefault(a, []).append(y)
    return [(x, y, z) for x, y in composable_pairs(q) for z in by_source.get(q.beta[y], ())]


@dataclass(frozen=True)
class Groupoid:
    n_base: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    mul: Table
    unit: tuple[int, ...]
    inv: tuple[int, ...]

    def __post_init__(self):
        if not _is_int(self.n_base) or self.n_base < 1:
            raise MalformedInput("base must have at least one point", "n_base")
        n = len(self.alpha)
        alpha = as_vector(self.alpha, n, self.n_base, "alpha")
        beta = as_vector(self.beta, n, self.n_base, "beta")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "mul", as_table(self.mul, n, n, n, "mul",
                                                 lambda a, b: beta[a] == alpha[b]))
        object.__setattr__(self, "unit", as_vector(self.unit, self.n_base, n, "unit"))
        object.__setattr__(self, "inv", as_vector(self.inv, n, n, "inv"))

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def quiver(self) -> Quiver:
        return Quiver(self.n_base, self.alpha, self.beta)

    def m(self, a: int, b: int) -> int:
        if self.beta[a] != self.alpha[b]:
            raise Undefined((a, b))
        return _read(self.mul, a, b, "groupoid mul")


def group_as_groupoid(g: FiniteGroup) -> Groupoid:
    n = g.n
    return Groupoid(1, [0] * n, [0] * n, g.mul, [g.identity], g.inv)


def pair_groupoid(k: int) -> Groupoid:
    """Arrows ``(i, j)`` at index ``i * k + j``, from ``i`` to ``j``."""
    n = k * k
    mul = [[(a // k) * k + b % k if a % k == b // k else UNDEF for b in range(n)]
           for a in range(n)]
    return Groupoid(k, [a // k for a in range(n)], [a % k for a in range(n)], mul,
                    [i * k + i for i in range(k)], [(a % k) * k + a // k for a in range(n)])


def _gpd_unit_section(g, m):
    u = g.unit[m]
    return g.alpha[u] == m == g.beta[u]


def _gpd_ends(g, x, y):
    z = g.m(x, y)
    return g.alpha[z] == g.alpha[x] and g.beta[z] == g.beta[y]


def _gpd_assoc(g, x, y, z):
    return g.m(g.m(x, y), z) == g.m(x, g.m(y, z))


def _gpd_unitality(g, x):
    return g.m(g.unit[g.alpha[x]], x) == x == g.m(x, g.unit[g.beta[x]])


def _gpd_invertibility(g, x):
    y = g.inv[x]
    return g.m(x, y) == g.unit[g.alpha[x]] and g.m(y, x) == g.unit[g.beta[x]]


GROUPOID_RULES = {"unit_section": _gpd_unit_section, "source_target": _gpd_ends,
                  "associativity": _gpd_assoc, "unitality": _gpd_unitality,
                  "invertibility": _gpd_invertibility}


def validate_groupoid(g: Groupoid, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    (scan(rep, "unit_section", _gpd_unit_section, g, ((m,) for m in range(g.n_base)), max_witnesses)
     and scan(rep, "source_target", _gpd_ends, g, composable_pairs(g), max_witnesses)
     and scan(rep, "associativity", _gpd_assoc, g, composable_triples(g), max_witnesses)
     and scan(rep, "unitality", _gpd_unitality, g, ((x,) for x in range(g.n)), max_witnesses)
     and scan(rep, "invertibility", _gpd_invertibility, g, ((x,) for x in range(g.n)), max_witnesses))
    for name, ends in (("alpha", g.alpha), ("beta", g.beta)):
        if set(ends) != set(range(g.n_base)):
            rep.notes.append(f"{name} is not surjective")
    return rep


def _hom_ends(ctx, x):
    g, h, f = ctx
    return h.alpha[f[x]] == g.alpha[x] and h.beta[f[x]] == g.beta[x]


def _hom_mul(ctx, x, y):
    g, h, f = ctx
    return f[g.m(x, y)] == h.m(f[x], f[y])


def check_groupoid_homomorphism(g: Groupoid, h: Groupoid, f: Sequence[int],
                                max_witnesses: int | None = None) -> ViolationReport:
    """Base-preserving groupoid homomorphism check for ``f: g -> h``."""
    if g.n_base != h.n_base:
        raise MalformedInput("groupoids have different bases")
    f = as_vector(f, g.n, h.n, "map")
    ctx = (g, h, f)
    rep = ViolationReport()
    (scan(rep, "hom_ends", _hom_ends, ctx, ((x,) for x in range(g.n)), max_witnesses)
     and scan(rep, "hom_mul", _hom_mul, ctx, composable_pairs(g), max_witnesses))
    return rep


def groupoid_from_action(g: FiniteGroup, n_base: int, act: Sequence[Sequence[int]]) -> Groupoid:
    """Action groupoid of a right action: ``(m, a) (n, b) = (m, a b)`` for ``n = act(m, a)``."""
    k = g.n
    n = n_base * k
    beta = [act[x // k][x % k] for x in range(n)]
    mul = [[(a // k) * k + g.mul[a % k][b % k] if beta[a] == b // k else UNDEF
            for b in range(n)] for a in range(n)]
    unit = [m * k + g.identity for m in range(n_base)]
    inv = [beta[x] * k + g.inv[x % k] for x in range(n)]
    return Groupoid(n_base, [x // k for x in range(n)], beta, mul, unit, inv)


def check_right_action(g: FiniteGroup, n_base: int, act) -> ViolationReport:
    """Right action laws ``act(act(m,a),b) = act(m, a b)`` and ``act(m,e) = m``."""
    act = as_table(act, n_base, g.n, n_base, "act")
    rep = ViolationReport()
    for m in range(n_base):
        if act[m][g.identity] != m:
            rep.add("action_unit", (m,))
    for m in range(n_base):
        for a in range(g.n):
            for b in range(g.n):
                if act[act[m][a]][b] != act[m][g.mul[a][b]]:
                    rep.add("action_compat", (m, a, b))
    return rep
