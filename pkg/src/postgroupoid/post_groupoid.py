"""Post-groupoids: the axiom engine, homomorphisms, section algebras, enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .core import (UNDEF, GroupBundle, InvalidStructure, MalformedInput, Table,
                   Undefined, ViolationReport, _read, as_table, as_vector, holds,
                   is_bijection, isomorphisms, scan, validate_group_bundle)


@dataclass(frozen=True)
class PostGroupoid:
    bundle: GroupBundle
    phi: tuple[int, ...]
    tri: Table

    def __post_init__(self):
        b = self.bundle
        phi = as_vector(self.phi, b.n, b.n_base, "phi")
        object.__setattr__(self, "phi", phi)
        pi = b.pi
        object.__setattr__(self, "tri", as_table(self.tri, b.n, b.n, b.n, "tri",
                                                 lambda x, y: phi[x] == pi[y]))

    @property
    def n(self) -> int:
        return self.bundle.n

    @property
    def pi(self) -> tuple[int, ...]:
        return self.bundle.pi

    def t(self, x: int, y: int) -> int:
        """``x |> y``; defined iff ``phi(x) == pi(y)``."""
        if self.phi[x] != self.bundle.pi[y]:
            raise Undefined((x, y))
        return _read(self.tri, x, y, "tri")

    def left(self, x: int) -> dict[int, int]:
        """The left multiplication ``L_x`` on the fiber over ``phi(x)``."""
        return {y: self.t(x, y) for y in self.bundle.fiber(self.phi[x])}

    def left_inverse(self, x: int, z: int) -> int:
        """``L_x^{-1}(z)`` for ``z`` in the fiber over ``pi(x)``."""
        for y in self.bundle.fiber(self.phi[x]):
            if self.t(x, y) == z:
                return y
        raise Undefined((x, z))

    def pairs(self) -> list[tuple[int, int]]:
        """The pullback ``{(x, y) : phi(x) == pi(y)}``, lexicographic."""
        fibers = self.bundle.fibers()
        return [(x, y) for x in range(self.n) for y in fibers[self.phi[x]]]

    def triples(self) -> list[tuple[int, int, int]]:
        fibers = self.bundle.fibers()
        return [(x, y, z) for x, y in self.pairs() for z in fibers[self.phi[y]]]


def _phi_unit(p, m):
    return p.phi[p.bundle.unit[m]] == m


def _tri_fiber(p, x, y):
    return p.pi[p.t(x, y)] == p.pi[x]


def _left_bijective(p, x):
    b = p.bundle
    return is_bijection(p.left(x), b.fiber(p.phi[x]), b.fiber(p.pi[x]))


def _axiom_i(p, x, y):
    return p.phi[p.bundle.m(x, p.t(x, y))] == p.phi[y]


def _axiom_ii(p, x, y, y2):
    b = p.bundle
    return p.t(x, b.m(y, y2)) == b.m(p.t(x, y), p.t(x, y2))


def _axiom_iii(p, x, y, z):
    return p.t(x, p.t(y, z)) == p.t(p.bundle.m(x, p.t(x, y)), z)


POST_RULES = {"phi_unit": _phi_unit, "tri_fiber": _tri_fiber, "left_bijective": _left_bijective,
              "axiom_i": _axiom_i, "axiom_ii": _axiom_ii, "axiom_iii": _axiom_iii}


def _distributivity_cases(p):
    fibers = p.bundle.fibers()
    for x in range(p.n):
        f = fibers[p.phi[x]]
        for y, y2 in itertools.product(f, f):
            yield x, y, y2


def validate_post_groupoid(p: PostGroupoid, max_witnesses: int | None = None) -> ViolationReport:
    rep = validate_group_bundle(p.bundle, max_witnesses)
    rep.violations = [("bundle." + r, w) for r, w in rep.violations]
    if not rep.ok:
        return rep
    lim = max_witnesses
    pairs = p.pairs()
    (scan(rep, "phi_unit", _phi_unit, p, ((m,) for m in range(p.bundle.n_base)), lim)
     and scan(rep, "tri_fiber", _tri_fiber, p, pairs, lim)
     and scan(rep, "left_bijective", _left_bijective, p, ((x,) for x in range(p.n)), lim)
     and scan(rep, "axiom_i", _axiom_i, p, pairs, lim)
     and scan(rep, "axiom_ii", _axiom_ii, p, _distributivity_cases(p), lim)
     and scan(rep, "axiom_iii", _axiom_iii, p, p.triples(), lim))
    if set(p.phi) != set(range(p.bundle.n_base)):
        rep.notes.append("phi is not surjective")
    rep.info["pairs"] = len(pairs)
    return rep


def check_rule(p: PostGroupoid, rule: str, witness: Sequence[int]) -> bool:
    """Replay one rule of :func:`validate_post_groupoid` at ``witness``."""
    from .core import BUNDLE_RULES
    if rule.startswith("bundle."):
        return holds(BUNDLE_RULES[rule[7:]], p.bundle, *witness)
    return holds(POST_RULES[rule], p, *witness)


def require_valid(p: PostGroupoid) -> None:
    rep = validate_post_groupoid(p, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a post-groupoid", rep)


def _unit_right(p, x):
    b = p.bundle
    return p.t(x, b.unit[p.phi[x]]) == b.unit[p.pi[x]]


def _unit_left(p, x):
    return p.t(p.bundle.unit[p.pi[x]], x) == x


UNIT_RULES = {"unit_right": _unit_right, "unit_left": _unit_left}


def check_unit_identities(p: PostGroupoid, max_witnesses: int | None = None) -> ViolationReport:
    rep = ViolationReport()
    elems = [(x,) for x in range(p.n)]
    (scan(rep, "unit_right", _unit_right, p, elems, max_witnesses)
     and scan(rep, "unit_left", _unit_left, p, elems, max_witnesses))
    return rep


def _hom_i(ctx, x):
    p, q, f = ctx
    return q.pi[f[x]] == p.pi[x] and q.phi[f[x]] == p.phi[x]


def _hom_ii(ctx, x, y):
    p, q, f = ctx
    return f[p.bundle.m(x, y)] == q.bundle.m(f[x], f[y])


def _hom_iii(ctx, x, y):
    p, q, f = ctx
    return f[p.t(x, y)] == q.t(f[x], f[y])


HOM_RULES = {"hom_i": _hom_i, "hom_ii": _hom_ii, "hom_iii": _hom_iii}


def check_post_homomorphism(p: PostGroupoid, q: PostGroupoid, psi: Sequence[int],
                            max_witnesses: int | None = None) -> ViolationReport:
    if p.bundle.n_base != q.bundle.n_base:
        raise MalformedInput("post-groupoids live over different bases")
    psi = as_vector(psi, p.n, q.n, "psi")
    ctx = (p, q, psi)
    rep = ViolationReport()
    (scan(rep, "hom_i", _hom_i, ctx, ((x,) for x in range(p.n)), max_witnesses)
     and scan(rep, "hom_ii", _hom_ii, ctx,
              (c for f in p.bundle.fibers() for c in itertools.product(f, f)), max_witnesses)
     and scan(rep, "hom_iii", _hom_iii, ctx, p.pairs(), max_witnesses))
    return rep


# -- sections --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SectionAlgebra:
    """Sections ``sigma: M -> G`` with pointwise product and induced ``|>``.

    Sections are ordered as ``itertools.product`` over the fibers, so the
    index of ``sigma`` is mixed-radix in the fiber positions of ``sigma(m)``.
    """
    post: PostGroupoid
    sections: np.ndarray  # (k, |M|) total-space indices
    mul: np.ndarray  # (k, k)
    tri: np.ndarray  # (k, k)
    bisection_mask: np.ndarray  # (k,) bool

    @property
    def size(self) -> int:
        return len(self.sections)

    def index_of(self, sigma: Sequence[int]) -> int:
        matches = np.flatnonzero((self.sections == np.asarray(sigma)).all(axis=1))
        if not len(matches):
            raise KeyError(tuple(sigma))
        return int(matches[0])

    def unit_index(self) -> int:
        return self.index_of(self.post.bundle.unit)

    def bijective_mask(self) -> np.ndarray:
        """Sections whose ``L_sigma`` permutes the whole section set."""
        srt = np.sort(self.tri, axis=1)
        return (srt == np.arange(self.size)).all(axis=1)

    def check_weak_laws(self, max_witnesses: int | None = None) -> ViolationReport:
        rep = ViolationReport()
        mul, tri = self.mul, self.tri
        for a in range(self.size):
            ta = tri[a]
            bad = np.argwhere(ta[mul] != mul[ta[:, None], ta[None, :]])
            for b, c in bad:
                rep.add("distributivity", (a, b, c))
                if rep.full(max_witnesses):
                    return rep
        for a in range(self.size):
            ta = tri[a]
            bad = np.argwhere(tri[mul[a, ta]] != ta[tri])
            for b, c in bad:
                rep.add("weight", (a, b, c))
                if rep.full(max_witnesses):
                    return rep
        rep.info["triples"] = self.size ** 3
        return rep

    def check_bisections(self) -> ViolationReport:
        """On bisections every ``L_sigma`` must permute the bisection set."""
        rep = ViolationReport()
        bis = np.flatnonzero(self.bisection_mask)
        bset = set(bis.tolist())
        for a in bis:
            image = self.tri[a, bis].tolist()
            if len(set(image)) != len(bis) or set(image) != bset:
                rep.add("bisection_left_bijective", (int(a),))
        sub = self.mul[np.ix_(bis, bis)]
        rep.info["bisections_closed_under_mul"] = bool(np.isin(sub, bis).all())
        gl = self.mul[bis[:, None], self.tri[np.ix_(bis, bis)]]
        rep.info["bisections_closed_under_star"] = bool(np.isin(gl, bis).all())
        return rep


def weak_law_holds(alg: SectionAlgebra, rule: str, a: int, b: int, c: int) -> bool:
    mul, tri = alg.mul, alg.tri
    if rule == "distributivity":
        return tri[a, mul[b, c]] == mul[tri[a, b], tri[a, c]]
    return tri[mul[a, tri[a, b]], c] == tri[a, tri[b, c]]


def section_algebra(p: PostGroupoid, cap: int = 10**6) -> SectionAlgebra:
    b = p.bundle
    fibers = b.fibers()
    sizes = [len(f) for f in fibers]
    k = prod(sizes)
    if k > cap:
        raise MemoryError(f"{k} sections exceed the cap of {cap}")
    nm = b.n_base
    pos = np.zeros(b.n, dtype=np.int64)
    for f in fibers:
        for i, x in enumerate(f):
            pos[x] = i
    strides = np.array([prod(sizes[m + 1:]) for m in range(nm)], dtype=np.int64)
    digits = np.stack(np.unravel_index(np.arange(k), sizes), axis=1) if nm else np.zeros((1, 0))
    fib_arr = [np.asarray(f, dtype=np.int64) for f in fibers]
    sections = np.stack([fib_arr[m][digits[:, m]] for m in range(nm)], axis=1)

    bmul = np.asarray(b.mul, dtype=np.int64)
    btri = np.asarray(p.tri, dtype=np.int64)
    phi = np.asarray(p.phi, dtype=np.int64)

    mul = np.zeros((k, k), dtype=np.int64)
    tri = np.zeros((k, k), dtype=np.int64)
    for m in range(nm):
        col = sections[:, m]
        prodm = bmul[col[:, None], col[None, :]]
        target = sections.T[phi[col]]  # row i: sigma_2 evaluated at phi(sigma_1(m)), all sigma_2
        trim = btri[col[:, None], target]
        if (prodm < 0).any() or (trim < 0).any():
            raise Undefined("section tables hit an undefined entry")
        mul += pos[prodm] * strides[m]
        tri += pos[trim] * strides[m]
    composite = phi[sections]
    mask = (np.sort(composite, axis=1) == np.arange(nm)).all(axis=1)
    return SectionAlgebra(p, sections, mul, tri, mask)


# -- enumeration -----------------------------------------------------------

@dataclass
class EnumerationResult:
    structures: list[PostGroupoid] = field(default_factory=list)
    partial: bool = False
    nodes: int = 0

    @property
    def count(self) -> int:
        return len(self.structures)


def enumerate_post_structures(b: GroupBundle, phi: Sequence[int],
                              budget: int | None = 10**6) -> EnumerationResult:
    """Every ``|>`` making ``(b, phi, |>)`` a post-groupoid.

    Each ``L_x`` ranges over group isomorphisms between fibers, the only
    candidates bijectivity plus distributivity allow; axioms (i) and (iii)
    prune the search.
    """
    rep = validate_group_bundle(b, max_witnesses=1)
    if not rep.ok:
        raise InvalidStructure("not a group bundle", rep)
    phi = as_vector(phi, b.n, b.n_base, "phi")
    for m in range(b.n_base):
        if phi[b.unit[m]] != m:
            raise InvalidStructure(f"phi does not fix the unit over {m}")

    fibers = b.fibers()
    groups = [b.fiber_group(m) for m in range(b.n_base)]
    iso_cache: dict[tuple[int, int], list[dict[int, int]]] = {}

    def candidates(src: int, dst: int) -> list[dict[int, int]]:
        if (src, dst) not in iso_cache:
            (gs, es), (gd, ed) = groups[src], groups[dst]
            iso_cache[src, dst] = [{es[i]: ed[j] for i, j in enumerate(f)}
                                   for f in isomorphisms(gs, gd)]
        return iso_cache[src, dst]

    n = b.n
    pi = b.pi
    assigned: list[dict[int, int] | None] = [None] * n
    result = EnumerationResult()

    def consistent(k: int) -> bool:
        lk = assigned[k]
        for y in fibers[phi[k]]:
            if phi[b.m(k, lk[y])] != phi[y]:
                return False
        for x in range(k + 1):
            lx = assigned[x]
            for y in fibers[phi[x]]:
                if y > k:
                    continue
                mu = b.m(x, lx[y])
                if mu > k or k not in (x, y, mu):
                    continue
                ly, lmu = assigned[y], assigned[mu]
                for z in fibers[phi[y]]:
                    if lx[ly[z]] != lmu[z]:
                        return False
        return True

    def search(k: int) -> bool:
        if k == n:
            tri = [[UNDEF] * n for _ in range(n)]
            for x in range(n):
                for y, v in assigned[x].items():
                    tri[x][y] = v
            result.structures.append(PostGroupoid(b, phi, tri))
            return True
        for cand in candidates(phi[k], pi[k]):
            result.nodes += 1
            if budget is not None and result.nodes > budget:
                result.partial = True
                return False
            assigned[k] = cand
            if consistent(k) and not search(k + 1):
                return False
        assigned[k] = None
        return True

    search(0)
    result.structures.sort(key=lambda p: p.tri)
    return result
