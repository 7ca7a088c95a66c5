"""Post-groupoids from group actions and post-group actions; the Grossman-Larson groupoid."""
from __future__ import annotations

from typing import Sequence

from .core import (UNDEF, FiniteGroup, Groupoid, InvalidStructure, as_table,
                   check_right_action, groupoid_from_action, product_bundle)
from .post_groupoid import PostGroupoid, require_valid


def from_group_action(g: FiniteGroup, n_base: int, act: Sequence[Sequence[int]]) -> PostGroupoid:
    """``(m, a) |> (n, b) = (m, b)`` on ``M x G`` with ``phi(m, a) = act(m, a)``."""
    rep = check_right_action(g, n_base, act)
    if not rep.ok:
        raise InvalidStructure("not a right action", rep)
    k = g.n
    n = n_base * k
    phi = [act[x // k][x % k] for x in range(n)]
    tri = [[(x // k) * k + y % k if phi[x] == y // k else UNDEF for y in range(n)]
           for x in range(n)]
    return PostGroupoid(product_bundle(n_base, g), phi, tri)


def grossman_larson_group(pg: PostGroupoid) -> FiniteGroup:
    """The group ``a * b = a (a |> b)`` of a post-group (one-point base)."""
    if pg.bundle.n_base != 1:
        raise InvalidStructure("expected a post-group (one-point base)")
    return FiniteGroup.from_table(grossman_larson(pg).mul)


def from_post_group_action(pg: PostGroupoid, n_base: int,
                           act: Sequence[Sequence[int]]) -> PostGroupoid:
    """``(m, a) |> (n, b) = (m, a |> b)`` for a right action of the Grossman-Larson group."""
    require_valid(pg)
    star = grossman_larson_group(pg)
    rep = check_right_action(star, n_base, act)
    if not rep.ok:
        raise InvalidStructure("not a right action of the Grossman-Larson group", rep)
    # on a one-point base the total space is the group itself
    k = pg.n
    n = n_base * k
    phi = [act[x // k][x % k] for x in range(n)]
    tri = [[(x // k) * k + pg.tri[x % k][y % k] if phi[x] == y // k else UNDEF
            for y in range(n)] for x in range(n)]
    group = FiniteGroup(pg.bundle.mul, pg.bundle.unit[0], pg.bundle.inv)
    return PostGroupoid(product_bundle(n_base, group), phi, tri)


def grossman_larson(p: PostGroupoid) -> Groupoid:
    """Groupoid ``(alpha=pi, beta=phi)`` with ``x * y = x (x |> y)``."""
    require_valid(p)
    b = p.bundle
    n = p.n
    mul = [[b.m(x, p.t(x, y)) if p.phi[x] == b.pi[y] else UNDEF for y in range(n)]
           for x in range(n)]
    inv = [p.left_inverse(x, b.inv[x]) for x in range(n)]
    return Groupoid(b.n_base, b.pi, p.phi, mul, b.unit, inv)


def gl_action(p: PostGroupoid):
    """``|>`` as an action of the Grossman-Larson groupoid on the bundle."""
    from .rota_baxter import GroupoidAction
    return GroupoidAction(grossman_larson(p), p.bundle, p.tri)


def action_groupoid(g: FiniteGroup, n_base: int, act) -> Groupoid:
    act = as_table(act, n_base, g.n, n_base, "act")
    return groupoid_from_action(g, n_base, act)
