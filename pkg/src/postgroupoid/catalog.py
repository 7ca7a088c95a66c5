"""Desk-scale instances used by the test suite, the scripts and the golden files."""
from __future__ import annotations

from typing import NamedTuple

from .constructions import from_group_action
from .core import FiniteGroup, cyclic, direct_product, symmetric, symmetric_elements
from .post_groupoid import PostGroupoid


class ActionInstance(NamedTuple):
    name: str
    group: FiniteGroup
    n_base: int
    act: list[list[int]]

    def post_groupoid(self) -> PostGroupoid:
        return from_group_action(self.group, self.n_base, self.act)


def klein() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


def s3_right_action() -> list[list[int]]:
    """``act(m, p) = p^{-1}(m)``, a right action under right-to-left composition."""
    perms = symmetric_elements(3)
    return [[p.index(m) for p in perms] for m in range(3)]


def addition_action(n_base: int, k: int) -> list[list[int]]:
    return [[(m + g) % n_base for g in range(k)] for m in range(n_base)]


def point_groups() -> dict[str, FiniteGroup]:
    return {"z2": cyclic(2), "z3": cyclic(3), "z4": cyclic(4), "v4": klein(), "s3": symmetric(3)}


def catalog() -> dict[str, ActionInstance]:
    out = {
        "z3_on_z3": ActionInstance("z3_on_z3", cyclic(3), 3, addition_action(3, 3)),
        "s3_on_3": ActionInstance("s3_on_3", symmetric(3), 3, s3_right_action()),
        "z2_on_z2": ActionInstance("z2_on_z2", cyclic(2), 2, addition_action(2, 2)),
    }
    for name, g in point_groups().items():
        out[f"{name}_point"] = ActionInstance(f"{name}_point", g, 1, [[0] * g.n])
    return out


def catalog_post_groupoids() -> dict[str, PostGroupoid]:
    return {name: inst.post_groupoid() for name, inst in catalog().items()}
