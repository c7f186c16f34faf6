"""Homotopy types of plane-curve complements from group shape and Euler characteristic.

For a curve ``D`` in the projective plane, ``chi(P^2 - D) = 3 - chi(D)``.  A
free fundamental group of rank r forces a wedge of r circles and s
2-spheres; a finite cyclic group Z_d forces a pseudo-projective plane
``S^1 u_d e^2`` wedged with s spheres.  For ``F_r * Z_p * Z_q`` only the
higher homotopy groups are pinned down, through a free finite cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .covers import OrbifoldCover, orbifold_cover_invariants
from .presentation import GroupShape


class InconsistentInput(ValueError):
    """The (group, Euler characteristic) pair cannot come from a 2-complex."""


class UnsupportedShape(ValueError):
    """The group shape lies outside what the wedge formulas cover."""


@dataclass(frozen=True)
class WedgeType:
    circles: int = 0
    pseudo_plane_order: int | None = None
    spheres: int = 0

    def __post_init__(self):
        if self.circles < 0 or self.spheres < 0:
            raise InconsistentInput("circle and sphere counts must be nonnegative")
        if self.pseudo_plane_order is not None:
            if self.pseudo_plane_order < 2:
                raise ValueError("pseudo-projective plane order must be at least 2")
            if self.circles:
                raise ValueError("a pseudo-projective plane summand excludes free circles")

    @property
    def euler_characteristic(self) -> int:
        # P_d has one cell in each dimension 0, 1, 2.
        base = 1 if self.pseudo_plane_order is not None else 1 - self.circles
        return base + self.spheres

    def describe(self) -> str:
        parts = []
        if self.pseudo_plane_order is not None:
            parts.append(f"P_{self.pseudo_plane_order}")
        parts += ["S^1"] * self.circles + ["S^2"] * self.spheres
        return " v ".join(parts) if parts else "point"

    def to_json(self) -> dict:
        return {"circles": self.circles, "pseudo_plane": self.pseudo_plane_order, "spheres": self.spheres}


def smooth_curve_euler(degree: int) -> int:
    """Euler characteristic of a smooth plane curve of the given degree."""
    return 2 - (degree - 1) * (degree - 2)


def wedge_type(shape: GroupShape, chi_curve: int) -> WedgeType:
    chi_complement = 3 - chi_curve
    if shape.kind == "free":
        spheres = chi_complement + shape.rank - 1
        kw = dict(circles=shape.rank)
    elif shape.kind == "cyclic":
        spheres = chi_complement - 1
        kw = dict(pseudo_plane_order=shape.order)
    else:
        raise UnsupportedShape(
            f"group shape {shape} is neither free nor finite cyclic; "
            "only the higher homotopy groups are determined (see homotopy_group_profile)"
        )
    if spheres < 0:
        raise InconsistentInput(
            f"group {shape} with chi(D) = {chi_curve} would need {spheres} spheres"
        )
    result = WedgeType(spheres=spheres, **kw)
    assert result.euler_characteristic == chi_complement
    return result


def homotopy_group_profile(free_rank: int, orders: Sequence[int], chi_curve: int) -> OrbifoldCover:
    """Cover data fixing all higher homotopy groups for ``F_r * Z_p * Z_q``.

    ``orders`` lists at most two coprime finite orders; missing ones (and
    order 1) mean a trivial factor.
    """
    orders = list(orders)
    if len(orders) > 2:
        raise UnsupportedShape(f"{len(orders)} finite cyclic factors; at most two are possible")
    p, q = (orders + [1, 1])[:2]
    if p < 1 or q < 1:
        raise ValueError("finite orders must be positive")
    if gcd(p, q) != 1:
        raise UnsupportedShape(f"orders {p} and {q} are not coprime")
    return orbifold_cover_invariants(free_rank, p, q, 3 - chi_curve)


def profile_for_shape(shape: GroupShape, chi_curve: int) -> OrbifoldCover:
    if shape.kind == "free":
        return homotopy_group_profile(shape.rank, [], chi_curve)
    if shape.kind in ("cyclic", "free_product_of_cyclics"):
        return homotopy_group_profile(shape.rank, shape.orders, chi_curve)
    raise UnsupportedShape("unresolved group shape")
