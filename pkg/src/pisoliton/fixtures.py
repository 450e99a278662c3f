"""Built-in inputs: the five-dimensional para-Sasaki-like example and a few
degenerate frames used as controls."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .frame import LieFrame
from .scalar import ParamSet
from .structure import PiStructure

EXAMPLE_NAME = "para-sasaki-5d"


def example_spec_path() -> Path:
    return Path(str(resources.files("pisoliton") / "data" / "para_sasaki_5d.pis"))


def _swap_phi(dim: int) -> list[list[int]]:
    """φ e_i = e_{i+n}, φ e_{i+n} = e_i for i = 1..n, φ e_0 = 0."""
    n = (dim - 1) // 2
    phi = [[0] * dim for _ in range(dim)]
    for i in range(1, n + 1):
        phi[i + n][i] = 1
        phi[i][i + n] = 1
    return phi


def example_frame(params: ParamSet | None = None) -> LieFrame:
    params = params or ParamSet(("p", "q"))
    return LieFrame.build(params, 5, {
        (0, 1): [0, 0, "p", -1, "q"],
        (0, 2): [0, "-p", 0, "-q", -1],
        (0, 3): [0, -1, "q", 0, "p"],
        (0, 4): [0, "-q", -1, "-p", 0],
    })


def example_structure(params: ParamSet | None = None) -> PiStructure:
    frame = example_frame(params)
    return PiStructure.build(frame, _swap_phi(5), [1, 0, 0, 0, 0], [1, 0, 0, 0, 0])


def abelian_structure(dim: int = 5, params: ParamSet | None = None) -> PiStructure:
    """Flat abelian frame carrying the standard Π-structure."""
    params = params or ParamSet()
    frame = LieFrame.build(params, dim)
    unit = [1] + [0] * (dim - 1)
    return PiStructure.build(frame, _swap_phi(dim), unit, unit)


def standard_phi(dim: int) -> list[list[int]]:
    return _swap_phi(dim)
