"""Dense frame tensors with exact Scalar components.

Components are held in a numpy object array of shape ``(dim,) * rank``,
indexed row-major.  Index 0 is the Reeb direction in every shipped input.
"""

from __future__ import annotations

import itertools
from enum import Enum
from typing import Callable, Iterator, Sequence

import numpy as np

from .scalar import ParamSet, Scalar, as_scalar


class IndexKind(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


L = IndexKind.LOWER
U = IndexKind.UPPER


class TensorShapeError(ValueError):
    pass


def _object_array(shape) -> np.ndarray:
    return np.empty(shape, dtype=object)


class FrameTensor:
    """Immutable multi-index array of Scalars over an n-dimensional frame."""

    __slots__ = ("params", "dim", "signature", "_data")

    def __init__(self, params: ParamSet, dim: int, signature: Sequence[IndexKind], data: np.ndarray):
        signature = tuple(IndexKind(s) for s in signature)
        if data.shape != (dim,) * len(signature):
            raise TensorShapeError(f"component array shape {data.shape} does not match dim={dim}, rank={len(signature)}")
        data = data.copy()
        data.setflags(write=False)
        self.params = params
        self.dim = dim
        self.signature = signature
        self._data = data

    # construction

    @classmethod
    def from_function(cls, params: ParamSet, dim: int, signature: Sequence[IndexKind],
                      fn: Callable[..., object]) -> "FrameTensor":
        rank = len(signature)
        data = _object_array((dim,) * rank)
        for idx in itertools.product(range(dim), repeat=rank):
            data[idx] = as_scalar(fn(*idx), params)
        return cls(params, dim, signature, data)

    @classmethod
    def zeros(cls, params: ParamSet, dim: int, signature: Sequence[IndexKind]) -> "FrameTensor":
        zero = Scalar.zero(params)
        return cls.from_function(params, dim, signature, lambda *idx: zero)

    @classmethod
    def from_nested(cls, params: ParamSet, signature: Sequence[IndexKind], values) -> "FrameTensor":
        """Build from nested lists of ints/Fractions/strings/Scalars."""
        arr = np.array(values, dtype=object)
        rank = len(signature)
        if arr.ndim != rank:
            raise TensorShapeError(f"expected rank {rank}, got nesting depth {arr.ndim}")
        dim = arr.shape[0] if rank else 1
        data = _object_array(arr.shape)
        for idx in itertools.product(range(dim), repeat=rank):
            data[idx] = as_scalar(arr[idx], params)
        return cls(params, dim, signature, data)

    @classmethod
    def scalar(cls, value: Scalar) -> "FrameTensor":
        data = _object_array(())
        data[()] = value
        return cls(value.params, 1, (), data)

    @classmethod
    def identity(cls, params: ParamSet, dim: int) -> "FrameTensor":
        return cls.from_function(params, dim, (U, L), lambda i, j: int(i == j))

    # access

    @property
    def rank(self) -> int:
        return len(self.signature)

    @property
    def array(self) -> np.ndarray:
        return self._data

    def __getitem__(self, idx) -> Scalar:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self._data[idx]

    def value(self) -> Scalar:
        if self.rank:
            raise TensorShapeError("value() only applies to rank-0 tensors")
        return self._data[()]

    def indices(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=self.rank)

    def items(self):
        for idx in self.indices():
            yield idx, self._data[idx]

    def nonzero(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return [(idx, v) for idx, v in self.items() if not v.is_zero()]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self._data.flat)

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self._data.flat)

    def first_difference(self, other: "FrameTensor") -> tuple[int, ...] | None:
        """Lexicographically first multi-index where the components differ."""
        self._check_compatible(other)
        for idx in self.indices():
            if self._data[idx] != other._data[idx]:
                return idx
        return None

    def first_nonzero(self) -> tuple[int, ...] | None:
        for idx, v in self.items():
            if not v.is_zero():
                return idx
        return None

    def map(self, fn: Callable[[Scalar], Scalar], params: ParamSet | None = None) -> "FrameTensor":
        """Apply ``fn`` entrywise; pass ``params`` when ``fn`` changes the parameter set."""
        data = _object_array(self._data.shape)
        for idx in self.indices():
            data[idx] = fn(self._data[idx])
        return FrameTensor(self.params if params is None else params, self.dim, self.signature, data)

    def embed(self, params: ParamSet) -> "FrameTensor":
        return FrameTensor.from_function(params, self.dim, self.signature,
                                         lambda *idx: self._data[idx].embed(params))

    def to_nested(self):
        return self._data.tolist() if self.rank else self._data[()]

    # algebra

    def _check_compatible(self, other: "FrameTensor"):
        if self.dim != other.dim or self.signature != other.signature:
            raise TensorShapeError(
                f"incompatible tensors: dim {self.dim}/{other.dim}, "
                f"signature {self.signature}/{other.signature}")

    def __add__(self, other: "FrameTensor") -> "FrameTensor":
        self._check_compatible(other)
        return FrameTensor(self.params, self.dim, self.signature, self._data + other._data)

    def __sub__(self, other: "FrameTensor") -> "FrameTensor":
        self._check_compatible(other)
        return FrameTensor(self.params, self.dim, self.signature, self._data - other._data)

    def __neg__(self) -> "FrameTensor":
        return FrameTensor(self.params, self.dim, self.signature, -self._data)

    def scale(self, s) -> "FrameTensor":
        s = as_scalar(s, self.params)
        return self.map(lambda v: s * v)

    def __rmul__(self, s) -> "FrameTensor":
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrameTensor):
            return NotImplemented
        return (self.dim == other.dim and self.signature == other.signature
                and all(a == b for a, b in zip(self._data.flat, other._data.flat)))

    __hash__ = None

    def permute(self, order: Sequence[int]) -> "FrameTensor":
        """Reorder slots: result slot ``k`` is input slot ``order[k]``."""
        data = np.transpose(self._data, order)
        sig = tuple(self.signature[o] for o in order)
        return FrameTensor(self.params, self.dim, sig, np.ascontiguousarray(data))

    def __repr__(self) -> str:
        sig = "".join("^" if s is U else "_" for s in self.signature)
        return f"FrameTensor(dim={self.dim}, sig='{sig}', nonzero={len(self.nonzero())})"


def _wrap(result, params: ParamSet, dim: int, signature) -> FrameTensor:
    if not isinstance(result, np.ndarray):
        arr = _object_array(())
        arr[()] = result
        result = arr
    # np.dot over object arrays leaves int 0 when a summed axis is empty
    if result.size and not isinstance(result.flat[0], Scalar):
        result = np.vectorize(lambda v: as_scalar(v, params), otypes=[object])(result)
    return FrameTensor(params, dim, signature, result)


def tensor_product(a: FrameTensor, b: FrameTensor) -> FrameTensor:
    if a.params != b.params:
        raise TensorShapeError("tensor product across different parameter sets")
    if a.rank and b.rank and a.dim != b.dim:
        raise TensorShapeError(f"dimension mismatch {a.dim} vs {b.dim}")
    dim = a.dim if a.rank else b.dim
    data = np.multiply.outer(a.array, b.array)
    return _wrap(data, a.params, dim, a.signature + b.signature)


def contract(t: FrameTensor, slot_a: int, slot_b: int) -> FrameTensor:
    """Trace over one upper and one lower slot."""
    r = t.rank
    if not (0 <= slot_a < r and 0 <= slot_b < r):
        raise TensorShapeError(f"slots {slot_a},{slot_b} out of range for rank {r}")
    if slot_a == slot_b:
        raise TensorShapeError("cannot contract a slot with itself")
    if t.signature[slot_a] == t.signature[slot_b]:
        raise TensorShapeError("contraction needs one upper and one lower slot; raise or lower first")
    moved = np.moveaxis(t.array, (slot_a, slot_b), (-2, -1))
    total = moved[..., 0, 0]
    for k in range(1, t.dim):
        total = total + moved[..., k, k]
    sig = tuple(s for i, s in enumerate(t.signature) if i not in (slot_a, slot_b))
    return _wrap(total, t.params, t.dim, sig)


def _apply_metric(t: FrameTensor, slot: int, m: FrameTensor, new_kind: IndexKind) -> FrameTensor:
    if m.rank != 2 or m.dim != t.dim:
        raise TensorShapeError(f"metric of dim {m.dim} cannot act on tensor of dim {t.dim}")
    if not 0 <= slot < t.rank:
        raise TensorShapeError(f"slot {slot} out of range for rank {t.rank}")
    data = np.tensordot(m.array, t.array, axes=([1], [slot]))
    data = np.moveaxis(data, 0, slot)
    sig = list(t.signature)
    sig[slot] = new_kind
    return _wrap(np.ascontiguousarray(data), t.params, t.dim, sig)


def raise_index(t: FrameTensor, slot: int, g_inv: FrameTensor) -> FrameTensor:
    if t.signature[slot] is not L:
        raise TensorShapeError(f"slot {slot} is already upper")
    return _apply_metric(t, slot, g_inv, U)


def lower_index(t: FrameTensor, slot: int, g: FrameTensor) -> FrameTensor:
    if t.signature[slot] is not U:
        raise TensorShapeError(f"slot {slot} is already lower")
    return _apply_metric(t, slot, g, L)


def vector(params: ParamSet, components: Sequence) -> FrameTensor:
    return FrameTensor.from_nested(params, (U,), list(components))


def covector(params: ParamSet, components: Sequence) -> FrameTensor:
    return FrameTensor.from_nested(params, (L,), list(components))


def apply(endo: FrameTensor, v: FrameTensor) -> FrameTensor:
    """Apply a (1,1)-tensor ``endo[i, j]`` (image of e_j along e_i) to a vector."""
    return contract(tensor_product(endo, v), 1, 2)


def compose(a: FrameTensor, b: FrameTensor) -> FrameTensor:
    """(a ∘ b) as a (1,1)-tensor."""
    return contract(tensor_product(a, b), 1, 2)


def pair(g: FrameTensor, x: FrameTensor, y: FrameTensor) -> Scalar:
    """g(x, y) for a rank-2 covariant ``g`` and vectors ``x``, ``y``."""
    total = Scalar.zero(g.params)
    for i in range(g.dim):
        if x[i].is_zero():
            continue
        for j in range(g.dim):
            total = total + g[i, j] * x[i] * y[j]
    return total
