"""Machine-checkable witnesses for rank upper bounds and restrictions.

A RankDecomposition lists rank-one terms whose sum must equal its target
exactly; a RestrictionCertificate lists one linear map per leg such that
restricting its source reproduces its target exactly.  Verification is
exact coefficient arithmetic; no floating point is involved anywhere.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, MixedFields
from .fields import Field, element_from_json, element_to_json, field_from_json
from .tensors import LinearMap, Tensor, fadd, fmul


def _rank_one_codes(field: Field, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Outer product of coordinate vectors, as a code array."""
    acc = np.asarray(vectors[0], dtype=np.int64)
    for v in vectors[1:]:
        v = np.asarray(v, dtype=np.int64)
        acc = fmul(field, acc[..., None], v.reshape((1,) * acc.ndim + (-1,)))
    return acc


class RankDecomposition:
    """r rank-one terms certifying that the rank of `target` is at most r."""

    __slots__ = ("field", "dims", "terms", "spec")

    def __init__(self, field: Field, dims: Sequence[int], terms, spec=None):
        self.field = field
        self.dims = tuple(int(n) for n in dims)
        clean = []
        for term in terms:
            if len(term) != len(self.dims):
                raise DimensionMismatch("each term needs one vector per leg")
            vecs = []
            for v, n in zip(term, self.dims):
                arr = np.asarray(v, dtype=np.int64)
                if arr.shape != (n,):
                    raise DimensionMismatch(f"term vector shape {arr.shape}, leg size {n}")
                vecs.append(arr)
            clean.append(tuple(vecs))
        self.terms = clean
        self.spec = spec  # MultSpec of the target, when the target is a Mult tensor

    @property
    def rank(self) -> int:
        return len(self.terms)

    def tensor(self) -> Tensor:
        """The sum of the rank-one terms."""
        codes = np.zeros(self.dims, dtype=np.int64)
        for term in self.terms:
            codes = fadd(self.field, codes, _rank_one_codes(self.field, term))
        return Tensor(self.field, self.dims, codes)

    def __repr__(self) -> str:
        return f"RankDecomposition(rank={self.rank}, dims={self.dims}, field={self.field!r})"

    def to_json(self) -> dict:
        f = self.field
        out = {
            "kind": "rank-decomposition",
            "field": f.to_json(),
            "dims": list(self.dims),
            "terms": [
                [[element_to_json(f.element(int(c))) for c in vec] for vec in term]
                for term in self.terms
            ],
        }
        if self.spec is not None:
            out["target"] = self.spec.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RankDecomposition":
        field = field_from_json(obj["field"])
        dims = tuple(int(n) for n in obj["dims"])
        terms = [
            [np.array([element_from_json(field, c).code for c in vec], dtype=np.int64)
             for vec in term]
            for term in obj["terms"]
        ]
        spec = None
        if "target" in obj:
            from .multtensor import MultSpec

            spec = MultSpec.from_json(obj["target"])
        return cls(field, dims, terms, spec=spec)


def verify_decomposition(target: Tensor, decomposition: RankDecomposition) -> bool:
    """Exact coefficientwise check that the terms sum to `target`."""
    if decomposition.field != target.field:
        raise MixedFields("decomposition and target live over different fields")
    if decomposition.dims != target.dims:
        raise DimensionMismatch(
            f"decomposition dims {decomposition.dims} vs target {target.dims}"
        )
    return decomposition.tensor() == target


class RestrictionCertificate:
    """Maps A_1..A_d with restrict(source, maps) == target exactly."""

    __slots__ = ("source", "target", "maps", "source_spec", "target_spec", "diagonal_size")

    def __init__(
        self,
        source: Tensor,
        target: Tensor,
        maps: Sequence[LinearMap],
        source_spec=None,
        target_spec=None,
        diagonal_size: Optional[int] = None,
    ):
        if len(maps) != source.order:
            raise DimensionMismatch("one map per leg required")
        self.source = source
        self.target = target
        self.maps = list(maps)
        self.source_spec = source_spec  # MultSpec when the source is a Mult tensor
        self.target_spec = target_spec  # MultSpec when the target is a Mult tensor
        self.diagonal_size = diagonal_size  # set when the target is a diagonal <N>

    def __repr__(self) -> str:
        return (
            f"RestrictionCertificate({self.source!r} -> {self.target!r})"
        )

    def to_json(self) -> dict:
        out = {
            "kind": "restriction-certificate",
            "maps": [m.to_json() for m in self.maps],
            "field": self.source.field.to_json(),
        }
        if self.source_spec is not None:
            out["source"] = self.source_spec.to_json()
        else:
            out["source"] = {"kind": "tensor", "tensor": self.source.to_json()}
        if self.diagonal_size is not None:
            out["target"] = {
                "kind": "diagonal",
                "size": self.diagonal_size,
                "order": self.target.order,
            }
        elif self.target_spec is not None:
            out["target"] = self.target_spec.to_json()
        else:
            out["target"] = {"kind": "tensor", "tensor": self.target.to_json()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RestrictionCertificate":
        from .multtensor import MultSpec, mult_tensor
        from .tensors import diagonal

        field = field_from_json(obj["field"])
        src = obj["source"]
        source_spec = None
        if src.get("kind") == "mult":
            source_spec = MultSpec.from_json(src)
            source = mult_tensor(source_spec)
        elif src.get("kind") == "tensor":
            source = Tensor.from_json(src["tensor"])
        else:
            raise ValueError(f"unknown source kind {src.get('kind')!r}")
        tgt = obj["target"]
        diagonal_size = None
        target_spec = None
        if tgt.get("kind") == "diagonal":
            diagonal_size = int(tgt["size"])
            target = diagonal(diagonal_size, int(tgt["order"]), source.field)
        elif tgt.get("kind") == "mult":
            target_spec = MultSpec.from_json(tgt)
            target = mult_tensor(target_spec)
        elif tgt.get("kind") == "tensor":
            target = Tensor.from_json(tgt["tensor"])
        else:
            raise ValueError(f"unknown target kind {tgt.get('kind')!r}")
        maps = [LinearMap.from_json(field, m) for m in obj["maps"]]
        return cls(
            source,
            target,
            maps,
            source_spec=source_spec,
            target_spec=target_spec,
            diagonal_size=diagonal_size,
        )


def verify_restriction(cert: RestrictionCertificate) -> bool:
    """Exact check that restricting the source by the maps gives the target."""
    restricted = cert.source.restrict(cert.maps)
    return restricted == cert.target
