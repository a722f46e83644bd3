"""Problem files: a map tuple over an exact field plus a dimension vector.

    {"m": 3, "n": 2, "field": {"kind": "prime", "p": 2}, "d": [1, 2],
     "maps": [{"type": "projection", "zero_indices": [1]}]}

Map specs are "identity", "zero", "projection" (with 1-based zero_indices) or
"matrix" (with rows of exact strings such as "-3/7").
"""
import hashlib
import json
import logging

from errors import ValidationError
from linalg import ExactMatrix, FieldSpec
from orbits import ProjectionTuple
from quiver import DimVector, RepMatrices

log = logging.getLogger(__name__)

MAP_TYPES = ("identity", "zero", "projection", "matrix")


def field_from_dict(data):
    if not isinstance(data, dict):
        raise ValidationError("field must be an object like {\"kind\": \"prime\", \"p\": 2}")
    kind = data.get("kind", FieldSpec.RATIONAL)
    if kind == FieldSpec.PRIME:
        return FieldSpec.prime(data.get("p"))
    return FieldSpec(kind)


class Problem(object):
    def __init__(self, m, d, field, maps):
        self.field = field
        self.d = DimVector(m, d)
        self.m = m
        self.n = self.d.n
        self.maps = [self._check_map(i, spec) for i, spec in enumerate(maps, 1)]
        if len(self.maps) != self.n - 1:
            raise ValidationError("{} vertices need {} maps, got {}".format(self.n, self.n - 1, len(self.maps)))

    def _check_map(self, i, spec):
        kind = spec.get("type") if isinstance(spec, dict) else None
        if kind not in MAP_TYPES:
            raise ValidationError("map {} has unknown type {!r}".format(i, kind))
        if kind == "projection":
            indices = sorted(set(spec.get("zero_indices", [])))
            if any(not isinstance(x, int) or not 1 <= x <= self.m for x in indices):
                raise ValidationError("map {} projects along indices outside 1..{}".format(i, self.m))
            return {"type": kind, "zero_indices": indices}
        if kind == "matrix":
            entries = spec.get("entries")
            if not isinstance(entries, list) or len(entries) != self.m or any(
                    not isinstance(row, list) or len(row) != self.m for row in entries):
                raise ValidationError("map {} must be an {}x{} matrix".format(i, self.m, self.m))
            # parsed once here so bad entries fail at load time
            ExactMatrix.from_values(self.field, entries, cols=self.m)
            return {"type": kind, "entries": [[str(x) for x in row] for row in entries]}
        return {"type": kind}

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ValidationError("a problem must be a JSON object")
        for key in ("m", "d"):
            if key not in data:
                raise ValidationError("problem misses {!r}".format(key))
        problem = cls(data["m"], data["d"], field_from_dict(data.get("field", {})), data.get("maps", []))
        if "n" in data and data["n"] != problem.n:
            raise ValidationError("n={} but d has length {}".format(data["n"], problem.n))
        return problem

    @classmethod
    def load(cls, path):
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except OSError as e:
            raise ValidationError("could not read problem file {}: {}".format(path, e))
        except ValueError as e:
            raise ValidationError("problem file {} is not valid JSON: {}".format(path, e))
        log.debug("loaded problem from %s", path)
        return cls.from_dict(data)

    def matrix(self, i, field=None):
        field = field or self.field
        spec = self.maps[i - 1]
        if spec["type"] == "identity":
            return ExactMatrix.identity(field, self.m)
        if spec["type"] == "zero":
            return ExactMatrix.zero(field, self.m, self.m)
        if spec["type"] == "projection":
            return ExactMatrix.projection(field, self.m, spec["zero_indices"])
        return ExactMatrix.from_values(field, spec["entries"], cols=self.m)

    def to_rep(self, field=None):
        """The map tuple over its own field, or reduced into another one."""
        field = field or self.field
        return RepMatrices.constant(field, self.m, [self.matrix(i, field) for i in range(1, self.n)])

    def projection_tuple(self):
        """The tuple as (pi_{J_1}, ...) when every map is a coordinate projection, else None."""
        zero_sets = []
        for spec in self.maps:
            if spec["type"] == "identity":
                zero_sets.append(())
            elif spec["type"] == "zero":
                zero_sets.append(range(1, self.m + 1))
            elif spec["type"] == "projection":
                zero_sets.append(spec["zero_indices"])
            else:
                return None
        return ProjectionTuple(self.m, self.n, zero_sets)

    def to_dict(self):
        return {"m": self.m, "n": self.n, "field": self.field.to_dict(), "d": list(self.d.d), "maps": self.maps}

    def input_hash(self):
        return canonical_hash(self.to_dict())


def canonical_hash(data):
    text = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
