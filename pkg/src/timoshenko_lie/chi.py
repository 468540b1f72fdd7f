"""Rotational moment laws chi(psi_x)."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

LINEAR = "linear"
CUBIC = "cubic"


@dataclass(frozen=True)
class ChiSpec:
    """chi(s) = b s + offset (linear) or b s + c3 s**3 (cubic test law)."""

    kind: str = LINEAR
    b: float = 1.0
    offset: float = 0.0
    c3: float = 0.0

    def __post_init__(self):
        if self.kind not in (LINEAR, CUBIC):
            raise ConfigError(f"field 'chi': must be 'linear' or 'cubic', got {self.kind!r}")
        if not self.b > 0:
            raise ConfigError("field 'b': must be positive")

    @classmethod
    def linear(cls, b=1.0, offset=0.0):
        return cls(LINEAR, float(b), float(offset), 0.0)

    @classmethod
    def cubic(cls, b=1.0, c3=0.3):
        return cls(CUBIC, float(b), 0.0, float(c3))

    @property
    def is_linear(self):
        return self.kind == LINEAR or self.c3 == 0.0

    def value(self, s):
        s = np.asarray(s, float)
        if self.kind == LINEAR:
            return self.b * s + self.offset
        return self.b * s + self.c3 * s ** 3

    def d1(self, s):
        s = np.asarray(s, float)
        if self.kind == LINEAR:
            return np.full_like(s, self.b)
        return self.b + 3.0 * self.c3 * s * s

    def d2(self, s):
        s = np.asarray(s, float)
        if self.kind == LINEAR:
            return np.zeros_like(s)
        return 6.0 * self.c3 * s

    def to_dict(self):
        return {"kind": self.kind, "b": self.b, "offset": self.offset, "c3": self.c3}
