"""Weighted polyhedral fans in R^r modulo the all-ones line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..errors import CertificateError, ConventionError
from ..matroid import Matroid, elements


def normalize(point):
    """Representative of a point of R^r / R(1,...,1) with first coordinate 0."""
    p = [Fraction(x) for x in point]
    return tuple(x - p[0] for x in p)


def indicator(mask, r):
    return tuple((mask >> i) & 1 for i in range(r))


@dataclass(frozen=True)
class Cone:
    """Relatively open cone apex + positive span of rays."""

    apex: tuple
    rays: tuple
    weight: int = 1
    chain: tuple = ()

    @property
    def dim(self):
        return len(self.rays)


@dataclass(frozen=True, eq=False)
class HFan:
    """A pure weighted fan (possibly translated and reflected).

    Bergman fans keep their matroid so that intersections can use the flag
    description; `sign = -1` means the cones point along -e_F, and `apex`
    is the translation.  Arbitrary fans pass `explicit_cones` instead.
    """

    ambient: int
    matroid: Matroid | None = None
    sign: int = 1
    apex: tuple = None
    explicit_cones: tuple | None = None
    explicit_dim: int | None = None

    def __post_init__(self):
        if self.apex is None:
            object.__setattr__(self, "apex", tuple(Fraction(0) for _ in range(self.ambient)))
        else:
            object.__setattr__(self, "apex", normalize(self.apex))

    @property
    def dim(self):
        if self.matroid is not None:
            return self.matroid.rank - 1
        return self.explicit_dim

    @property
    def is_bergman(self):
        return self.matroid is not None

    @cached_property
    def cones(self):
        if self.explicit_cones is not None:
            return self.explicit_cones
        r = self.ambient
        m = self.matroid
        proper = [f for level in m.flats() for f in level if f not in (0, m.full)]
        proper.sort(key=lambda f: (bin(f).count("1"), f))
        out = []

        def rec(chain, last):
            rays = tuple(tuple(self.sign * x for x in indicator(f, r)) for f in chain)
            out.append(Cone(self.apex, rays, 1, tuple(chain)))
            for f in proper:
                if f != last and f & last == last and bin(f).count("1") > bin(last).count("1"):
                    rec(chain + [f], f)

        rec([], 0)
        return tuple(out)

    def maximal_cones(self):
        return [c for c in self.cones if c.dim == self.dim]

    def describe(self):
        kind = "bergman" if self.is_bergman else "explicit"
        return {"kind": kind, "ambient": self.ambient, "dim": self.dim, "sign": self.sign,
                "apex": [str(x) for x in self.apex], "cones": len(self.cones)}


def bergman_fan(m: Matroid, expected_dim: int | None = None) -> HFan:
    """Fine subdivision of the Bergman fan: one unimodular cone per chain of flats."""
    if m.loops():
        raise CertificateError(f"matroid has loops {m.loops()}; its Bergman fan is empty")
    fan = HFan(m.ground_size, m)
    if expected_dim is not None and fan.dim != expected_dim:
        raise ConventionError(
            f"Bergman fan has dimension {fan.dim}, expected {expected_dim} "
            f"(matroid rank {m.rank} on {m.ground_size} elements)")
    return fan


def reflect_translate(f: HFan, w) -> HFan:
    """The fan {w - x : x in f}."""
    w = tuple(Fraction(x) for x in w)
    apex = tuple(a - b for a, b in zip(w, f.apex))
    if f.explicit_cones is not None:
        cones = tuple(Cone(normalize(tuple(a - b for a, b in zip(w, c.apex))),
                           tuple(tuple(-x for x in ray) for ray in c.rays), c.weight, c.chain)
                      for c in f.explicit_cones)
        return HFan(f.ambient, None, -f.sign, apex, cones, f.explicit_dim)
    return HFan(f.ambient, f.matroid, -f.sign, apex)


def translate(f: HFan, v) -> HFan:
    """The fan {v + x : x in f}."""
    v = tuple(Fraction(x) for x in v)
    apex = tuple(a + b for a, b in zip(v, f.apex))
    if f.explicit_cones is not None:
        cones = tuple(Cone(normalize(tuple(a + b for a, b in zip(v, c.apex))), c.rays, c.weight,
                           c.chain) for c in f.explicit_cones)
        return HFan(f.ambient, None, f.sign, apex, cones, f.explicit_dim)
    return HFan(f.ambient, f.matroid, f.sign, apex)


def fan_from_cones(ambient, cones, dim) -> HFan:
    return HFan(ambient, None, 1, None, tuple(cones), dim)


def same_support_cones(f: HFan, g: HFan):
    """Cone sets compared as (apex, ray set, weight) multisets."""
    def key(c):
        return (c.apex, tuple(sorted(c.rays)), c.weight)
    return sorted(map(key, f.cones)) == sorted(map(key, g.cones))


def chain_label(cone: Cone):
    return [elements(f) for f in cone.chain]
