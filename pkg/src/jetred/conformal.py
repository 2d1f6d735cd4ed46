"""Conformal group elements as generator words, with order-2 jets anywhere.

A group element is an ordered word in the four generator types

    Translation(a)        x -> x + a
    LorentzRotation(Lam)  x -> Lam x,  Lam^T eta Lam = eta
    Dilatation(lam)       x -> lam x,  lam > 0
    SpecialConformal(b)   x -> (x + b x^2) / (1 + 2 b.x + x^2 b^2)

applied left to right.  Special conformal factors are defined only away from
the zero set of their denominator (the affine chart); hitting it raises
:class:`SingularPoint`.

Jets of words are built from :class:`MultiPoly2`, a degree-2 truncated
polynomial in n displacement variables.  Feeding x + h through a generator's
closed-form expression in MultiPoly2 arithmetic yields its value, Jacobian
and Hessian at x simultaneously and exactly (to rounding); word jets chain
either through this forward arithmetic or through the 2-jet composition law,
and the two routes are kept separate so they can check each other.

The word syntax accepted by :func:`parse_word`:

    T(0.1,0,0,0);D(2);K(0,0.3,0,0);R(boost:0.5,axis:1);R(angle:0.7,i:1,j:2)

T = translation, D = dilatation (one positive factor), K = special conformal,
R = rotation, either a hyperbolic rotation of given rapidity in the (0, axis)
plane or a spatial rotation by angle in the (i, j) plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import SingularPoint
from .minkowski import LORENTZ_TOL, Map2Jet, Metric, ScalarJet2, compose_map2, diffeo_action, is_lorentz
from .reduction import boost_to_e0

SINGULAR_DENOMINATOR = 1e-12


@dataclass(frozen=True)
class Translation:
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))


@dataclass(frozen=True)
class LorentzRotation:
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if not is_lorentz(mat, Metric(mat.shape[0]), LORENTZ_TOL):
            raise ValueError("matrix does not satisfy Lam^T eta Lam = eta")
        object.__setattr__(self, "matrix", mat)


@dataclass(frozen=True)
class Dilatation:
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise ValueError("dilatation factor must be positive")


@dataclass(frozen=True)
class SpecialConformal:
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))


Generator = Translation | LorentzRotation | Dilatation | SpecialConformal


@dataclass(frozen=True)
class ConformalElement:
    """A word of generators in a fixed dimension, applied left to right."""

    n: int
    word: tuple[Generator, ...]

    def __post_init__(self):
        for g in self.word:
            gn = _generator_dim(g)
            if gn is not None and gn != self.n:
                raise ValueError("generator dimension does not match the element")

    def __mul__(self, other: "ConformalElement") -> "ConformalElement":
        """Concatenation: self's word runs first, then other's."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return ConformalElement(self.n, self.word + other.word)

    @classmethod
    def identity(cls, n: int) -> "ConformalElement":
        return cls(n, ())


def _generator_dim(g: Generator) -> int | None:
    if isinstance(g, Translation):
        return g.a.shape[0]
    if isinstance(g, LorentzRotation):
        return g.matrix.shape[0]
    if isinstance(g, SpecialConformal):
        return g.b.shape[0]
    return None


def _sct_point(b: np.ndarray, x: np.ndarray, metric: Metric) -> np.ndarray:
    x2 = metric.inner(x, x)
    bx = metric.inner(b, x)
    b2 = metric.inner(b, b)
    den = 1.0 + 2.0 * bx + x2 * b2
    if abs(den) < SINGULAR_DENOMINATOR:
        raise SingularPoint(f"special conformal denominator vanishes at x = {x.tolist()}")
    return (x + b * x2) / den


def apply_point(g: ConformalElement, x: np.ndarray) -> np.ndarray:
    """Image of x under the word, generator by generator."""
    x = np.asarray(x, dtype=float)
    metric = Metric(g.n)
    for gen in g.word:
        if isinstance(gen, Translation):
            x = x + gen.a
        elif isinstance(gen, LorentzRotation):
            x = gen.matrix @ x
        elif isinstance(gen, Dilatation):
            x = gen.factor * x
        else:
            x = _sct_point(gen.b, x, metric)
    return x


class MultiPoly2:
    """Scalar polynomial c + l.h + h^T q h truncated at degree 2 (q symmetric)."""

    __slots__ = ("const", "lin", "quad")

    def __init__(self, const, lin: np.ndarray, quad: np.ndarray):
        self.const = float(const)
        self.lin = np.asarray(lin, dtype=float)
        self.quad = np.asarray(quad, dtype=float)

    @classmethod
    def constant(cls, n: int, value: float) -> "MultiPoly2":
        return cls(value, np.zeros(n), np.zeros((n, n)))

    @classmethod
    def coordinate(cls, n: int, i: int, base: float) -> "MultiPoly2":
        lin = np.zeros(n)
        lin[i] = 1.0
        return cls(base, lin, np.zeros((n, n)))

    @property
    def n(self) -> int:
        return self.lin.shape[0]

    def __add__(self, other):
        if not isinstance(other, MultiPoly2):
            return MultiPoly2(self.const + other, self.lin, self.quad)
        return MultiPoly2(self.const + other.const, self.lin + other.lin, self.quad + other.quad)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly2(-self.const, -self.lin, -self.quad)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly2):
            return MultiPoly2(self.const * other, self.lin * other, self.quad * other)
        cross = np.outer(self.lin, other.lin)
        return MultiPoly2(
            self.const * other.const,
            self.const * other.lin + other.const * self.lin,
            self.const * other.quad + other.const * self.quad + (cross + cross.T) / 2.0,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "MultiPoly2":
        """1/(c + t) = (1/c)(1 - t/c + (t/c)^2) truncated at degree 2."""
        if abs(self.const) < SINGULAR_DENOMINATOR:
            raise SingularPoint("reciprocal of a polynomial with vanishing constant term")
        inv = 1.0 / self.const
        lin = -inv * inv * self.lin
        quad = -inv * inv * self.quad + inv * inv * inv * np.outer(self.lin, self.lin)
        return MultiPoly2(inv, lin, quad)

    def gradient(self) -> np.ndarray:
        return self.lin.copy()

    def hessian(self) -> np.ndarray:
        return self.quad + self.quad.T


def coordinate_polys(x: np.ndarray) -> list[MultiPoly2]:
    """The displaced coordinates x^i + h^i as degree-2 polynomials in h."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    return [MultiPoly2.coordinate(n, i, x[i]) for i in range(n)]


def _poly_minkowski(u: Sequence[MultiPoly2], v: Sequence[MultiPoly2]) -> MultiPoly2:
    acc = -(u[0] * v[0])
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def generator_polys(gen: Generator, polys: list[MultiPoly2], metric: Metric) -> list[MultiPoly2]:
    """Push displaced coordinates through one generator in truncated arithmetic."""
    n = metric.n
    if isinstance(gen, Translation):
        return [p + gen.a[i] for i, p in enumerate(polys)]
    if isinstance(gen, LorentzRotation):
        return [
            sum((gen.matrix[i, j] * polys[j] for j in range(1, n)), gen.matrix[i, 0] * polys[0])
            for i in range(n)
        ]
    if isinstance(gen, Dilatation):
        return [gen.factor * p for p in polys]
    b = gen.b
    x2 = _poly_minkowski(polys, polys)
    bpoly = [MultiPoly2.constant(n, b[i]) for i in range(n)]
    bx = _poly_minkowski(bpoly, polys)
    b2 = metric.inner(b, b)
    den = 1.0 + 2.0 * bx + b2 * x2
    recip = den.reciprocal()
    return [(polys[i] + b[i] * x2) * recip for i in range(n)]


def word_polys(g: ConformalElement, x: np.ndarray) -> list[MultiPoly2]:
    """Degree-2 expansion of the whole word around x, by forward arithmetic."""
    metric = Metric(g.n)
    polys = coordinate_polys(x)
    for gen in g.word:
        polys = generator_polys(gen, polys, metric)
    return polys


def map_jet2_at(g: ConformalElement, x: np.ndarray) -> Map2Jet:
    """Order-2 Taylor data of the word at x, via per-generator jet composition.

    Affine generators contribute their matrices directly; a special conformal
    factor's jet at the running point comes from the truncated expansion of
    numerator times reciprocal of denominator.
    """
    x = np.asarray(x, dtype=float)
    metric = Metric(g.n)
    n = g.n
    jet = Map2Jet.identity(n)
    jet = Map2Jet(x.copy(), jet.A, jet.A2)
    point = x
    for gen in g.word:
        if isinstance(gen, Translation):
            step = Map2Jet.linear(np.eye(n), value=point + gen.a)
        elif isinstance(gen, LorentzRotation):
            step = Map2Jet.linear(gen.matrix, value=gen.matrix @ point)
        elif isinstance(gen, Dilatation):
            step = Map2Jet.linear(gen.factor * np.eye(n), value=gen.factor * point)
        else:
            polys = generator_polys(gen, coordinate_polys(point), metric)
            value = np.array([p.const for p in polys])
            A = np.stack([p.gradient() for p in polys])
            A2 = np.stack([p.hessian() for p in polys])
            step = Map2Jet(value, A, A2)
        jet = compose_map2(step, jet)
        point = step.value
    return jet


def pullback_scalar_jet(jet_at_image: ScalarJet2, phi: Map2Jet) -> ScalarJet2:
    """2-jet of f∘phi at x from the jet of f at phi(x): the chain-rule action."""
    return diffeo_action(jet_at_image, phi)


def spatial_rotation(n: int, i: int, j: int, angle: float) -> LorentzRotation:
    """Rotation by ``angle`` in the spatial (i, j) plane, 1 <= i < j < n."""
    if not (1 <= i < j < n):
        raise ValueError("need spatial axes 1 <= i < j < n")
    m = np.eye(n)
    c, s = np.cos(angle), np.sin(angle)
    m[i, i] = m[j, j] = c
    m[i, j] = -s
    m[j, i] = s
    return LorentzRotation(m)


def axis_boost(n: int, axis: int, rapidity: float) -> LorentzRotation:
    """Hyperbolic rotation of given rapidity in the (0, axis) plane."""
    if not 1 <= axis < n:
        raise ValueError("boost axis must be spatial")
    m = np.eye(n)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    m[0, 0] = m[axis, axis] = ch
    m[0, axis] = m[axis, 0] = sh
    return LorentzRotation(m)


def random_element(seed, max_word_len: int = 4, scale: float = 0.3, n: int = 4) -> ConformalElement:
    """Deterministic random word: boosts, rotations, dilatations, shifts.

    Lorentz factors are either boosts built from random unit timelike
    directions or random spatial rotations; all parameters are bounded by
    ``scale`` so short words stay well inside the affine chart.
    """
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    rng = np.random.default_rng(seed)
    length = int(rng.integers(1, max_word_len + 1))
    word: list[Generator] = []
    for _ in range(length):
        kind = int(rng.integers(0, 4))
        if kind == 0:
            word.append(Translation(scale * rng.uniform(-1, 1, size=n)))
        elif kind == 1:
            word.append(Dilatation(float(np.exp(scale * rng.uniform(-1, 1)))))
        elif kind == 2:
            word.append(SpecialConformal(scale * rng.uniform(-1, 1, size=n)))
        else:
            if rng.integers(0, 2) == 0:
                vvec = scale * rng.uniform(-1, 1, size=n - 1)
                v = np.concatenate([[np.sqrt(1.0 + vvec @ vvec)], vvec])
                word.append(LorentzRotation(boost_to_e0(v)))
            else:
                axes = rng.choice(np.arange(1, n), size=2, replace=False)
                i, j = int(axes.min()), int(axes.max())
                word.append(spatial_rotation(n, i, j, float(rng.uniform(-np.pi, np.pi))))
    return ConformalElement(n, tuple(word))


def parse_word(text: str, n: int) -> ConformalElement:
    """Parse the word grammar documented in the module docstring."""
    word: list[Generator] = []
    text = text.strip()
    if not text:
        return ConformalElement.identity(n)
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if len(chunk) < 3 or chunk[1] != "(" or not chunk.endswith(")"):
            raise ValueError(f"malformed generator {chunk!r}")
        head, args = chunk[0], chunk[2:-1]
        if head == "T":
            word.append(Translation(_parse_vector(args, n, chunk)))
        elif head == "D":
            try:
                factor = float(args)
            except ValueError:
                raise ValueError(f"malformed dilatation {chunk!r}") from None
            word.append(Dilatation(factor))
        elif head == "K":
            word.append(SpecialConformal(_parse_vector(args, n, chunk)))
        elif head == "R":
            word.append(_parse_rotation(args, n, chunk))
        else:
            raise ValueError(f"unknown generator {head!r} in {chunk!r}")
    return ConformalElement(n, tuple(word))


def _parse_vector(args: str, n: int, chunk: str) -> np.ndarray:
    try:
        values = [float(tok) for tok in args.split(",")]
    except ValueError:
        raise ValueError(f"malformed vector in {chunk!r}") from None
    if len(values) != n:
        raise ValueError(f"expected {n} components in {chunk!r}, got {len(values)}")
    return np.array(values)


def _parse_rotation(args: str, n: int, chunk: str) -> LorentzRotation:
    fields: dict[str, str] = {}
    for pair in args.split(","):
        if ":" not in pair:
            raise ValueError(f"malformed rotation argument {pair!r} in {chunk!r}")
        key, _, value = pair.partition(":")
        fields[key.strip()] = value.strip()
    try:
        if set(fields) == {"boost", "axis"}:
            return axis_boost(n, int(fields["axis"]), float(fields["boost"]))
        if set(fields) == {"angle", "i", "j"}:
            return spatial_rotation(n, int(fields["i"]), int(fields["j"]), float(fields["angle"]))
    except ValueError as exc:
        raise ValueError(f"bad rotation parameters in {chunk!r}: {exc}") from None
    raise ValueError(
        f"rotation needs boost:..,axis:.. or angle:..,i:..,j:.. in {chunk!r}"
    )
