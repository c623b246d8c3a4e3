"""Built-in theories and observables.

Catalog names understood by :func:`get_theory`:

* ``classical:<n>``   - probability simplex on n outcomes
* ``gbit-square``     - square state space (the simplest non-simplex)
* ``even-logic-cube`` - states of the even-cardinality event structure
  on a 4-point sample space; a cube of marginal triples
* ``bloch:<n>``       - inscribed rational polytope approximation of the
  unit ball with n spherical-sequence points
* ``bloch-octahedron``- the six axis points of the ball, exact

Every constructor is pure and deterministic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import InputError
from .model import (
    Effect,
    Observable,
    State,
    TheorySpace,
    dot,
    validate_state,
    vec,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def classical_simplex(n: int) -> TheorySpace:
    """Probability simplex: standard basis states, all-ones unit."""
    if n < 1:
        raise InputError("a classical theory needs at least one outcome")
    points = [tuple(_ONE if j == i else _ZERO for j in range(n)) for i in range(n)]
    return TheorySpace(f"classical:{n}", n, tuple(points), (_ONE,) * n)


def square_gbit() -> TheorySpace:
    """Square state space in coordinates (1, x, y) with corners (±1, ±1)."""
    points = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]
    return TheorySpace.make("gbit-square", 3, points, (1, 0, 0))


def square_gbit_observables(theory: TheorySpace) -> dict[str, Observable]:
    """Coordinate readers X, Y and the two diagonal readers D1, D2."""
    if theory.dim != 3 or theory.unit != (1, 0, 0):
        raise InputError("expected the square state space")
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    def dichotomy(plus):
        minus = tuple(u - c for u, c in zip(theory.unit, plus))
        return Observable(theory, ("+", "-"),
                          (Effect(theory, plus), Effect(theory, minus)))

    return {
        "X": dichotomy((half, half, _ZERO)),
        "Y": dichotomy((half, _ZERO, half)),
        "D1": dichotomy((half, quarter, quarter)),
        "D2": dichotomy((half, quarter, -quarter)),
    }


# ---------------------------------------------------------------------------
# even-cardinality event logic on four points


@dataclass(frozen=True)
class LogicState:
    """State of the even-cardinality logic, stored as the marginal triple."""

    lambdas: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.lambdas) != 3:
            raise InputError("a logic state has three marginals")
        if any(l < 0 or l > 1 for l in self.lambdas):
            raise InputError("marginals must lie in [0, 1]")

    @classmethod
    def make(cls, values) -> "LogicState":
        return cls(tuple(vec(values)))

    @property
    def sixtuple(self) -> tuple[Fraction, ...]:
        out = []
        for l in self.lambdas:
            out.extend((l, 1 - l))
        return tuple(out)

    @classmethod
    def from_sixtuple(cls, values) -> "LogicState":
        v = vec(values)
        if len(v) != 6:
            raise InputError("need six entries")
        for i in range(3):
            if v[2 * i] + v[2 * i + 1] != 1:
                raise InputError("entries must pair-sum to 1")
        return cls((v[0], v[2], v[4]))


def even_logic_cube() -> TheorySpace:
    """The cube of marginal triples (1, l1, l2, l3), vertices 0/1."""
    points = [(1, a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    return TheorySpace.make("even-logic-cube", 4, points, (1, 0, 0, 0))


def even_logic_observables(theory: TheorySpace) -> dict[str, Observable]:
    """The three dichotomic coordinate readers A, B, C."""
    if theory.dim != 4 or theory.unit != (1, 0, 0, 0):
        raise InputError("expected the even-logic cube theory")
    out = {}
    for name, coord in (("A", 1), ("B", 2), ("C", 3)):
        plus = [_ZERO] * 4
        plus[coord] = _ONE
        minus = tuple(u - c for u, c in zip(theory.unit, plus))
        out[name] = Observable(
            theory,
            (name.lower(), name.lower() + "'"),
            (Effect(theory, tuple(plus)), Effect(theory, minus)),
        )
    return out


def logic_state_to_state(theory: TheorySpace, s: LogicState) -> State:
    """Embed a logic state into the cube theory (always succeeds)."""
    return validate_state(theory, (_ONE,) + s.lambdas)


def cube_vertex_states() -> dict[str, LogicState]:
    """The eight 0/1 states by their customary names.

    delta1..delta4 extend to measures on the four atoms; gamma_i is the
    complement of delta_i and does not.
    """
    deltas = {
        "delta1": (1, 1, 1),
        "delta2": (1, 0, 0),
        "delta3": (0, 1, 0),
        "delta4": (0, 0, 1),
    }
    out = {k: LogicState.make(v) for k, v in deltas.items()}
    for i, v in enumerate(deltas.values(), start=1):
        out[f"gamma{i}"] = LogicState.make(tuple(1 - x for x in v))
    return out


def is_classical_state(s: LogicState) -> bool:
    """Does the state extend to a measure on the four underlying atoms?

    Feasibility of weights mu >= 0 on the atoms {1,2,3,4} with total 1
    and mu{1,2} = s(a), mu{1,3} = s(b), mu{1,4} = s(c).
    """
    l1, l2, l3 = s.lambdas
    rows = [
        ((1, 1, 1, 1), "=", 1),
        ((1, 1, 0, 0), "=", l1),
        ((1, 0, 1, 0), "=", l2),
        ((1, 0, 0, 1), "=", l3),
    ]
    prog = lp.LinearProgram.create(4, rows)
    return isinstance(lp.solve(prog), lp.Optimal)


# ---------------------------------------------------------------------------
# ball approximations


def _van_der_corput(i: int) -> float:
    value, denom = 0.0, 1.0
    while i:
        denom *= 2.0
        i, bit = divmod(i, 2)
        value += bit / denom
    return value


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


_ROUND_DENOM = 10**6
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def sphere_sequence(count: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Deterministic well-spread sphere sequence, rationalized inward.

    Golden-angle azimuth with bit-reversed heights, so the first k
    points of a longer sequence are exactly the k-point sequence
    (prefixes are nested).  Coordinates are rounded to denominator
    10^6 and then scaled by an exact rational lower bound of 1/|r|, so
    every emitted point satisfies x^2 + y^2 + z^2 <= 1 exactly.
    """
    points = []
    for i in range(count):
        z = 1.0 - 2.0 * _van_der_corput(i)
        ring = math.sqrt(max(0.0, 1.0 - z * z))
        phi = i * _GOLDEN_ANGLE
        triple = (math.cos(phi) * ring, math.sin(phi) * ring, z)
        rounded = [Fraction(round(c * _ROUND_DENOM), _ROUND_DENOM) for c in triple]
        norm_sq = sum(c * c for c in rounded)
        if norm_sq > 1:
            # 1/u <= 1/|r| with u = ceil(sqrt(num*den))/den >= sqrt(norm_sq)
            upper = Fraction(_ceil_sqrt(norm_sq.numerator * norm_sq.denominator),
                             norm_sq.denominator)
            rounded = [c / upper for c in rounded]
        points.append(tuple(rounded))
    return points


def bloch_polytope(points: int, scheme: str = "inscribed") -> TheorySpace:
    """Inscribed rational polytope standing in for the unit-ball theory."""
    if scheme == "octahedron":
        if points != 6:
            raise InputError("the octahedron scheme has exactly 6 points")
        return bloch_octahedron()
    if scheme != "inscribed":
        raise InputError(f"unknown scheme {scheme!r}")
    if points < 4:
        raise InputError("need at least 4 points to span the ball coordinates")
    extremes = [(_ONE,) + p for p in sphere_sequence(points)]
    return TheorySpace(f"bloch:{points}", 4, tuple(extremes),
                       (_ONE, _ZERO, _ZERO, _ZERO))


def bloch_octahedron() -> TheorySpace:
    points = []
    for axis in range(3):
        for sign in (1, -1):
            coords = [0, 0, 0]
            coords[axis] = sign
            points.append((1, *coords))
    return TheorySpace.make("bloch-octahedron", 4, points, (1, 0, 0, 0))


def noisy_pauli_observables(theory: TheorySpace) -> tuple[Observable, Observable]:
    """The two transverse readers (unit ± coordinate)/2 on a ball theory."""
    if theory.dim != 4 or theory.unit != (_ONE, _ZERO, _ZERO, _ZERO):
        raise InputError("expected a ball-approximation theory")
    half = Fraction(1, 2)

    def reader(coord):
        plus = [half, _ZERO, _ZERO, _ZERO]
        plus[coord] = half
        minus = tuple(u - c for u, c in zip(theory.unit, plus))
        return Observable(theory, ("+", "-"),
                          (Effect(theory, tuple(plus)), Effect(theory, minus)))

    return reader(1), reader(2)


# ---------------------------------------------------------------------------
# seeded observable sampling


def random_observable(theory: TheorySpace, outcomes: int, seed: int) -> Observable:
    """Deterministic sampled observable with boundary-touching effects.

    Dichotomies come from a random functional rescaled so its values on
    the extreme points touch both 0 and 1 (extremal effects expose the
    most incompatibility); more outcomes split the unit iteratively.
    """
    if outcomes < 1:
        raise InputError("an observable needs at least one outcome")
    labels = tuple(str(j) for j in range(outcomes))
    if outcomes == 1:
        return Observable(theory, labels, (Effect(theory, theory.unit),))
    rng = random.Random(seed)
    if outcomes == 2:
        f = _boundary_touching(theory, rng)
        complement = tuple(u - c for u, c in zip(theory.unit, f))
        return Observable(theory, labels,
                          (Effect(theory, f), Effect(theory, complement)))
    effects = []
    remaining = list(theory.unit)
    for _ in range(outcomes - 1):
        f = _boundary_touching(theory, rng)
        ratio = None
        for x in theory.extreme_points:
            fx = dot(f, x)
            if fx > 0:
                rx = dot(remaining, x) / fx
                if ratio is None or rx < ratio:
                    ratio = rx
        piece = tuple(ratio * c for c in f)
        effects.append(Effect(theory, piece))
        remaining = [r - c for r, c in zip(remaining, piece)]
    effects.append(Effect(theory, tuple(remaining)))
    return Observable(theory, labels, tuple(effects))


def _boundary_touching(theory: TheorySpace, rng: random.Random) -> tuple[Fraction, ...]:
    """Random functional affinely rescaled to min 0, max 1 on the vertices."""
    denom = 64
    while True:
        raw = [Fraction(rng.randint(-denom, denom), denom) for _ in range(theory.dim)]
        values = [dot(raw, x) for x in theory.extreme_points]
        lo, hi = min(values), max(values)
        if lo != hi:
            break
    span = hi - lo
    return tuple((c - lo * u) / span for c, u in zip(raw, theory.unit))


# ---------------------------------------------------------------------------
# name resolution


def catalog_names() -> list[str]:
    return ["classical:<n>", "gbit-square", "even-logic-cube",
            "bloch:<points>", "bloch-octahedron"]


def get_theory(name: str) -> TheorySpace:
    if name == "gbit-square":
        return square_gbit()
    if name == "even-logic-cube":
        return even_logic_cube()
    if name == "bloch-octahedron":
        return bloch_octahedron()
    if name.startswith("classical:"):
        return classical_simplex(_parse_count(name))
    if name.startswith("bloch:"):
        return bloch_polytope(_parse_count(name))
    raise InputError(f"unknown theory {name!r}")


def _parse_count(name: str) -> int:
    try:
        return int(name.split(":", 1)[1])
    except ValueError as exc:
        raise InputError(f"bad count in theory name {name!r}") from exc


def named_observables(theory: TheorySpace) -> dict[str, Observable]:
    """Builtin observables reachable by name for CLI arguments."""
    if theory.name == "gbit-square":
        return square_gbit_observables(theory)
    if theory.name == "even-logic-cube":
        return even_logic_observables(theory)
    if theory.name.startswith("bloch"):
        x, y = noisy_pauli_observables(theory)
        return {"pauli-x": x, "pauli-y": y}
    return {}
