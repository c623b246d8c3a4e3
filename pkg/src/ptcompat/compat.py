"""Joint-measurability analysis: verdicts, noise thresholds, regions.

Every question is decided by one exact rational LP over the unknown
joint observable.  The grid of joint-effect coefficients (one block of
``dim`` free variables per outcome cell) is constrained by

* marginal equalities, imposed coefficient-wise (the extreme points
  span the coordinate space, so this equals state-by-state equality),
* nonnegativity of every cell at every extreme point.

Noisy variants eliminate the bilinear sharpness-times-noise term by
substituting one nonnegative variable per noise outcome whose total is
the noise weight, which keeps everything a single LP.

Compatible verdicts carry the decoded joint observable as a witness;
incompatible verdicts carry a Farkas certificate that re-verifies
against the corresponding public LP builder (:func:`build_joint_lp`
for plain compatibility, :func:`build_region_lp` for membership
queries).  All functions are pure and deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import InputError, InternalError
from .model import (
    Distribution,
    Effect,
    Observable,
    TheorySpace,
    vec,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class JointObservable:
    """An observable over a product outcome grid, stored cell by cell.

    ``axes`` holds the outcome labels of each marginal axis; ``effects``
    is the row-major list over the product grid.
    """

    theory: TheorySpace
    axes: tuple[tuple[str, ...], ...]
    effects: tuple[Effect, ...]

    def __post_init__(self):
        sizes = self.shape
        if not sizes or any(m < 1 for m in sizes):
            raise InputError("every axis needs at least one outcome")
        if len(self.effects) != math.prod(sizes):
            raise InputError("effect count does not match the outcome grid")
        total = [_ZERO] * self.theory.dim
        for e in self.effects:
            if e.theory != self.theory:
                raise InputError("joint effect belongs to a different theory")
            for j, c in enumerate(e.coeffs):
                total[j] += c
        if tuple(total) != self.theory.unit:
            raise InputError("joint effects must sum exactly to the unit")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    def cell(self, index: tuple[int, ...]) -> Effect:
        flat = 0
        for size, i in zip(self.shape, index):
            if not 0 <= i < size:
                raise InputError("cell index out of range")
            flat = flat * size + i
        return self.effects[flat]


def marginal(joint: JointObservable, axis: int) -> Observable:
    """Sum the grid effects over all axes except ``axis``."""
    sizes = joint.shape
    if not 0 <= axis < len(sizes):
        raise InputError("axis out of range")
    dim = joint.theory.dim
    sums = [[_ZERO] * dim for _ in range(sizes[axis])]
    for cell, effect in zip(itertools.product(*(range(m) for m in sizes)), joint.effects):
        acc = sums[cell[axis]]
        for j, c in enumerate(effect.coeffs):
            acc[j] += c
    effects = tuple(Effect(joint.theory, tuple(s)) for s in sums)
    return Observable(joint.theory, joint.axes[axis], effects)


def permute_axes(joint: JointObservable, order) -> JointObservable:
    """Reindex the grid along a permutation of the axes."""
    order = tuple(order)
    sizes = joint.shape
    if sorted(order) != list(range(len(sizes))):
        raise InputError("not a permutation of the axes")
    axes = tuple(joint.axes[a] for a in order)
    effects = []
    for cell in itertools.product(*(range(sizes[a]) for a in order)):
        original = tuple(cell[order.index(a)] for a in range(len(sizes)))
        effects.append(joint.cell(original))
    return JointObservable(joint.theory, axes, tuple(effects))


@dataclass(frozen=True)
class Compatible:
    witness: JointObservable


@dataclass(frozen=True)
class Incompatible:
    certificate: lp.Infeasible


CompatVerdict = Compatible | Incompatible


@dataclass(frozen=True)
class IndexResult:
    """Largest sharpness at which the second observable stays jointly
    measurable with the first, plus the optimizing witnesses."""

    lambda_star: Fraction
    noise_witness: Distribution | None
    joint: JointObservable
    noisy_partner: Observable


@dataclass(frozen=True)
class RegionSample:
    direction: tuple[Fraction, ...]
    reach: Fraction
    boundary: tuple[Fraction, ...]
    joint: JointObservable
    noises: tuple[Distribution | None, ...]


@dataclass(frozen=True)
class EstimateResult:
    upper_bound: Fraction
    argmin_pair: tuple[Observable, Observable] | None
    argmin_index: int | None
    values: tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# grid bookkeeping


class _Grid:
    def __init__(self, observables):
        observables = list(observables)
        if not observables:
            raise InputError("need at least one observable")
        theory = observables[0].theory
        for m in observables[1:]:
            if m.theory != theory:
                raise InputError("observables belong to different theories")
        self.observables = observables
        self.theory = theory
        self.dim = theory.dim
        self.sizes = tuple(len(m) for m in observables)
        self.cells = list(itertools.product(*(range(m) for m in self.sizes)))
        self.cell_pos = {c: i for i, c in enumerate(self.cells)}
        self.n_cell_vars = len(self.cells) * self.dim

    def var(self, cell, coord):
        return self.cell_pos[cell] * self.dim + coord

    def marginal_rows(self, n_vars, rhs_of, extra_of=None):
        """One equality row per (axis, outcome, coordinate).

        ``rhs_of(axis, outcome, coord)`` gives the constant right side;
        ``extra_of(axis, outcome, coord)`` may add coefficients on
        non-cell variables (dict var -> coeff).
        """
        rows = []
        for k, m in enumerate(self.observables):
            for j in range(len(m)):
                group = [c for c in self.cells if c[k] == j]
                for r in range(self.dim):
                    coeffs = [_ZERO] * n_vars
                    for cell in group:
                        coeffs[self.var(cell, r)] += _ONE
                    if extra_of is not None:
                        for v, c in extra_of(k, j, r).items():
                            coeffs[v] += c
                    rows.append((tuple(coeffs), "=", rhs_of(k, j, r)))
        return rows

    def positivity_rows(self, n_vars, upper=False):
        """0 <= cell . x rows (and optionally cell . x <= 1) per extreme point."""
        rows = []
        for point in self.theory.extreme_points:
            for cell in self.cells:
                coeffs = [_ZERO] * n_vars
                for r, xr in enumerate(point):
                    if xr:
                        coeffs[self.var(cell, r)] = xr
                row = tuple(coeffs)
                rows.append((row, ">=", _ZERO))
                if upper:
                    rows.append((row, "<=", _ONE))
        return rows

    def bounds(self, n_vars):
        flags = [False] * self.n_cell_vars + [True] * (n_vars - self.n_cell_vars)
        return tuple(flags)

    def decode_joint(self, point) -> JointObservable:
        effects = []
        for i in range(len(self.cells)):
            coeffs = tuple(point[i * self.dim + r] for r in range(self.dim))
            effects.append(Effect(self.theory, coeffs))
        axes = tuple(m.outcomes for m in self.observables)
        return JointObservable(self.theory, axes, tuple(effects))


# ---------------------------------------------------------------------------
# plain compatibility


def build_joint_lp(observables) -> lp.LinearProgram:
    """Feasibility program for a joint observable of the given family.

    Variables are the ``dim`` coefficients of every grid cell; the rows
    are the marginal equalities followed, per extreme point and cell,
    by the pair 0 <= cell.x and cell.x <= 1.
    """
    grid = _Grid(observables)
    n = grid.n_cell_vars
    rows = grid.marginal_rows(n, lambda k, j, r: grid.observables[k].effects[j].coeffs[r])
    rows += grid.positivity_rows(n, upper=True)
    return lp.LinearProgram.create(n, rows, nonneg=grid.bounds(n))


def _lean_joint_lp(grid):
    """Same feasible set as build_joint_lp: upper rows are implied by the
    marginal equalities plus nonnegativity, so they are omitted here."""
    n = grid.n_cell_vars
    rows = grid.marginal_rows(n, lambda k, j, r: grid.observables[k].effects[j].coeffs[r])
    rows += grid.positivity_rows(n, upper=False)
    return lp.LinearProgram.create(n, rows, nonneg=grid.bounds(n)), len(rows)


def check_compatible(observables) -> CompatVerdict:
    """Decide joint measurability with an exact witness or certificate."""
    grid = _Grid(observables)
    prog, _ = _lean_joint_lp(grid)
    out = lp.solve(prog)
    if isinstance(out, lp.Optimal):
        joint = grid.decode_joint(out.point)
        for axis, m in enumerate(grid.observables):
            if marginal(joint, axis) != m:
                raise InternalError("joint witness fails exact marginal equality")
        return Compatible(joint)
    if not isinstance(out, lp.Infeasible):
        raise InternalError("feasibility program reported an unbounded direction")
    # re-index the certificate onto the rows of build_joint_lp, whose
    # positivity rows interleave a redundant upper bound after each
    # nonnegativity row
    n_marg = sum(len(m) for m in grid.observables) * grid.dim
    farkas = list(out.farkas[:n_marg])
    for y in out.farkas[n_marg:]:
        farkas.extend((y, _ZERO))
    certificate = lp.Infeasible(tuple(farkas))
    if not lp.verify(build_joint_lp(observables), certificate):
        raise InternalError("infeasibility certificate failed re-verification")
    return Incompatible(certificate)


# ---------------------------------------------------------------------------
# noise thresholds


def build_index_lp(first: Observable, second: Observable) -> lp.LinearProgram:
    """Program behind :func:`compat_index`: maximize the sharpness of
    the second observable subject to joint measurability with the first.

    Variables: grid-cell coefficients, one substituted noise variable
    per outcome of the second observable (their sum is the noise
    weight), and the sharpness itself.
    """
    grid = _Grid([first, second])
    m2 = len(second)
    n = grid.n_cell_vars + m2 + 1
    t_var = lambda j: grid.n_cell_vars + j
    lam = grid.n_cell_vars + m2

    def rhs_of(k, j, r):
        return first.effects[j].coeffs[r] if k == 0 else _ZERO

    def extra_of(k, j, r):
        if k == 0:
            return {}
        extra = {t_var(j): -grid.theory.unit[r]}
        coeff = -second.effects[j].coeffs[r]
        if coeff:
            extra[lam] = coeff
        return extra

    rows = grid.marginal_rows(n, rhs_of, extra_of)
    total = [_ZERO] * n
    for j in range(m2):
        total[t_var(j)] = _ONE
    total[lam] = _ONE
    rows.append((tuple(total), "=", _ONE))
    cap = [_ZERO] * n
    cap[lam] = _ONE
    rows.append((tuple(cap), "<=", _ONE))
    rows += grid.positivity_rows(n)

    objective = [_ZERO] * n
    objective[lam] = _ONE
    return lp.LinearProgram.create(n, rows, objective=tuple(objective),
                                   sense=lp.MAX, nonneg=grid.bounds(n))


def compat_index(first: Observable, second: Observable) -> IndexResult:
    """Maximize the sharpness of the second observable's noisy version
    that remains jointly measurable with the first (kept exact).

    The optimum is attained, so the compatibility interval is the
    closed segment [0, lambda_star].
    """
    grid = _Grid([first, second])
    m2 = len(second)
    t_var = lambda j: grid.n_cell_vars + j
    lam = grid.n_cell_vars + m2
    prog = build_index_lp(first, second)
    out = lp.solve(prog)
    if not isinstance(out, lp.Optimal):
        raise InternalError("sharpness program must attain an optimum")

    lam_star = out.point[lam]
    noise_raw = [out.point[t_var(j)] for j in range(m2)]
    joint = grid.decode_joint(out.point)
    partner = Observable(
        grid.theory,
        second.outcomes,
        tuple(
            Effect(
                grid.theory,
                tuple(
                    lam_star * c + tj * u
                    for c, u in zip(eff.coeffs, grid.theory.unit)
                ),
            )
            for eff, tj in zip(second.effects, noise_raw)
        ),
    )
    if marginal(joint, 0) != first or marginal(joint, 1) != partner:
        raise InternalError("sharpness witness fails exact marginal equality")
    if lam_star < 1:
        noise = Distribution(tuple(t / (1 - lam_star) for t in noise_raw))
    else:
        noise = None  # no noise left, its distribution is irrelevant
    return IndexResult(lam_star, noise, joint, partner)


def compat_interval(first: Observable, second: Observable) -> tuple[Fraction, Fraction]:
    """Closed interval [0, lambda_star] of admissible sharpness values."""
    return (_ZERO, compat_index(first, second).lambda_star)


# ---------------------------------------------------------------------------
# compatibility regions


def _noise_vars(grid, n_offset):
    """Variable indices t[k][j] for per-axis noise substitutes."""
    table = []
    pos = n_offset
    for m in grid.observables:
        table.append(list(range(pos, pos + len(m))))
        pos += len(m)
    return table, pos


def build_region_lp(observables, lambdas) -> lp.LinearProgram:
    """Feasibility program: do the lambda-sharp noisy versions admit a joint?"""
    lambdas = vec(lambdas)
    grid = _Grid(observables)
    if len(lambdas) != len(grid.observables):
        raise InputError("need one sharpness per observable")
    if any(l < 0 or l > 1 for l in lambdas):
        raise InputError("sharpness values must lie in [0, 1]^n")
    t_table, n = _noise_vars(grid, grid.n_cell_vars)

    def rhs_of(k, j, r):
        return lambdas[k] * grid.observables[k].effects[j].coeffs[r]

    def extra_of(k, j, r):
        return {t_table[k][j]: -grid.theory.unit[r]}

    rows = grid.marginal_rows(n, rhs_of, extra_of)
    for k, m in enumerate(grid.observables):
        coeffs = [_ZERO] * n
        for j in range(len(m)):
            coeffs[t_table[k][j]] = _ONE
        rows.append((tuple(coeffs), "=", 1 - lambdas[k]))
    rows += grid.positivity_rows(n)
    return lp.LinearProgram.create(n, rows, nonneg=grid.bounds(n))


def region_membership(observables, lambdas) -> CompatVerdict:
    """Exact membership of a sharpness point in the compatibility region."""
    lambdas = vec(lambdas)
    grid = _Grid(observables)
    prog = build_region_lp(grid.observables, lambdas)
    out = lp.solve(prog)
    if isinstance(out, lp.Infeasible):
        return Incompatible(out)
    if not isinstance(out, lp.Optimal):
        raise InternalError("membership program reported an unbounded direction")
    joint = grid.decode_joint(out.point)
    t_table, _ = _noise_vars(grid, grid.n_cell_vars)
    for k, m in enumerate(grid.observables):
        noisy_k = Observable(
            grid.theory,
            m.outcomes,
            tuple(
                Effect(
                    grid.theory,
                    tuple(
                        lambdas[k] * c + out.point[t_table[k][j]] * u
                        for c, u in zip(m.effects[j].coeffs, grid.theory.unit)
                    ),
                )
                for j in range(len(m))
            ),
        )
        if marginal(joint, k) != noisy_k:
            raise InternalError("membership witness fails exact marginal equality")
    return Compatible(joint)


def region_boundary_scan(observables, directions) -> list[RegionSample]:
    """Maximal scaling of each direction that stays inside the region.

    Convexity of the region and feasibility of the origin justify the
    ray scan; the scaled point is clipped to [0, 1]^n.  Directions are
    processed independently, so results do not depend on evaluation
    order.
    """
    grid = _Grid(observables)
    samples = []
    for direction in directions:
        w = vec(direction)
        if len(w) != len(grid.observables):
            raise InputError("direction length does not match the family size")
        if any(c < 0 for c in w) or sum(w) != 1:
            raise InputError("directions must be nonnegative with unit sum")
        samples.append(_scan_direction(grid, w))
    return samples


def build_scan_lp(observables, direction) -> lp.LinearProgram:
    """Program behind one boundary-scan direction: maximize the scaling
    of the direction subject to membership, clipped to [0, 1]^n."""
    w = vec(direction)
    grid = _Grid(observables)
    if len(w) != len(grid.observables):
        raise InputError("direction length does not match the family size")
    return _scan_program(grid, w)


def _scan_program(grid, w):
    t_table, base = _noise_vars(grid, grid.n_cell_vars)
    t_scale = base
    n = base + 1

    def rhs_of(k, j, r):
        return _ZERO

    def extra_of(k, j, r):
        extra = {t_table[k][j]: -grid.theory.unit[r]}
        coeff = -w[k] * grid.observables[k].effects[j].coeffs[r]
        if coeff:
            extra[t_scale] = extra.get(t_scale, _ZERO) + coeff
        return extra

    rows = grid.marginal_rows(n, rhs_of, extra_of)
    for k, m in enumerate(grid.observables):
        coeffs = [_ZERO] * n
        for j in range(len(m)):
            coeffs[t_table[k][j]] = _ONE
        coeffs[t_scale] = w[k]
        rows.append((tuple(coeffs), "=", _ONE))
    for k in range(len(grid.observables)):
        if w[k]:
            coeffs = [_ZERO] * n
            coeffs[t_scale] = w[k]
            rows.append((tuple(coeffs), "<=", _ONE))
    rows += grid.positivity_rows(n)

    objective = [_ZERO] * n
    objective[t_scale] = _ONE
    return lp.LinearProgram.create(n, rows, objective=tuple(objective),
                                   sense=lp.MAX, nonneg=grid.bounds(n))


def _scan_direction(grid, w):
    t_table, base = _noise_vars(grid, grid.n_cell_vars)
    t_scale = base
    prog = _scan_program(grid, w)
    out = lp.solve(prog)
    if not isinstance(out, lp.Optimal):
        raise InternalError("boundary scan program must attain an optimum")
    reach = out.value
    boundary = tuple(reach * wk for wk in w)
    joint = grid.decode_joint(out.point)
    noises = []
    for k, m in enumerate(grid.observables):
        lam_k = boundary[k]
        if lam_k < 1:
            noises.append(Distribution(tuple(
                out.point[t_table[k][j]] / (1 - lam_k) for j in range(len(m))
            )))
        else:
            noises.append(None)
    return RegionSample(tuple(w), reach, boundary, joint, tuple(noises))


def angular_directions(count: int) -> list[tuple[Fraction, Fraction]]:
    """Unit-sum rational directions on a uniform angular grid (two axes)."""
    if count < 1:
        raise InputError("need at least one direction")
    if count == 1:
        return [(Fraction(1, 2), Fraction(1, 2))]
    out = []
    scale = 10_000
    for i in range(count):
        theta = (math.pi / 2) * i / (count - 1)
        a = max(0, round(math.cos(theta) * scale))
        b = max(0, round(math.sin(theta) * scale))
        out.append((Fraction(a, a + b), Fraction(b, a + b)))
    return out


# ---------------------------------------------------------------------------
# theory-level estimate


def pair_seed(seed: int, index: int, half: int) -> int:
    return seed * 1_000_003 + 2 * index + half


def theory_index_estimate(theory: TheorySpace, pairs: int, seed: int = 0,
                          outcomes: int = 2) -> EstimateResult:
    """Upper bound on the theory's compatibility index from sampled pairs.

    The bound is the minimum of the pair indices over a deterministic
    sample, hence nonincreasing as the sample grows (prefix property).
    A sample budget of zero returns the vacuous bound 1.
    """
    from .catalog import random_observable

    best = _ONE
    argmin = None
    argmin_index = None
    values = []
    for i in range(pairs):
        first = random_observable(theory, outcomes, pair_seed(seed, i, 0))
        second = random_observable(theory, outcomes, pair_seed(seed, i, 1))
        value = compat_index(first, second).lambda_star
        values.append(value)
        if value < best:
            best = value
            argmin = (first, second)
            argmin_index = i
    return EstimateResult(best, argmin, argmin_index, tuple(values))
