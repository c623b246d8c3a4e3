"""Exact rational linear programming with verifiable certificates.

Problem form
------------
A program over ``n`` variables:

    optimize    c . x                 (maximize, minimize, or feasibility)
    subject to  a_i . x  REL_i  b_i   with REL_i in {<=, =, >=}
                x_j >= 0              for variables declared nonnegative
                x_j free              otherwise

All data are ``fractions.Fraction``; results are exact, never rounded.

Outcomes
--------
``Optimal(point, value)``
    The point satisfies every constraint and bound exactly and
    ``value == c . point`` (0 for feasibility-only programs).

``Infeasible(farkas)``
    One multiplier per constraint row proving the rows contradictory.
    Multipliers must be >= 0 on inequality rows (a ``>=`` row enters the
    combination negated, i.e. as ``-a.x <= -b``) and are free on
    equality rows.  With ``s_i = -1`` for ``>=`` rows and ``+1``
    otherwise, the combined row ``r = sum_i y_i s_i a_i`` and rhs
    ``beta = sum_i y_i s_i b_i`` must satisfy ``r_j >= 0`` on
    nonnegative variables, ``r_j == 0`` on free variables and
    ``beta < 0``; then ``r . x >= 0 > beta`` refutes every candidate.

``Unbounded(ray)``
    A recession direction of the feasible set that strictly improves
    the objective.

``verify`` re-checks any outcome against the program using exact
arithmetic only (no re-solve); ``solve`` never returns an outcome that
fails it.

Determinism
-----------
Two-phase primal simplex with Bland's anti-cycling rule and
smallest-index tie breaking, so repeated solves are bit-identical.
Internally the tableau is held as integers over one common positive
denominator (integer-preserving pivoting); this is only a faster
encoding of the same rationals and the interface stays Fraction end to
end.  Programs with many inequality rows are solved by deterministic
lazy row generation: certificates returned for the full program remain
exact (omitted rows simply carry zero multipliers).

The only presolve step is removal of all-zero rows, which keeps
certificates auditable row by row.

Programs and outcomes are immutable values safe to share; each internal
solver instance is single-use and confined to its call, so distinct
solves may run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InputError, InternalError

RELATIONS = ("<=", "=", ">=")

MAX = "max"
MIN = "min"
FEASIBILITY = "feasibility"

# Row counts above which solve() switches to lazy row generation, and the
# batch sizes used there.  Tuning knobs only; results do not depend on them.
_LAZY_MIN_ROWS = 192
_LAZY_INITIAL = 48
_LAZY_BATCH = 24
_MAX_PIVOTS = 5_000_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    nonneg: tuple[bool, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[Fraction, ...]
    objective: tuple[Fraction, ...] | None
    sense: str

    def __post_init__(self):
        if self.num_vars < 1:
            raise InputError("a linear program needs at least one variable")
        if len(self.nonneg) != self.num_vars:
            raise InputError("bounds list does not match the variable count")
        if not (len(self.rows) == len(self.relations) == len(self.rhs)):
            raise InputError("constraint lists have mismatched lengths")
        for row in self.rows:
            if len(row) != self.num_vars:
                raise InputError("constraint row has wrong length")
        for rel in self.relations:
            if rel not in RELATIONS:
                raise InputError(f"unknown relation {rel!r}")
        if self.sense not in (MAX, MIN, FEASIBILITY):
            raise InputError(f"unknown objective sense {self.sense!r}")
        if (self.objective is None) != (self.sense == FEASIBILITY):
            raise InputError("objective row must be present iff sense is not feasibility")
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise InputError("objective row has wrong length")
        if not self.rows and self.objective is None:
            raise InputError("program has neither constraints nor objective")

    @classmethod
    def create(cls, num_vars, constraints, objective=None, sense=None, nonneg=True):
        """Normalizing constructor.

        ``constraints`` is an iterable of ``(coeffs, relation, rhs)``;
        ``nonneg`` is a single bool applied to all variables or one bool
        per variable.  Numeric entries may be ints, Fractions, or
        strings like ``"2/3"``.
        """
        if isinstance(nonneg, bool):
            bounds = (nonneg,) * num_vars
        else:
            bounds = tuple(bool(b) for b in nonneg)
        rows = []
        rels = []
        rhs = []
        for coeffs, rel, b in constraints:
            rows.append(tuple(Fraction(c) for c in coeffs))
            rels.append(rel)
            rhs.append(Fraction(b))
        obj = None if objective is None else tuple(Fraction(c) for c in objective)
        if sense is None:
            sense = FEASIBILITY if obj is None else MAX
        return cls(num_vars, bounds, tuple(rows), tuple(rels), tuple(rhs), obj, sense)


@dataclass(frozen=True)
class Optimal:
    point: tuple[Fraction, ...]
    value: Fraction


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    ray: tuple[Fraction, ...]


LpOutcome = Optimal | Infeasible | Unbounded


def verify(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Re-check an outcome's certificate with exact arithmetic only."""
    if isinstance(outcome, Optimal):
        return _verify_point(lp, outcome.point, outcome.value)
    if isinstance(outcome, Infeasible):
        return _verify_farkas(lp, outcome.farkas)
    if isinstance(outcome, Unbounded):
        return _verify_ray(lp, outcome.ray)
    return False


def _verify_point(lp, point, value):
    if len(point) != lp.num_vars:
        return False
    for x, nn in zip(point, lp.nonneg):
        if nn and x < 0:
            return False
    for row, rel, b in zip(lp.rows, lp.relations, lp.rhs):
        lhs = _dot(row, point)
        if rel == "<=" and lhs > b:
            return False
        if rel == ">=" and lhs < b:
            return False
        if rel == "=" and lhs != b:
            return False
    expected = _dot(lp.objective, point) if lp.objective is not None else _ZERO
    return value == expected


def _verify_farkas(lp, farkas):
    if len(farkas) != len(lp.rows) or not lp.rows:
        return False
    combined = [_ZERO] * lp.num_vars
    beta = _ZERO
    for y, row, rel, b in zip(farkas, lp.rows, lp.relations, lp.rhs):
        if rel != "=" and y < 0:
            return False
        sy = -y if rel == ">=" else y
        if sy == 0:
            continue
        for j, a in enumerate(row):
            if a:
                combined[j] += sy * a
        beta += sy * b
    for r, nn in zip(combined, lp.nonneg):
        if nn:
            if r < 0:
                return False
        elif r != 0:
            return False
    return beta < 0


def _verify_ray(lp, ray):
    if lp.objective is None or len(ray) != lp.num_vars:
        return False
    for d, nn in zip(ray, lp.nonneg):
        if nn and d < 0:
            return False
    for row, rel in zip(lp.rows, lp.relations):
        drift = _dot(row, ray)
        if rel == "<=" and drift > 0:
            return False
        if rel == ">=" and drift < 0:
            return False
        if rel == "=" and drift != 0:
            return False
    gain = _dot(lp.objective, ray)
    return gain > 0 if lp.sense == MAX else gain < 0


def _dot(row, vec):
    total = _ZERO
    for a, x in zip(row, vec):
        if a and x:
            total += a * x
    return total


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve exactly; the returned outcome always passes :func:`verify`."""
    outcome, _ = solve_with_duals(lp)
    return outcome


def solve_with_duals(lp: LinearProgram):
    """Like :func:`solve` but also returns row duals for Optimal outcomes.

    The duals y satisfy ``sum_i y_i b_i == value`` at optimality
    (None for feasibility-only programs and non-Optimal outcomes).
    """
    kept, early = _presolve(lp)
    if early is not None:
        outcome, duals = early, None
    elif len(kept) > _LAZY_MIN_ROWS:
        outcome, duals = _solve_lazy(lp, kept)
    else:
        outcome, duals = _finish(lp, _Simplex(lp, kept).run())
    if not verify(lp, outcome):
        raise InternalError("solver produced an outcome that fails exact verification")
    return outcome, duals


def _presolve(lp):
    """Drop all-zero rows; detect trivially violated ones."""
    kept = []
    for i, (row, rel, b) in enumerate(zip(lp.rows, lp.relations, lp.rhs)):
        if any(row):
            kept.append(i)
            continue
        ok = (rel == "<=" and b >= 0) or (rel == ">=" and b <= 0) or (rel == "=" and b == 0)
        if ok:
            continue
        farkas = [_ZERO] * len(lp.rows)
        farkas[i] = _ONE if rel != "=" else (_ONE if b < 0 else -_ONE)
        return kept, Infeasible(tuple(farkas))
    return kept, None


def _finish(lp, raw):
    """Map a raw subset solve onto the full program's row indexing."""
    status = raw["status"]
    if status == "optimal":
        value = _dot(lp.objective, raw["point"]) if lp.objective is not None else _ZERO
        duals = None
        if raw.get("duals") is not None:
            duals = [_ZERO] * len(lp.rows)
            for i, y in raw["duals"].items():
                duals[i] = y
            duals = tuple(duals)
        return Optimal(tuple(raw["point"]), value), duals
    if status == "infeasible":
        farkas = [_ZERO] * len(lp.rows)
        for i, y in raw["farkas"].items():
            farkas[i] = y
        return Infeasible(tuple(farkas)), None
    return Unbounded(tuple(raw["ray"])), None


# ---------------------------------------------------------------------------
# lazy row generation


def _solve_lazy(lp, kept):
    eq_rows = [i for i in kept if lp.relations[i] == "="]
    ineq_rows = [i for i in kept if lp.relations[i] != "="]
    scan = _ScanCache(lp, ineq_rows)

    working = set(eq_rows)
    if ineq_rows:
        step = max(1, len(ineq_rows) // _LAZY_INITIAL)
        working.update(ineq_rows[::step][:_LAZY_INITIAL])

    for _ in range(len(kept) + 2):
        raw = _Simplex(lp, sorted(working)).run()
        if raw["status"] == "infeasible":
            return _finish(lp, raw)
        if raw["status"] == "optimal":
            violated = scan.violated_by_point(raw["point"], working)
            if not violated:
                return _finish(lp, raw)
            working.update(violated)
            continue
        # unbounded direction: clip it with rows it escapes through, or
        # accept it once a fully feasible point confirms unboundedness
        violated = scan.violated_by_ray(raw["ray"], working)
        if violated:
            working.update(violated)
            continue
        feas = raw["feasible_point"]
        violated = scan.violated_by_point(feas, working)
        if not violated:
            return _finish(lp, raw)
        working.update(violated)
    raise InternalError("lazy row generation failed to converge")


class _ScanCache:
    """Integer-scaled sparse rows for fast exact violation scans."""

    def __init__(self, lp, row_indices):
        self.lp = lp
        self.entries = []
        for i in row_indices:
            row = lp.rows[i]
            scale = lcm(lp.rhs[i].denominator, *(c.denominator for c in row if c)) if any(row) else 1
            sparse = [(j, int(c * scale)) for j, c in enumerate(row) if c]
            self.entries.append((i, lp.relations[i], sparse, int(lp.rhs[i] * scale), scale))

    def violated_by_point(self, point, working):
        den = lcm(*(x.denominator for x in point)) if point else 1
        nums = [int(x * den) for x in point]
        found = []
        for i, rel, sparse, b_int, scale in self.entries:
            if i in working:
                continue
            lhs = sum(c * nums[j] for j, c in sparse)
            gap = lhs - b_int * den
            if (rel == "<=" and gap > 0) or (rel == ">=" and gap < 0):
                found.append((Fraction(abs(gap), scale * den), i))
        return self._select(found)

    def violated_by_ray(self, ray, working):
        den = lcm(*(x.denominator for x in ray)) if ray else 1
        nums = [int(x * den) for x in ray]
        found = []
        for i, rel, sparse, _b, scale in self.entries:
            if i in working:
                continue
            drift = sum(c * nums[j] for j, c in sparse)
            if (rel == "<=" and drift > 0) or (rel == ">=" and drift < 0):
                found.append((Fraction(abs(drift), scale * den), i))
        return self._select(found)

    @staticmethod
    def _select(found):
        found.sort(key=lambda t: (-t[0], t[1]))
        return [i for _, i in found[:_LAZY_BATCH]]


# ---------------------------------------------------------------------------
# integer-scaled two-phase simplex


class _Simplex:
    """Two-phase simplex on a subset of rows, over scaled integers.

    The tableau entries divided by ``self.delta`` (kept positive) are
    the exact rational tableau; pivots use the integer-preserving
    update ``t' = (p*t - f*s) / delta_previous`` whose division is
    exact, so no rounding can occur anywhere.
    """

    def __init__(self, lp, row_indices):
        self.lp = lp
        self.row_indices = list(row_indices)

        # structural columns: one per nonnegative variable, a (+,-) pair
        # per free variable
        self.var_cols = []
        ncols = 0
        for nn in lp.nonneg:
            if nn:
                self.var_cols.append((ncols,))
                ncols += 1
            else:
                self.var_cols.append((ncols, ncols + 1))
                ncols += 2
        self.n_struct = ncols

        m = len(self.row_indices)
        self.slack_col = [-1] * m
        self.art_col = [-1] * m
        self.scale = [0] * m  # signed integer g_i: internal row = g_i * a_i
        rows_int = []
        rhs_int = []
        basis = []
        slack_signs = []

        for k, i in enumerate(self.row_indices):
            coeffs = lp.rows[i]
            rel = lp.relations[i]
            b = lp.rhs[i]
            ell = lcm(b.denominator, *(c.denominator for c in coeffs if c)) if any(coeffs) else b.denominator
            if rel == "<=":
                flip = 1 if b >= 0 else -1
                slack_sign = flip
            elif rel == ">=":
                flip = -1 if b <= 0 else 1
                slack_sign = -flip
            else:
                flip = 1 if b >= 0 else -1
                slack_sign = 0
            g = flip * ell
            self.scale[k] = g
            row = [0] * self.n_struct
            for j, c in enumerate(coeffs):
                if not c:
                    continue
                val = int(c * g)
                cols = self.var_cols[j]
                row[cols[0]] = val
                if len(cols) == 2:
                    row[cols[1]] = -val
            rows_int.append(row)
            rhs_int.append(int(b * g))
            slack_signs.append(slack_sign)
            basis.append(None)

        for k in range(m):
            if slack_signs[k] != 0:
                self.slack_col[k] = ncols
                ncols += 1
        art_rows = []
        for k in range(m):
            if slack_signs[k] != 1:  # slack missing or with -1 coefficient
                self.art_col[k] = ncols
                art_rows.append(k)
                ncols += 1
        self.ncols = ncols
        self.n_enter_phase2 = self.n_struct + sum(1 for s in self.slack_col if s >= 0)

        self.rows = []
        for k in range(m):
            row = rows_int[k] + [0] * (ncols - self.n_struct) + [rhs_int[k]]
            if self.slack_col[k] >= 0:
                row[self.slack_col[k]] = slack_signs[k]
            if self.art_col[k] >= 0:
                row[self.art_col[k]] = 1
                basis[k] = self.art_col[k]
            else:
                basis[k] = self.slack_col[k]
            self.rows.append(row)
        self.basis = basis
        self.delta = 1
        self.art_rows = art_rows

        # phase-2 reduced costs (internal minimization)
        obj2 = [0] * (ncols + 1)
        if lp.objective is not None:
            ell_o = lcm(*(c.denominator for c in lp.objective if c)) if any(lp.objective) else 1
            sgn = -1 if lp.sense == MAX else 1
            self.obj_scale = sgn * ell_o
            for j, c in enumerate(lp.objective):
                if not c:
                    continue
                val = int(c * ell_o) * sgn
                cols = self.var_cols[j]
                obj2[cols[0]] = val
                if len(cols) == 2:
                    obj2[cols[1]] = -val
        else:
            self.obj_scale = 1
        self.obj2 = obj2

        # phase-1 reduced costs for the starting basis
        obj1 = [0] * (ncols + 1)
        for k in art_rows:
            row = self.rows[k]
            for j in range(ncols + 1):
                if row[j]:
                    obj1[j] -= row[j]
            obj1[self.art_col[k]] += 1
        self.obj1 = obj1 if art_rows else None

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        d = self.delta

        def update(row):
            f = row[c]
            if f == 0:
                if p == d:
                    return row
                return [(p * v) // d for v in row]
            return [(p * v - f * w) // d for v, w in zip(row, prow)]

        for i in range(len(self.rows)):
            if i != r:
                self.rows[i] = update(self.rows[i])
        self.obj2 = update(self.obj2)
        if self.obj1 is not None:
            self.obj1 = update(self.obj1)
        self.delta = p
        self.basis[r] = c
        if self.delta < 0:
            self.delta = -self.delta
            self.rows = [[-v for v in row] for row in self.rows]
            self.obj2 = [-v for v in self.obj2]
            if self.obj1 is not None:
                self.obj1 = [-v for v in self.obj1]

    def _bland_step(self, obj, n_enterable):
        """One simplex step; returns 'optimal', 'unbounded', or 'pivoted'."""
        enter = -1
        for j in range(n_enterable):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal", -1
        leave = -1
        lv_num = lv_den = 0
        for i, row in enumerate(self.rows):
            a = row[enter]
            if a <= 0:
                continue
            b = row[-1]
            if leave < 0 or b * lv_den < lv_num * a or (
                b * lv_den == lv_num * a and self.basis[i] < self.basis[leave]
            ):
                leave, lv_num, lv_den = i, b, a
        if leave < 0:
            return "unbounded", enter
        self._pivot(leave, enter)
        return "pivoted", -1

    # -- phases -----------------------------------------------------------

    def run(self):
        if self.obj1 is not None:
            state = None
            for _ in range(_MAX_PIVOTS):
                state, _col = self._bland_step(self.obj1, self.n_enter_phase2)
                if state == "optimal":
                    break
                if state == "unbounded":
                    raise InternalError("phase-1 objective cannot be unbounded")
            else:
                raise InternalError("pivot limit exceeded")
            if self.obj1[-1] < 0:  # minimum of artificial sum is positive
                return {"status": "infeasible", "farkas": self._extract_farkas()}
            self._evict_artificials()
            self.obj1 = None

        for _ in range(_MAX_PIVOTS):
            state, col = self._bland_step(self.obj2, self.n_enter_phase2)
            if state == "optimal":
                return {
                    "status": "optimal",
                    "point": self._extract_point(),
                    "duals": self._extract_duals(),
                }
            if state == "unbounded":
                return {
                    "status": "unbounded",
                    "ray": self._extract_ray(col),
                    "feasible_point": self._extract_point(),
                }
        raise InternalError("pivot limit exceeded")

    def _evict_artificials(self):
        """Pivot zero-level artificials out of the basis; drop redundant rows."""
        art_set = set(self.art_col[k] for k in self.art_rows)
        r = 0
        while r < len(self.rows):
            if self.basis[r] not in art_set:
                r += 1
                continue
            if self.rows[r][-1] != 0:
                raise InternalError("artificial variable stuck at a nonzero level")
            enter = -1
            for j in range(self.n_enter_phase2):
                if self.rows[r][j] != 0:
                    enter = j
                    break
            if enter >= 0:
                self._pivot(r, enter)
                r += 1
            else:
                # the row reads 0 = 0 over every real column: redundant
                del self.rows[r]
                del self.basis[r]

    # -- extraction -------------------------------------------------------

    def _column_values(self):
        vals = {}
        for i, col in enumerate(self.basis):
            num = self.rows[i][-1]
            if num:
                vals[col] = Fraction(num, self.delta)
        return vals

    def _extract_point(self):
        vals = self._column_values()
        point = []
        for cols in self.var_cols:
            x = vals.get(cols[0], _ZERO)
            if len(cols) == 2:
                x -= vals.get(cols[1], _ZERO)
            point.append(x)
        return point

    def _extract_ray(self, enter):
        direction = {enter: _ONE}
        for i, row in enumerate(self.rows):
            a = row[enter]
            if a:
                direction[self.basis[i]] = Fraction(-a, self.delta)
        ray = []
        for cols in self.var_cols:
            d = direction.get(cols[0], _ZERO)
            if len(cols) == 2:
                d -= direction.get(cols[1], _ZERO)
            ray.append(d)
        return ray

    def _unit_column(self, k):
        """Column that started as e_k: the artificial if present, else the slack."""
        return self.art_col[k] if self.art_col[k] >= 0 else self.slack_col[k]

    def _extract_farkas(self):
        farkas = {}
        for k, i in enumerate(self.row_indices):
            col = self._unit_column(k)
            red = Fraction(self.obj1[col], self.delta)
            w = (1 - red) if self.art_col[k] >= 0 else -red
            raw = -w * self.scale[k]
            farkas[i] = -raw if self.lp.relations[i] == ">=" else raw
        return farkas

    def _extract_duals(self):
        if self.lp.objective is None:
            return None
        duals = {}
        for k, i in enumerate(self.row_indices):
            col = self._unit_column(k)
            w = -Fraction(self.obj2[col], self.delta)
            duals[i] = w * self.scale[k] / self.obj_scale
        return duals


# ---------------------------------------------------------------------------
# plain-text dump (for offline cross-checking)


def lp_to_text(lp: LinearProgram) -> str:
    """Documented dump: header lines, then one constraint per line.

    Format:
        vars <n>
        bounds <nonneg|free> ... (n tokens)
        <maximize|minimize|feasibility> [c_1 ... c_n]
        row a_1 ... a_n <rel> b
    Rationals print as num/den (or a bare integer).
    """
    out = [f"vars {lp.num_vars}"]
    out.append("bounds " + " ".join("nonneg" if nn else "free" for nn in lp.nonneg))
    if lp.objective is None:
        out.append("feasibility")
    else:
        word = "maximize" if lp.sense == MAX else "minimize"
        out.append(word + " " + " ".join(str(c) for c in lp.objective))
    for row, rel, b in zip(lp.rows, lp.relations, lp.rhs):
        out.append("row " + " ".join(str(c) for c in row) + f" {rel} {b}")
    return "\n".join(out) + "\n"
