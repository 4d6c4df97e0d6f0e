"""Exact-rational certification of the stability argument's linear program.

The program lives over edge-class masses e_j (j = index of a color-list
size), normalized so the unit on every right-hand side is 1.  Constraints
are suffix sums c_i * (e_lo + ... + e_{s-1}) <= 1; the objective maximizes
prod j ** e_j, handled multiplicatively as a PowerProduct so rational
vertices compare exactly and no logarithm ever enters the arithmetic.
Optimality is certified by enumerating every basic feasible solution,
which is self-evidently exhaustive at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import ContractViolationError
from .exactnum import EQUAL, PowerProduct, pp_compare
from .thresholds import cap_A, i_star, b_param, l_param, r0_base, s0

VARIANT_LOW = "LOW"
VARIANT_MID_HIGH = "MID_HIGH"


@dataclass(frozen=True)
class SuffixConstraint:
    """coef * (e_lo + e_{lo+1} + ... + e_{s-1}) <= 1."""

    coef: Fraction
    lo: int


@dataclass(frozen=True)
class StabilityLP:
    k: int
    s: int
    variant: str
    rows: tuple[SuffixConstraint, ...]
    variables: tuple[int, ...]          # objective-bearing indices (>= 2)
    include_e1: bool                    # e_1 participates with objective factor 1
    free_cap: Fraction | None = None    # bound on sum of e_2..e_{s-A(k,2)-1}
    free_range: tuple[int, int] | None = None
    p: int | None = None
    j: int | None = None

    def dims(self) -> tuple[int, ...]:
        return ((1,) if self.include_e1 else ()) + self.variables

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "variant": self.variant,
            "rows": [{"coef": _frac_str(c.coef), "lo": c.lo, "hi": self.s - 1, "bound": "1"}
                     for c in self.rows],
            "variables": list(self.variables),
            "include_e1": self.include_e1,
            "free_cap": _frac_str(self.free_cap) if self.free_cap is not None else None,
            "free_range": list(self.free_range) if self.free_range else None,
            "p": self.p,
            "j": self.j,
        }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def build_lp(k: int, s: int, variant: str = VARIANT_LOW,
             p: int | None = None, j: int | None = None) -> StabilityLP:
    """Assemble the constraint system for (k, s).

    LOW carries one suffix row per i in [1, i*]; the last row's range can
    clamp at index 1, in which case e_1 joins the instance with objective
    weight of factor 1.  MID_HIGH extends the rows through i = k-2 and adds
    the cap on the low indices the suffix rows cannot reach, weighted by
    the feasible witness pair (p, j).
    """
    if k < 4 or not 2 <= s <= comb(k, 2):
        raise ContractViolationError(f"need k >= 4 and 2 <= s <= C(k,2), got {(k, s)}")
    if variant == VARIANT_LOW:
        if s > s0(k):
            raise ContractViolationError(f"s = {s} is beyond s0(k) = {s0(k)}; use MID_HIGH")
        top = i_star(k, s)
        rows = tuple(SuffixConstraint(Fraction(k - i - 1, k - i),
                                      max(1, s - cap_A(k, k - i)))
                     for i in range(1, top + 1))
        lo_min = min(c.lo for c in rows)
        return StabilityLP(k, s, variant, rows,
                           variables=tuple(range(max(2, lo_min), s)),
                           include_e1=lo_min <= 1)
    if variant == VARIANT_MID_HIGH:
        if s <= s0(k):
            raise ContractViolationError(f"s = {s} is within s0(k) = {s0(k)}; use LOW")
        if p is None or j is None:
            raise ContractViolationError("MID_HIGH needs a witness pair (p, j)")
        if b_param(k, p, j) > comb(k, 2) - s + 2:
            raise ContractViolationError(f"(p, j) = {(p, j)} infeasible for (k, s) = {(k, s)}")
        rows = tuple(SuffixConstraint(Fraction(k - i - 1, k - i), s - cap_A(k, k - i))
                     for i in range(1, k - 1))
        return StabilityLP(k, s, variant, rows,
                           variables=tuple(range(2, s)),
                           include_e1=False,
                           free_cap=l_param(k, s, p, j),
                           free_range=(2, s - cap_A(k, 2) - 1),
                           p=p, j=j)
    raise ContractViolationError(f"unknown variant {variant!r}")


def claimed_solution(k: int, s: int) -> dict[int, Fraction]:
    """The closed-form optimum for the LOW instance.

    Mass (k-1)/(k-2) sits at index s-1 and mass 1/((k-i-1)(k-i)) at index
    s - A(k, k-i+1) - 1 for i in [2, i*]; everything else is zero.  s = 2
    has no objective-bearing index, so the point is empty with value 1.
    """
    if k < 4 or not 2 <= s <= comb(k, 2):
        raise ContractViolationError(f"need k >= 4 and 2 <= s <= C(k,2), got {(k, s)}")
    if s > s0(k):
        raise ContractViolationError(f"claimed_solution covers the LOW range s <= {s0(k)}")
    if s == 2:
        return {}
    point = {s - 1: Fraction(k - 1, k - 2)}
    for i in range(2, i_star(k, s) + 1):
        idx = s - cap_A(k, k - i + 1) - 1
        point[idx] = Fraction(1, (k - i - 1) * (k - i))
    return point


def support_indices(k: int, s: int, top_i: int | None = None) -> tuple[int, ...]:
    """Indices carrying mass in the claimed optimum (the telescoping sum)."""
    if s == 2:
        return ()
    top = i_star(k, s) if top_i is None else top_i
    idxs = [s - 1]
    idxs.extend(s - cap_A(k, k - i + 1) - 1 for i in range(2, top + 1))
    return tuple(idxs)


@dataclass
class LPCertificate:
    lp: StabilityLP
    claimed_point: dict[int, Fraction]
    claimed_value: PowerProduct
    feasible: bool
    tight_rows: tuple[int, ...]
    vertex_max: PowerProduct
    optimal: bool
    vertices: list[tuple[Fraction, ...]]
    argmax_vertex: tuple[Fraction, ...]
    degenerate_skipped: int
    sum_of_point: Fraction
    support_sum_expected: Fraction
    support_sum_actual: Fraction
    support_sum_matches: bool
    support: tuple[int, ...] = field(default_factory=tuple)

    def to_json_obj(self) -> dict:
        dims = self.lp.dims()
        return {
            "lp": self.lp.to_dict(),
            "claimed_point": {str(i): _frac_str(v) for i, v in sorted(self.claimed_point.items())},
            "claimed_value_factors": self.claimed_value.factor_list(),
            "feasible": self.feasible,
            "tight_rows": list(self.tight_rows),
            "vertex_max_factors": self.vertex_max.factor_list(),
            "optimal": self.optimal,
            "argmax_vertex": {str(i): _frac_str(v) for i, v in zip(dims, self.argmax_vertex)},
            "vertices": [[_frac_str(v) for v in vert] for vert in self.vertices],
            "degenerate_skipped": self.degenerate_skipped,
            "sum_of_point": _frac_str(self.sum_of_point),
            "support": list(self.support),
            "support_sum_expected": _frac_str(self.support_sum_expected),
            "support_sum_actual": _frac_str(self.support_sum_actual),
            "support_sum_matches": self.support_sum_matches,
        }


def _solve_square(mat, rhs):
    """Gaussian elimination over Fractions; None when singular."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _constraint_matrix(lp: StabilityLP):
    dims = lp.dims()
    rows = []
    bounds = []
    for c in lp.rows:
        rows.append([c.coef if idx >= c.lo else Fraction(0) for idx in dims])
        bounds.append(Fraction(1))
    if lp.free_cap is not None:
        lo, hi = lp.free_range
        rows.append([Fraction(1) if lo <= idx <= hi else Fraction(0) for idx in dims])
        bounds.append(lp.free_cap)
    return dims, rows, bounds


def objective_value(point: dict[int, Fraction]) -> PowerProduct:
    """prod j ** e_j; index 1 contributes factor 1 and drops out."""
    return PowerProduct(tuple((idx, e) for idx, e in point.items() if e != 0))


def enumerate_vertices(lp: StabilityLP):
    """All basic feasible solutions, deduplicated and sorted.

    Every vertex activates some subset of the rows plus enough e_j = 0
    pins; equivalently, pick equally many rows and basic variables and
    solve the square rational system.  Singular systems are counted, never
    silently dropped.
    """
    dims, rows, bounds = _constraint_matrix(lp)
    d = len(dims)
    nrows = len(rows)
    seen = {}
    degenerate = 0
    zero = tuple(Fraction(0) for _ in range(d))
    seen[zero] = True
    for nr in range(1, min(nrows, d) + 1):
        for rset in combinations(range(nrows), nr):
            for bset in combinations(range(d), nr):
                mat = [[rows[ri][bi] for bi in bset] for ri in rset]
                sol = _solve_square(mat, [bounds[ri] for ri in rset])
                if sol is None:
                    degenerate += 1
                    continue
                if any(x < 0 for x in sol):
                    continue
                full = [Fraction(0)] * d
                for bi, x in zip(bset, sol):
                    full[bi] = x
                if all(sum(row[i] * full[i] for i in range(d)) <= bd
                       for row, bd in zip(rows, bounds)):
                    seen[tuple(full)] = True
    return sorted(seen), degenerate


def certify(lp: StabilityLP, point: dict[int, Fraction]) -> LPCertificate:
    """Check the point exactly and compare it against every vertex."""
    dims, rows, bounds = _constraint_matrix(lp)
    pos = {idx: i for i, idx in enumerate(dims)}
    vec = [Fraction(0)] * len(dims)
    for idx, v in point.items():
        if idx not in pos:
            raise ContractViolationError(f"point index {idx} is not a variable of this instance")
        vec[pos[idx]] = Fraction(v)
    feasible = all(v >= 0 for v in vec)
    tight = []
    for ri, (row, bd) in enumerate(zip(rows, bounds)):
        lhs = sum(c * x for c, x in zip(row, vec))
        if lhs > bd:
            feasible = False
        elif lhs == bd:
            tight.append(ri)

    vertices, degenerate = enumerate_vertices(lp)
    best = None
    best_vertex = None
    for vert in vertices:
        val = objective_value({idx: x for idx, x in zip(dims, vert)})
        if best is None or pp_compare(val, best) > 0:
            best = val
            best_vertex = vert
    claimed_value = objective_value(point)
    optimal = feasible and pp_compare(claimed_value, best) == EQUAL

    top = i_star(lp.k, lp.s) if lp.variant == VARIANT_LOW else lp.k - 2
    supp = support_indices(lp.k, lp.s, top_i=top)
    actual = sum((Fraction(point.get(i, 0)) for i in supp), Fraction(0))
    expected = Fraction(2)
    return LPCertificate(
        lp=lp, claimed_point=dict(point), claimed_value=claimed_value,
        feasible=feasible, tight_rows=tuple(tight),
        vertex_max=best, optimal=optimal, vertices=vertices,
        argmax_vertex=best_vertex, degenerate_skipped=degenerate,
        sum_of_point=sum((Fraction(v) for v in point.values()), Fraction(0)),
        support_sum_expected=expected, support_sum_actual=actual,
        support_sum_matches=actual == expected, support=supp)


def certify_low(k: int, s: int) -> LPCertificate:
    return certify(build_lp(k, s, VARIANT_LOW), claimed_solution(k, s))


def case_bases(k: int, s: int, p: int, j: int) -> tuple[PowerProduct, PowerProduct]:
    """The two bracketed bounds that differ only in the net weight (L-2 vs L)
    on the factor s - A(k,2) - 1."""
    if s < s0(k):
        raise ContractViolationError(f"case bases need s >= s0(k) = {s0(k)}")
    weight = l_param(k, s, p, j)
    head = s - cap_A(k, 2) - 1
    core = [(s - 1, Fraction(k - 1, k - 2))]
    core.extend((s - cap_A(k, k - i + 1) - 1, Fraction(1, (k - i - 1) * (k - i)))
                for i in range(2, k - 1))
    lower = PowerProduct(core + [(head, weight - 2)])
    upper = PowerProduct(core + [(head, weight)])
    return lower, upper


def compare_case_bases(k: int, s: int, p: int, j: int) -> int:
    """Exact ordering of the two bounds; never greater, equal when the head
    factor is 1."""
    lower, upper = case_bases(k, s, p, j)
    return pp_compare(lower, upper)


def low_base_matches_threshold(k: int, s: int) -> bool:
    """Cross-module identity: the certified LOW optimum equals the r0 bracket."""
    cert = certify_low(k, s)
    base, _ = r0_base(k, s)
    return pp_compare(cert.vertex_max, base) == EQUAL
