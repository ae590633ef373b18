"""
Motion Polynomial Factorization
Factorization of bounded motion polynomials into linear factors t - k_j after
multiplication with a minimal real polynomial R, together with the building
blocks: the Q_i polynomials, maximum matchings of conjugate roots, the gcd of
the Q_i, admissible root permutations and the linear solve for the secondary
parts. Also provides the drawing multiplier C and removal of real content.
"""

from dataclasses import dataclass
from typing import Literal, Sequence

import networkx as nx
import numpy as np

from config.config import get_config
from utils.error_handling import (
    Inconsistent,
    NotBounded,
    RealCommonFactor,
    RealRoot,
    exact_with_fallback,
)
from utils.logger import get_logger

from .algebra import Backend, ComplexScalar, CPoly, KElement, MotionPolynomial
from .roots import (
    ConjugateGroup,
    GroupedRoots,
    c_gcd,
    complex_roots,
    group_conjugates,
    root_multiplicity,
)
from .symbolic import solve_pivoted

logger = get_logger(__name__)


@dataclass(frozen=True)
class RootPermutation:
    """Ordered roots z_1..z_n (0-based in code)"""

    z: tuple[ComplexScalar, ...]

    def __len__(self) -> int:
        return len(self.z)

    def __iter__(self):
        return iter(self.z)

    def __getitem__(self, i: int) -> ComplexScalar:
        return self.z[i]

    @property
    def backend(self) -> Backend:
        return self.z[0].backend if self.z else Backend.EXACT


@dataclass(frozen=True)
class Matching:
    """Index pairs (i, j), i < j, with z_i = conj(z_j)"""

    pairs: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class FactorizationResult:
    """(t - k_1)...(t - k_n) = R * P"""

    R: CPoly
    factors: tuple[KElement, ...]
    permutation: RootPermutation

    @property
    def backend(self) -> Backend:
        return self.R.backend

    def product(self) -> MotionPolynomial:
        return MotionPolynomial.product(self.factors, self.backend)


@dataclass(frozen=True)
class _GroupPlan:
    group: ConjugateGroup
    u: int
    v: int

    @property
    def m(self) -> int:
        return min(self.group.s, self.u + self.v)


def _is_conjugate(a: ComplexScalar, b: ComplexScalar) -> bool:
    if a.backend is Backend.EXACT:
        return a == b.conj()
    eps = get_config().numerics.eps
    return abs(a.to_complex() - b.to_complex().conjugate()) <= eps * (1.0 + abs(a))


def build_Q(z: RootPermutation, i: int) -> CPoly:
    """Q_i = (t - conj z_0)...(t - conj z_{i-1}) (t - z_{i+1})...(t - z_{n-1})"""
    if not 0 <= i < len(z):
        raise IndexError(f"Q index {i} out of range for {len(z)} roots")
    result = CPoly.one(z.backend)
    for j, value in enumerate(z):
        if j < i:
            result = result * CPoly.linear(value.conj())
        elif j > i:
            result = result * CPoly.linear(value)
    return result


def q_matrix(z: RootPermutation) -> np.ndarray:
    """Complex matrix whose column j holds the coefficients of Q_j"""
    n = len(z)
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        coeffs = build_Q(z, j).to_numpy()
        M[: len(coeffs), j] = coeffs
    return M


def max_matching(z: RootPermutation) -> Matching:
    """Maximum matching of the bipartite graph (i -> j for i < j, z_i = conj z_j)"""
    graph = nx.Graph()
    left = [("first", i) for i in range(len(z))]
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from((("second", j) for j in range(len(z))), bipartite=1)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            if _is_conjugate(z[i], z[j]):
                graph.add_edge(("first", i), ("second", j))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    pairs = frozenset(
        (node[1], mate[1]) for node, mate in matching.items() if node[0] == "first"
    )
    return Matching(pairs)


def gcd_of_Q(z: RootPermutation) -> CPoly:
    """gcd of all Q_i as the product of (t - z_j) over a maximum matching"""
    result = CPoly.one(z.backend)
    for _, j in sorted(max_matching(z).pairs):
        result = result * CPoly.linear(z[j])
    return result


def _plans(groups: GroupedRoots, W: CPoly) -> list[_GroupPlan]:
    plans = []
    for group in groups.groups:
        if W.is_zero():
            # only s = 0 groups survive the real-content check
            u = v = 0
        else:
            u = root_multiplicity(W, group.alpha)
            v = root_multiplicity(W, group.alpha_bar)
        plans.append(_GroupPlan(group, u, v))
    return plans


def _grouped(Z: CPoly) -> GroupedRoots:
    groups = group_conjugates(complex_roots(Z))
    if groups.has_real_roots:
        raise NotBounded(f"primal part {Z} has real roots")
    return groups


def _quadratic(alpha: ComplexScalar) -> CPoly:
    return CPoly.linear(alpha) * CPoly.linear(alpha.conj())


def minimal_R(Z: CPoly, W: CPoly) -> CPoly:
    """Real monic R of minimal degree such that R(Z + eta W) factors"""
    return _minimal_R_from_plans(_plans(_grouped(Z), W), Z.backend)


def _minimal_R_from_plans(plans: Sequence[_GroupPlan], backend: Backend) -> CPoly:
    R = CPoly.one(backend)
    for plan in plans:
        R = R * _quadratic(plan.group.alpha) ** (plan.group.s - plan.m)
    if backend is Backend.APPROX:
        R = R.real_part()
    return R


def admissible_permutation(groups: GroupedRoots, W: CPoly) -> RootPermutation:
    """Concatenated blocks (conj a)^(s - min(s, v)), a^(r + s - m), (conj a)^(s - min(s, u))"""
    return _permutation_from_plans(_plans(groups, W))


def _permutation_from_plans(plans: Sequence[_GroupPlan]) -> RootPermutation:
    z: list[ComplexScalar] = []
    for plan in plans:
        g = plan.group
        z += [g.alpha_bar] * (g.s - min(g.s, plan.v))
        z += [g.alpha] * (g.r + g.s - plan.m)
        z += [g.alpha_bar] * (g.s - min(g.s, plan.u))
    return RootPermutation(tuple(z))


def _solve_approx(z: RootPermutation, target: CPoly) -> list[ComplexScalar]:
    n = len(z)
    M = q_matrix(z)
    b = np.zeros(n, dtype=complex)
    coeffs = target.to_numpy()
    b[: len(coeffs)] = coeffs
    tol = get_config().numerics.rank_tol * max(1.0, float(np.linalg.norm(M)))
    selected: list[int] = []
    for j in range(n):
        candidate = selected + [j]
        if np.linalg.matrix_rank(M[:, candidate], tol=tol) == len(candidate):
            selected = candidate
    w = np.zeros(n, dtype=complex)
    if selected:
        sol, *_ = np.linalg.lstsq(M[:, selected], b, rcond=None)
        w[selected] = sol
    residual = float(np.linalg.norm(M @ w - b))
    if residual > 1e-6 * max(1.0, float(np.linalg.norm(b))):
        raise Inconsistent(f"target not in span of Q (residual {residual:.3g})")
    return [ComplexScalar.from_complex(complex(x)) for x in w]


def solve_secondary(z: RootPermutation, target: CPoly) -> list[ComplexScalar]:
    """
    Coefficients w_j with sum_j w_j Q_j(z) = target.

    Underdetermined systems take the pivoted solution: pivots in index order,
    free coefficients zero.

    Raises:
        Inconsistent: target is not in the span of the Q_j
    """
    n = len(z)
    if target.degree >= n:
        raise Inconsistent(f"target degree {target.degree} exceeds {n - 1}")
    if n == 0:
        return []
    if z.backend is Backend.EXACT:
        columns = [build_Q(z, j) for j in range(n)]
        solution = solve_pivoted(columns, target, n)
        if solution is None:
            raise Inconsistent(f"{target} is not in the span of the Q polynomials")
        return solution
    return _solve_approx(z, target)


def is_factorizable(z: RootPermutation, W: CPoly) -> bool:
    """Whether Z + eta W factors with primal parts in the order z (no multiplier)"""
    try:
        solve_secondary(z, W)
    except Inconsistent:
        return False
    return True


def strip_real_content(P: MotionPolynomial) -> tuple[CPoly, MotionPolynomial]:
    """Split P = S * P' with S the maximal monic real common divisor of Z and W"""
    Z, W = P.primal, P.secondary
    parts = [p for p in (Z, Z.conj(), W, W.conj()) if not p.is_zero()]
    if not parts:
        raise ValueError("cannot strip the zero motion polynomial")
    S = c_gcd(parts)
    if P.backend is Backend.APPROX:
        S = S.real_part()
    if S.degree < 1:
        return CPoly.one(P.backend), P
    reduced = MotionPolynomial.from_parts(Z // S, W // S)
    logger.debug(f"stripped real content S = {S}")
    return S, reduced


def _check_product(result: FactorizationResult, P: MotionPolynomial) -> None:
    expected = result.R * P
    if not result.product().close_to(expected, rel=1e-6):
        raise Inconsistent("factor product does not reproduce R * P")


def _to_approx_args(P: MotionPolynomial):
    return (P.to_approx(),), {}


@exact_with_fallback(_to_approx_args, label="factorization")
def factor_motion_polynomial(P: MotionPolynomial) -> FactorizationResult:
    """
    Factor a bounded motion polynomial: (t - k_1)...(t - k_n) = R * P.

    Raises:
        NotBounded: P is not monic or its primal part has real roots
        RealCommonFactor: Z and W share a real factor (strip it first)
    """
    if not P.is_monic():
        raise NotBounded(f"{P} is not monic")
    Z, W = P.primal, P.secondary
    if Z.degree == 0:
        return FactorizationResult(CPoly.one(P.backend), (), RootPermutation(()))

    groups = _grouped(Z)
    S, _ = strip_real_content(P)
    if S.degree > 0:
        raise RealCommonFactor(f"real factor {S} divides both parts")

    plans = _plans(groups, W)
    R = _minimal_R_from_plans(plans, P.backend)
    permutation = _permutation_from_plans(plans)
    logger.debug(f"R = {R}, permutation = {[str(v) for v in permutation]}")

    target = R * W
    w = solve_secondary(permutation, target)
    factors = tuple(KElement(zj, -wj) for zj, wj in zip(permutation, w))
    result = FactorizationResult(R, factors, permutation)
    _check_product(result, P)
    logger.info(f"factored degree {P.degree} motion polynomial into {len(factors)} factors")
    return result


def _drawing_to_approx(h: CPoly, variant: str = "upper"):
    return (h.to_approx(), variant), {}


@exact_with_fallback(_drawing_to_approx, label="drawing multiplier")
def drawing_multiplier(
    h: CPoly, variant: Literal["upper", "lower"] = "upper"
) -> CPoly:
    """
    C with C * conj(C) = h and gcd(C, conj C) = 1; from each conjugate pair the root
    with positive ("upper") or negative ("lower") imaginary part goes into C.

    Raises:
        RealRoot: h has a real root
    """
    groups = group_conjugates(complex_roots(h))
    if groups.has_real_roots:
        raise RealRoot(f"{h} has real roots")
    chosen = []
    for group in groups.groups:
        alpha = group.alpha
        upper = alpha if alpha.im > 0 else alpha.conj()
        root = upper if variant == "upper" else upper.conj()
        chosen.append((root, group.r))
    return CPoly.from_roots(chosen, h.backend)

