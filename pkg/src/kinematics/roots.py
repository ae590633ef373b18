"""
Root extraction for complex polynomials
Complex roots with multiplicities, conjugate-pair grouping, gcds and root
multiplicities in both backends. The exact backend factors over Q(i) through
sympy; the approximate backend uses companion-matrix eigenvalues with clustering.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from config.config import approx_eps
from utils.error_handling import (
    BoundednessUncertain,
    NonConvergence,
    NotExactlySplit,
)
from utils.logger import get_logger

from .algebra import Backend, ComplexScalar, CPoly, MotionPolynomial
from .symbolic import gaussian_linear_factors

logger = get_logger(__name__)


@dataclass(frozen=True)
class RootList:
    """Roots with multiplicities, sorted by (Re, Im, multiplicity)"""

    roots: tuple[tuple[ComplexScalar, int], ...]
    backend: Backend = Backend.EXACT

    def __iter__(self) -> Iterator[tuple[ComplexScalar, int]]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def multiplicity(self, value: ComplexScalar) -> int:
        return sum(m for v, m in self.roots if _same_root(v, value, m))


@dataclass(frozen=True)
class ConjugateGroup:
    """Root alpha with multiplicity r and its conjugate with multiplicity s <= r"""

    alpha: ComplexScalar
    r: int
    s: int

    @property
    def alpha_bar(self) -> ComplexScalar:
        return self.alpha.conj()


@dataclass(frozen=True)
class GroupedRoots:
    groups: tuple[ConjugateGroup, ...]
    real: tuple[tuple[ComplexScalar, int], ...] = ()

    @property
    def has_real_roots(self) -> bool:
        return bool(self.real)


def _cluster_radius(mult: int, center: complex) -> float:
    return approx_eps() ** (1.0 / max(mult, 1)) * (1.0 + abs(center))


def _same_root(a: ComplexScalar, b: ComplexScalar, mult: int = 1) -> bool:
    if a.backend is Backend.EXACT:
        return a == b
    return abs(a.to_complex() - b.to_complex()) <= _cluster_radius(mult, a.to_complex())


def _sorted_roots(pairs: Iterable[tuple[ComplexScalar, int]]):
    return tuple(sorted(pairs, key=lambda p: (*p[0].sort_key(), p[1])))


def _newton_polish(coeffs: np.ndarray, deriv: np.ndarray, root: complex) -> complex:
    value = npoly.polyval(root, coeffs)
    slope = npoly.polyval(root, deriv)
    if slope == 0:
        return root
    candidate = root - value / slope
    if abs(npoly.polyval(candidate, coeffs)) < abs(value):
        return candidate
    return root


def _cluster(values: Sequence[complex]) -> list[tuple[complex, int]]:
    """Agglomerate roots whose distance is within eps^(1/m) of the merged cluster"""
    clusters = [[v] for v in sorted(values, key=lambda c: (c.real, c.imag))]
    while True:
        best = None
        centers = [complex(np.mean(c)) for c in clusters]
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                dist = abs(centers[a] - centers[b])
                merged = len(clusters[a]) + len(clusters[b])
                radius = _cluster_radius(merged, max(centers[a], centers[b], key=abs))
                if dist <= radius and (best is None or dist < best[0]):
                    best = (dist, a, b)
        if best is None:
            return [(complex(np.mean(c)), len(c)) for c in clusters]
        _, a, b = best
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]


def _approx_roots(Z: CPoly) -> list[tuple[ComplexScalar, int]]:
    coeffs = Z.to_numpy()
    try:
        raw = np.roots(coeffs[::-1])
    except np.linalg.LinAlgError as e:
        raise NonConvergence(f"eigenvalue solver failed: {e}") from e
    if raw.size != Z.degree or not np.all(np.isfinite(raw)):
        raise NonConvergence(f"root finder returned {raw.size} of {Z.degree} roots")
    deriv = npoly.polyder(coeffs)
    polished = [_newton_polish(coeffs, deriv, complex(r)) for r in raw]
    return [
        (ComplexScalar.from_complex(center), mult)
        for center, mult in _cluster(polished)
    ]


def complex_roots(Z: CPoly) -> RootList:
    """
    All complex roots of Z with multiplicities.

    Raises:
        NotExactlySplit: exact backend and Z does not split over Q(i)
        NonConvergence: approximate backend eigenvalue failure
    """
    if Z.is_zero():
        raise ValueError("the zero polynomial has no root list")
    if Z.degree == 0:
        return RootList((), Z.backend)
    if Z.backend is Backend.EXACT:
        try:
            pairs = gaussian_linear_factors(Z)
        except ValueError as e:
            raise NotExactlySplit(str(e)) from e
    else:
        pairs = _approx_roots(Z)
    return RootList(_sorted_roots(pairs), Z.backend)


def _conjugate_match(a: ComplexScalar, b: ComplexScalar, mult: int) -> bool:
    if a.backend is Backend.EXACT:
        return a == b.conj()
    scale = 1.0 + abs(a)
    tol = max(approx_eps() * scale, _cluster_radius(mult, a.to_complex()) if mult > 1 else 0.0)
    return abs(a.to_complex() - b.to_complex().conjugate()) <= tol


def _warn_if_nearly_real(value: ComplexScalar) -> None:
    if value.backend is Backend.EXACT:
        return
    eps = approx_eps()
    if abs(value.im) <= math.sqrt(eps):
        message = f"root {value} is within {abs(value.im):.3g} of the real axis"
        logger.warning(message)
        warnings.warn(message, BoundednessUncertain, stacklevel=3)


def group_conjugates(roots: RootList) -> GroupedRoots:
    """
    Merge conjugate pairs into (alpha, r, s) with r >= s; real roots are reported
    separately. On equal multiplicities alpha is the root with positive imaginary part.
    """
    items = list(roots.roots)
    used = [False] * len(items)
    groups: list[ConjugateGroup] = []
    real: list[tuple[ComplexScalar, int]] = []

    for idx, (value, mult) in enumerate(items):
        if used[idx]:
            continue
        used[idx] = True
        if value.is_real():
            real.append((value, mult))
            continue
        _warn_if_nearly_real(value)

        partner = None
        for j in range(idx + 1, len(items)):
            if not used[j] and _conjugate_match(value, items[j][0], max(mult, items[j][1])):
                partner = j
                break
        if partner is None:
            groups.append(ConjugateGroup(value, mult, 0))
            continue
        used[partner] = True
        other, other_mult = items[partner]
        if mult > other_mult or (mult == other_mult and value.im > 0):
            groups.append(ConjugateGroup(value, mult, other_mult))
        else:
            groups.append(ConjugateGroup(other, other_mult, mult))

    groups.sort(key=lambda g: g.alpha.sort_key())
    return GroupedRoots(tuple(groups), tuple(real))


def _euclid(a: CPoly, b: CPoly) -> CPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a


def root_multiplicity(W: CPoly, a: ComplexScalar) -> int:
    """Largest j with (t - a)^j dividing W"""
    if W.is_zero():
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    if W.degree < 1:
        return 0
    if W.backend is Backend.EXACT:
        count = 0
        p = W
        divisor = CPoly.linear(a)
        while p.degree >= 1:
            q, r = divmod(p, divisor)
            if not r.is_zero():
                break
            count += 1
            p = q
        return count
    total = 0
    target = a.to_complex()
    for value, mult in complex_roots(W):
        if abs(value.to_complex() - target) <= _cluster_radius(mult, target):
            total += mult
    return total


def c_gcd(ps: Sequence[CPoly]) -> CPoly:
    """Monic gcd; Euclid in the exact backend, shared root clusters otherwise"""
    polys = [p for p in ps if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of zero polynomials is undefined")
    backend = polys[0].backend
    if backend is Backend.EXACT:
        g = polys[0]
        for p in polys[1:]:
            g = _euclid(g, p)
            if g.degree == 0:
                break
        return g.monic()

    base = min(polys, key=lambda p: p.degree)
    if base.degree < 1:
        return CPoly.one(backend)
    shared = []
    for value, mult in complex_roots(base):
        m = mult
        for p in polys:
            if p is base:
                continue
            m = min(m, root_multiplicity(p, value))
            if m == 0:
                break
        if m:
            shared.append((value, m))
    return CPoly.from_roots(shared, backend)


def is_bounded(P: MotionPolynomial) -> bool:
    """Monic with a primal part free of real roots"""
    if not P.is_monic():
        return False
    Z = P.primal
    if Z.degree < 1:
        return True
    try:
        roots = complex_roots(Z)
    except NotExactlySplit:
        roots = complex_roots(Z.to_approx())
    return not group_conjugates(roots).has_real_roots
