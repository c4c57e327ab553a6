"""Uniform sampling of unlabelled graphs with a fixed number of edges.

This is an orbit rejection sampler.  A permutation ``sigma`` is drawn
from one of the classes ``R_i`` (permutations moving exactly ``i`` points,
``i = 0`` or ``2 <= i <= n``), a graph fixed by ``sigma`` is built by switching
whole pair orbits on or off, and the pair ``(sigma, graph)`` is kept with a
probability that cancels the bias of those choices.  Every labelled graph
``G`` with ``e`` edges is then produced with probability proportional to
``|Aut(G)|``, so every isomorphism class is equally likely.

Class ``R_i`` is chosen with probability ``B_i / sum(B)`` where

    B_i = n!/(n-i)! * p^-e * q^(e-N) * (p^2 + q^2)^((2ni - i^2 - 2i)/4)

bounds ``|R_i| / P(G)`` for every graph fixed by a member of ``R_i``; the edge
probability ``p = r/(r+1)`` comes from the positive root ``r`` of the cubic
that minimises ``B_i``.  With ``bound="printed"`` the exponent and the cubic's
``r(r-1)`` coefficient change sign; that bound is also valid but far looser,
so almost every attempt is rejected.

All weights live in natural-log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, complement, complete_graph, empty_graph

BOUNDS = ("tight", "printed")
RATIO_SLACK = 1e-9


class AcceptanceError(RuntimeError):
    """An acceptance ratio above one: the weights do not bound the target."""


def derangements(k: int) -> int:
    """Number of fixed-point-free permutations of ``k`` items."""
    a, b = 1, 0
    if k == 0:
        return 1
    for m in range(2, k + 1):
        a, b = b, (m - 1) * (a + b)
    return b


def admissible_classes(n: int) -> list[int]:
    """Moved-point counts with a non-empty permutation class."""
    return [0] + list(range(2, n + 1))


def _exponent_numerator(n: int, i: int, bound: str) -> int:
    # (2ni - i^2 - 2i): pairs lying in orbits of size >= 2, minimised over R_i
    value = 2 * n * i - i * i - 2 * i
    if bound == "printed":
        return -value
    if bound != "tight":
        raise ValueError(f"bound must be one of {BOUNDS}")
    return value


def cubic_coefficients(n: int, e: int, i: int, bound: str = "tight") -> tuple[float, float, float, float]:
    """Coefficients (highest degree first) of the stationarity cubic for ``B_i``.

    Writing ``c`` for half the exponent numerator, the cubic is
    ``N r (r^2+1) - e (r+1)(r^2+1) + c r (r-1)``.
    """
    N = n * (n - 1) // 2
    c = _exponent_numerator(n, i, bound) / 2
    return (float(N - e), c - e, N - e - c, float(-e))


def _horner(coeffs, r):
    value = 0.0
    for a in coeffs:
        value = value * r + a
    return value


def solve_cubic(n: int, e: int, i: int, bound: str = "tight") -> float:
    """Positive root of the cubic, by Newton's method with a bisection fallback."""
    N = n * (n - 1) // 2
    if not 0 < e < N:
        raise ValueError(f"need 0 < e < N={N}, got e={e}")
    if i != 0 and not 2 <= i <= n:
        raise ValueError(f"moved-point count {i} is not admissible for n={n}")
    coeffs = cubic_coefficients(n, e, i, bound)
    deriv = (3 * coeffs[0], 2 * coeffs[1], coeffs[2])

    def scale(r):
        return max(1.0, sum(abs(a) * r ** (3 - k) for k, a in enumerate(coeffs)))

    r = e / (N - e)
    for _ in range(100):
        f = _horner(coeffs, r)
        fp = _horner(deriv, r)
        if fp == 0:
            break
        step = f / fp
        r_next = r - step
        if r_next <= 0:
            break
        r = r_next
        if abs(step) <= 1e-15 * max(1.0, r):
            break
    if r > 0 and abs(_horner(coeffs, r)) <= 1e-12 * scale(r):
        return r

    lo, hi = 1e-12, 1e12
    f_lo, f_hi = _horner(coeffs, lo), _horner(coeffs, hi)
    if f_lo * f_hi > 0:
        raise ArithmeticError(f"no positive root bracketed for n={n}, e={e}, i={i}")
    for _ in range(400):
        mid = math.sqrt(lo * hi) if hi / lo > 4 else 0.5 * (lo + hi)
        f_mid = _horner(coeffs, mid)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    r = 0.5 * (lo + hi)
    if abs(_horner(coeffs, r)) > 1e-12 * scale(r):
        raise ArithmeticError(f"cubic root did not converge for n={n}, e={e}, i={i}")
    return r


@dataclass(frozen=True)
class WormaldParams:
    """Per-class sampler constants for one ``(n, e)``; index ``k`` pairs with ``i_values[k]``."""

    n: int
    e: int
    bound: str
    i_values: tuple[int, ...]
    r: tuple[float, ...]
    p: tuple[float, ...]
    q: tuple[float, ...]
    log_B: tuple[float, ...]
    r_size: tuple[int, ...]
    selection: tuple[float, ...]

    @property
    def N(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def log_total(self) -> float:
        top = max(self.log_B)
        return top + math.log(sum(math.exp(b - top) for b in self.log_B))

    def index(self, i: int) -> int:
        return self.i_values.index(i)

    def success_probability(self, classes: int) -> float:
        """Chance that one attempt succeeds, given the number of classes ``G(n, e)``."""
        return math.exp(math.lgamma(self.n + 1) + math.log(classes) - self.log_total)


def log_B(n: int, e: int, i: int, p: float, bound: str = "tight") -> float:
    N = n * (n - 1) // 2
    q = 1.0 - p
    y = _exponent_numerator(n, i, bound) / 4
    return (
        math.lgamma(n + 1)
        - math.lgamma(n - i + 1)
        - e * math.log(p)
        - (N - e) * math.log(q)
        + y * math.log(p * p + q * q)
    )


@lru_cache(maxsize=256)
def compute_weights(n: int, e: int, bound: str = "tight") -> WormaldParams:
    N = n * (n - 1) // 2
    if not 0 < e < N:
        raise ValueError(f"need 0 < e < N={N}, got e={e}")
    i_values = tuple(admissible_classes(n))
    rs, ps, qs, logs, sizes = [], [], [], [], []
    for i in i_values:
        r = solve_cubic(n, e, i, bound)
        p = r / (r + 1)
        rs.append(r)
        ps.append(p)
        qs.append(1.0 / (r + 1))
        logs.append(log_B(n, e, i, p, bound))
        sizes.append(math.comb(n, i) * derangements(i))
    top = max(logs)
    weights = [math.exp(b - top) for b in logs]
    total = sum(weights)
    return WormaldParams(
        n=n,
        e=e,
        bound=bound,
        i_values=i_values,
        r=tuple(rs),
        p=tuple(ps),
        q=tuple(qs),
        log_B=tuple(logs),
        r_size=tuple(sizes),
        selection=tuple(w / total for w in weights),
    )


# ------------------------------------------------------------ permutations


def random_derangement(k: int, rng: np.random.Generator) -> tuple[list[int], int]:
    """Uniform derangement of ``range(k)`` by rejection, with the number of tries.

    Each try is a Fisher-Yates shuffle abandoned as soon as a position is
    finalised onto itself, which rejects exactly the permutations with a
    fixed point.
    """
    if k == 1:
        raise ValueError("no derangement of a single point")
    tries = 0
    while True:
        tries += 1
        perm = list(range(k))
        ok = True
        for a in range(k - 1, 0, -1):
            j = int(rng.integers(a + 1))
            perm[a], perm[j] = perm[j], perm[a]
            if perm[a] == a:
                ok = False
                break
        if ok and (k == 0 or perm[0] != 0):
            return perm, tries


def sample_sigma(n: int, i: int, rng: np.random.Generator) -> list[int]:
    """Identity for ``i = 0``; otherwise a random derangement of ``0..i-1`` fixing the rest."""
    if i == 0:
        return list(range(n))
    if not 2 <= i <= n:
        raise ValueError(f"moved-point count {i} is not admissible for n={n}")
    perm, _ = random_derangement(i, rng)
    return perm + list(range(i, n))


@dataclass(frozen=True)
class PairOrbitSet:
    """Orbits of a permutation acting on vertex pairs, and their size histogram."""

    orbits: tuple[tuple[tuple[int, int], ...], ...]
    histogram: dict

    def log_weight(self, p: float, q: float) -> float:
        """``sum_j h_j * log(p^j + q^j)``."""
        return sum(h * math.log(p**j + q**j) for j, h in self.histogram.items())


def pair_orbits(sigma: Sequence[int]) -> PairOrbitSet:
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma must be a permutation of range(n)")
    seen = set()
    orbits = []
    hist: dict[int, int] = {}
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) in seen:
                continue
            orbit = []
            x, y = a, b
            while (x, y) not in seen:
                seen.add((x, y))
                orbit.append((x, y))
                x, y = sigma[x], sigma[y]
                if x > y:
                    x, y = y, x
            orbits.append(tuple(orbit))
            hist[len(orbit)] = hist.get(len(orbit), 0) + 1
    return PairOrbitSet(tuple(orbits), hist)


# ----------------------------------------------------------------- sampling


def inclusion_probability(p: float, q: float, size: int) -> float:
    """``p^s / (p^s + q^s)`` written to avoid underflow."""
    return 1.0 / (1.0 + (q / p) ** size)


def sample_graph_given_sigma(
    params: WormaldParams,
    i: int,
    sigma: Sequence[int],
    rng: np.random.Generator,
    orbits: Optional[PairOrbitSet] = None,
) -> Optional[Graph]:
    """Switch each pair orbit on independently; ``None`` unless exactly ``e`` edges result."""
    k = params.index(i)
    p, q = params.p[k], params.q[k]
    if orbits is None:
        orbits = pair_orbits(sigma)
    rows = [0] * params.n
    edges = 0
    for orbit in orbits.orbits:
        if rng.random() < inclusion_probability(p, q, len(orbit)):
            edges += len(orbit)
            for a, b in orbit:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    if edges != params.e:
        return None
    return Graph._trusted(params.n, tuple(rows), edges)


def log_acceptance_ratio(params: WormaldParams, i: int, orbits: PairOrbitSet) -> float:
    """``log(|R_i| / (B_i P(G)))`` for any ``e``-edge graph fixed by the permutation."""
    k = params.index(i)
    p, q = params.p[k], params.q[k]
    N = params.N
    log_p_graph = params.e * math.log(p) + (N - params.e) * math.log(q) - orbits.log_weight(p, q)
    return math.log(params.r_size[k]) - params.log_B[k] - log_p_graph


def acceptance_check(
    params: WormaldParams,
    i: int,
    sigma: Sequence[int],
    g: Graph,
    rng: np.random.Generator,
    orbits: Optional[PairOrbitSet] = None,
) -> bool:
    """Keep ``(sigma, g)`` with probability ``|R_i| / (B_i P(g))``; uses one uniform draw."""
    if g.e != params.e:
        raise ValueError("graph does not have the target edge count")
    if orbits is None:
        orbits = pair_orbits(sigma)
    ratio = log_acceptance_ratio(params, i, orbits)
    if ratio > RATIO_SLACK:
        raise AcceptanceError(
            f"acceptance ratio exp({ratio:.3e}) > 1 at n={params.n}, e={params.e}, i={i}, "
            f"histogram={orbits.histogram}"
        )
    return math.log1p(-rng.random()) <= min(ratio, 0.0)


@dataclass(frozen=True)
class SampleOutcome:
    graph: Graph
    attempts: int
    i_used: int


def wormald_sample(
    n: int,
    e: int,
    rng: np.random.Generator,
    params: Optional[WormaldParams] = None,
    bound: str = "tight",
) -> SampleOutcome:
    """A graph drawn uniformly from the isomorphism classes with ``n`` vertices and ``e`` edges."""
    N = n * (n - 1) // 2
    if not 0 <= e <= N:
        raise ValueError(f"edge count {e} outside [0, {N}]")
    if e == 0:
        return SampleOutcome(empty_graph(n), 1, 0)
    if e == N:
        return SampleOutcome(complete_graph(n), 1, 0)
    if e > N // 2:
        out = wormald_sample(n, N - e, rng, bound=bound)
        return SampleOutcome(complement(out.graph), out.attempts, out.i_used)
    if params is None:
        params = compute_weights(n, e, bound)
    cdf = np.cumsum(params.selection)
    attempts = 0
    while True:
        attempts += 1
        k = min(int(np.searchsorted(cdf, rng.random(), side="right")), len(cdf) - 1)
        i = params.i_values[k]
        sigma = sample_sigma(n, i, rng)
        orbits = pair_orbits(sigma)
        g = sample_graph_given_sigma(params, i, sigma, rng, orbits)
        if g is None:
            continue
        if acceptance_check(params, i, sigma, g, rng, orbits):
            return SampleOutcome(g, attempts, i)


@lru_cache(maxsize=None)
def _class_list(n: int, e: int) -> tuple[Graph, ...]:
    from .enumeration import graphs_with

    return tuple(graphs_with(n, e))


ORACLE_MAX_VERTICES = 7


def oracle_sample(n: int, e: int, rng: np.random.Generator) -> Graph:
    """Uniform pick from the materialised class list (small ``n`` only)."""
    from .graph import CapacityError

    if n > ORACLE_MAX_VERTICES:
        raise CapacityError(f"oracle sampling is limited to n <= {ORACLE_MAX_VERTICES}")
    classes = _class_list(n, e)
    return classes[int(rng.integers(len(classes)))]
