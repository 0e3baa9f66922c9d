"""Random presentation models, exact enumeration, and Monte Carlo estimation.

Two models live here:

* the quadratic-relator model: presentations with all exponents lam(t,i,j)
  independent and uniform on {-ell, ..., ell};
* polycyclic / nilpotent presentations built from power and conjugacy
  relations, again with uniform bounded exponents.

Estimation is reproducible by construction: each trial draws its own RNG
stream derived by hashing (seed, trial index), so results are independent
of how trials are scheduled across threads, and a (seed, params, trials)
triple always yields the same numbers.  Intervals are Wilson 95% intervals.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .core import Tau2Presentation
from .errors import BudgetExceededError, InternalInvariantError, PreconditionError
from .intlin import IntMatrix, in_rational_span, rank, snf
from .structure import center, derived_report, is_c_small, is_regular, scalar_ring_is_Z_certificate

DEFAULT_ENUM_BUDGET = 10**7
WILSON_Z = 1.96  # 95%


@dataclass(frozen=True)
class Tau2ModelParams:
    """Exponent-bound model: n >= 2 generators, m >= 1 central generators,
    all lam entries uniform on {-ell..ell}.  Sample space size
    (2*ell+1)**(m*n*(n-1)/2)."""

    n: int
    m: int
    ell: int

    def __post_init__(self):
        if self.n < 2 or self.m < 1:
            raise PreconditionError(f"model needs n >= 2 and m >= 1, got n={self.n}, m={self.m}")
        if self.ell < 0:
            raise PreconditionError("exponent bound must be >= 0")

    @property
    def slots(self) -> int:
        return self.m * self.n * (self.n - 1) // 2

    @property
    def sample_space_size(self) -> int:
        return (2 * self.ell + 1) ** self.slots


def _presentation_from_flat(n: int, m: int, flat: Sequence[int]) -> Tau2Presentation:
    # flat follows the (t, i<j) lexicographic storage order of Tau2Presentation.
    p = object.__new__(Tau2Presentation)
    p.n = n
    p.m = m
    p._lam = tuple(flat)
    return p


def sample_tau2(params: Tau2ModelParams, rng: random.Random) -> Tau2Presentation:
    """One uniform draw; exponents sampled in (t, i<j) lexicographic order."""
    ell = params.ell
    flat = tuple(rng.randint(-ell, ell) for _ in range(params.slots))
    return _presentation_from_flat(params.n, params.m, flat)


def enumerate_tau2(
    params: Tau2ModelParams, budget: int = DEFAULT_ENUM_BUDGET
) -> Iterator[Tau2Presentation]:
    """Every presentation in the sample space, exactly once."""
    total = params.sample_space_size
    if total > budget:
        raise BudgetExceededError(f"sample space has {total} presentations, budget is {budget}")
    values = range(-params.ell, params.ell + 1)
    for flat in itertools.product(values, repeat=params.slots):
        yield _presentation_from_flat(params.n, params.m, flat)


# -- counting bounds -----------------------------------------------------------


def count_bound_p(
    n: int, m: int, ell: int, variant: str, convention: str | None = None
) -> tuple[int, Fraction]:
    """Lower-bound polynomial p(L) for the favourable-presentation counts,
    and the induced probability bound p(L) / (2*ell+1)**slots.

    variant 'main': p(L) = prod_{i<j} (L^m - L^(j-2) - L^(i-1)), requires
    m >= n-1 >= 1; counts presentations where every generator matrix has
    full rank n-1 and no exponent vector vanishes.

    variant 'regularity': with r = min(m, n(n-1)/2) and N = n(n-1)/2,
    p(L) = L^m * prod_{k=1..r-1} (L^m - L^k) * L^(m*(N-r)); counts
    presentations whose derived matrix has rank r.

    The two L conventions in circulation (L = 2*ell and L = 2*ell+1) are both
    supported; the default follows the variant's usual choice ('2l' for
    'main', '2l+1' for 'regularity').  Bounds can be negative for tiny ell;
    they are only meaningful when nonnegative.
    """
    if variant not in ("main", "regularity"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if convention is None:
        convention = "2l" if variant == "main" else "2l+1"
    if convention == "2l":
        L = 2 * ell
    elif convention == "2l+1":
        L = 2 * ell + 1
    else:
        raise PreconditionError(f"unknown L convention {convention!r}")
    big_n = n * (n - 1) // 2
    if variant == "main":
        if not (m >= n - 1 >= 1):
            raise PreconditionError("variant 'main' requires m >= n-1 >= 1")
        p = 1
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                p *= L**m - L ** (j - 2) - L ** (i - 1)
    else:
        if n < 2 or m < 1:
            raise PreconditionError("variant 'regularity' requires n >= 2 and m >= 1")
        r = min(m, big_n)
        p = L**m
        for k in range(1, r):
            p *= L**m - L**k
        p *= L ** (m * (big_n - r))
    space = (2 * ell + 1) ** (m * big_n)
    return p, Fraction(p, space)


def lindep_count_check(
    values: Sequence[int], t: int, vectors: Sequence[Sequence[int]], budget: int = DEFAULT_ENUM_BUDGET
) -> tuple[int, int]:
    """Count vectors v in values^t that are linearly dependent together with
    the given independent vectors; must never exceed |values|^#vectors.

    Returns (dependent_count, bound).  Raises when the given vectors are not
    independent, when the enumeration exceeds the budget, or — which would
    be a genuine bug — when the bound fails.
    """
    values = sorted(set(int(x) for x in values))
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != t:
            raise PreconditionError(f"vector length {len(v)} != t = {t}")
    if vecs:
        if rank(IntMatrix.from_rows(vecs, t)) != len(vecs):
            raise PreconditionError("given vectors are not linearly independent")
    total = len(values) ** t
    if total > budget:
        raise BudgetExceededError(f"enumeration needs {total} vectors, budget is {budget}")
    count = 0
    for v in itertools.product(values, repeat=t):
        if vecs:
            if in_rational_span(vecs, v):
                count += 1
        else:
            if all(x == 0 for x in v):
                count += 1
    bound = len(values) ** len(vecs)
    if count > bound:
        raise InternalInvariantError(
            f"dependent count {count} exceeds bound {bound} — this must never happen"
        )
    return count, bound


# -- polycyclic / nilpotent presentations ---------------------------------------


@dataclass(frozen=True)
class PolycyclicPresentation:
    """Presentation with power relations x_i^{s_i} = R_{i,i} (finite s_i only)
    and conjugacy relations x_i^-1 x_j x_i = R_{j,i},  x_i x_j x_i^-1 = R_{i,j}
    for i < j, where each R is a product of generators above an index cutoff.

    flavor 'polycyclic': R_{j,i} and R_{i,j} run over x_{i+1} .. x_n.
    flavor 'nilpotent':  they start with the mandatory letter x_j and the
    free exponents run over x_{j+1} .. x_n only.

    s entries use None for an infinite (torsion-free) generator.
    """

    n: int
    s: tuple[int | None, ...]
    power: dict
    conj_b: dict
    conj_c: dict
    flavor: str

    def conj_range(self, i: int, j: int) -> range:
        if self.flavor == "nilpotent":
            return range(j + 1, self.n + 1)
        return range(i + 1, self.n + 1)


def sample_polycyclic_presentation(
    n: int,
    s: Sequence[int | None],
    ell: int,
    flavor: str,
    rng: random.Random,
) -> PolycyclicPresentation:
    """Uniform draw of all free exponents from {-ell..ell}.

    Sampling order is canonical: power exponents (i asc, k asc), then the
    two conjugacy families in (i, j, k) lexicographic order.
    """
    if flavor == "polycyclic":
        if n < 2:
            raise PreconditionError("polycyclic model needs n >= 2")
    elif flavor == "nilpotent":
        if n < 3:
            raise PreconditionError("nilpotent model needs n >= 3")
    else:
        raise PreconditionError(f"unknown flavor {flavor!r}")
    s = tuple(s)
    if len(s) != n:
        raise PreconditionError(f"need {n} power exponents, got {len(s)}")
    if ell < 0:
        raise PreconditionError("exponent bound must be >= 0")
    power = {}
    for i in range(1, n + 1):
        if s[i - 1] is not None:
            for k in range(i + 1, n + 1):
                power[(i, k)] = rng.randint(-ell, ell)
    conj_b = {}
    conj_c = {}
    dummy = PolycyclicPresentation(n, s, {}, {}, {}, flavor)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in dummy.conj_range(i, j):
                conj_b[(i, j, k)] = rng.randint(-ell, ell)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in dummy.conj_range(i, j):
                conj_c[(i, j, k)] = rng.randint(-ell, ell)
    return PolycyclicPresentation(n, s, power, conj_b, conj_c, flavor)


def abelianization_matrix(pres: PolycyclicPresentation) -> IntMatrix:
    """Relation exponent-sum matrix: one row per relation, columns are
    generators, entries the net exponent of ab(lhs) - ab(rhs)."""
    n = pres.n
    rows = []
    for i in range(1, n + 1):
        si = pres.s[i - 1]
        if si is None:
            continue
        row = [0] * n
        row[i - 1] = si
        for k in range(i + 1, n + 1):
            row[k - 1] -= pres.power.get((i, k), 0)
        rows.append(row)
    for table in (pres.conj_b, pres.conj_c):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                row = [0] * n
                row[j - 1] = 1
                if pres.flavor == "nilpotent":
                    row[j - 1] -= 1  # the mandatory leading x_j cancels
                for k in pres.conj_range(i, j):
                    row[k - 1] -= table.get((i, j, k), 0)
                rows.append(row)
    return IntMatrix.from_rows(rows, n)


def abelianization(pres: PolycyclicPresentation) -> tuple[tuple[int, ...], bool]:
    """Invariant factors of Z^n modulo the relation rows, plus finiteness.

    The abelianization is finite exactly when the relation matrix has full
    rank n.  Only the abelianization is decided here; finiteness of the
    presented group itself is out of scope (for nilpotent presentations a
    finite abelianization forces a finite group by standard structure
    theory, but no such check is attempted).
    """
    dec = snf(abelianization_matrix(pres))
    factors = tuple(d for d in dec.diagonal if d != 0)
    return factors, len(factors) == pres.n


# -- properties and Monte Carlo ---------------------------------------------


def _all_generators_csmall(p: Tau2Presentation) -> bool:
    return all(is_c_small(p.generator_a(i)) for i in range(1, p.n + 1))


def _center_is_C(p: Tau2Presentation) -> bool:
    return center(p).is_c_span()


def _all_commutators_nontrivial(p: Tau2Presentation) -> bool:
    return all(
        any(x != 0 for x in p.lambda_vector(i, j))
        for i in range(1, p.n + 1)
        for j in range(i + 1, p.n + 1)
    )


def _derived_rank_is_r(p: Tau2Presentation) -> bool:
    return derived_report(p)[0] == min(p.m, p.n * (p.n - 1) // 2)


def _csmall_conjunction(p: Tau2Presentation) -> bool:
    return (
        _all_commutators_nontrivial(p)
        and _center_is_C(p)
        and _all_generators_csmall(p)
    )


TAU2_PROPERTIES: dict[str, Callable[[Tau2Presentation], bool]] = {
    "all_generators_csmall": _all_generators_csmall,
    "center_is_C": _center_is_C,
    "all_commutators_nontrivial": _all_commutators_nontrivial,
    "derived_rank_is_r": _derived_rank_is_r,
    "regular": is_regular,
    "scalarZ_certified": scalar_ring_is_Z_certificate,
    "csmall_conjunction": _csmall_conjunction,
}

POLYCYCLIC_PROPERTIES: dict[str, Callable[[PolycyclicPresentation], bool]] = {
    "abelianization_finite": lambda pres: abelianization(pres)[1],
}


@dataclass(frozen=True)
class PolycyclicModelParams:
    n: int
    s: tuple[int | None, ...]
    ell: int
    flavor: str

    def __post_init__(self):
        # validation happens in the sampler; do one dry draw
        sample_polycyclic_presentation(self.n, self.s, self.ell, self.flavor, random.Random(0))


@dataclass(frozen=True)
class EstimateResult:
    trials: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    if trials <= 0:
        raise PreconditionError("trials must be >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (phat + z2 / (2 * trials)) / denom
    half = z * ((phat * (1 - phat) / trials + z2 / (4 * trials * trials)) ** 0.5) / denom
    # the exact interval always contains phat; guard against rounding at the ends
    low = min(max(0.0, centre - half), phat)
    high = max(min(1.0, centre + half), phat)
    return low, high


def trial_rng(seed: int, index: int) -> random.Random:
    """Splittable per-trial stream: hash (seed, index) into a child seed."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _resolve(property_name: str, params) -> tuple[Callable, Callable]:
    if isinstance(params, Tau2ModelParams):
        registry = TAU2_PROPERTIES
        sampler = lambda rng: sample_tau2(params, rng)
    elif isinstance(params, PolycyclicModelParams):
        registry = POLYCYCLIC_PROPERTIES
        sampler = lambda rng: sample_polycyclic_presentation(
            params.n, params.s, params.ell, params.flavor, rng
        )
    else:
        raise PreconditionError(f"unsupported params type {type(params).__name__}")
    if property_name not in registry:
        raise PreconditionError(
            f"unknown property {property_name!r}; known: {sorted(registry)}"
        )
    return registry[property_name], sampler


def montecarlo(
    property_name: str,
    params,
    trials: int,
    seed: int,
    threads: int = 1,
) -> EstimateResult:
    """i.i.d. estimate of P[property] under the model, Wilson 95% interval.

    Identical (seed, params, trials) always produce identical results, for
    any thread count: each trial is a pure function of its own hashed
    stream, and aggregation is a plain count.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    prop, sampler = _resolve(property_name, params)

    def run(index: int) -> bool:
        return prop(sampler(trial_rng(seed, index)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            successes = sum(pool.map(run, range(trials)))
    else:
        successes = sum(run(i) for i in range(trials))
    low, high = wilson_interval(successes, trials)
    return EstimateResult(
        trials=trials,
        successes=successes,
        estimate=successes / trials,
        ci_low=low,
        ci_high=high,
        seed=seed,
    )


def exact_fraction(
    property_name: str, params: Tau2ModelParams, budget: int = DEFAULT_ENUM_BUDGET
) -> tuple[int, int]:
    """(hits, sample space size) by full enumeration."""
    prop, _ = _resolve(property_name, params)
    hits = 0
    total = 0
    for p in enumerate_tau2(params, budget=budget):
        total += 1
        if prop(p):
            hits += 1
    return hits, total
