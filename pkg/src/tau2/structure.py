"""Structural analysis: centralizers, center, c-smallness, regularity.

Everything reduces to exact kernel lattices of small integer matrices:

* Commuting with a fixed g is a linear condition on alpha coordinates:
  [g, y] = 1  iff  L(g) * alpha(y) == 0, where L(g) is the m x n matrix with
  entry (t, j) = sum_i lam(t,i,j) alpha_i(g).  So the centralizer of g is
  {elements whose alpha lies in ker L(g)}, gamma unconstrained (central
  generators commute with everything).
* The center is cut out by commuting with every a_k, i.e. by the kernel of
  the stacked matrix of all those conditions; its basis extends C by lifts
  of the kernel basis D.
* g is c-small when its centralizer is exactly {g^t z : z in Z(G)}, i.e.
  when ker L(g) equals the lattice spanned by alpha(g) and D.  The variant
  with the subgroup generated by C in place of the center compares against
  the lattice spanned by alpha(g) alone.

c-smallness is decided exactly via lattice equality.  The rank condition
(rank of the generator matrix == n-1 plus a nonzero exponent) is a
sufficient criterion only; it is kept alongside and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import MalcevElement, Tau2Presentation, commutator
from .errors import PreconditionError
from .intlin import IntMatrix, LatticeBasis, in_rational_span, kernel_basis, lattice_equal, rank


@dataclass(frozen=True)
class CentralizerDescription:
    """Alpha-coordinate lattice of the centralizer of one element.

    The full centralizer is {x : alpha(x) in alpha_lattice, gamma(x) arbitrary}.
    """

    alpha_lattice: LatticeBasis


@dataclass(frozen=True)
class CenterDescription:
    """Center basis data: the central generators C plus lifts of d_basis."""

    d_basis: LatticeBasis
    m: int

    @property
    def rank(self) -> int:
        return self.m + self.d_basis.rank

    def is_c_span(self) -> bool:
        """True when the center is exactly the subgroup generated by C."""
        return self.d_basis.rank == 0


def commutation_matrix(g: MalcevElement) -> IntMatrix:
    """m x n matrix L(g) with [g, y] == 1  iff  L(g) * alpha(y) == 0."""
    p = g.presentation
    rows = []
    for t in range(1, p.m + 1):
        row = []
        for j in range(1, p.n + 1):
            row.append(sum(p.lam(t, i, j) * g.alpha[i - 1] for i in range(1, p.n + 1)))
        rows.append(row)
    return IntMatrix.from_rows(rows, p.n)


def generator_matrix(p: Tau2Presentation, k: int) -> IntMatrix:
    """The m x (n-1) coefficient matrix of the commuting condition for a_k.

    Columns are -lam_vec(1,k), ..., -lam_vec(k-1,k), lam_vec(k,k+1), ...,
    lam_vec(k,n); equivalently the commutation matrix of a_k with its zero
    column k removed.
    """
    if p.n < 2:
        raise PreconditionError("generator matrix needs n >= 2")
    if not 1 <= k <= p.n:
        raise IndexError(f"generator index {k} out of range 1..{p.n}")
    rows = []
    for t in range(1, p.m + 1):
        rows.append([p.lam(t, k, j) for j in range(1, p.n + 1) if j != k])
    return IntMatrix.from_rows(rows, p.n - 1)


def centralizer(g: MalcevElement) -> CentralizerDescription:
    return CentralizerDescription(alpha_lattice=kernel_basis(commutation_matrix(g)))


def _stacked_center_matrix(p: Tau2Presentation) -> IntMatrix:
    # Row (t, j): the condition sum_i lam(t,i,j) alpha_i == 0.
    rows = []
    for t in range(1, p.m + 1):
        for j in range(1, p.n + 1):
            rows.append([p.lam(t, i, j) for i in range(1, p.n + 1)])
    return IntMatrix.from_rows(rows, p.n)


def center(p: Tau2Presentation) -> CenterDescription:
    """Center of the presented group: alpha-patterns commuting with every a_k."""
    return CenterDescription(d_basis=kernel_basis(_stacked_center_matrix(p)), m=p.m)


def is_c_small(g: MalcevElement) -> bool:
    """Exact test: centralizer == {g^t z : t integer, z central}."""
    p = g.presentation
    target = LatticeBasis.from_vectors(p.n, (g.alpha,) + center(p).d_basis.vectors)
    return lattice_equal(centralizer(g).alpha_lattice, target)


def is_C_c_small(g: MalcevElement) -> bool:
    """Variant with the C-span in place of the center: centralizer == {g^t c}."""
    p = g.presentation
    target = LatticeBasis.from_vectors(p.n, (g.alpha,))
    return lattice_equal(centralizer(g).alpha_lattice, target)


def csmall_by_rank_criterion(p: Tau2Presentation, k: int) -> bool:
    """Sufficient rank test for a_k being c-small (with center == C-span).

    True iff rank of the generator matrix is n-1 and some lam(t,k,j) != 0.
    When true, the exact test must agree and the center's d_basis must be
    empty; the converse direction is not asserted.
    """
    if p.n < 2:
        raise PreconditionError("rank criterion needs n >= 2")
    if not 1 <= k <= p.n:
        raise IndexError(f"generator index {k} out of range 1..{p.n}")
    if rank(generator_matrix(p, k)) != p.n - 1:
        return False
    return any(
        p.lam(t, k, j) != 0
        for t in range(1, p.m + 1)
        for j in range(1, p.n + 1)
        if j != k
    )


def derived_matrix(p: Tau2Presentation) -> IntMatrix:
    """n(n-1)/2 x m matrix whose rows are the exponent vectors of [a_i, a_j].

    Its row lattice inside Z^m is the derived subgroup written in the
    C-coordinates, so its rank is the rank of the derived subgroup.
    """
    rows = [p.lambda_vector(i, j) for i, j in combinations(range(1, p.n + 1), 2)]
    return IntMatrix.from_rows(rows, p.m)


def derived_report(p: Tau2Presentation) -> tuple[int, bool, bool]:
    """(derived rank, finite index in C-span, commutators form a basis)."""
    r = rank(derived_matrix(p))
    return r, r == p.m, r == p.n * (p.n - 1) // 2


def in_derived_isolator(g: MalcevElement) -> bool:
    """True when some nonzero power of g lies in the derived subgroup.

    Central powers scale gamma linearly, so this holds exactly when g has
    zero alpha part and gamma(g) lies in the rational row span of the
    derived matrix.
    """
    if any(x != 0 for x in g.alpha):
        return False
    return in_rational_span(derived_matrix(g.presentation).entries, g.gamma)


def is_regular(p: Tau2Presentation) -> bool:
    """Whether the center is contained in the isolator of the derived subgroup.

    Center elements with nonzero alpha part can never have a power in the
    derived subgroup, so regularity forces an empty d_basis; given that, it
    reduces to every c_t being in the rational row span, i.e. derived rank m.
    """
    if not center(p).is_c_span():
        return False
    return derived_report(p)[0] == p.m


def scalar_ring_is_Z_certificate(p: Tau2Presentation) -> bool:
    """Certificate that the maximal ring of scalars is the integers.

    True iff n >= 2, every a_i is c-small, and no [a_i, a_j] is trivial.
    A True result also implies the group is not a direct product of
    non-abelian factors.  False means "not certified", never "the scalar
    ring is something else".
    """
    if p.n < 2:
        return False
    for i, j in combinations(range(1, p.n + 1), 2):
        if all(x == 0 for x in p.lambda_vector(i, j)):
            return False
    return all(is_c_small(p.generator_a(i)) for i in range(1, p.n + 1))


def find_csmall_noncommuting_pair(p: Tau2Presentation, box: int):
    """Search the alpha box [-box, box]^n for two non-commuting elements that
    are both c-small relative to the C-span.  Returns (alpha1, alpha2) or None.

    Both properties depend only on alpha coordinates (gamma parts are central
    and invisible to commutators), so scanning alpha vectors decides the
    question for every element with coordinates in the box.
    """
    if box < 1:
        raise PreconditionError("box radius must be >= 1")
    small = []
    for alpha in product(range(-box, box + 1), repeat=p.n):
        g = p.element(alpha, (0,) * p.m)
        if is_C_c_small(g):
            small.append(g)
    for g, h in combinations(small, 2):
        if not commutator(g, h).is_identity():
            return g.alpha, h.alpha
    return None


def no_csmall_pair_check(p: Tau2Presentation, box: int) -> bool:
    """Bounded falsification test: True when no violating pair exists in the box.

    Meaningful under the hypothesis derived_rank <= (n-1)/2, where the
    answer must always be True; the hypothesis is the caller's to check.
    """
    return find_csmall_noncommuting_pair(p, box) is None


@dataclass(frozen=True)
class StructureReport:
    """Full structural summary of one presentation."""

    n: int
    m: int
    center_d_basis: tuple[tuple[int, ...], ...]
    center_rank: int
    csmall_flags: tuple[bool, ...]
    all_commutators_nonzero: bool
    derived_rank: int
    derived_finite_index: bool
    commutators_form_basis: bool
    is_regular: bool
    scalar_ring_is_Z_certified: bool


def structure_report(p: Tau2Presentation) -> StructureReport:
    cen = center(p)
    d_rank, finite_index, forms_basis = derived_report(p)
    flags = tuple(is_c_small(p.generator_a(i)) for i in range(1, p.n + 1))
    nonzero = all(
        any(x != 0 for x in p.lambda_vector(i, j))
        for i, j in combinations(range(1, p.n + 1), 2)
    )
    return StructureReport(
        n=p.n,
        m=p.m,
        center_d_basis=cen.d_basis.vectors,
        center_rank=cen.rank,
        csmall_flags=flags,
        all_commutators_nonzero=nonzero,
        derived_rank=d_rank,
        derived_finite_index=finite_index,
        commutators_form_basis=forms_basis,
        is_regular=is_regular(p),
        scalar_ring_is_Z_certified=scalar_ring_is_Z_certificate(p),
    )


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def format_structure_report(r: StructureReport) -> str:
    """One structured text record; deterministic field order."""
    d_basis = "[" + ", ".join("(" + " ".join(str(x) for x in v) + ")" for v in r.center_d_basis) + "]"
    lines = [
        f"n = {r.n}",
        f"m = {r.m}",
        f"center_d_basis = {d_basis}",
        f"center_rank = {r.center_rank}",
        "csmall = [" + ", ".join(_fmt_bool(b) for b in r.csmall_flags) + "]",
        f"all_commutators_nonzero = {_fmt_bool(r.all_commutators_nonzero)}",
        f"derived_rank = {r.derived_rank}",
        f"derived_finite_index = {_fmt_bool(r.derived_finite_index)}",
        f"commutators_form_basis = {_fmt_bool(r.commutators_form_basis)}",
        f"regular = {_fmt_bool(r.is_regular)}",
        f"scalar_ring_Z_certified = {_fmt_bool(r.scalar_ring_is_Z_certified)}",
    ]
    return "\n".join(lines) + "\n"


def parse_structure_report(text: str) -> StructureReport:
    fields = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, val = line.partition("=")
        fields[key.strip()] = val.strip()

    def boolean(s: str) -> bool:
        return s == "true"

    d_basis_text = fields["center_d_basis"].strip("[]").strip()
    d_basis = []
    if d_basis_text:
        for part in d_basis_text.split("),"):
            nums = part.strip().strip("()").split()
            d_basis.append(tuple(int(x) for x in nums))
    csmall_text = fields["csmall"].strip("[]").strip()
    flags = tuple(boolean(s.strip()) for s in csmall_text.split(",")) if csmall_text else ()
    return StructureReport(
        n=int(fields["n"]),
        m=int(fields["m"]),
        center_d_basis=tuple(d_basis),
        center_rank=int(fields["center_rank"]),
        csmall_flags=flags,
        all_commutators_nonzero=boolean(fields["all_commutators_nonzero"]),
        derived_rank=int(fields["derived_rank"]),
        derived_finite_index=boolean(fields["derived_finite_index"]),
        commutators_form_basis=boolean(fields["commutators_form_basis"]),
        is_regular=boolean(fields["regular"]),
        scalar_ring_is_Z_certified=boolean(fields["scalar_ring_Z_certified"]),
    )
