"""Presentations of torsion-free 2-step nilpotent groups and exact arithmetic.

A presentation here is the data of n generators a_1..a_n, m central
generators c_1..c_m, and integer exponents lam(t, i, j) for i < j encoding
the relations

    [a_i, a_j] = c_1^lam(1,i,j) * ... * c_m^lam(m,i,j),      [A,C] = [C,C] = 1.

Every element has a unique normal form  a_1^x1 ... a_n^xn c_1^y1 ... c_m^ym,
and we store exactly that coordinate tuple (Malcev coordinates).  Collecting
a product into normal form with the identity  a_j a_i = a_i a_j [a_i,a_j]^-1
gives the closed multiplication law

    alpha(xy)   = alpha(x) + alpha(y)
    gamma_t(xy) = gamma_t(x) + gamma_t(y) - sum_{i<j} lam(t,i,j) alpha_j(x) alpha_i(y)

which ``multiply`` implements.  ``rewrite_oracle`` computes the same normal
form by literal letter-by-letter rewriting and exists purely to validate the
closed forms; the test suite checks the two agree on large random word
batches before anything else relies on ``multiply``.

Index convention: the public surface (constructors, accessors, file format)
is 1-based to match the usual generator numbering; tuples are stored 0-based
internally.  This module is the single place where that mapping lives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, PresentationMismatchError, Tau2Error

Letter = tuple[str, int, int]  # (kind 'a'|'c', 1-based index, exponent +1/-1)


class Tau2Presentation:
    """Presentation data: generator counts n, m and the exponent table.

    ``table`` must supply exactly one integer per (t, i, j) with
    1 <= t <= m and 1 <= i < j <= n.  The accessor :meth:`lam` extends the
    table antisymmetrically: lam(t,i,i) == 0 and lam(t,j,i) == -lam(t,i,j).
    Degenerate shapes (n <= 1 or m == 0) are accepted and describe free
    abelian groups.
    """

    __slots__ = ("n", "m", "_lam")

    def __init__(self, n: int, m: int, table: Mapping[tuple[int, int, int], int]):
        if n < 0 or m < 0:
            raise ValueError(f"generator counts must be nonnegative, got n={n}, m={m}")
        self.n = n
        self.m = m
        expected = {(t, i, j) for t in range(1, m + 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        given = set(table)
        if given != expected:
            missing = expected - given
            extra = given - expected
            parts = []
            if missing:
                parts.append(f"missing entries {sorted(missing)[:4]}")
            if extra:
                parts.append(f"unexpected entries {sorted(extra)[:4]}")
            raise ValueError("bad exponent table: " + "; ".join(parts))
        self._lam = tuple(
            int(table[(t, i, j)])
            for t in range(1, m + 1)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        )

    @classmethod
    def from_nonzero(cls, n: int, m: int, entries: Mapping[tuple[int, int, int], int] | None = None):
        """Build a presentation from a sparse table; omitted entries are 0."""
        table = {
            (t, i, j): 0
            for t in range(1, m + 1)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        }
        for key, val in (entries or {}).items():
            if key not in table:
                raise ValueError(f"entry {key} outside valid (t, i<j) range")
            table[key] = int(val)
        return cls(n, m, table)

    def _offset(self, t: int, i: int, j: int) -> int:
        # t, i, j are 1-based with i < j.
        per_t = self.n * (self.n - 1) // 2
        # pairs (i, j) with i fixed come after all pairs with smaller i
        before_i = (i - 1) * self.n - (i - 1) * i // 2
        return (t - 1) * per_t + before_i + (j - i - 1)

    def lam(self, t: int, i: int, j: int) -> int:
        """Exponent of c_t in [a_i, a_j], extended antisymmetrically to all i, j."""
        if not (1 <= t <= self.m and 1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"lam({t}, {i}, {j}) out of range for n={self.n}, m={self.m}")
        if i == j:
            return 0
        if i < j:
            return self._lam[self._offset(t, i, j)]
        return -self._lam[self._offset(t, j, i)]

    def lambda_vector(self, i: int, j: int) -> tuple[int, ...]:
        """The vector (lam(1,i,j), ..., lam(m,i,j))."""
        return tuple(self.lam(t, i, j) for t in range(1, self.m + 1))

    # -- elements ---------------------------------------------------------

    def element(self, alpha: Sequence[int], gamma: Sequence[int]) -> "MalcevElement":
        return MalcevElement(self, tuple(int(x) for x in alpha), tuple(int(x) for x in gamma))

    def identity(self) -> "MalcevElement":
        return self.element((0,) * self.n, (0,) * self.m)

    def generator_a(self, i: int) -> "MalcevElement":
        if not 1 <= i <= self.n:
            raise IndexError(f"a_{i} out of range")
        return self.element(tuple(1 if k == i - 1 else 0 for k in range(self.n)), (0,) * self.m)

    def generator_c(self, t: int) -> "MalcevElement":
        if not 1 <= t <= self.m:
            raise IndexError(f"c_{t} out of range")
        return self.element((0,) * self.n, tuple(1 if k == t - 1 else 0 for k in range(self.m)))

    def __eq__(self, other):
        return (
            isinstance(other, Tau2Presentation)
            and self.n == other.n
            and self.m == other.m
            and self._lam == other._lam
        )

    def __hash__(self):
        return hash((self.n, self.m, self._lam))

    def __repr__(self):
        nz = sum(1 for x in self._lam if x != 0)
        return f"Tau2Presentation(n={self.n}, m={self.m}, {nz} nonzero exponents)"


@dataclass(frozen=True)
class MalcevElement:
    """Group element in normal-form coordinates (alpha for A, gamma for C)."""

    presentation: Tau2Presentation
    alpha: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) != self.presentation.n or len(self.gamma) != self.presentation.m:
            raise ValueError("coordinate lengths do not match the presentation")

    def is_identity(self) -> bool:
        return all(x == 0 for x in self.alpha) and all(x == 0 for x in self.gamma)

    def __mul__(self, other):
        if isinstance(other, MalcevElement):
            return multiply(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    def inverse(self) -> "MalcevElement":
        return inverse(self)


def _require_same(x: MalcevElement, y: MalcevElement):
    if x.presentation != y.presentation:
        raise PresentationMismatchError("elements belong to different presentations")


def multiply(x: MalcevElement, y: MalcevElement) -> MalcevElement:
    """Product in normal-form coordinates (closed collection formula)."""
    _require_same(x, y)
    p = x.presentation
    n, m = p.n, p.m
    alpha = tuple(a + b for a, b in zip(x.alpha, y.alpha))
    gamma = list(g + h for g, h in zip(x.gamma, y.gamma))
    xa, ya = x.alpha, y.alpha
    for i in range(1, n + 1):
        yi = ya[i - 1]
        if yi == 0:
            continue
        for j in range(i + 1, n + 1):
            xj = xa[j - 1]
            if xj == 0:
                continue
            prod = xj * yi
            for t in range(1, m + 1):
                lam = p.lam(t, i, j)
                if lam:
                    gamma[t - 1] -= lam * prod
    return MalcevElement(p, alpha, tuple(gamma))


def inverse(x: MalcevElement) -> MalcevElement:
    """Group inverse: solves multiply(x, result) == identity."""
    p = x.presentation
    alpha = tuple(-a for a in x.alpha)
    gamma = [-g for g in x.gamma]
    q = _self_pairing(x)
    for t in range(p.m):
        gamma[t] -= q[t]
    return MalcevElement(p, alpha, tuple(gamma))


def _self_pairing(x: MalcevElement) -> list[int]:
    """q_t = sum_{i<j} lam(t,i,j) alpha_i(x) alpha_j(x); the power/inverse correction."""
    p = x.presentation
    out = [0] * p.m
    a = x.alpha
    for i in range(1, p.n + 1):
        ai = a[i - 1]
        if ai == 0:
            continue
        for j in range(i + 1, p.n + 1):
            aj = a[j - 1]
            if aj == 0:
                continue
            prod = ai * aj
            for t in range(1, p.m + 1):
                lam = p.lam(t, i, j)
                if lam:
                    out[t - 1] += lam * prod
    return out


def power(x: MalcevElement, k: int) -> MalcevElement:
    """k-th power, all integer k.

    gamma picks up a binomial correction:
    gamma(x^k) = k*gamma(x) - k(k-1)/2 * q(x) with q as in _self_pairing.
    Cross-validated against repeated multiplication in the tests.
    """
    p = x.presentation
    k = int(k)
    alpha = tuple(k * a for a in x.alpha)
    binom = k * (k - 1) // 2
    q = _self_pairing(x)
    gamma = tuple(k * g - binom * qt for g, qt in zip(x.gamma, q))
    return MalcevElement(p, alpha, gamma)


def commutator(x: MalcevElement, y: MalcevElement) -> MalcevElement:
    """[x, y] = x^-1 y^-1 x y, via the bilinear closed form.

    The commutator is central with gamma_t = sum_{i,j} lam(t,i,j)
    alpha_i(x) alpha_j(y); it only sees the alpha parts.
    """
    _require_same(x, y)
    p = x.presentation
    gamma = [0] * p.m
    xa, ya = x.alpha, y.alpha
    for i in range(1, p.n + 1):
        xi = xa[i - 1]
        if xi == 0:
            continue
        for j in range(1, p.n + 1):
            yj = ya[j - 1]
            if yj == 0 or i == j:
                continue
            prod = xi * yj
            for t in range(1, p.m + 1):
                lam = p.lam(t, i, j)
                if lam:
                    gamma[t - 1] += lam * prod
    return MalcevElement(p, (0,) * p.n, tuple(gamma))


# -- words and the rewriting oracle ---------------------------------------


def validate_word(p: Tau2Presentation, word: Iterable[Letter]) -> tuple[Letter, ...]:
    out = []
    for letter in word:
        kind, idx, exp = letter
        if kind == "a":
            if not 1 <= idx <= p.n:
                raise ValueError(f"letter a_{idx} out of range")
        elif kind == "c":
            if not 1 <= idx <= p.m:
                raise ValueError(f"letter c_{idx} out of range")
        else:
            raise ValueError(f"unknown letter kind {kind!r}")
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {exp}")
        out.append((kind, idx, exp))
    return tuple(out)


def from_word(p: Tau2Presentation, word: Iterable[Letter]) -> MalcevElement:
    """Evaluate a word by left-to-right multiplication."""
    acc = p.identity()
    for kind, idx, exp in validate_word(p, word):
        if kind == "a":
            g = p.generator_a(idx)
        else:
            g = p.generator_c(idx)
        if exp < 0:
            g = inverse(g)
        acc = multiply(acc, g)
    return acc


def rewrite_oracle(p: Tau2Presentation, word: Iterable[Letter]) -> MalcevElement:
    """Normal form by literal string rewriting; test oracle for ``multiply``.

    Central letters are collected immediately.  Out-of-order adjacent
    A-letters are swapped with  a_j^e a_i^d -> a_i^d a_j^e [a_j^e, a_i^d],
    emitting the central commutator letters from the defining relations.
    Each swap strictly decreases the inversion count of the A-letter indices,
    so the loop terminates.
    """
    word = validate_word(p, word)
    gamma = [0] * p.m
    letters = []  # A-letters only, as (index, exponent)
    for kind, idx, exp in word:
        if kind == "c":
            gamma[idx - 1] += exp
        else:
            letters.append((idx, exp))
    changed = True
    while changed:
        changed = False
        for k in range(len(letters) - 1):
            j, e = letters[k]
            i, d = letters[k + 1]
            if j > i:
                # [a_j^e, a_i^d] = [a_j, a_i]^(e*d) = prod_t c_t^(-e*d*lam(t,i,j))
                ed = e * d
                for t in range(1, p.m + 1):
                    lam = p.lam(t, i, j)
                    if lam:
                        gamma[t - 1] -= ed * lam
                letters[k], letters[k + 1] = letters[k + 1], letters[k]
                changed = True
    alpha = [0] * p.n
    for idx, exp in letters:
        alpha[idx - 1] += exp
    return MalcevElement(p, tuple(alpha), tuple(gamma))


def parse_word(p: Tau2Presentation, text: str) -> tuple[Letter, ...]:
    """Parse a word like ``a1*a2^-1*c1`` (or whitespace-separated); ``1`` is empty.

    Exponents expand into repeated +/-1 letters.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters: list[Letter] = []
    for token in text.replace("*", " ").split():
        name, _, exp_text = token.partition("^")
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise ParseError(f"bad exponent in token {token!r}")
        else:
            exp = 1
        if len(name) < 2 or name[0] not in "ac" or not name[1:].isdigit():
            raise ParseError(f"bad generator token {token!r} (expected aN or cN)")
        kind = name[0]
        idx = int(name[1:])
        bound = p.n if kind == "a" else p.m
        if not 1 <= idx <= bound:
            raise ParseError(f"generator {name} out of range")
        sign = 1 if exp > 0 else -1
        letters.extend((kind, idx, sign) for _ in range(abs(exp)))
    return tuple(letters)


def element_from_text(p: Tau2Presentation, text: str) -> MalcevElement:
    return from_word(p, parse_word(p, text))


# -- structural rank identities -------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    """Computed ranks plus the two identities every presentation satisfies:

    rank(G/Z) + rank(Z) == n + m     and     rank(G') <= m <= rank(Z).
    """

    rank_center: int
    rank_g_mod_center: int
    rank_derived: int
    rank_g_mod_c: int
    span_identity_holds: bool
    sandwich_holds: bool


def invariant_report(p: Tau2Presentation) -> InvariantReport:
    from . import structure  # local import: structure builds on this module

    d_rank = structure.center(p).d_basis.rank
    rank_center = p.m + d_rank
    rank_g_mod_center = p.n - d_rank
    rank_derived = structure.derived_report(p)[0]
    return InvariantReport(
        rank_center=rank_center,
        rank_g_mod_center=rank_g_mod_center,
        rank_derived=rank_derived,
        rank_g_mod_c=p.n,
        span_identity_holds=rank_g_mod_center + rank_center == p.n + p.m,
        sandwich_holds=rank_derived <= p.m <= rank_center,
    )


# -- presentation file format ----------------------------------------------
#
#   # comment
#   n = 2
#   m = 1
#   lambda 1 1 2 = 1        (t i j = value; i < j; omitted entries are 0)
#
# Duplicate lambda records are an error; n and m must appear first.


def parse_presentation(text: str) -> Tau2Presentation:
    n = m = None
    entries: dict[tuple[int, int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("lambda"):
            if n is None or m is None:
                raise ParseError("lambda record before n and m are set", lineno)
            body = line[len("lambda"):]
            lhs, eq, rhs = body.partition("=")
            if not eq:
                raise ParseError("lambda record needs '= value'", lineno)
            parts = lhs.split()
            if len(parts) != 3:
                raise ParseError("lambda record needs three indices: t i j", lineno)
            try:
                t, i, j = (int(x) for x in parts)
                val = int(rhs.strip())
            except ValueError:
                raise ParseError("lambda indices and value must be integers", lineno)
            if not (1 <= t <= m):
                raise ParseError(f"t={t} out of range 1..{m}", lineno)
            if not (1 <= i < j <= n):
                raise ParseError(f"need 1 <= i < j <= {n}, got i={i}, j={j}", lineno)
            if (t, i, j) in entries:
                raise ParseError(f"duplicate lambda record for ({t}, {i}, {j})", lineno)
            entries[(t, i, j)] = val
        else:
            key, eq, rhs = line.partition("=")
            key = key.strip()
            if not eq or key not in ("n", "m"):
                raise ParseError(f"unrecognized directive {line!r}", lineno)
            try:
                val = int(rhs.strip())
            except ValueError:
                raise ParseError(f"{key} must be an integer", lineno)
            if val < 0:
                raise ParseError(f"{key} must be nonnegative", lineno)
            if key == "n":
                if n is not None:
                    raise ParseError("n set twice", lineno)
                n = val
            else:
                if m is not None:
                    raise ParseError("m set twice", lineno)
                m = val
    if n is None or m is None:
        raise ParseError("presentation must set both n and m")
    return Tau2Presentation.from_nonzero(n, m, entries)


def format_presentation(p: Tau2Presentation) -> str:
    lines = [f"n = {p.n}", f"m = {p.m}"]
    for t in range(1, p.m + 1):
        for i in range(1, p.n + 1):
            for j in range(i + 1, p.n + 1):
                val = p.lam(t, i, j)
                if val != 0:
                    lines.append(f"lambda {t} {i} {j} = {val}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Tau2Presentation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise Tau2Error(f"cannot read presentation file {path}: {exc}")
    return parse_presentation(text)
