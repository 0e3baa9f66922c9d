"""Encoding group equations as integer polynomial systems of degree <= 2.

A group equation over a presented group collects, side by side, into normal
form whose alpha coordinates are linear and whose gamma coordinates are at
most quadratic in the unknown coordinates (products only ever arise between
the linear alpha forms of two factors).  Equating coordinates of both sides
therefore yields integer constraints of degree <= 2: this module builds
them, evaluates them, brute-forces them over boxes, and serializes them.

Unknown naming: a group variable named ``x`` contributes alpha unknowns
``X1..Xn`` and gamma unknowns ``Xg1..Xgm`` (uppercased name + index, with a
``g`` infix for the central part).  Commutator equations leave the central
parts of the unknowns completely free; such unconstrained unknowns are
omitted from emitted systems, and solutions are understood modulo them.

Serialized form (parse/print round-trips exactly):

    vars X1 X2 Y1 Y2
    1*X1*Y2 + -1*X2*Y1 = 1

one constraint per line, every coefficient explicit, ``0`` for an empty
left-hand side, ``#`` starts a comment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import MalcevElement, Tau2Presentation, commutator, inverse, multiply, power
from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    ParseError,
    PreconditionError,
    PresentationMismatchError,
)
from .structure import is_c_small

DEFAULT_BOX_BUDGET = 10**7

Monomial = tuple[str, ...]  # () constant, (v,) linear, (v1, v2) quadratic


def alpha_unknown(var: str, i: int) -> str:
    return f"{var.upper()}{i}"


def gamma_unknown(var: str, t: int) -> str:
    return f"{var.upper()}g{t}"


class Poly:
    """Integer polynomial of degree <= 2 in named unknowns."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): int(c)})

    @classmethod
    def unknown(cls, name: str) -> "Poly":
        return cls({(name,): 1})

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Poly(terms)

    def __sub__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) - c
        return Poly(terms)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def scale(self, k: int) -> "Poly":
        return Poly({m: k * c for m, c in self.terms.items()})

    def mul(self, other: "Poly") -> "Poly":
        terms: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                if len(mono) > 2:
                    # Cannot happen for 2-step collection; anything deeper is a bug.
                    raise InternalInvariantError("degree > 2 monomial produced")
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Poly(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def unknowns(self) -> set[str]:
        out: set[str] = set()
        for mono in self.terms:
            out.update(mono)
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __repr__(self):
        return f"Poly({self.terms!r})"


@dataclass(frozen=True)
class Constraint:
    """sum of coeff*mono terms == rhs; terms exclude the constant monomial."""

    terms: tuple[tuple[int, Monomial], ...]
    rhs: int


@dataclass(frozen=True)
class DiophantineSystem:
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        declared = set(self.variables)
        for con in self.constraints:
            for _, mono in con.terms:
                for v in mono:
                    if v not in declared:
                        raise ValueError(f"constraint references undeclared unknown {v}")


def _canonical_constraint(poly: Poly, order: Mapping[str, int]) -> Constraint | None:
    """Turn ``poly == 0`` into a constraint, or None when trivially 0 == 0."""
    rhs = -poly.terms.get((), 0)
    items = []
    for mono, coeff in poly.terms.items():
        if mono == ():
            continue
        key = tuple(sorted(order[v] for v in mono))
        mono_sorted = tuple(sorted(mono, key=lambda v: order[v]))
        items.append((key, coeff, mono_sorted))
    if not items and rhs == 0:
        return None
    items.sort(key=lambda it: (len(it[0]), it[0]))
    return Constraint(tuple((coeff, mono) for _, coeff, mono in items), rhs)


def _assemble(
    polys: Sequence[Poly], declared_order: Sequence[str], keep_trivial: bool = False
) -> DiophantineSystem:
    referenced: set[str] = set()
    for poly in polys:
        referenced.update(poly.unknowns())
    variables = tuple(v for v in declared_order if v in referenced)
    order = {v: k for k, v in enumerate(variables)}
    constraints = []
    for poly in polys:
        con = _canonical_constraint(poly, order)
        if con is None and keep_trivial:
            con = Constraint((), 0)
        if con is not None:
            constraints.append(con)
    return DiophantineSystem(variables, tuple(constraints))


# -- direct commutator-equation encoder -------------------------------------


def encode_commutator_equation(
    p: Tau2Presentation, x_name: str, y_name: str, w: MalcevElement
) -> DiophantineSystem:
    """System for [x, y] == w with w in the C-span (alpha(w) must be zero).

    Exactly one constraint per central generator, in generator order:
    sum_{i,j} lam(t,i,j) X_i Y_j == gamma_t(w).  Trivial rows are kept so
    the t-th constraint always belongs to c_t.  Central parts of x and y
    are free and do not appear.
    """
    if w.presentation != p:
        raise PresentationMismatchError("constant w belongs to a different presentation")
    if any(a != 0 for a in w.alpha):
        raise PreconditionError("right-hand side must have zero alpha part")
    _validate_var_name(x_name)
    _validate_var_name(y_name)
    if x_name == y_name:
        raise PreconditionError("the two equation variables must be distinct")
    declared = [alpha_unknown(x_name, i) for i in range(1, p.n + 1)]
    declared += [alpha_unknown(y_name, j) for j in range(1, p.n + 1)]
    polys = []
    for t in range(1, p.m + 1):
        poly = Poly.const(-w.gamma[t - 1])
        for i in range(1, p.n + 1):
            xi = Poly.unknown(alpha_unknown(x_name, i))
            for j in range(1, p.n + 1):
                lam = p.lam(t, i, j)
                if lam:
                    yj = Poly.unknown(alpha_unknown(y_name, j))
                    poly = poly + xi.mul(yj).scale(lam)
        polys.append(poly)
    return _assemble(polys, declared, keep_trivial=True)


# -- general group-equation systems ------------------------------------------

Factor = tuple  # ("const", MalcevElement) | ("var", name, +1/-1)


@dataclass(frozen=True)
class GroupEquationSystem:
    presentation: Tau2Presentation
    equations: tuple[tuple[tuple[Factor, ...], tuple[Factor, ...]], ...]

    def variable_names(self) -> tuple[str, ...]:
        seen: list[str] = []
        for lhs, rhs in self.equations:
            for factor in lhs + rhs:
                if factor[0] == "var" and factor[1] not in seen:
                    seen.append(factor[1])
        return tuple(seen)


def _validate_var_name(name: str):
    if not name.isalpha() or not name.islower():
        raise PreconditionError(f"variable name must be lowercase alphabetic, got {name!r}")


class _SymbolicElement:
    """Element with polynomial coordinates; mirrors the closed group laws."""

    __slots__ = ("p", "alphas", "gammas")

    def __init__(self, p: Tau2Presentation, alphas, gammas):
        self.p = p
        self.alphas = alphas
        self.gammas = gammas

    @classmethod
    def identity(cls, p):
        return cls(p, [Poly() for _ in range(p.n)], [Poly() for _ in range(p.m)])

    @classmethod
    def from_const(cls, elem: MalcevElement):
        p = elem.presentation
        return cls(
            p,
            [Poly.const(a) for a in elem.alpha],
            [Poly.const(g) for g in elem.gamma],
        )

    @classmethod
    def from_var(cls, p, name: str):
        return cls(
            p,
            [Poly.unknown(alpha_unknown(name, i)) for i in range(1, p.n + 1)],
            [Poly.unknown(gamma_unknown(name, t)) for t in range(1, p.m + 1)],
        )

    def mul(self, other: "_SymbolicElement") -> "_SymbolicElement":
        p = self.p
        alphas = [a + b for a, b in zip(self.alphas, other.alphas)]
        gammas = [g + h for g, h in zip(self.gammas, other.gammas)]
        for i in range(1, p.n + 1):
            yi = other.alphas[i - 1]
            if yi.is_zero():
                continue
            for j in range(i + 1, p.n + 1):
                xj = self.alphas[j - 1]
                if xj.is_zero():
                    continue
                prod = xj.mul(yi)
                for t in range(1, p.m + 1):
                    lam = p.lam(t, i, j)
                    if lam:
                        gammas[t - 1] = gammas[t - 1] - prod.scale(lam)
        return _SymbolicElement(p, alphas, gammas)

    def inv(self) -> "_SymbolicElement":
        p = self.p
        alphas = [-a for a in self.alphas]
        gammas = [-g for g in self.gammas]
        for i in range(1, p.n + 1):
            ai = self.alphas[i - 1]
            if ai.is_zero():
                continue
            for j in range(i + 1, p.n + 1):
                aj = self.alphas[j - 1]
                if aj.is_zero():
                    continue
                prod = ai.mul(aj)
                for t in range(1, p.m + 1):
                    lam = p.lam(t, i, j)
                    if lam:
                        gammas[t - 1] = gammas[t - 1] - prod.scale(lam)
        return _SymbolicElement(p, alphas, gammas)


def _fold(p: Tau2Presentation, factors: Sequence[Factor]) -> _SymbolicElement:
    acc = _SymbolicElement.identity(p)
    for factor in factors:
        if factor[0] == "const":
            elem = factor[1]
            if elem.presentation != p:
                raise PresentationMismatchError("constant from a different presentation")
            acc = acc.mul(_SymbolicElement.from_const(elem))
        elif factor[0] == "var":
            _, name, exp = factor
            sym = _SymbolicElement.from_var(p, name)
            if exp < 0:
                sym = sym.inv()
            acc = acc.mul(sym)
        else:
            raise ValueError(f"unknown factor kind {factor[0]!r}")
    return acc


def encode_system(p: Tau2Presentation, system: GroupEquationSystem) -> DiophantineSystem:
    """Encode a group-equation system; integer solutions correspond exactly
    to group solutions via the coordinate unknowns of each variable."""
    if system.presentation != p:
        raise PresentationMismatchError("equation system over a different presentation")
    declared: list[str] = []
    for name in system.variable_names():
        _validate_var_name(name)
        declared += [alpha_unknown(name, i) for i in range(1, p.n + 1)]
        declared += [gamma_unknown(name, t) for t in range(1, p.m + 1)]
    polys: list[Poly] = []
    for lhs, rhs in system.equations:
        left = _fold(p, lhs)
        right = _fold(p, rhs)
        for i in range(p.n):
            polys.append(left.alphas[i] - right.alphas[i])
        for t in range(p.m):
            polys.append(left.gammas[t] - right.gammas[t])
    return _assemble(polys, declared)


# -- evaluation and box enumeration ------------------------------------------


def check_solution(system: DiophantineSystem, assignment: Mapping[str, int]) -> bool:
    """Exact evaluation of every constraint under a full assignment."""
    for v in system.variables:
        if v not in assignment:
            raise PreconditionError(f"assignment missing unknown {v}")
    for con in system.constraints:
        total = 0
        for coeff, mono in con.terms:
            val = coeff
            for v in mono:
                val *= assignment[v]
            total += val
        if total != con.rhs:
            return False
    return True


def box_solve(
    system: DiophantineSystem, box: int, budget: int = DEFAULT_BOX_BUDGET
) -> list[dict[str, int]]:
    """All solutions with every unknown in [-box, box], lexicographic order.

    Refuses when (2*box+1)**#unknowns exceeds the evaluation budget.
    """
    if box < 0:
        raise PreconditionError("box radius must be >= 0")
    nvars = len(system.variables)
    total = (2 * box + 1) ** nvars
    if total > budget:
        raise BudgetExceededError(
            f"box enumeration needs {total} evaluations, budget is {budget}"
        )
    index = {v: k for k, v in enumerate(system.variables)}
    compiled = [
        ([(coeff, tuple(index[v] for v in mono)) for coeff, mono in con.terms], con.rhs)
        for con in system.constraints
    ]
    out = []
    for values in itertools.product(range(-box, box + 1), repeat=nvars):
        ok = True
        for terms, rhs in compiled:
            total_val = 0
            for coeff, idxs in terms:
                val = coeff
                for ix in idxs:
                    val *= values[ix]
                total_val += val
            if total_val != rhs:
                ok = False
                break
        if ok:
            out.append(dict(zip(system.variables, values)))
    return out


# -- serialization -------------------------------------------------------------


def format_system(system: DiophantineSystem) -> str:
    lines = ["vars " + " ".join(system.variables) if system.variables else "vars"]
    for con in system.constraints:
        if con.terms:
            lhs = " + ".join(
                str(coeff) + "*" + "*".join(mono) for coeff, mono in con.terms
            )
        else:
            lhs = "0"
        lines.append(f"{lhs} = {con.rhs}")
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> DiophantineSystem:
    variables: tuple[str, ...] | None = None
    constraints = []
    order: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            if variables is not None:
                raise ParseError("duplicate vars header", lineno)
            variables = tuple(line.split()[1:])
            if len(set(variables)) != len(variables):
                raise ParseError("duplicate unknown in vars header", lineno)
            order = {v: k for k, v in enumerate(variables)}
            continue
        if variables is None:
            raise ParseError("constraint before vars header", lineno)
        lhs_text, eq, rhs_text = line.rpartition("=")
        if not eq:
            raise ParseError("constraint needs '= rhs'", lineno)
        try:
            rhs = int(rhs_text.strip())
        except ValueError:
            raise ParseError("right-hand side must be an integer", lineno)
        lhs_text = lhs_text.strip()
        poly = Poly.const(-rhs)  # reuse canonicalization: poly == 0 form
        if lhs_text != "0":
            for term_text in lhs_text.split("+"):
                parts = [s.strip() for s in term_text.strip().split("*")]
                if not parts or len(parts) > 3:
                    raise ParseError(f"bad term {term_text.strip()!r}", lineno)
                try:
                    coeff = int(parts[0])
                except ValueError:
                    raise ParseError("term must start with an integer coefficient", lineno)
                mono = tuple(parts[1:])
                for v in mono:
                    if v not in order:
                        raise ParseError(f"unknown variable {v!r}", lineno)
                term_poly = Poly.const(coeff)
                for v in mono:
                    term_poly = term_poly.mul(Poly.unknown(v))
                poly = poly + term_poly
        con = _canonical_constraint(poly, order)
        if con is None:
            con = Constraint((), 0)
        constraints.append(con)
    if variables is None:
        raise ParseError("missing vars header")
    return DiophantineSystem(variables, tuple(constraints))


# -- equation text parsing ------------------------------------------------------
#
#   [x,y] = c1          x*y = y*x          x^2 = c1          x = a1
#
# Sides are products of factors; a factor is a generator (aN/cN), a variable
# (lowercase word), a bracketed commutator [side,side], or a parenthesized
# side, optionally raised to an integer power.  '1' denotes the empty product.


_SYMBOLS = "[](),=^*"


def _tokenize(line: str, lineno: int) -> list[str]:
    tokens = []
    k = 0
    while k < len(line):
        ch = line[k]
        if ch.isspace():
            k += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(ch)
            k += 1
            continue
        if ch.isalnum() or ch == "-":
            j = k + 1
            while j < len(line) and (line[j].isalnum()):
                j += 1
            tokens.append(line[k:j])
            k = j
            continue
        raise ParseError(f"unexpected character {ch!r}", lineno)
    return tokens


def _invert_factors(p: Tau2Presentation, factors: list[Factor]) -> list[Factor]:
    out: list[Factor] = []
    for factor in reversed(factors):
        if factor[0] == "const":
            out.append(("const", inverse(factor[1])))
        else:
            out.append(("var", factor[1], -factor[2]))
    return out


class _EquationParser:
    def __init__(self, p: Tau2Presentation, tokens: list[str], lineno: int):
        self.p = p
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of equation", self.lineno)
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.lineno)

    def parse_equation(self):
        lhs = self.parse_side(stop={"="})
        self.expect("=")
        rhs = self.parse_side(stop=set())
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r}", self.lineno)
        return tuple(lhs), tuple(rhs)

    def parse_side(self, stop: set) -> list[Factor]:
        factors: list[Factor] = []
        first = True
        while True:
            tok = self.peek()
            if tok is None or tok in stop or tok in (",", ")", "]"):
                if first:
                    raise ParseError("empty side", self.lineno)
                return factors
            if tok == "*":
                self.take()
                continue
            factors.extend(self.parse_factor())
            first = False

    def parse_factor(self) -> list[Factor]:
        atom = self.parse_atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            try:
                exp = int(exp_tok)
            except ValueError:
                raise ParseError(f"bad exponent {exp_tok!r}", self.lineno)
            if exp == 0:
                return []
            if exp < 0:
                atom = _invert_factors(self.p, atom)
                exp = -exp
            return atom * exp
        return atom

    def parse_atom(self) -> list[Factor]:
        tok = self.take()
        if tok == "[":
            u = self.parse_side(stop=set())
            self.expect(",")
            v = self.parse_side(stop=set())
            self.expect("]")
            return (
                _invert_factors(self.p, u)
                + _invert_factors(self.p, v)
                + u
                + v
            )
        if tok == "(":
            side = self.parse_side(stop=set())
            self.expect(")")
            return side
        if tok == "1":
            return []
        if len(tok) >= 2 and tok[0] in "ac" and tok[1:].isdigit():
            idx = int(tok[1:])
            if tok[0] == "a":
                if not 1 <= idx <= self.p.n:
                    raise ParseError(f"generator {tok} out of range", self.lineno)
                return [("const", self.p.generator_a(idx))]
            if not 1 <= idx <= self.p.m:
                raise ParseError(f"generator {tok} out of range", self.lineno)
            return [("const", self.p.generator_c(idx))]
        if tok.isalpha() and tok.islower():
            return [("var", tok, 1)]
        raise ParseError(f"unexpected token {tok!r}", self.lineno)


def parse_equations(p: Tau2Presentation, text: str) -> GroupEquationSystem:
    equations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = _tokenize(line, lineno)
        equations.append(_EquationParser(p, tokens, lineno).parse_equation())
    return GroupEquationSystem(p, tuple(equations))


# -- integer arithmetic inside the group ---------------------------------------


def odot_equations(p: Tau2Presentation, a: MalcevElement, b: MalcevElement) -> GroupEquationSystem:
    """The five-equation product-witness system on u, v, w (values) and
    p, q (witnesses):

        u = [p, b]    [p, a] = 1    v = [a, q]    [q, b] = 1    w = [p, q]

    For non-commuting c-small a, b its solutions are exactly
    u = [a,b]^s, v = [a,b]^t, w = [a,b]^(s*t), which is how multiplication
    of integer exponents becomes equationally definable inside the group.
    """
    if commutator(a, b).is_identity():
        raise PreconditionError("the two base elements must not commute")
    var = lambda name, exp=1: ("var", name, exp)
    const = lambda elem: ("const", elem)
    comm_var_const = lambda name, elem: [
        var(name, -1), const(inverse(elem)), var(name, 1), const(elem)
    ]
    comm_const_var = lambda elem, name: [
        const(inverse(elem)), var(name, -1), const(elem), var(name, 1)
    ]
    comm_var_var = lambda x, y: [var(x, -1), var(y, -1), var(x, 1), var(y, 1)]
    equations = (
        ((var("u"),), tuple(comm_var_const("p", b))),
        (tuple(comm_var_const("p", a)), ()),
        ((var("v"),), tuple(comm_const_var(a, "q"))),
        (tuple(comm_var_const("q", b)), ()),
        ((var("w"),), tuple(comm_var_var("p", "q"))),
    )
    return GroupEquationSystem(p, equations)


def build_odot_system(p: Tau2Presentation, a: MalcevElement, b: MalcevElement) -> DiophantineSystem:
    return encode_system(p, odot_equations(p, a, b))


def _element_assignment(name: str, elem: MalcevElement) -> dict[str, int]:
    p = elem.presentation
    out = {alpha_unknown(name, i): elem.alpha[i - 1] for i in range(1, p.n + 1)}
    out.update({gamma_unknown(name, t): elem.gamma[t - 1] for t in range(1, p.m + 1)})
    return out


@dataclass(frozen=True)
class WindowFailure:
    t1: int
    t2: int
    reason: str


def ring_window_report(
    p: Tau2Presentation,
    a: MalcevElement,
    b: MalcevElement,
    window: int,
    odot_system: DiophantineSystem | None = None,
) -> list[WindowFailure]:
    """Check that group equations emulate integer arithmetic on a window.

    For every |t1|, |t2| <= window, with c = [a, b]:

    * the product-witness system is satisfied by p = a^t1, q = b^t2 with
      values u = c^t1, v = c^t2, w = c^(t1*t2)  (integer multiplication);
    * c^t1 * c^t2 == c^(t1+t2), with both factors witnessed as members of
      {c^t} via x = [a, y], [y, b] = 1  (integer addition);
    * c^t1 * c^(-t1) == 1  (negation).

    Requires a and b to be non-commuting and c-small.  Passing an explicit
    ``odot_system`` overrides the one derived from the presentation (used by
    negative-control tests).
    """
    if window < 0:
        raise PreconditionError("window radius must be >= 0")
    c = commutator(a, b)
    if c.is_identity():
        raise PreconditionError("base elements commute")
    if not (is_c_small(a) and is_c_small(b)):
        raise PreconditionError("base elements must be c-small")
    system = odot_system if odot_system is not None else build_odot_system(p, a, b)
    failures = []
    identity = p.identity()
    for t1 in range(-window, window + 1):
        a_t1 = power(a, t1)
        c_t1 = power(c, t1)
        for t2 in range(-window, window + 1):
            b_t2 = power(b, t2)
            c_t2 = power(c, t2)
            u = commutator(a_t1, b)
            v = commutator(a, b_t2)
            w = commutator(a_t1, b_t2)
            if u != c_t1 or v != c_t2 or w != power(c, t1 * t2):
                failures.append(WindowFailure(t1, t2, "witness commutators off target"))
                continue
            if not commutator(a_t1, a).is_identity() or not commutator(b_t2, b).is_identity():
                failures.append(WindowFailure(t1, t2, "witness fails side conditions"))
                continue
            assignment: dict[str, int] = {}
            assignment.update(_element_assignment("u", u))
            assignment.update(_element_assignment("v", v))
            assignment.update(_element_assignment("w", w))
            assignment.update(_element_assignment("p", a_t1))
            assignment.update(_element_assignment("q", b_t2))
            restricted = {k: assignment[k] for k in system.variables}
            if not check_solution(system, restricted):
                failures.append(WindowFailure(t1, t2, "encoded product system rejects witness"))
                continue
            # addition: c^t1 * c^t2 == c^(t1+t2), both sides inside {c^t}
            if multiply(c_t1, c_t2) != power(c, t1 + t2):
                failures.append(WindowFailure(t1, t2, "addition window point fails"))
                continue
            if commutator(a, power(b, t1)) != c_t1 or not commutator(power(b, t1), b).is_identity():
                failures.append(WindowFailure(t1, t2, "membership witness fails"))
                continue
            # negation: c^t1 * c^-t1 == 1
            if multiply(c_t1, power(c, -t1)) != identity:
                failures.append(WindowFailure(t1, t2, "negation window point fails"))
    return failures


def verify_ring_window(
    p: Tau2Presentation,
    a: MalcevElement,
    b: MalcevElement,
    window: int,
    odot_system: DiophantineSystem | None = None,
) -> bool:
    return not ring_window_report(p, a, b, window, odot_system=odot_system)
