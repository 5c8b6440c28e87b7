"""Exact multivariate polynomials over Q with a double grading.

A ring has two groups of variables: n+1 "t" variables and n+1 variable
pairs (x_i, y_i).  The variable order is t_0, ..., t_n, x_0, y_0, ...,
x_n, y_n and every exponent tuple has one entry per variable in that
order.  Terms are stored sparsely as a dict mapping exponent tuples to
nonzero Fractions; the zero polynomial is the empty dict.

The canonical term order is graded lexicographic over the declared
variable order.  Printing, leading coefficients and the unit
normalization (primitive integer coefficients, positive leading
coefficient) all use it, so every polynomial has one reproducible
string form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Coeff = Fraction
Scalar = Union[int, Fraction]


class PolyError(ValueError):
    """Raised for ring mismatches, bad parses and impossible operations."""


@dataclass(frozen=True)
class RingSpec:
    """Names of the t variables and of the (x_i, y_i) pairs.

    The pair count always equals the t-variable count; all names must be
    distinct identifiers.
    """

    t_vars: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(self.t_vars) == 0:
            raise PolyError("need at least one t variable")
        if len(self.pairs) != len(self.t_vars):
            raise PolyError(
                f"pair count {len(self.pairs)} != t-variable count {len(self.t_vars)}"
            )
        names = list(self.t_vars) + [v for p in self.pairs for v in p]
        if len(set(names)) != len(names):
            raise PolyError("variable names must be distinct")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise PolyError(f"bad variable name {name!r}")

    @property
    def n(self) -> int:
        """Projective dimension of the source: t variables are t_0..t_n."""
        return len(self.t_vars) - 1

    @property
    def variables(self) -> tuple[str, ...]:
        return self.t_vars + tuple(v for p in self.pairs for v in p)

    @property
    def num_vars(self) -> int:
        return len(self.t_vars) * 3

    def var_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r}") from None

    def t_indices(self) -> range:
        return range(len(self.t_vars))

    def pair_indices(self, i: int) -> tuple[int, int]:
        """Indices of (x_i, y_i) in the exponent tuple."""
        base = len(self.t_vars) + 2 * i
        return base, base + 1

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def const(self, c: Scalar) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly(self, {})
        return MPoly(self, {(0,) * self.num_vars: c})

    def var(self, name: str) -> "MPoly":
        e = [0] * self.num_vars
        e[self.var_index(name)] = 1
        return MPoly(self, {tuple(e): Fraction(1)})


def default_ring(n: int, t_names: Iterable[str] | None = None) -> RingSpec:
    """Ring for P^n with t variables u,v,w,... (or t0..tn) and pairs x_i,y_i."""
    if t_names is None:
        if n + 1 <= 3:
            t_names = ("u", "v", "w")[: n + 1]
        else:
            t_names = tuple(f"t{i}" for i in range(n + 1))
    t_names = tuple(t_names)
    pairs = tuple((f"x{i}", f"y{i}") for i in range(n + 1))
    return RingSpec(t_names, pairs)


def grlex_key(e: Exponent) -> tuple:
    """Sort key whose max is the graded-lex leading monomial."""
    return (sum(e), e)


class MPoly:
    """Immutable sparse polynomial over a RingSpec.

    Supports +, -, *, ** and scalar multiplication; all results are
    canonical (no zero coefficients stored).
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Exponent, Coeff]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Max total degree; zero polynomial reports 0."""
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var_idx: int) -> int:
        return max((e[var_idx] for e in self.terms), default=0)

    def used_vars(self) -> set[int]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def is_t_polynomial(self) -> bool:
        """True if no pair variable occurs."""
        nt = len(self.ring.t_vars)
        return all(not any(e[nt:]) for e in self.terms)

    # -- arithmetic ------------------------------------------------------

    def _check_ring(self, other: "MPoly") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise PolyError("ring mismatch")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.ring, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.ring, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check_ring(other)
        if not self.terms or not other.terms:
            return MPoly(self.ring, {})
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, Coeff] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly(self.ring, out)

    def scale(self, c: Scalar) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly(self.ring, {})
        return MPoly(self.ring, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise PolyError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure -------------------------------------------------------

    def leading(self) -> tuple[Exponent, Coeff]:
        """Graded-lex leading (exponent, coefficient); error on zero."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def derivative(self, var_idx: int) -> "MPoly":
        out: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            k = e[var_idx]
            if k:
                e2 = e[:var_idx] + (k - 1,) + e[var_idx + 1:]
                s = out.get(e2, 0) + c * k
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return MPoly(self.ring, out)

    def as_univariate(self, var_idx: int) -> dict[int, "MPoly"]:
        """Coefficients by degree in one variable (coefficients omit it)."""
        out: dict[int, dict[Exponent, Coeff]] = {}
        for e, c in self.terms.items():
            k = e[var_idx]
            e2 = e[:var_idx] + (0,) + e[var_idx + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: MPoly(self.ring, d) for k, d in out.items()}

    def substitute(self, values: Mapping[str, Union[Scalar, "MPoly"]]) -> "MPoly":
        """Simultaneous substitution of variables by scalars or polynomials."""
        idx_scalar: dict[int, Fraction] = {}
        idx_poly: dict[int, MPoly] = {}
        for name, v in values.items():
            i = self.ring.var_index(name)
            if isinstance(v, MPoly):
                self._check_ring(v)
                idx_poly[i] = v
            else:
                idx_scalar[i] = Fraction(v)
        result = self.ring.zero()
        for e, c in self.terms.items():
            coeff = c
            rest = list(e)
            polys: list[tuple[MPoly, int]] = []
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in idx_scalar:
                    coeff *= idx_scalar[i] ** k
                    rest[i] = 0
                elif i in idx_poly:
                    polys.append((idx_poly[i], k))
                    rest[i] = 0
            term = MPoly(self.ring, {tuple(rest): coeff}) if coeff else self.ring.zero()
            for p, k in polys:
                if term.is_zero():
                    break
                term = term * p ** k
            result = result + term
        return result

    def evaluate_all(self, values: Mapping[str, Scalar]) -> Fraction:
        """Full scalar evaluation; every used variable must be assigned."""
        by_idx = {self.ring.var_index(name): Fraction(v) for name, v in values.items()}
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term *= by_idx[i] ** k
            total += term
        return total

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return poly_to_text(self)

    def __repr__(self) -> str:
        return f"MPoly({poly_to_text(self)})"


# ---------------------------------------------------------------------------
# grading


@dataclass(frozen=True)
class MultiDeg:
    """Degrees per block: in t, and in each pair.  None marks non-homogeneous."""

    t_deg: int | None
    pair_degs: tuple[int | None, ...]

    def is_homogeneous(self) -> bool:
        return self.t_deg is not None and all(d is not None for d in self.pair_degs)


def multidegree(p: MPoly) -> MultiDeg:
    """Per-block degree; the zero polynomial reports 0 everywhere."""
    ring = p.ring
    nt = len(ring.t_vars)
    if p.is_zero():
        return MultiDeg(0, (0,) * nt)
    t_degs = {sum(e[:nt]) for e in p.terms}
    t_deg = t_degs.pop() if len(t_degs) == 1 else None
    pair_degs = []
    for i in range(nt):
        xi, yi = ring.pair_indices(i)
        degs = {e[xi] + e[yi] for e in p.terms}
        pair_degs.append(degs.pop() if len(degs) == 1 else None)
    return MultiDeg(t_deg, tuple(pair_degs))


def pair_degree(p: MPoly, i: int) -> int:
    """Max degree in the pair (x_i, y_i)."""
    xi, yi = p.ring.pair_indices(i)
    return max((e[xi] + e[yi] for e in p.terms), default=0)


# ---------------------------------------------------------------------------
# normalization


def unit_normalize(p: MPoly) -> MPoly:
    """Scale to primitive integer coefficients, positive graded-lex lead."""
    if p.is_zero():
        return p
    denom_lcm = 1
    for c in p.terms.values():
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    num_gcd = 0
    for c in p.terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
    scale = Fraction(denom_lcm, num_gcd)
    _, lead = p.leading()
    if lead < 0:
        scale = -scale
    return p.scale(scale)


def equal_up_to_unit(a: MPoly, b: MPoly) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return unit_normalize(a).terms == unit_normalize(b).terms


# ---------------------------------------------------------------------------
# parsing and printing


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*^()/]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolyError(f"bad character at position {pos}: {text[pos:pos+10]!r}")
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("num", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], ring: RingSpec):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyError(f"expected {op!r}, got {val!r}")

    def parse_expr(self) -> MPoly:
        result = self.parse_term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.parse_term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def parse_term(self) -> MPoly:
        result = self.parse_unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.parse_unary()
            else:
                return result

    def parse_unary(self) -> MPoly:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.parse_unary()
        if kind == "op" and val == "+":
            self.take()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> MPoly:
        base = self.parse_atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind == "op" and val == "-":
                raise PolyError("negative exponent")
            if kind != "num":
                raise PolyError(f"expected integer exponent, got {val!r}")
            base = base ** int(val)
        return base

    def parse_atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            # rational literal a/b
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3 = self.take()
                if k3 != "num":
                    raise PolyError(f"expected denominator, got {v3!r}")
                return self.ring.const(Fraction(int(val), int(v3)))
            return self.ring.const(int(val))
        if kind == "name":
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise PolyError(f"unexpected token {val!r}")


def parse_poly(text: str, ring: RingSpec) -> MPoly:
    """Parse an expression over the ring's variables into canonical form.

    Grammar: integer/rational literals, identifiers, + - * ^ and
    parentheses.  Multiplication is explicit.
    """
    parser = _Parser(_tokenize(text), ring)
    p = parser.parse_expr()
    if parser.pos != len(parser.tokens):
        raise PolyError(f"trailing input at token {parser.pos}")
    return p


def poly_to_text(p: MPoly) -> str:
    """Canonical string: graded-lex term order, explicit * and ^."""
    if p.is_zero():
        return "0"
    names = p.ring.variables
    chunks = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        coeff = abs(c)
        if not mono:
            body = str(coeff)
        elif coeff == 1:
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(chunks)


# ---------------------------------------------------------------------------
# exact division and gcd


def try_exact_div(a: MPoly, b: MPoly) -> MPoly | None:
    """Quotient a/b when b divides a exactly, else None."""
    if b.is_zero():
        raise PolyError("division by zero polynomial")
    if a.is_zero():
        return a
    ring = a.ring
    eb, cb = b.leading()
    quo: dict[Exponent, Coeff] = {}
    rem = a
    while not rem.is_zero():
        ea, ca = rem.leading()
        diff = tuple(x - y for x, y in zip(ea, eb))
        if any(d < 0 for d in diff):
            return None
        q = ca / cb
        quo[diff] = q
        rem = rem - MPoly(ring, {diff: q}) * b
    return MPoly(ring, quo)


def exact_div(a: MPoly, b: MPoly) -> MPoly:
    q = try_exact_div(a, b)
    if q is None:
        raise PolyError("not exactly divisible")
    return q


def _content_primitive(p: MPoly, var_idx: int) -> tuple[MPoly, MPoly]:
    """Content (gcd of coefficients w.r.t. one variable) and primitive part."""
    coeffs = list(p.as_univariate(var_idx).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_constant():
            break
        content = multivariate_gcd(content, c)
    content = unit_normalize(content)
    return content, exact_div(p, content)


def _pseudo_rem(f: MPoly, g: MPoly, var_idx: int) -> MPoly:
    """Pseudo-remainder of f by g as univariates in one variable."""
    ring = f.ring
    dg = g.degree_in(var_idx)
    lc_g = g.as_univariate(var_idx)[dg]
    while not f.is_zero():
        df = f.degree_in(var_idx)
        if df < dg:
            break
        lc_f = f.as_univariate(var_idx)[df]
        shift = [0] * ring.num_vars
        shift[var_idx] = df - dg
        mono = MPoly(ring, {tuple(shift): Fraction(1)})
        f = lc_g * f - lc_f * mono * g
    return f


def multivariate_gcd(a: MPoly, b: MPoly) -> MPoly:
    """GCD up to unit, via primitive pseudo-remainder sequences.

    Result is normalized primitive with positive leading coefficient.
    """
    if a.ring != b.ring:
        raise PolyError("ring mismatch")
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd of two zero polynomials")
    if a.is_zero():
        return unit_normalize(b)
    if b.is_zero():
        return unit_normalize(a)
    if a.is_constant() or b.is_constant():
        return a.ring.one()
    var = min(a.used_vars() | b.used_vars())
    ca, pa = _content_primitive(a, var)
    cb, pb = _content_primitive(b, var)
    c = multivariate_gcd(ca, cb)
    f, g = pa, pb
    if f.degree_in(var) < g.degree_in(var):
        f, g = g, f
    while True:
        if g.is_zero():
            prim = f
            break
        if g.degree_in(var) == 0:
            prim = a.ring.one()
            break
        r = _pseudo_rem(f, g, var)
        if r.is_zero():
            prim = g
            break
        f, g = g, _content_primitive(r, var)[1]
    return unit_normalize(c * prim)


# ---------------------------------------------------------------------------
# squarefree decomposition and roots


@dataclass(frozen=True)
class SquarefreeDecomp:
    """Pairwise-coprime squarefree parts with multiplicities, ascending."""

    parts: tuple[tuple[MPoly, int], ...]

    def reconstruct(self) -> MPoly:
        ring = self.parts[0][0].ring if self.parts else None
        if ring is None:
            raise PolyError("empty decomposition has no ring")
        out = ring.one()
        for q, m in self.parts:
            out = out * q ** m
        return out


def squarefree_decompose(p: MPoly) -> SquarefreeDecomp:
    """Yun decomposition, iterating over variables until stable.

    The derivative variable is the first (declared order) in which the
    working polynomial is non-constant; the variable-free cofactor is
    recursed on.  Parts of equal multiplicity from different rounds are
    merged by multiplication, so each multiplicity appears once.
    """
    if p.is_zero():
        raise PolyError("squarefree decomposition of zero")
    merged: dict[int, MPoly] = {}

    def merge(a: MPoly, mult: int) -> None:
        a = unit_normalize(a)
        if mult in merged:
            merged[mult] = unit_normalize(merged[mult] * a)
        else:
            merged[mult] = a

    work = unit_normalize(p)
    while not work.is_constant():
        var = min(work.used_vars())
        deriv = work.derivative(var)
        g = multivariate_gcd(work, deriv)
        if g.is_constant():
            merge(work, 1)
            break
        b = exact_div(work, g)
        c = exact_div(deriv, g)
        d = c - b.derivative(var)
        extracted = work.ring.one()
        i = 1
        while not b.is_constant():
            a = multivariate_gcd(b, d) if not d.is_zero() else unit_normalize(b)
            if not a.is_constant():
                merge(a, i)
                extracted = extracted * a ** i
            b = exact_div(b, a)
            c = exact_div(d, a) if not d.is_zero() else d
            d = c - b.derivative(var)
            i += 1
        work = unit_normalize(exact_div(work, extracted))
    parts = tuple((merged[m], m) for m in sorted(merged))
    return SquarefreeDecomp(parts)


def kth_root(p: MPoly, k: int) -> MPoly:
    """Exact k-th root up to a rational unit; errors when none exists."""
    if k <= 0:
        raise PolyError("root index must be positive")
    if p.is_zero():
        raise PolyError("k-th root of zero")
    if k == 1:
        return unit_normalize(p)
    decomp = squarefree_decompose(p)
    root = p.ring.one()
    for q, m in decomp.parts:
        if m % k != 0:
            raise PolyError(f"not a {k}-th power (multiplicity {m})")
        root = root * q ** (m // k)
    root = unit_normalize(root)
    if not equal_up_to_unit(root ** k, p):
        raise PolyError(f"not a {k}-th power")
    return root


def product(ring: RingSpec, polys: Iterable[MPoly]) -> MPoly:
    return reduce(lambda a, b: a * b, polys, ring.one())
