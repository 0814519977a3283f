"""Exact holomorphic and mixed polynomial germs in z and conj(z).

A monomial ``c * z**nu * conj(z)**mu`` is keyed by its :class:`ExponentPair`.
Coefficients are :class:`~lojbound.gaussian.QQi` throughout; floating
evaluation is a separate entry point (:meth:`MixedFunction.evaluate_float`).
Indices are 0-based internally and 1-based in every printed form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ParseError, ZeroFunctionError
from .gaussian import QQi


class ExponentPair(NamedTuple):
    nu: tuple[int, ...]
    mu: tuple[int, ...]

    @property
    def combined(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.nu, self.mu))

    @property
    def is_holomorphic(self) -> bool:
        return not any(self.mu)


class MixedMonomial(NamedTuple):
    coeff: QQi
    exps: ExponentPair


@dataclass(frozen=True, order=True)
class VariableSubset:
    """Sorted set of 0-based variable indices; prints 1-based."""

    members: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def of(cls, *idx: int) -> "VariableSubset":
        return cls(tuple(idx))

    def complement(self, n: int) -> "VariableSubset":
        return VariableSubset(tuple(i for i in range(n) if i not in self.members))

    def __contains__(self, i):
        return i in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __and__(self, other: "VariableSubset") -> "VariableSubset":
        return VariableSubset(tuple(set(self.members) & set(other.members)))

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.members]

    def __str__(self):
        return "{" + ",".join(str(i) for i in self.one_based()) + "}"


@dataclass(frozen=True)
class MixedFunction:
    """Finite sum of mixed monomials with exact coefficients.

    ``terms`` is stored as a tuple of (ExponentPair, QQi) in canonical
    lexicographic order on (nu, mu); zero coefficients never appear. The
    empty term set is the identically-zero function.
    """

    n: int
    terms: tuple[tuple[ExponentPair, QQi], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a function needs at least one variable")
        for e, c in self.terms:
            if len(e.nu) != self.n or len(e.mu) != self.n:
                raise ValueError("exponent length does not match n")
            if not c:
                raise ValueError("stored coefficients must be non-zero")

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[ExponentPair, object]) -> "MixedFunction":
        clean = {}
        for e, c in terms.items():
            c = QQi.coerce(c)
            if c:
                e = ExponentPair(tuple(e[0]), tuple(e[1]))
                if any(v < 0 for v in e.nu + e.mu):
                    raise ValueError("negative exponent")
                clean[e] = c
        return cls(n, tuple(sorted(clean.items(), key=lambda kv: kv[0])))

    @classmethod
    def holomorphic(cls, n: int, terms: Mapping[tuple[int, ...], object]) -> "MixedFunction":
        zero = (0,) * n
        return cls.from_dict(n, {ExponentPair(tuple(nu), zero): c for nu, c in terms.items()})

    @cached_property
    def as_dict(self) -> dict[ExponentPair, QQi]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def is_holomorphic(self) -> bool:
        return all(e.is_holomorphic for e, _ in self.terms)

    def monomials(self) -> Iterator[MixedMonomial]:
        for e, c in self.terms:
            yield MixedMonomial(c, e)

    def support(self) -> list[tuple[int, ...]]:
        """Distinct combined exponents nu+mu, sorted."""
        return sorted({e.combined for e, _ in self.terms})

    def variables(self) -> set[int]:
        out = set()
        for e, _ in self.terms:
            out.update(i for i, v in enumerate(e.combined) if v)
        return out

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "MixedFunction") -> "MixedFunction":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, QQi(0)) + c
        return MixedFunction.from_dict(self.n, acc)

    def __neg__(self):
        return MixedFunction(self.n, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MixedFunction):
            if self.n != other.n:
                raise ValueError("dimension mismatch")
            acc: dict[ExponentPair, QQi] = {}
            for e1, c1 in self.terms:
                for e2, c2 in other.terms:
                    e = ExponentPair(
                        tuple(a + b for a, b in zip(e1.nu, e2.nu)),
                        tuple(a + b for a, b in zip(e1.mu, e2.mu)),
                    )
                    acc[e] = acc.get(e, QQi(0)) + c1 * c2
            return MixedFunction.from_dict(self.n, acc)
        c = QQi.coerce(other)
        return MixedFunction.from_dict(self.n, {e: v * c for e, v in self.terms})

    __rmul__ = __mul__

    def conjugate(self) -> "MixedFunction":
        """conj(f) as a mixed function: swaps nu and mu, conjugates coefficients."""
        return MixedFunction.from_dict(
            self.n, {ExponentPair(e.mu, e.nu): c.conjugate() for e, c in self.terms}
        )

    def __str__(self):
        return format_function(self)

    def __repr__(self):
        return f"MixedFunction(n={self.n}, '{format_function(self)}')"

    # -- numeric views -------------------------------------------------
    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(coeffs complex[k], nu int[k, n], mu int[k, n]) for vectorised evaluation."""
        if not self.terms:
            return (np.zeros(0, complex), np.zeros((0, self.n), int), np.zeros((0, self.n), int))
        coeffs = np.array([complex(c) for _, c in self.terms])
        nu = np.array([e.nu for e, _ in self.terms], dtype=int)
        mu = np.array([e.mu for e, _ in self.terms], dtype=int)
        return coeffs, nu, mu

    def evaluate(self, z: Sequence) -> QQi:
        return evaluate(self, z)

    def evaluate_float(self, z) -> np.ndarray:
        return evaluate_float(self, z)


# ---------------------------------------------------------------------------
# calculus and structure


def wirtinger_derivative(f: MixedFunction, j: int, conjugated: bool = False) -> MixedFunction:
    """d f / d z_j (or d f / d conj(z_j) when ``conjugated``); j is 0-based."""
    if not 0 <= j < f.n:
        raise IndexError(f"variable index {j + 1} out of range 1..{f.n}")
    acc = {}
    for e, c in f.terms:
        exps = e.mu if conjugated else e.nu
        k = exps[j]
        if not k:
            continue
        lowered = exps[:j] + (k - 1,) + exps[j + 1:]
        key = ExponentPair(e.nu, lowered) if conjugated else ExponentPair(lowered, e.mu)
        acc[key] = c * k
    return MixedFunction.from_dict(f.n, acc)


def gradient(f: MixedFunction) -> list[MixedFunction]:
    return [wirtinger_derivative(f, j) for j in range(f.n)]


def conj_gradient(f: MixedFunction) -> list[MixedFunction]:
    return [wirtinger_derivative(f, j, conjugated=True) for j in range(f.n)]


def restrict(f: MixedFunction, subset: VariableSubset | Iterable[int]) -> MixedFunction:
    """Keep monomials whose combined exponent is supported inside ``subset``."""
    keep = set(subset)
    terms = tuple(
        (e, c) for e, c in f.terms
        if all(v == 0 for i, v in enumerate(e.combined) if i not in keep)
    )
    return MixedFunction(f.n, terms)


def compress(f: MixedFunction, subset: VariableSubset | Iterable[int]) -> MixedFunction:
    """Restrict to ``subset`` and re-index onto len(subset) variables."""
    idx = sorted(set(subset))
    g = restrict(f, idx)
    return MixedFunction.from_dict(
        len(idx),
        {ExponentPair(tuple(e.nu[i] for i in idx), tuple(e.mu[i] for i in idx)): c
         for e, c in g.terms},
    )


def embed(f: MixedFunction, subset: Sequence[int], n: int) -> MixedFunction:
    """Inverse of :func:`compress`: place f's variables at ``subset`` inside n variables."""
    idx = sorted(subset)
    out = {}
    for e, c in f.terms:
        nu = [0] * n
        mu = [0] * n
        for k, i in enumerate(idx):
            nu[i] = e.nu[k]
            mu[i] = e.mu[k]
        out[ExponentPair(tuple(nu), tuple(mu))] = c
    return MixedFunction.from_dict(n, out)


def _as_weight(P) -> tuple[Fraction, ...]:
    return tuple(Fraction(p) for p in P)


def radial_degree(P: Sequence, m: MixedMonomial | ExponentPair) -> Fraction:
    """sum_i p_i (nu_i + mu_i), exact."""
    e = m.exps if isinstance(m, MixedMonomial) else m
    return sum((Fraction(p) * v for p, v in zip(P, e.combined)), Fraction(0))


def weighted_order(f: MixedFunction, P: Sequence) -> Fraction:
    """d(P, f): minimal radial P-degree over the terms of f."""
    if f.is_zero:
        raise ZeroFunctionError("d(P, f) is undefined for the zero function")
    W = _as_weight(P)
    return min(sum((p * v for p, v in zip(W, e.combined)), Fraction(0)) for e, _ in f.terms)


def face_function(f: MixedFunction, P: Sequence) -> MixedFunction:
    """Sum of the monomials of f attaining the minimal radial P-degree."""
    if f.is_zero:
        raise ZeroFunctionError("face function of the zero function")
    W = _as_weight(P)
    if any(p < 0 for p in W) or not any(W):
        raise ValueError("weight must be non-negative and non-zero")
    degs = [sum((p * v for p, v in zip(W, e.combined)), Fraction(0)) for e, _ in f.terms]
    d = min(degs)
    return MixedFunction(f.n, tuple(t for t, dd in zip(f.terms, degs) if dd == d))


def evaluate(f: MixedFunction, z: Sequence) -> QQi:
    """Exact value at a point with complex-rational coordinates (conj(z_j) substituted)."""
    if len(z) != f.n:
        raise ValueError(f"expected {f.n} coordinates, got {len(z)}")
    zz = [QQi.coerce(v) for v in z]
    zb = [v.conjugate() for v in zz]
    total = QQi(0)
    for e, c in f.terms:
        term = c
        for i in range(f.n):
            if e.nu[i]:
                term = term * zz[i] ** e.nu[i]
            if e.mu[i]:
                term = term * zb[i] ** e.mu[i]
        total = total + term
    return total


def evaluate_float(f: MixedFunction, z) -> np.ndarray:
    """Floating evaluation; ``z`` has shape (n,) or (batch, n)."""
    z = np.asarray(z, dtype=complex)
    single = z.ndim == 1
    if single:
        z = z[None, :]
    if z.shape[-1] != f.n:
        raise ValueError(f"expected {f.n} coordinates, got {z.shape[-1]}")
    coeffs, nu, mu = f.arrays
    if not len(coeffs):
        out = np.zeros(z.shape[0], complex)
    else:
        zp = np.prod(z[:, None, :] ** nu[None] * np.conj(z)[:, None, :] ** mu[None], axis=2)
        out = zp @ coeffs
    return out[0] if single else out


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:\.\d+)?(?:/\d+)?)(?P<imag>i(?![a-zA-Z0-9]))?"
    r"|(?P<var>~?z)(?P<idx>\d+)"
    r"|(?P<i>i)(?![a-zA-Z0-9])"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group("num"):
            s = m.group("num")
            after_caret = bool(tokens) and tokens[-1][:2] == ("op", "^")
            if after_caret and "/" in s:
                # z^3/4 divides by 4; the literal is not a fractional exponent
                a, b = s.split("/")
                tokens.append(("num", Fraction(a), start))
                tokens.append(("op", "/", start + len(a)))
                tokens.append(("imag" if m.group("imag") else "num", Fraction(b), start + len(a) + 1))
            else:
                val = Fraction(s) if "/" not in s else Fraction(*map(Fraction, s.split("/")))
                tokens.append(("imag" if m.group("imag") else "num", val, start))
        elif m.group("var"):
            k = int(m.group("idx"))
            if k < 1:
                raise ParseError("variable indices start at 1", start)
            tokens.append(("var", (k - 1, m.group("var").startswith("~")), start))
        elif m.group("i"):
            tokens.append(("imag", Fraction(1), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over + - * / ^ and parentheses.

    Polynomials are dicts {(nu, mu): QQi} with variable-length exponent
    tuples; everything is padded to the final n at the end.
    """

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {self.text[tok[2]:tok[2] + 1]!r}", tok[2])
        return poly

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = _pscale(self.term(), sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                acc = _padd(acc, _pscale(rhs, -1 if tok[1] == "-" else 1))
            else:
                return acc

    def _starts_primary(self, tok):
        return tok[0] in ("num", "imag", "var") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = _pmul(acc, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                pos = self.peek()[2]
                den = self.power()
                c = _pconstant(den)
                if c is None or not c:
                    raise ParseError("division only by a non-zero constant", pos)
                acc = _pscale(acc, QQi(1) / c)
            elif self._starts_primary(tok):
                acc = _pmul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.primary()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "-":
                raise ParseError("negative exponent", nxt[2])
            if nxt[0] != "num" or nxt[1].denominator != 1:
                raise ParseError("exponent must be a non-negative integer", nxt[2])
            self.take()
            base = _ppow(base, int(nxt[1]))
        return base

    def primary(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return {((), ()): QQi(val)}
        if kind == "imag":
            return {((), ()): QQi(0, val)}
        if kind == "var":
            idx, bar = val
            e = tuple(1 if i == idx else 0 for i in range(idx + 1))
            z = tuple(0 for _ in range(idx + 1))
            return {((z, e) if bar else (e, z)): QQi(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {self.text[pos:pos + 1]!r}", pos)


def _pad(t: tuple, n: int) -> tuple:
    return t + (0,) * (n - len(t))


def _key_add(k1, k2):
    n = max(len(k1[0]), len(k2[0]))
    return (
        tuple(a + b for a, b in zip(_pad(k1[0], n), _pad(k2[0], n))),
        tuple(a + b for a, b in zip(_pad(k1[1], n), _pad(k2[1], n))),
    )


def _norm_key(k):
    nu, mu = k
    while nu and not nu[-1] and not mu[-1]:
        nu, mu = nu[:-1], mu[:-1]
    return nu, mu


def _padd(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, QQi(0)) + c
    return {k: c for k, c in out.items() if c}


def _pscale(a, c):
    c = QQi.coerce(c)
    return {k: v * c for k, v in a.items() if v * c}


def _pmul(a, b):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = _norm_key(_key_add(k1, k2))
            out[k] = out.get(k, QQi(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _ppow(a, k):
    out = {((), ()): QQi(1)}
    for _ in range(k):
        out = _pmul(out, a)
    return out


def _pconstant(a):
    if not a:
        return QQi(0)
    if set(a) == {((), ())}:
        return a[((), ())]
    return None


def parse(text: str, n_hint: int | None = None) -> MixedFunction:
    """Parse a polynomial expression in z1..zn and ~z1..~zn (conjugates)."""
    poly = _Parser(text).parse()
    poly = {_norm_key(k): c for k, c in poly.items() if c}
    if not poly:
        raise ZeroFunctionError("function is identically zero")
    if ((), ()) in poly:
        raise ParseError("constant term present; germs must vanish at the origin", 0)
    n_seen = max(len(k[0]) for k in poly)
    n = n_seen if n_hint is None else n_hint
    if n < n_seen:
        raise ParseError(f"variable index {n_seen} exceeds n_hint={n_hint}", 0)
    return MixedFunction.from_dict(
        n, {ExponentPair(_pad(k[0], n), _pad(k[1], n)): c for k, c in poly.items()}
    )


def _coeff_str(c: QQi) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return f"{c.im}i"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re}{sign}{abs(c.im)}i)"


def format_monomial(e: ExponentPair) -> str:
    parts = []
    for i, k in enumerate(e.nu):
        if k:
            parts.append(f"z{i + 1}" + (f"^{k}" if k > 1 else ""))
    for i, k in enumerate(e.mu):
        if k:
            parts.append(f"~z{i + 1}" + (f"^{k}" if k > 1 else ""))
    return "*".join(parts) if parts else "1"


def format_function(f: MixedFunction) -> str:
    """Canonical text; ``parse(format_function(f)) == f``."""
    if f.is_zero:
        return "0"
    out = []
    for k, (e, c) in enumerate(f.terms):
        mono = format_monomial(e)
        neg = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if neg else c
        if mag == 1:
            body = mono
        else:
            body = f"{_coeff_str(mag)}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def interaction_components(f: MixedFunction) -> list[VariableSubset]:
    """Connected components of the graph joining variables that share a monomial.

    Variables that never occur form singleton components.
    """
    parent = list(range(f.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, _ in f.terms:
        used = [i for i, v in enumerate(e.combined) if v]
        for a in used[1:]:
            ra, rb = find(used[0]), find(a)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in range(f.n):
        groups.setdefault(find(i), []).append(i)
    return sorted((VariableSubset(tuple(g)) for g in groups.values()), key=lambda s: s.members)
