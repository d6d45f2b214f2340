"""Exact coefficient arithmetic for everything downstream.

All computations in this package happen over the Laurent-polynomial ring in
q^{1/2} and d^{1/2} with rational coefficients, extended by one formal
central monomial ``zeta`` that is only used by the standalone Hecke-algebra
checks (everywhere else zeta is a concrete power of q1 = d*q^{-1}).

Besides the ring type this module holds the small amount of series
machinery the rest of the package needs: expansions of the rational
function

    psi_c(z) = (q^c - q^{-c} z) / (1 - z)

at z = 0 and z = infinity, and exact mode extraction for normal-ordered
products of a formal delta function against a product of psi factors.
Both expansions of psi_c are eventually constant, which keeps every mode
coefficient a finite sum.

A numeric specialization q -> q0, d -> d0 (rationals) doubles as a fast
cross-check oracle for all symbolic identities.
"""

from __future__ import annotations

import math
import re
import threading
from fractions import Fraction
from typing import Callable, Mapping

# Exponent key: (a, b, c) encodes q^{a/2} * d^{b/2} * zeta^c.
Key = tuple[int, int, int]


class Scalar:
    """Immutable Laurent polynomial in q^{1/2}, d^{1/2} (and formal zeta).

    Terms map exponent keys to nonzero Fractions; zero coefficients are
    dropped eagerly so that equality and zero tests are dictionary
    comparisons.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        clean: dict[Key, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    clean[key] = Fraction(coeff)
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "Scalar":
        return _ZERO

    @classmethod
    def one(cls) -> "Scalar":
        return _ONE

    @classmethod
    def from_rational(cls, x) -> "Scalar":
        x = Fraction(x)
        return cls({(0, 0, 0): x}) if x else _ZERO

    @classmethod
    def monomial(cls, coeff=1, qhalf: int = 0, dhalf: int = 0, zeta: int = 0) -> "Scalar":
        coeff = Fraction(coeff)
        if not coeff:
            return _ZERO
        return cls({(qhalf, dhalf, zeta): coeff})

    # -- inspection --------------------------------------------------

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring structure ----------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            acc = terms.get(key)
            if acc is None:
                terms[key] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[key] = acc
                else:
                    del terms[key]
        out = Scalar.__new__(Scalar)
        out._terms = terms
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out._terms = {k: -c for k, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        # fast path: monomial times anything
        if len(other._terms) == 1:
            ((kb, cb),) = other._terms.items()
            out = Scalar.__new__(Scalar)
            out._terms = {
                (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]): ca * cb
                for ka, ca in self._terms.items()
            }
            out._hash = None
            return out
        terms: dict[Key, Fraction] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                acc = terms.get(key)
                if acc is None:
                    terms[key] = ca * cb
                else:
                    acc = acc + ca * cb
                    if acc:
                        terms[key] = acc
                    else:
                        del terms[key]
        out = Scalar.__new__(Scalar)
        out._terms = terms
        out._hash = None
        return out

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Inverse of a monomial.  Raises on anything else."""
        if len(self._terms) != 1:
            raise ArithmeticError(f"not a unit: {self.render()}")
        ((key, coeff),) = self._terms.items()
        return Scalar({(-key[0], -key[1], -key[2]): Fraction(1) / coeff})

    def __pow__(self, e: int) -> "Scalar":
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return _ONE
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------

    def render(self) -> str:
        """Deterministic text form, e.g. ``-1*q^-1*d^2 + 3*q^2``."""
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms):
            coeff = self._terms[key]
            factors = [str(coeff)]
            for name, half in zip(("q", "d", "zeta"), key):
                if half == 0:
                    continue
                if name == "zeta":
                    exp_txt = _render_exp(2 * half)
                else:
                    exp_txt = _render_exp(half)
                factors.append(name + exp_txt)
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Inverse of render (used for test fixtures)."""
        text = text.strip()
        if text == "0":
            return _ZERO
        total = _ZERO
        for part in text.split(" + "):
            factors = part.split("*")
            coeff = Fraction(factors[0])
            qhalf = dhalf = zexp = 0
            for fac in factors[1:]:
                match = _FACTOR_RE.fullmatch(fac)
                if not match:
                    raise ValueError(f"bad factor {fac!r} in {text!r}")
                name, whole, num, den = match.groups()
                if whole is not None:
                    half = 2 * int(whole)
                elif num is not None:
                    if int(den) != 2:
                        raise ValueError(f"bad exponent in {fac!r}")
                    half = int(num)
                else:
                    half = 2
                if name == "q":
                    qhalf += half
                elif name == "d":
                    dhalf += half
                else:
                    if half % 2:
                        raise ValueError("zeta exponent must be an integer")
                    zexp += half // 2
            total = total + cls.monomial(coeff, qhalf, dhalf, zexp)
        return total


_FACTOR_RE = re.compile(r"(q|d|zeta)(?:\^(?:(-?\d+)|\{(-?\d+)/(\d+)\}))?")


def _render_exp(half: int) -> str:
    """Exponent suffix for a half-integer exponent given in halves."""
    if half == 2:
        return ""
    if half % 2 == 0:
        return f"^{half // 2}"
    return f"^{{{half}/2}}"


def _coerce(x) -> "Scalar":
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_rational(x)
    return NotImplemented


_ZERO = Scalar.__new__(Scalar)
_ZERO._terms = {}
_ZERO._hash = None
_ONE = Scalar.__new__(Scalar)
_ONE._terms = {(0, 0, 0): Fraction(1)}
_ONE._hash = None


def q_pow(e: int) -> Scalar:
    return Scalar.monomial(1, qhalf=2 * e)


def d_pow(e: int) -> Scalar:
    return Scalar.monomial(1, dhalf=2 * e)


def zeta_pow(e: int) -> Scalar:
    """Formal central monomial (standalone Hecke checks only)."""
    return Scalar.monomial(1, zeta=e)


def qint(k: int) -> Scalar:
    """Quantum integer (q^k - q^{-k}) / (q - q^{-1}), expanded exactly.

    For k >= 0 this is q^{k-1} + q^{k-3} + ... + q^{1-k}; negative k
    flips the sign.
    """
    if k == 0:
        return _ZERO
    sign = 1 if k > 0 else -1
    k = abs(k)
    return Scalar({(2 * e, 0, 0): Fraction(sign) for e in range(k - 1, -k - 1, -2)})


def derived_params(m: int, n: int) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    """The three multiplicative parameters and the loop constant.

    q1 = d q^{-1}, q2 = q^2, q3 = d^{-1} q^{-1} (so q1 q2 q3 = 1), and
    zeta = q1^{n-m}.  Rejects m = n, where the construction breaks down.
    """
    if m == n:
        raise ValueError("m = n is not allowed")
    q1 = Scalar.monomial(1, qhalf=-2, dhalf=2)
    q2 = q_pow(2)
    q3 = Scalar.monomial(1, qhalf=-2, dhalf=-2)
    zeta = q1 ** (n - m)
    return q1, q2, q3, zeta


# ----------------------------------------------------------------------
# psi expansions


def psi_coeffs(r: int, direction: str, count: int) -> list[Scalar]:
    """First ``count`` expansion coefficients of psi_r(z).

    direction '+' expands at infinity (powers z^{-k}), '-' at zero
    (powers z^k).  Both expansions stabilize after the constant term:
    at zero the stream is q^r, then (q^r - q^{-r}) forever; at infinity
    swap r for -r.
    """
    if direction not in ("+", "-"):
        raise ValueError(f"direction must be '+' or '-', got {direction!r}")
    if count < 0:
        raise ValueError("count must be >= 0")
    lead = -r if direction == "+" else r
    out: list[Scalar] = []
    if count > 0:
        out.append(q_pow(lead))
    if count > 1:
        jump = q_pow(lead) - q_pow(-lead)
        out.extend([jump] * (count - 1))
    return out


class SeriesTail:
    """Lazily memoized coefficient stream of a one-sided expansion.

    The generator is called at most once per index; concurrent readers
    always observe the same value for the same index.
    """

    def __init__(self, direction: str, gen: Callable[[int], Scalar]):
        assert direction in ("+", "-")
        self.direction = direction
        self._gen = gen
        self._memo: dict[int, Scalar] = {}
        self._lock = threading.Lock()

    def coeff(self, k: int) -> Scalar:
        assert k >= 0
        memo = self._memo
        value = memo.get(k)
        if value is not None:
            return value
        with self._lock:
            value = memo.get(k)
            if value is None:
                value = self._gen(k)
                memo[k] = value
        return value

    def prefix(self, count: int) -> list[Scalar]:
        return [self.coeff(k) for k in range(count)]


def psi_tail(r: int, direction: str) -> SeriesTail:
    return SeriesTail(direction, lambda k: psi_coeffs(r, direction, k + 1)[k])


# ----------------------------------------------------------------------
# numeric specialization


def _exact_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def specialize(x: Scalar, q0, d0, zeta0=None) -> Fraction:
    """Evaluate at exact rational points q = q0, d = d0.

    Half-integer exponents require q0 (resp. d0) to be an exact square
    of a rational.  zeta0 is only consulted when the formal central
    monomial actually occurs; callers working at a concrete (m, n)
    should pass (d0/q0)^(n-m).
    """
    q0, d0 = Fraction(q0), Fraction(d0)
    if q0 == 0 or d0 == 0:
        raise ValueError("q0 and d0 must be nonzero")
    if q0 in (1, -1):
        raise ValueError("|q0| = 1 specializes q to a root of unity")
    needs = {(key[0] % 2, key[1] % 2) for key in x._terms}
    qhalf = dhalf = None
    if any(a for a, _ in needs):
        qhalf = _exact_sqrt(q0)
        if qhalf is None:
            raise ValueError(f"q0 = {q0} has no exact rational square root")
    if any(b for _, b in needs):
        dhalf = _exact_sqrt(d0)
        if dhalf is None:
            raise ValueError(f"d0 = {d0} has no exact rational square root")
    total = Fraction(0)
    for (a, b, c), coeff in x._terms.items():
        val = coeff
        if a:
            val *= q0 ** (a // 2) if a % 2 == 0 else qhalf**a
        if b:
            val *= d0 ** (b // 2) if b % 2 == 0 else dhalf**b
        if c:
            if zeta0 is None:
                raise ValueError("formal zeta present but no zeta0 given")
            val *= Fraction(zeta0) ** c
        total += val
    return total


# ----------------------------------------------------------------------
# coefficient contexts
#
# The Hecke and representation engines are generic over the coefficient
# ring: symbolically they work with Scalar, numerically with Fraction.
# A context supplies the constants they need; the elements themselves
# only ever go through +, -, *, == and truthiness.


class SymbolicContext:
    """Coefficients are Scalar values; zeta may be formal or concrete."""

    numeric = False

    def __init__(self, m: int | None = None, n: int | None = None, formal_zeta: bool = False):
        self.m, self.n = m, n
        self.formal_zeta = formal_zeta
        if not formal_zeta:
            if m is None or n is None:
                raise ValueError("concrete zeta needs (m, n)")
            if m == n:
                raise ValueError("m = n is not allowed")
        self.one = _ONE
        self.zero = _ZERO

    def qpow(self, e: int) -> Scalar:
        return q_pow(e)

    def dpow(self, e: int) -> Scalar:
        return d_pow(e)

    def q1pow(self, e: int) -> Scalar:
        return Scalar.monomial(1, qhalf=-2 * e, dhalf=2 * e)

    def zetapow(self, e: int) -> Scalar:
        if self.formal_zeta:
            return zeta_pow(e)
        return self.q1pow((self.n - self.m) * e)

    def qint(self, k: int) -> Scalar:
        return qint(k)

    def rational(self, x) -> Scalar:
        return Scalar.from_rational(x)

    def render(self, coeff: Scalar) -> str:
        return coeff.render()


class NumericContext:
    """Coefficients are plain Fractions at a fixed evaluation point."""

    numeric = True

    def __init__(self, q0, d0, m: int | None = None, n: int | None = None, zeta0=None):
        self.q0, self.d0 = Fraction(q0), Fraction(d0)
        if self.q0 == 0 or self.d0 == 0:
            raise ValueError("q0 and d0 must be nonzero")
        if self.q0 in (1, -1):
            raise ValueError("|q0| = 1 specializes q to a root of unity")
        self.m, self.n = m, n
        if zeta0 is not None:
            self.zeta0 = Fraction(zeta0)
        elif m is not None and n is not None:
            if m == n:
                raise ValueError("m = n is not allowed")
            self.zeta0 = (self.d0 / self.q0) ** (n - m)
        else:
            self.zeta0 = None
        self.one = Fraction(1)
        self.zero = Fraction(0)

    def qpow(self, e: int) -> Fraction:
        return self.q0**e

    def dpow(self, e: int) -> Fraction:
        return self.d0**e

    def q1pow(self, e: int) -> Fraction:
        return (self.d0 / self.q0) ** e

    def zetapow(self, e: int) -> Fraction:
        if self.zeta0 is None:
            raise ValueError("no zeta value configured")
        return self.zeta0**e

    def qint(self, k: int) -> Fraction:
        if k == 0:
            return Fraction(0)
        return (self.q0**k - self.q0**-k) / (self.q0 - 1 / self.q0)

    def rational(self, x) -> Fraction:
        return Fraction(x)

    def render(self, coeff: Fraction) -> str:
        return str(coeff)


# ----------------------------------------------------------------------
# normal-ordered mode extraction
#
# The current actions all reduce to extracting one z-mode from
#
#     :[ delta(arg_0) * prod_p psi_{c_p}(arg_p) ]^{boundary}:
#
# where each argument is scale*var_p/z (inverted=False) or
# scale*var_p*z (inverted=True).  The normal ordering splits the
# delta function into its two halves and pairs each half with the
# matching expansion of the psi product, so every mode is a finite
# convolution.  We return multipliers as dense per-slot exponent
# vectors (powers of the var_p) mapped to context coefficients; the
# callers reinterpret the vectors as xi- or Y-exponents.


def _merge(acc: dict, key: tuple, coeff) -> None:
    cur = acc.get(key)
    if cur is None:
        acc[key] = coeff
    else:
        cur = cur + coeff
        if cur:
            acc[key] = cur
        else:
            del acc[key]


def psi_half_stream(ctx, c: int, slot: int, scale_pow, eps: int, ell: int, upto: int) -> list[dict]:
    """Stream of one psi factor in one direction, degrees 0..upto."""
    stream: list[dict] = []
    lead = ctx.qpow(eps * c)
    jump = None
    for k in range(upto + 1):
        vec = [0] * ell
        if k == 0:
            stream.append({tuple(vec): lead})
            continue
        if jump is None:
            jump = ctx.qpow(eps * c) - ctx.qpow(-eps * c)
        vec[slot] = eps * k
        stream.append({tuple(vec): jump * scale_pow(eps * k)})
    return stream


def convolve_streams(ctx, streams: list[list[dict]], upto: int) -> list[dict]:
    """Degreewise product of multiplier streams (each indexed 0..upto)."""
    assert streams
    ell = len(next(iter(streams[0][0])))
    acc: list[dict] = [dict() for _ in range(upto + 1)]
    acc[0] = {tuple([0] * ell): ctx.one}
    for stream in streams:
        nxt: list[dict] = [dict() for _ in range(upto + 1)]
        for da, terms_a in enumerate(acc):
            if not terms_a:
                continue
            for db in range(upto + 1 - da):
                terms_b = stream[db]
                for va, ca in terms_a.items():
                    for vb, cb in terms_b.items():
                        key = tuple(x + y for x, y in zip(va, vb))
                        _merge(nxt[da + db], key, ca * cb)
        acc = nxt
    return acc


def delta_psi_mode(
    ctx,
    ell: int,
    t: int,
    boundary: str,
    delta_slot: int,
    psi_slots: list[tuple[int, int]],
    scale_pow,
    inverted: bool,
) -> dict:
    """Coefficient of z^{-t} in :[delta(arg) * prod psi_c(arg_p)]^boundary:.

    psi_slots lists (slot, c) pairs; scale_pow(e) is the context
    coefficient of the common scale raised to e; inverted selects
    arguments of shape scale*var*z instead of scale*var/z.  The result
    maps per-slot exponent vectors to coefficients.
    """
    if boundary not in ("+", "-"):
        raise ValueError("boundary must be '+' or '-'")
    # delta-argument powers: for arg = s*v/z the delta contributes
    # (s v_delta)^e at z-degree -e; for arg = s*v*z substitute e -> -e.
    def delta_pow(e: int) -> tuple[tuple, object]:
        ee = -e if inverted else e
        vec = [0] * ell
        vec[delta_slot] = ee
        return tuple(vec), scale_pow(ee)

    # psi halves: direction '+' (z^{-k}): argument small iff not inverted
    eps_plus = -1 if inverted else 1
    if boundary == "+":
        plus_range = range(0, t + 1) if t >= 0 else range(0)
        minus_range = range(0, -t) if t < 0 else range(0)
    else:
        plus_range = range(0, t) if t > 0 else range(0)
        minus_range = range(0, -t + 1) if t <= 0 else range(0)

    acc: dict = {}
    if len(plus_range):
        upto = plus_range[-1]
        streams = [
            psi_half_stream(ctx, c, slot, scale_pow, eps_plus, ell, upto)
            for slot, c in psi_slots
        ]
        phi = convolve_streams(ctx, streams, upto) if streams else None
        for k in plus_range:
            dvec, dcoeff = delta_pow(t - k)
            if phi is None:
                if k == 0:
                    _merge(acc, dvec, dcoeff)
                continue
            for vec, coeff in phi[k].items():
                key = tuple(x + y for x, y in zip(vec, dvec))
                _merge(acc, key, coeff * dcoeff)
    if len(minus_range):
        upto = minus_range[-1]
        streams = [
            psi_half_stream(ctx, c, slot, scale_pow, -eps_plus, ell, upto)
            for slot, c in psi_slots
        ]
        phi = convolve_streams(ctx, streams, upto) if streams else None
        for k in minus_range:
            dvec, dcoeff = delta_pow(t + k)
            if phi is None:
                if k == 0:
                    _merge(acc, dvec, dcoeff)
                continue
            for vec, coeff in phi[k].items():
                key = tuple(x + y for x, y in zip(vec, dvec))
                _merge(acc, key, coeff * dcoeff)
    return acc


def psi_product_mode(
    ctx,
    ell: int,
    t: int,
    sign: str,
    psi_slots: list[tuple[int, int]],
    scale_pow,
    inverted: bool,
) -> dict:
    """Coefficient of z^{-t} in the expansion of prod psi_c(arg_p).

    sign '+' expands every factor at z = infinity (modes t >= 0), '-'
    at z = 0 (modes t <= 0).  Same argument conventions as
    delta_psi_mode.
    """
    if sign == "+":
        if t < 0:
            return {}
        degree, eps = t, (-1 if inverted else 1)
    elif sign == "-":
        if t > 0:
            return {}
        degree, eps = -t, (1 if inverted else -1)
    else:
        raise ValueError("sign must be '+' or '-'")
    streams = [
        psi_half_stream(ctx, c, slot, scale_pow, eps, ell, degree)
        for slot, c in psi_slots
    ]
    if not streams:
        return {tuple([0] * ell): ctx.one} if degree == 0 else {}
    return convolve_streams(ctx, streams, degree)[degree]
