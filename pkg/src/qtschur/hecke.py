"""Double affine Hecke algebra of type gl_l as an exact rewriting engine.

Elements are kept in the normal form

    sum of  coeff * Q^k * T_{w} * Y^mu

with k an integer, w an affine permutation of window size l, and mu an
integer vector of Y-exponents.  Everything the package ever multiplies
on the right is a word in T_i^{+-1}, Y_j^{+-1}, X_j^{+-1}, Q^{+-1},
and each of those letters acts on a basis word by a finite local
rewrite:

  * Y letters merge into mu (the Y's commute among themselves);
  * T letters first move past Y^mu by the Bernstein-Lusztig exchange,
    whose correction term is a telescoping Laurent polynomial in
    Y_i Y_{i+1}^{-1} (no division ever happens), then fold into T_w by
    the usual length/quadratic rule;
  * Q conjugates the T and Y parts through a rotation of the affine
    diagram and increments k, picking up a central-constant power per
    wrapped Y-exponent;
  * X letters expand into a fixed word in T's and one Q.

The quadratic relation is normalized as (T_i + 1)(T_i - q^2) = 0, so
T_i^{-1} = q^{-2} T_i + (q^{-2} - 1).

Coefficients are whatever the supplied context produces (exact Laurent
polynomials or plain rationals); the central constant is either formal
or a concrete power of d q^{-1}, again decided by the context.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

Token = tuple[str, int, int]  # (kind in "TXYQ", index, exponent +-1)
BasisKey = tuple[int, tuple[int, ...], tuple[int, ...]]  # (k, window, mu)


class AffinePermutation:
    """Bijection w of the integers with w(i + l) = w(i) + l.

    Stored by its window (w(1), ..., w(l)), normalized so that
    sum(w(i) - i) = 0; these are exactly the affine permutations, and
    together with the rotation Q they make up the extended group.
    """

    __slots__ = ("window",)

    def __init__(self, window: Sequence[int]):
        window = tuple(window)
        ell = len(window)
        assert ell >= 1
        assert sorted(v % ell for v in window) == list(range(ell)), (
            f"window residues must be distinct mod {ell}: {window}"
        )
        assert sum(window) == ell * (ell + 1) // 2, (
            f"window must be normalized: {window}"
        )
        self.window = window

    @classmethod
    def identity(cls, ell: int) -> "AffinePermutation":
        return cls(range(1, ell + 1))

    @property
    def ell(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        ell = len(self.window)
        return self.window[(i - 1) % ell] + ((i - 1) // ell) * ell

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, len(self.window) + 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, AffinePermutation) and self.window == other.window

    def __hash__(self) -> int:
        return hash(self.window)

    def __repr__(self) -> str:
        return f"AffinePermutation{self.window}"

    def compose(self, other: "AffinePermutation") -> "AffinePermutation":
        """(self . other)(i) = self(other(i))."""
        return AffinePermutation([self(other(i)) for i in range(1, self.ell + 1)])

    def inverse(self) -> "AffinePermutation":
        ell = self.ell
        out = [0] * ell
        for p, v in enumerate(self.window, start=1):
            # self(p + k*ell) = v + k*ell, so inverse sends v + k*ell to p + k*ell
            res = (v - 1) % ell
            k = (v - 1 - res) // ell
            out[res] = p - k * ell
        return AffinePermutation(out)

    def right_mul_s(self, i: int) -> "AffinePermutation":
        """Window of self * s_i (precompose with the transposition)."""
        ell = self.ell
        w = list(self.window)
        if i == 0:
            w[0], w[ell - 1] = self.window[ell - 1] - ell, self.window[0] + ell
        else:
            assert 1 <= i < ell
            w[i - 1], w[i] = w[i], w[i - 1]
        return AffinePermutation(w)

    def has_right_descent(self, i: int) -> bool:
        """l(w s_i) < l(w), i.e. w(i) > w(i+1)."""
        if i == 0:
            return self.window[-1] - self.ell > self.window[0]
        assert 1 <= i < self.ell
        return self.window[i - 1] > self.window[i]

    def length(self) -> int:
        ell = self.ell
        total = 0
        for a in range(ell):
            for b in range(a + 1, ell):
                diff = self.window[b] - self.window[a]
                total += abs(diff // ell) if diff < 0 else diff // ell
        return total

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word, smallest descent first when peeling.

        The letters multiply left to right: w = s_{a_1} ... s_{a_k}
        for the returned word (a_1, ..., a_k).
        """
        cur = self
        peeled = []
        while not cur.is_identity():
            for i in range(cur.ell):
                if cur.has_right_descent(i):
                    peeled.append(i)
                    cur = cur.right_mul_s(i)
                    break
            else:
                raise AssertionError(f"non-identity without descent: {cur}")
        word = tuple(reversed(peeled))
        assert len(word) == self.length()
        return word

    def rotate_down(self) -> "AffinePermutation":
        """Conjugate by the rotation: window of pi^{-1} w pi."""
        return AffinePermutation([self(i + 1) - 1 for i in range(1, self.ell + 1)])

    def rotate_up(self) -> "AffinePermutation":
        """Conjugate the other way: window of pi w pi^{-1}."""
        return AffinePermutation([self(i - 1) + 1 for i in range(1, self.ell + 1)])


def affine_permutations_upto(ell: int, max_len: int) -> list[AffinePermutation]:
    """All affine permutations of length <= max_len, in BFS order."""
    start = AffinePermutation.identity(ell)
    seen = {start}
    frontier = [start]
    out = [start]
    gens = range(ell) if ell > 1 else range(0)
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for i in gens:
                if not w.has_right_descent(i):
                    v = w.right_mul_s(i)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
                        out.append(v)
        frontier = nxt
    return out


class DahaContext:
    """Shared configuration: window size, coefficient context, caches."""

    def __init__(self, ell: int, coeffs):
        assert ell >= 1
        self.ell = ell
        self.R = coeffs
        self._id_window = tuple(range(1, ell + 1))
        self._zero_mu = (0,) * ell
        # token cache: (window, mu, kind, index, exp) -> tuple of
        # (dk, window, mu, coeff); filled on demand, values deterministic
        self._tok_cache: dict = {}

    def zero(self) -> "DahaElement":
        return DahaElement(self, {})

    def one(self) -> "DahaElement":
        return self.basis(0, self._id_window, self._zero_mu)

    def basis(self, k: int, window, mu, coeff=None) -> "DahaElement":
        coeff = self.R.one if coeff is None else coeff
        if not coeff:
            return self.zero()
        return DahaElement(self, {(k, tuple(window), tuple(mu)): coeff})

    def element(self, word: Iterable[Token]) -> "DahaElement":
        return apply_word(self.one(), word)


class DahaElement:
    """Finite coefficient combination of normal-form basis words."""

    __slots__ = ("ctx", "support")

    def __init__(self, ctx: DahaContext, support: dict):
        self.ctx = ctx
        self.support = support

    def is_zero(self) -> bool:
        return not self.support

    def __bool__(self) -> bool:
        return bool(self.support)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DahaElement)
            and self.ctx is other.ctx
            and self.support == other.support
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.support.items()))

    def __add__(self, other: "DahaElement") -> "DahaElement":
        assert self.ctx is other.ctx
        support = dict(self.support)
        for key, coeff in other.support.items():
            cur = support.get(key)
            if cur is None:
                support[key] = coeff
            else:
                cur = cur + coeff
                if cur:
                    support[key] = cur
                else:
                    del support[key]
        return DahaElement(self.ctx, support)

    def __neg__(self) -> "DahaElement":
        return DahaElement(self.ctx, {k: -c for k, c in self.support.items()})

    def __sub__(self, other: "DahaElement") -> "DahaElement":
        return self + (-other)

    def scale(self, coeff) -> "DahaElement":
        if not coeff:
            return DahaElement(self.ctx, {})
        return DahaElement(self.ctx, {k: coeff * c for k, c in self.support.items()})

    def render(self) -> str:
        if not self.support:
            return "0"
        ctx = self.ctx
        parts = []
        for key in sorted(self.support):
            k, window, mu = key
            coeff = self.support[key]
            parts.append(
                f"({ctx.R.render(coeff)}) * Q^{k}"
                f" * T[{','.join(map(str, window))}]"
                f" * Y^({','.join(map(str, mu))})"
            )
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DahaElement<{self.render()}>"


# ----------------------------------------------------------------------
# token-level right multiplication


def _bl_exchange(ctx: DahaContext, mu: tuple[int, ...], i: int):
    """Y^mu T_i = T_i Y^{s_i mu} + (q^2 - 1) * (Laurent correction).

    Returns (swapped mu, list of correction exponent vectors with signs).
    With a = mu_i, b = mu_{i+1} the correction is the telescoping sum
    +sum_{t=b}^{a-1} Y_i^{a+b-t} Y_{i+1}^t for a > b (negated with the
    roles of a and b swapped when a < b, empty when a = b), which is
    exactly the geometric-series expansion of the usual rational form.
    """
    a, b = mu[i - 1], mu[i]
    swapped = list(mu)
    swapped[i - 1], swapped[i] = b, a
    corrections: list[tuple[int, tuple[int, ...]]] = []
    if a > b:
        rng, sign = range(b, a), 1
    elif a < b:
        rng, sign = range(a, b), -1
    else:
        rng, sign = range(0), 1
    for t in rng:
        vec = list(mu)
        vec[i - 1], vec[i] = a + b - t, t
        corrections.append((sign, tuple(vec)))
    return tuple(swapped), corrections


def _basis_mul_T(ctx: DahaContext, key: BasisKey, i: int) -> list:
    """(Q^k T_w Y^mu) T_i as a list of (key, coeff)."""
    k, window, mu = key
    w = AffinePermutation(window)
    swapped, corrections = _bl_exchange(ctx, mu, i)
    out = []
    # T_w T_i part
    if w.has_right_descent(i):
        out.append(((k, w.right_mul_s(i).window, swapped), ctx.R.qpow(2)))
        out.append(((k, window, swapped), ctx.R.qpow(2) - ctx.R.one))
    else:
        out.append(((k, w.right_mul_s(i).window, swapped), ctx.R.one))
    # correction part, pure Y words behind T_w
    factor = ctx.R.qpow(2) - ctx.R.one
    for sign, vec in corrections:
        out.append(((k, window, vec), factor if sign > 0 else -factor))
    return out


def _basis_mul_Q(ctx: DahaContext, key: BasisKey, exp: int) -> tuple[BasisKey, object]:
    k, window, mu = key
    w = AffinePermutation(window)
    if exp == 1:
        zeta = ctx.R.zetapow(-mu[0])
        new = (k + 1, w.rotate_down().window, mu[1:] + mu[:1])
    else:
        zeta = ctx.R.zetapow(mu[-1])
        new = (k - 1, w.rotate_up().window, mu[-1:] + mu[:-1])
    return new, zeta


def x_letter_word(ell: int, j: int, exp: int) -> list[Token]:
    """X_j^{+-1} as a word in T and Q letters (without the q-prefactor)."""
    assert 1 <= j <= ell
    if exp == 1:
        word = [("T", a, 1) for a in range(j - 1, 0, -1)]
        word.append(("Q", 0, 1))
        word.extend(("T", a, -1) for a in range(ell - 1, j - 1, -1))
    else:
        word = [("T", a, 1) for a in range(j, ell)]
        word.append(("Q", 0, -1))
        word.extend(("T", a, -1) for a in range(1, j))
    return word


def right_mul_T(e: DahaElement, i: int, exp: int = 1) -> DahaElement:
    ctx = e.ctx
    assert 1 <= i < ctx.ell, f"T index {i} out of range"
    assert exp in (1, -1)
    acc: dict = {}
    for key, coeff in e.support.items():
        k, window, mu = key
        cache_key = (window, mu, "T", i)
        hits = ctx._tok_cache.get(cache_key)
        if hits is None:
            hits = tuple(_basis_mul_T(ctx, (0, window, mu), i))
            ctx._tok_cache[cache_key] = hits
        for (dk, win2, mu2), c2 in hits:
            _accumulate(acc, (k + dk, win2, mu2), coeff * c2)
    out = DahaElement(ctx, acc)
    if exp == -1:
        # T_i^{-1} = q^{-2} T_i + (q^{-2} - 1): rewrite using the result
        # for +1 would recompute, so assemble directly instead
        return _combine(
            e.ctx,
            [(ctx.R.qpow(-2), out), (ctx.R.qpow(-2) - ctx.R.one, e)],
        )
    return out


def right_mul_Y(e: DahaElement, j: int, exp: int = 1) -> DahaElement:
    ctx = e.ctx
    assert 1 <= j <= ctx.ell, f"Y index {j} out of range"
    acc: dict = {}
    for (k, window, mu), coeff in e.support.items():
        mu2 = list(mu)
        mu2[j - 1] += exp
        acc[(k, window, tuple(mu2))] = coeff
    return DahaElement(ctx, acc)


def right_mul_Q(e: DahaElement, exp: int = 1) -> DahaElement:
    ctx = e.ctx
    assert exp in (1, -1)
    acc: dict = {}
    for key, coeff in e.support.items():
        new, zeta = _basis_mul_Q(ctx, key, exp)
        _accumulate(acc, new, coeff * zeta)
    return DahaElement(ctx, acc)


def right_mul_X(e: DahaElement, j: int, exp: int = 1) -> DahaElement:
    ctx = e.ctx
    assert 1 <= j <= ctx.ell, f"X index {j} out of range"
    assert exp in (1, -1)
    word = x_letter_word(ctx.ell, j, exp)
    out = e
    for kind, idx, sub in word:
        if kind == "T":
            out = right_mul_T(out, idx, sub)
        else:
            out = right_mul_Q(out, sub)
    prefactor = ctx.R.qpow(-2 * (j - 1) * exp)
    return out if j == 1 else out.scale(prefactor)


def apply_word(e: DahaElement, word: Iterable[Token]) -> DahaElement:
    for kind, idx, exp in word:
        if kind == "T":
            e = right_mul_T(e, idx, exp)
        elif kind == "Y":
            e = right_mul_Y(e, idx, exp)
        elif kind == "X":
            e = right_mul_X(e, idx, exp)
        elif kind == "Q":
            e = right_mul_Q(e, exp)
        else:
            raise ValueError(f"unknown token kind {kind!r}")
    return e


def _accumulate(acc: dict, key, coeff) -> None:
    cur = acc.get(key)
    if cur is None:
        if coeff:
            acc[key] = coeff
    else:
        cur = cur + coeff
        if cur:
            acc[key] = cur
        else:
            del acc[key]


def _combine(ctx: DahaContext, parts: list) -> DahaElement:
    acc: dict = {}
    for scalar, elem in parts:
        if not scalar:
            continue
        for key, coeff in elem.support.items():
            _accumulate(acc, key, scalar * coeff)
    return DahaElement(ctx, acc)


# ----------------------------------------------------------------------
# composite words


def composite(kind: str, **params) -> list[Token]:
    """Generator words for the named composite elements.

    T_range_up(i, j) is T_i T_{i+1} ... T_j; T_range_down(j, i) the
    reverse product; Qij(i, j) is X_i T_{i,j}; Pr(r, ell) the telescope
    of Qij factors whose c-th factor from the right is Q_{c, c+r-1}.
    """
    if kind == "T_range_up":
        i, j = params["i"], params["j"]
        assert 1 <= i <= j
        return [("T", a, 1) for a in range(i, j + 1)]
    if kind == "T_range_down":
        i, j = params["i"], params["j"]
        assert 1 <= i <= j
        return [("T", a, 1) for a in range(j, i - 1, -1)]
    if kind == "Qij":
        i, j = params["i"], params["j"]
        assert 1 <= i <= j
        return [("X", i, 1)] + [("T", a, 1) for a in range(i, j + 1)]
    if kind == "Pr":
        r, ell = params["r"], params["ell"]
        assert 1 <= r < ell
        word: list[Token] = []
        for c in range(ell - r, 0, -1):
            word.extend(composite("Qij", i=c, j=c + r - 1))
        return word
    raise ValueError(f"unknown composite kind {kind!r}")


def inverse_word(word: Iterable[Token]) -> list[Token]:
    return [(kind, idx, -exp) for kind, idx, exp in reversed(list(word))]


# ----------------------------------------------------------------------
# presentation checking


def default_battery(ctx: DahaContext) -> list[tuple[str, DahaElement]]:
    """Labeled test elements: 1, Q^{+-1}, short T_w, small Y^mu."""
    ell = ctx.ell
    out: list[tuple[str, DahaElement]] = [("1", ctx.one())]
    out.append(("Q", ctx.element([("Q", 0, 1)])))
    out.append(("Q^-1", ctx.element([("Q", 0, -1)])))
    idw = tuple(range(1, ell + 1))
    for w in affine_permutations_upto(ell, 2):
        if not w.is_identity():
            out.append((f"T{list(w.window)}", ctx.basis(0, w.window, (0,) * ell)))
    for mu in _small_mus(ell, 2):
        if any(mu):
            out.append((f"Y{list(mu)}", ctx.basis(0, idw, mu)))
    return out


def _small_mus(ell: int, bound: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix, left):
        if len(prefix) == ell:
            yield tuple(prefix)
            return
        for v in range(-left, left + 1):
            yield from rec(prefix + [v], left - abs(v))

    yield from rec([], bound)


def presentation_relations(ctx: DahaContext):
    """All checkable defining relations, as (name, lhs side, rhs side).

    A side is a list of (coefficient, word) pairs: evaluate on a test
    element w as sum of coeff * (w . word).
    """
    ell, R = ctx.ell, ctx.R
    one = R.one
    rels: list[tuple[str, list, list]] = []

    def rel(name, lhs, rhs):
        rels.append((name, lhs, rhs))

    for i in range(1, ell):
        rel(f"T{i} inverse", [(one, [("T", i, 1), ("T", i, -1)])], [(one, [])])
        rel(f"T{i} inverse'", [(one, [("T", i, -1), ("T", i, 1)])], [(one, [])])
        rel(
            f"T{i} quadratic",
            [(one, [("T", i, 1), ("T", i, 1)])],
            [(R.qpow(2) - one, [("T", i, 1)]), (R.qpow(2), [])],
        )
    for i in range(1, ell - 1):
        rel(
            f"braid T{i} T{i + 1}",
            [(one, [("T", i, 1), ("T", i + 1, 1), ("T", i, 1)])],
            [(one, [("T", i + 1, 1), ("T", i, 1), ("T", i + 1, 1)])],
        )
    for i in range(1, ell):
        for j in range(i + 2, ell):
            rel(
                f"T{i} T{j} commute",
                [(one, [("T", i, 1), ("T", j, 1)])],
                [(one, [("T", j, 1), ("T", i, 1)])],
            )
    for j in range(1, ell + 1):
        rel(f"X{j} inverse", [(one, [("X", j, 1), ("X", j, -1)])], [(one, [])])
        rel(f"Y{j} inverse", [(one, [("Y", j, 1), ("Y", j, -1)])], [(one, [])])
    for a in range(1, ell + 1):
        for b in range(a + 1, ell + 1):
            rel(
                f"X{a} X{b} commute",
                [(one, [("X", a, 1), ("X", b, 1)])],
                [(one, [("X", b, 1), ("X", a, 1)])],
            )
            rel(
                f"Y{a} Y{b} commute",
                [(one, [("Y", a, 1), ("Y", b, 1)])],
                [(one, [("Y", b, 1), ("Y", a, 1)])],
            )
    # X_0 Y_1 = zeta Y_1 X_0 with X_0 = X_1 ... X_l
    x0 = [("X", j, 1) for j in range(1, ell + 1)]
    rel(
        "X0 Y1 twist",
        [(one, x0 + [("Y", 1, 1)])],
        [(R.zetapow(1), [("Y", 1, 1)] + x0)],
    )
    for i in range(1, ell):
        rel(
            f"T{i} X{i} T{i} = q^2 X{i + 1}",
            [(one, [("T", i, 1), ("X", i, 1), ("T", i, 1)])],
            [(R.qpow(2), [("X", i + 1, 1)])],
        )
        rel(
            f"T{i}^-1 Y{i} T{i}^-1 = q^-2 Y{i + 1}",
            [(one, [("T", i, -1), ("Y", i, 1), ("T", i, -1)])],
            [(R.qpow(-2), [("Y", i + 1, 1)])],
        )
        for j in range(1, ell + 1):
            if j in (i, i + 1):
                continue
            rel(
                f"T{i} X{j} commute",
                [(one, [("T", i, 1), ("X", j, 1)])],
                [(one, [("X", j, 1), ("T", i, 1)])],
            )
            rel(
                f"T{i} Y{j} commute",
                [(one, [("T", i, 1), ("Y", j, 1)])],
                [(one, [("Y", j, 1), ("T", i, 1)])],
            )
    if ell >= 2:
        rel(
            "X2 Y1^-1 X2^-1 Y1 = q^-2 T1^2",
            [(one, [("X", 2, 1), ("Y", 1, -1), ("X", 2, -1), ("Y", 1, 1)])],
            [(R.qpow(-2), [("T", 1, 1), ("T", 1, 1)])],
        )
    # rotation presentation
    rel("Q inverse", [(one, [("Q", 0, 1), ("Q", 0, -1)])], [(one, [])])
    rel("Q inverse'", [(one, [("Q", 0, -1), ("Q", 0, 1)])], [(one, [])])
    for i in range(2, ell - 1):
        rel(
            f"Q T{i - 1} Q^-1 = T{i}",
            [(one, [("Q", 0, 1), ("T", i - 1, 1), ("Q", 0, -1)])],
            [(one, [("T", i, 1)])],
        )
    if ell >= 2:
        rel(
            "Q^2 T_{l-1} Q^-2 = T1",
            [
                (
                    one,
                    [("Q", 0, 1), ("Q", 0, 1), ("T", ell - 1, 1), ("Q", 0, -1), ("Q", 0, -1)],
                )
            ],
            [(one, [("T", 1, 1)])],
        )
    for i in range(1, ell):
        rel(
            f"Q Y{i} Q^-1 = Y{i + 1}",
            [(one, [("Q", 0, 1), ("Y", i, 1), ("Q", 0, -1)])],
            [(one, [("Y", i + 1, 1)])],
        )
    rel(
        "Q Y_l Q^-1 = zeta Y1",
        [(one, [("Q", 0, 1), ("Y", ell, 1), ("Q", 0, -1)])],
        [(R.zetapow(1), [("Y", 1, 1)])],
    )
    if ell >= 2:
        rel(
            "Q = X1 T_{1,l-1}",
            [(one, [("Q", 0, 1)])],
            [(one, [("X", 1, 1)] + composite("T_range_up", i=1, j=ell - 1))],
        )
    else:
        rel("Q = X1", [(one, [("Q", 0, 1)])], [(one, [("X", 1, 1)])])
    if ell >= 3:
        t0 = [("Q", 0, -1), ("T", 1, 1), ("Q", 0, 1)]
        for i in (1, ell - 1):
            rel(
                f"braid T0 T{i}",
                [(one, t0 + [("T", i, 1)] + t0)],
                [(one, [("T", i, 1)] + t0 + [("T", i, 1)])],
            )
        for i in range(2, ell - 1):
            rel(
                f"T0 T{i} commute",
                [(one, t0 + [("T", i, 1)])],
                [(one, [("T", i, 1)] + t0)],
            )
    # conjugation lemmas, in multiplied-out form (A Y_a = Y_{a+1} A etc.)
    for i in range(1, ell):
        for j in range(i, ell):
            qij = composite("Qij", i=i, j=j)
            for a in range(i, j + 1):
                rel(
                    f"Q_{i}{j} Y{a} = Y{a + 1} Q_{i}{j}",
                    [(one, qij + [("Y", a, 1)])],
                    [(one, [("Y", a + 1, 1)] + qij)],
                )
            for b in range(i + 1, j + 1):
                rel(
                    f"Q_{i}{j} T{b - 1} = T{b} Q_{i}{j}",
                    [(one, qij + [("T", b - 1, 1)])],
                    [(one, [("T", b, 1)] + qij)],
                )
    for r in range(1, ell):
        pr = composite("Pr", r=r, ell=ell)
        for a in range(r, ell):
            # a >= r and a + 1 <= l: P_r Y_{a+1} = zeta Y_{a-r+1} P_r
            rel(
                f"P{r} Y{a + 1} = zeta Y{a - r + 1} P{r}",
                [(one, pr + [("Y", a + 1, 1)])],
                [(R.zetapow(1), [("Y", a - r + 1, 1)] + pr)],
            )
        for b in range(r + 1, ell):
            rel(
                f"P{r} T{b} = T{b - r} P{r}",
                [(one, pr + [("T", b, 1)])],
                [(one, [("T", b - r, 1)] + pr)],
            )
    return rels


def eval_side(e: DahaElement, side: list) -> DahaElement:
    return _combine(e.ctx, [(coeff, apply_word(e, word)) for coeff, word in side])


def check_daha_presentation(
    ctx: DahaContext, battery: list | None = None, collect_all: bool = True
) -> list[dict]:
    """Evaluate every presentation relation on every battery element.

    Returns one result record per (relation, vector): a dict with the
    relation name, vector label, status, and residual rendering on
    failure.
    """
    if battery is None:
        battery = default_battery(ctx)
    results = []
    for name, lhs, rhs in presentation_relations(ctx):
        for label, vec in battery:
            diff = eval_side(vec, lhs) - eval_side(vec, rhs)
            record = {
                "relation": name,
                "vector": label,
                "status": "pass" if diff.is_zero() else "fail",
            }
            if diff:
                record["residual"] = diff.render()
                results.append(record)
                if not collect_all:
                    return results
            else:
                results.append(record)
    return results


def toshow_identities(ctx: DahaContext, battery: list) -> list[dict]:
    """w Q Y_{i-1} Q^{-1} = w Y_i (1 < i <= l) and the zeta wrap at i = 1."""
    results = []
    for label, vec in battery:
        for i in range(2, ctx.ell + 1):
            lhs = apply_word(vec, [("Q", 0, 1), ("Y", i - 1, 1), ("Q", 0, -1)])
            rhs = right_mul_Y(vec, i, 1)
            diff = lhs - rhs
            record = {
                "relation": f"w Q Y{i - 1} Q^-1 = w Y{i}",
                "vector": label,
                "status": "pass" if diff.is_zero() else "fail",
            }
            if diff:
                record["residual"] = diff.render()
            results.append(record)
        lhs = apply_word(vec, [("Q", 0, 1), ("Y", ctx.ell, 1), ("Q", 0, -1)])
        rhs = right_mul_Y(vec, 1, 1).scale(ctx.R.zetapow(1))
        diff = lhs - rhs
        record = {
            "relation": "w Q Y_l Q^-1 = zeta w Y1",
            "vector": label,
            "status": "pass" if diff.is_zero() else "fail",
        }
        if diff:
            record["residual"] = diff.render()
        results.append(record)
    return results
