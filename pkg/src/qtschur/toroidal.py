"""Balanced tensor vectors over the double affine Hecke algebra.

A vector here pairs a Hecke-algebra factor (the regular module, lazily
expanded in normal form) with a label tuple for an ell-fold tensor
power of the labeled super vector space, balanced over the finite
Hecke subalgebra: acting with the two-slot exchange operator on the
tensor side equals right multiplication by the matching T letter on
the algebra side.  Storage keeps nondecreasing label tuples only;
arbitrary tuples are rewritten by an insertion sort that pushes one T
letter into the algebra factor per descent.

Operators provided:

  * current modes at the finite nodes, as exact z^{-r} coefficients of
    delta/psi products evaluated at q1-shifted points Y_p * z, the
    algebra factor picking up a Laurent monomial in the commuting Y
    letters;
  * the Chevalley triple at the wrap-around node in three variants
    (which invertible letter multiplies the algebra factor: Y, Y with
    a d-shift, or X);
  * the label-rotation map, its powers and inverse, multiplying by
    inverse X letters on wrapped slots; the wrap-around-node currents
    are its conjugates of the node-1 currents with a mode-wise
    argument rescale;
  * rotation-identity batteries relating conjugated and index-shifted
    currents, and the diagonal bookkeeping (K-chain, weights).

Equality is decided per key through the parabolic symmetrizer of the
repeated-label blocks: a factor w kills the key exactly when w times
the block symmetrizer vanishes, so supports are pruned against that
test and vector equality reduces to emptiness of a difference.
"""

from __future__ import annotations

import itertools

from qtschur.hecke import (
    DahaContext,
    DahaElement,
    default_battery,
    right_mul_T,
    right_mul_X,
    right_mul_Y,
)
from qtschur.looprep import ChevalleyGen, TensorSpace, _chevalley_summands, tensor_leg_apply
from qtschur.scalar import delta_psi_mode, psi_product_mode
from qtschur.superdata import ParityData, koszul_sign, mu, node_parity, tau_power


class FunctorSpace:
    """Parity data, tensor length, coefficients, and the shared caches.

    Rotated variants (label shift) share the algebra context and a
    family registry so that conjugation round-trips land in the same
    space object.
    """

    def __init__(self, pd: ParityData, ell: int, coeffs, daha=None, _family=None):
        self.pd = pd
        self.ell = ell
        self.R = coeffs
        self.kappa = pd.kappa
        self.daha = DahaContext(ell, coeffs) if daha is None else daha
        self._legs = TensorSpace(pd, ell, coeffs)
        self._family = {pd.s: self} if _family is None else _family
        self._family.setdefault(pd.s, self)
        self._sort_cache: dict = {}
        self._sym_cache: dict = {}
        self._mode_cache: dict = {}

    def rotated(self, r: int) -> "FunctorSpace":
        pd2 = tau_power(self.pd, r)
        hit = self._family.get(pd2.s)
        if hit is None:
            hit = FunctorSpace(pd2, self.ell, self.R, self.daha, self._family)
        return hit

    def zero(self) -> "FunctorVector":
        return FunctorVector(self, {})

    def basis(self, labels, w: DahaElement | None = None) -> "FunctorVector":
        labels = tuple(labels)
        assert len(labels) == self.ell
        assert all(1 <= j <= self.kappa for j in labels), labels
        w = self.daha.one() if w is None else w
        acc: dict = {}
        _sorted_accumulate(self, acc, labels, w)
        return FunctorVector(self, _normalize(self, acc))

    def all_keys(self):
        return itertools.combinations_with_replacement(range(1, self.kappa + 1), self.ell)

    # -- descent rewriting ------------------------------------------------

    def sort_schedule(self, labels: tuple[int, ...]):
        """(T letters, extra coefficient, sorted labels) for one tuple.

        Leftmost descents first; each descent contributes one T letter
        and one factor sign * q^{-1}, where the sign is the parity
        product of the two exchanged labels.  Equal labels never move.
        """
        hit = self._sort_cache.get(labels)
        if hit is None:
            pd, R = self.pd, self.R
            lab = list(labels)
            word: list[int] = []
            sign = 1
            steps = 0
            a = 0
            while a < len(lab) - 1:
                if lab[a] > lab[a + 1]:
                    if pd.vector_parity(lab[a]) and pd.vector_parity(lab[a + 1]):
                        sign = -sign
                    word.append(a + 1)
                    lab[a], lab[a + 1] = lab[a + 1], lab[a]
                    steps += 1
                    a = max(a - 1, 0)
                else:
                    a += 1
            coeff = R.qpow(-steps)
            if sign < 0:
                coeff = -coeff
            hit = (tuple(word), coeff, tuple(lab))
            self._sort_cache[labels] = hit
        return hit

    # -- repeated-label symmetrizers --------------------------------------

    def symmetrizer(self, labels: tuple[int, ...]):
        """T-words with coefficients whose right action tests key death.

        Product over the blocks of equal labels; an even-label block of
        size k contributes the sum of all T_w over its local symmetric
        group, an odd-label block the alternating sum with (-q^{-2})
        per letter.  Blocks of size one contribute nothing.
        """
        hit = self._sym_cache.get(labels)
        if hit is None:
            R = self.R
            terms: list[tuple[tuple[int, ...], object]] = [((), R.one)]
            pos = 0
            for label, group in itertools.groupby(labels):
                size = len(list(group))
                if size > 1:
                    odd = self.pd.vector_parity(label)
                    block: list[tuple[tuple[int, ...], object]] = []
                    for local_word in _symmetric_group_words(size):
                        word = tuple(pos + a for a in local_word)
                        if odd:
                            coeff = R.qpow(-2 * len(word))
                            if len(word) % 2:
                                coeff = -coeff
                        else:
                            coeff = R.one
                        block.append((word, coeff))
                    terms = [
                        (w1 + w2, c1 * c2) for w1, c1 in terms for w2, c2 in block
                    ]
                pos += size
            hit = tuple(terms)
            self._sym_cache[labels] = hit
        return hit

    def key_is_dead(self, labels: tuple[int, ...], w: DahaElement) -> bool:
        """True when w tensor the key vanishes in the balanced product."""
        if w.is_zero():
            return True
        terms = self.symmetrizer(labels)
        if len(terms) == 1:
            return False
        acc = self.daha.zero()
        for word, coeff in terms:
            part = w
            for a in word:
                part = right_mul_T(part, a)
            acc = acc + part.scale(coeff)
        return acc.is_zero()


def _symmetric_group_words(k: int) -> list[tuple[int, ...]]:
    """One reduced word (local letters 1..k-1) per permutation of k."""
    ident = tuple(range(k))
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for a in range(k - 1):
                if p[a] < p[a + 1]:
                    p2 = p[:a] + (p[a + 1], p[a]) + p[a + 2 :]
                    if p2 not in words:
                        words[p2] = words[p] + (a + 1,)
                        nxt.append(p2)
        frontier = nxt
    return sorted(words.values())


def _sorted_accumulate(space: FunctorSpace, acc: dict, labels, w: DahaElement) -> None:
    if w.is_zero():
        return
    word, coeff, sl = space.sort_schedule(tuple(labels))
    for a in word:
        w = right_mul_T(w, a)
    w = w.scale(coeff)
    cur = acc.get(sl)
    acc[sl] = w if cur is None else cur + w


def _normalize(space: FunctorSpace, acc: dict) -> dict:
    return {
        labels: w
        for labels, w in acc.items()
        if not space.key_is_dead(labels, w)
    }


class FunctorVector:
    """Finite sum of (algebra factor) tensor (nondecreasing key)."""

    __slots__ = ("space", "support")

    def __init__(self, space: FunctorSpace, support: dict):
        self.space = space
        self.support = support

    def is_zero(self) -> bool:
        return not self.support

    def __bool__(self) -> bool:
        return bool(self.support)

    def __add__(self, other: "FunctorVector") -> "FunctorVector":
        assert self.space is other.space
        acc = dict(self.support)
        for labels, w in other.support.items():
            cur = acc.get(labels)
            acc[labels] = w if cur is None else cur + w
        return FunctorVector(self.space, _normalize(self.space, acc))

    def __neg__(self) -> "FunctorVector":
        return FunctorVector(self.space, {k: -w for k, w in self.support.items()})

    def __sub__(self, other: "FunctorVector") -> "FunctorVector":
        return self + (-other)

    def scale(self, coeff) -> "FunctorVector":
        if not coeff:
            return FunctorVector(self.space, {})
        return FunctorVector(
            self.space, {k: w.scale(coeff) for k, w in self.support.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctorVector):
            return NotImplemented
        assert self.space is other.space, "vectors live in different spaces"
        return (self - other).is_zero()

    def render(self, limit: int | None = None) -> str:
        if not self.support:
            return "0"
        parts = []
        for labels in sorted(self.support):
            parts.append(
                f"[{self.support[labels].render()}] (x) v({','.join(map(str, labels))})"
            )
        if limit is not None and len(parts) > limit:
            parts = parts[:limit] + [f"... ({len(self.support)} keys)"]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FunctorVector<{self.render(limit=4)}>"


def _right_mul_ymono(w: DahaElement, vec) -> DahaElement:
    if not any(vec):
        return w
    acc = {}
    for (k, window, mus), coeff in w.support.items():
        acc[(k, window, tuple(a + b for a, b in zip(mus, vec)))] = coeff
    return DahaElement(w.ctx, acc)


# ----------------------------------------------------------------------
# current modes at finite nodes


def _mode_terms(space: FunctorSpace, family: str, i: int, r: int, labels):
    """Summands of one mode on one nondecreasing key.

    Yields (target labels, sign, multiplier dict).  The multiplier maps
    Y-exponent vectors to coefficients; psi factors sit after the delta
    slot for the raising family and before it for the lowering one, at
    the slots carrying the two relevant labels.
    """
    pd, R, ell = space.pd, space.R, space.ell
    a1 = sum(1 for j in labels if j < i)
    a2 = a1 + sum(1 for j in labels if j == i)
    a3 = a2 + sum(1 for j in labels if j == i + 1)
    mu_i = mu(pd, i)
    scale = lambda e: R.q1pow(mu_i * e)
    if family == "E":
        for ridx in range(a2 + 1, a3 + 1):
            slots = [(p - 1, pd.sign(i + 1)) for p in range(ridx + 1, a3 + 1)]
            mult = delta_psi_mode(R, ell, r, "+", ridx - 1, slots, scale, True)
            out = labels[: ridx - 1] + (i,) + labels[ridx:]
            yield out, koszul_sign(pd, i, ridx, labels), mult
    elif family == "F":
        si = pd.sign(i)
        for ridx in range(a1 + 1, a2 + 1):
            slots = [(p - 1, -si) for p in range(a1 + 1, ridx)]
            mult = delta_psi_mode(R, ell, r, "-", ridx - 1, slots, scale, True)
            out = labels[: ridx - 1] + (i + 1,) + labels[ridx:]
            yield out, si * koszul_sign(pd, i, ridx, labels), mult
    elif family in ("K+", "K-"):
        slots = [(p, -pd.sign(i)) for p in range(a1, a2)] + [
            (p, pd.sign(i + 1)) for p in range(a2, a3)
        ]
        mult = psi_product_mode(R, ell, r, family[1], slots, scale, True)
        yield labels, 1, mult
    else:
        raise ValueError(f"unknown mode family {family!r}")


def vertical_mode_apply(family: str, i: int, r: int, fv: FunctorVector) -> FunctorVector:
    """Exact z^{-r} mode of the labeled current at a finite node."""
    space = fv.space
    assert 1 <= i < space.kappa, f"node {i} not a finite node"
    acc: dict = {}
    for labels, w in fv.support.items():
        key = (family, i, r, labels)
        terms = space._mode_cache.get(key)
        if terms is None:
            terms = tuple(_mode_terms(space, family, i, r, labels))
            space._mode_cache[key] = terms
        for labels2, sign, mult in terms:
            for vec, coeff in mult.items():
                w2 = _right_mul_ymono(w, vec).scale(coeff if sign > 0 else -coeff)
                _sorted_accumulate(space, acc, labels2, w2)
    return FunctorVector(space, _normalize(space, acc))


# ----------------------------------------------------------------------
# Chevalley operators (all nodes; three wrap-around variants)


def functor_chevalley_apply(
    kind: str, node: int, fv: FunctorVector, variant: str = "affine"
) -> FunctorVector:
    """Chevalley generator acting through the tensor legs.

    Finite nodes act on the label tuple alone.  The wrap-around node
    additionally multiplies the algebra factor by an invertible letter
    depending on the variant: "affine" uses Y_j^{-(nu shift)},
    "vertical" the same with a d^{-(nu shift)} scalar, "horizontal"
    X_j^{+(nu shift)}.
    """
    assert variant in ("affine", "vertical", "horizontal"), variant
    space = fv.space
    ts = space._legs
    acc: dict = {}
    summands = list(_chevalley_summands(ts, ChevalleyGen(kind, node)))
    for labels, w in fv.support.items():
        for legs, shift_slot, shift, extra in summands:
            hit = tensor_leg_apply(ts, legs, labels)
            if hit is None:
                continue
            labels2, c = hit
            w2 = w
            if shift_slot is not None:
                j = shift_slot + 1
                if variant == "horizontal":
                    w2 = right_mul_X(w2, j, shift)
                else:
                    w2 = right_mul_Y(w2, j, -shift)
                    if variant == "vertical":
                        c = c * space.R.dpow(-shift)
            _sorted_accumulate(space, acc, labels2, w2.scale(c * extra))
    return FunctorVector(space, _normalize(space, acc))


def hecke_exchange_terms(space: FunctorSpace, i: int, labels):
    """Two-slot exchange on adjacent tensor slots, as (labels, coeff) terms."""
    pd, R = space.pd, space.R
    assert 1 <= i < space.ell
    a, b = labels[i - 1], labels[i]
    if a == b:
        sa = pd.sign(a)
        return [(tuple(labels), R.rational(sa) * R.qpow(1 + sa))]
    swapped = tuple(labels[: i - 1]) + (b, a) + tuple(labels[i + 1 :])
    sgn = -1 if pd.vector_parity(a) and pd.vector_parity(b) else 1
    out = [(swapped, R.rational(sgn) * R.qpow(1))]
    if a > b:
        out.append((tuple(labels), R.qpow(2) - R.one))
    return out


# ----------------------------------------------------------------------
# label rotation


def psi_raw(space: FunctorSpace, w: DahaElement, labels) -> FunctorVector:
    """Rotation applied to one (factor, arbitrary key) pair.

    Wrapped slots (top label) multiply the factor by the inverse X
    letter, all labels shift up by one cyclically, and the result is
    re-sorted in the rotated space.
    """
    kappa = space.kappa
    target = space.rotated(1)
    w2 = w
    for a, j in enumerate(labels, 1):
        if j == kappa:
            w2 = right_mul_X(w2, a, -1)
    labels2 = tuple(j % kappa + 1 for j in labels)
    acc: dict = {}
    _sorted_accumulate(target, acc, labels2, w2)
    return FunctorVector(target, _normalize(target, acc))


def psi_apply(fv: FunctorVector) -> FunctorVector:
    out = fv.space.rotated(1).zero()
    for labels, w in fv.support.items():
        out = out + psi_raw(fv.space, w, labels)
    return out


def psi_inverse(fv: FunctorVector) -> FunctorVector:
    """Inverse rotation: shift labels down, restore X letters on wraps."""
    space = fv.space
    target = space.rotated(-1)
    kappa = space.kappa
    acc: dict = {}
    for labels, w in fv.support.items():
        w2 = w
        for a, j in enumerate(labels, 1):
            if j == 1:
                w2 = right_mul_X(w2, a, 1)
        labels2 = tuple((j - 2) % kappa + 1 for j in labels)
        _sorted_accumulate(target, acc, labels2, w2)
    return FunctorVector(target, _normalize(target, acc))


def psi_power(fv: FunctorVector, r: int) -> FunctorVector:
    out = fv
    for _ in range(abs(r)):
        out = psi_apply(out) if r > 0 else psi_inverse(out)
    return out


# ----------------------------------------------------------------------
# wrap-around-node currents and the full node set


def zero_current_apply(family: str, r: int, fv: FunctorVector) -> FunctorVector:
    """Mode r of the wrap-around current: rotate, act at node 1, rotate back.

    The argument rescale z -> q1^{-s_kappa} z multiplies mode r by
    q1^{+ s_kappa * r}.
    """
    space = fv.space
    out = psi_inverse(vertical_mode_apply(family, 1, r, psi_apply(fv)))
    return out.scale(space.R.q1pow(space.pd.sign(space.kappa) * r))


def toroidal_mode_apply(family: str, i: int, r: int, fv: FunctorVector) -> FunctorVector:
    if i % fv.space.kappa == 0:
        return zero_current_apply(family, r, fv)
    return vertical_mode_apply(family, i, r, fv)


def k_chain_apply(fv: FunctorVector) -> FunctorVector:
    """Product of the diagonal generators over every node, node 0 last."""
    out = fv
    for i in range(fv.space.kappa - 1, 0, -1):
        out = vertical_mode_apply("K+", i, 0, out)
    return zero_current_apply("K+", 0, out)


def weight_exponent(pd: ParityData, labels, i: int) -> int:
    """Diagonal eigenvalue exponent s_i l_i - s_{i+1} l_{i+1} on one key."""
    kappa = pd.kappa
    node = i % kappa
    lo = kappa if node == 0 else node
    hi = node + 1
    li = sum(1 for j in labels if j == lo)
    li1 = sum(1 for j in labels if j == hi)
    return pd.sign(lo) * li - pd.sign(hi) * li1


# ----------------------------------------------------------------------
# batteries and rotation identities


def functor_battery(space: FunctorSpace):
    """Labeled test vectors: the algebra battery crossed with all keys."""
    out = []
    for wname, w in default_battery(space.daha):
        for labels in space.all_keys():
            name = f"{wname}|{','.join(map(str, labels))}"
            out.append((name, space.basis(labels, w)))
    return out


def rotation_identity_check(space: FunctorSpace, bound: int, battery=None) -> list[dict]:
    """Conjugation identities for every current family, mode by mode.

    Single-step: rotating once turns the node-i current into the
    node-(i-1) current with modes rescaled by q1^{-s_kappa r}, for
    1 < i < kappa.  Double-step wrap: rotating twice turns the node-1
    current (modes pre-scaled by the inverse central-letter exponent)
    into the top-node current rescaled by q1^{-r(n-m+s_{kappa-1}+s_kappa)}.
    The wrap identity for the lowering family lands on the lowering
    current at the top node.
    """
    pd, R = space.pd, space.R
    kappa = pd.kappa
    if battery is None:
        battery = functor_battery(space)
    wrap_exp = (pd.n - pd.m) + pd.sign(kappa - 1) + pd.sign(kappa)
    rows = []
    families = ["E", "F", "K+", "K-"]
    for fam in families:
        for r in range(-bound, bound + 1):
            if fam == "K+" and r < 0:
                continue
            if fam == "K-" and r > 0:
                continue
            for i in range(2, kappa):
                rel = f"rot-{fam}"
                for vname, u in battery:
                    lhs = psi_inverse(vertical_mode_apply(fam, i, r, psi_apply(u)))
                    rhs = vertical_mode_apply(fam, i - 1, r, u).scale(
                        R.q1pow(-pd.sign(kappa) * r)
                    )
                    rows.append(
                        _row(rel, [i, i - 1], [r], vname, lhs, rhs)
                    )
            rel = f"wrap-{fam}" + ("-as-F" if fam == "F" else "")
            for vname, u in battery:
                lhs = psi_power(
                    vertical_mode_apply(fam, 1, r, psi_power(u, 2)), -2
                ).scale(R.zetapow(-r))
                rhs = vertical_mode_apply(fam, kappa - 1, r, u).scale(
                    R.q1pow(-wrap_exp * r)
                )
                rows.append(_row(rel, [1, kappa - 1], [r], vname, lhs, rhs))
    return rows


def _row(relation, nodes, modes, vector, lhs, rhs) -> dict:
    diff = lhs - rhs
    row = {
        "relation": relation,
        "nodes": list(nodes),
        "modes": list(modes),
        "vector": vector,
        "status": "pass" if diff.is_zero() else "fail",
    }
    if row["status"] == "fail":
        row["residual"] = diff.render(limit=5)
    return row


def psi_balance_check(space: FunctorSpace, battery=None) -> list[dict]:
    """Rotation respects the balancing relation, case by case.

    For every label tuple (arbitrary order), adjacent slot i, and
    battery element w, rotating w T_i tensor the key must agree with
    rotating w tensor the exchanged key.  Rows are tagged by which of
    the two exchanged labels wrap around (pick up an X letter), since
    each subcase exercises a different commutation in the algebra.
    """
    kappa = space.kappa
    if battery is None:
        battery = default_battery(space.daha)
    rows = []
    for labels in itertools.product(range(1, kappa + 1), repeat=space.ell):
        for i in range(1, space.ell):
            a, b = labels[i - 1], labels[i]
            case = ("wrap" if a == kappa else "plain") + "-" + (
                "wrap" if b == kappa else "plain"
            )
            for wname, w in battery:
                lhs = psi_raw(space, right_mul_T(w, i), labels)
                rhs = space.rotated(1).zero()
                for labels2, coeff in hecke_exchange_terms(space, i, labels):
                    rhs = rhs + psi_raw(space, w.scale(coeff), labels2)
                vector = f"{wname}|{','.join(map(str, labels))}"
                rows.append(_row(f"psi-balance-{case}", [i], [], vector, lhs, rhs))
    return rows


def dump_mode_action(space: FunctorSpace, family: str, node: int, r: int) -> list[dict]:
    """Action table of one mode on the standard battery, for reports."""
    out = []
    for vname, u in functor_battery(space):
        image = toroidal_mode_apply(family, node, r, u)
        out.append(
            {
                "op": family,
                "node": node,
                "mode": r,
                "input": vname,
                "output": [
                    [list(labels), w.render()]
                    for labels, w in sorted(image.support.items())
                ],
            }
        )
    return out


def dump_psi_action(space: FunctorSpace) -> list[dict]:
    out = []
    for vname, u in functor_battery(space):
        image = psi_apply(u)
        out.append(
            {
                "op": "psi",
                "input": vname,
                "output": [
                    [list(labels), w.render()]
                    for labels, w in sorted(image.support.items())
                ],
            }
        )
    return out
