"""Parabolic quantum double Schubert polynomials and their quantization.

A composition (n_1, ..., n_k) of n fixes the block structure: D is the n x n
matrix with x_i diagonal, -1 superdiagonal and one q_j entry per inner block
boundary, D_j its upper-left N_j x N_j corner, and G_i^j the coefficients of
det(D_j - t*Id).  The member attached to w in W^P is the signed divided
difference chain for w(w_0^P)^{-1} applied to the product of det(D_j - a_i*Id)
over the staircase of index windows.  Appending singleton blocks (with fixed
points of w to match) never changes the member, which is what makes the
infinite-composition limit and the basis expansion over it well defined.

The parabolic quantization map theta_P rewrites a W_P-invariant of the x
variables over the basis g_lam = prod_j prod_i e_{lam^(j)_i}(x_1..x_{N_j}),
indexed by tuples of partitions lam^(j) inside the n_{j+1} x N_j box, and
replaces each g factor by the matching G.
"""

from __future__ import annotations

from functools import cache

from .poly import (
    Polynomial,
    SymbolicMatrix,
    a,
    char_poly_coeffs,
    elementary_symmetric,
    q,
    x,
)
from .quantization import EchelonSlice
from .schubert import (
    divided_difference,
    schubert_polynomial,
    x_lead_vector,
    x_to_minus_a,
    _x_coefficient,
    _x_key,
)
from .weyl import (
    ParabolicContext,
    Permutation,
    compose,
    extend,
    identity,
    inverse,
    length,
    perm_from_code,
    reduced_word,
    simple,
    trim,
    weak_order_ideal,
)

__all__ = [
    "d_matrix",
    "G_polynomial",
    "parabolic_q_double_schubert",
    "partition_tuples",
    "g_tuple",
    "G_tuple",
    "theta_P",
    "parabolic_cauchy_rhs",
    "stability_trim",
    "expand_in_parabolic_basis",
]


def d_matrix(ctx: ParabolicContext) -> SymbolicMatrix:
    """The n x n matrix with x_i diagonal, -1 superdiagonal, and entry
    (N_{j+1}, N_{j-1}+1) equal to -(-1)^(n_{j+1}) q_j for each inner node.

    >>> m = d_matrix(ParabolicContext((1, 1, 1)))
    >>> m.entries[(2, 1)] == q(1) and m.entries[(3, 2)] == q(2)
    True
    """
    n = ctx.n
    entries = {}
    for i in range(1, n + 1):
        entries[(i, i)] = x(i)
    for i in range(1, n):
        entries[(i, i + 1)] = Polynomial.const(-1)
    for j in range(1, ctx.k):
        row = ctx.partial_sums[j]
        col = (ctx.partial_sums[j - 2] if j >= 2 else 0) + 1
        sign = 1 if ctx.composition[j] % 2 else -1
        entries[(row, col)] = q(j) * sign
    return SymbolicMatrix(n, entries)


@cache
def _d_char_coeffs(composition: tuple, j: int) -> list:
    ctx = ParabolicContext(composition)
    size = ctx.partial_sums[j - 1]
    full = d_matrix(ctx).entries
    sub = {pos: v for pos, v in full.items() if pos[0] <= size and pos[1] <= size}
    return char_poly_coeffs(SymbolicMatrix(size, sub))


def G_polynomial(ctx: ParabolicContext, i: int, j: int) -> Polynomial:
    """G_i^j, with det(D_j - t*Id) = sum_i (-t)^(N_j - i) G_i^j.

    >>> print(G_polynomial(ParabolicContext((2, 1, 3)), 3, 2))
    x1*x2*x3 + q1
    """
    if not 1 <= j <= ctx.k:
        raise ValueError(f"level out of range: j={j} for k={ctx.k}")
    if not 0 <= i <= ctx.partial_sums[j - 1]:
        raise ValueError(f"degree out of range: i={i} for N_j={ctx.partial_sums[j-1]}")
    return _d_char_coeffs(ctx.composition, j)[i]


def _det_d_at(ctx: ParabolicContext, j: int, value: Polynomial) -> Polynomial:
    coeffs = _d_char_coeffs(ctx.composition, j)
    size = ctx.partial_sums[j - 1]
    total = Polynomial.zero()
    for i, g in enumerate(coeffs):
        total = total + g * ((-value) ** (size - i))
    return total


@cache
def _p_top(composition: tuple) -> Polynomial:
    ctx = ParabolicContext(composition)
    n = ctx.n
    total = Polynomial.const(1)
    for j in range(1, ctx.k):
        lo = n - ctx.partial_sums[j] + 1
        hi = n - ctx.partial_sums[j - 1]
        for i in range(lo, hi + 1):
            total = total * _det_d_at(ctx, j, a(i))
    return total


@cache
def _p_dd(composition: tuple, v: Permutation) -> Polynomial:
    if v == identity:
        return _p_top(composition)
    i = reduced_word(v)[0]
    return divided_difference(i, _p_dd(composition, compose(simple(i), v)))


def parabolic_q_double_schubert(ctx: ParabolicContext, w) -> Polynomial:
    """The member attached to w in W^P for the given composition.

    >>> ctx = ParabolicContext((2, 1))
    >>> print(parabolic_q_double_schubert(ctx, ()))
    1
    """
    w = trim(w)
    if not ctx.is_min_rep(w):
        raise ValueError(f"{list(extend(w, ctx.n))} is not minimal in its coset")
    v = compose(w, inverse(ctx.w0_p()))
    base = _p_dd(ctx.composition, v)
    return base if length(v) % 2 == 0 else -base


# -- stability -----------------------------------------------------------------


def stability_trim(ctx: ParabolicContext, w):
    """Drop the last block from ctx, given that w fixes all of its positions.

    The member polynomial is unchanged.  Trimming the only block yields the
    empty context, reported as None; the member attached to it is the
    constant 1.
    """
    w = trim(w)
    boundary = ctx.partial_sums[-2] if ctx.k > 1 else 0
    line = extend(w, ctx.n)
    moved = [r for r in range(boundary + 1, ctx.n + 1) if line[r - 1] != r]
    if moved:
        raise ValueError(f"w moves positions {moved} in the last block")
    if ctx.k == 1:
        return None, w
    return ParabolicContext(ctx.composition[:-1]), w


# -- partition tuples and the g / G bases ---------------------------------------


def _partitions_in_box(total: int, rows: int, cols: int):
    """Partitions of `total` with at most `rows` parts, each at most `cols`."""
    out = []

    def go(remaining, limit, slots, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if slots == 0:
            return
        for part in range(min(limit, remaining), 0, -1):
            prefix.append(part)
            go(remaining - part, part, slots - 1, prefix)
            prefix.pop()

    go(total, cols, rows, [])
    return out


def partition_tuples(ctx: ParabolicContext, degree: int, levels: int):
    """All tuples (lam^(1), ..., lam^(levels)) with total size `degree` where
    lam^(j) fits in the n_{j+1} x N_j box; trailing empty partitions trimmed.

    `ctx` must already be extended to cover `levels` + 1 blocks.
    """
    if levels + 1 > ctx.k:
        raise ValueError(f"need {levels + 1} blocks, context has {ctx.k}")
    out = []

    def go(j, remaining, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if j > levels:
            return
        rows = ctx.composition[j]
        cols = ctx.partial_sums[j - 1]
        for size in range(0, remaining + 1):
            for lam in _partitions_in_box(size, rows, cols) if size else [()]:
                prefix.append(lam)
                go(j + 1, remaining - size, prefix)
                prefix.pop()

    go(1, degree, [])
    return [_strip_tuple(t) for t in out]


def _strip_tuple(tup) -> tuple:
    tup = list(tup)
    while tup and not tup[-1]:
        tup.pop()
    return tuple(tup)


def _validated_tuple(ctx: ParabolicContext, tup) -> tuple:
    tup = _strip_tuple(tuple(tuple(lam) for lam in tup))
    if len(tup) + 1 > ctx.k:
        raise ValueError(f"tuple has {len(tup)} levels, context only {ctx.k - 1}")
    for j, lam in enumerate(tup, start=1):
        if any(lam[t] < lam[t + 1] for t in range(len(lam) - 1)) or (
            lam and lam[-1] < 1
        ):
            raise ValueError(f"level {j} entry is not a partition: {lam}")
        if len(lam) > ctx.composition[j] or (lam and lam[0] > ctx.partial_sums[j - 1]):
            raise ValueError(f"level {j} partition {lam} exceeds its box")
    return tup


def g_tuple(ctx: ParabolicContext, tup) -> Polynomial:
    """g_lam = prod_j prod_i e_{lam^(j)_i}(x_1, ..., x_{N_j})."""
    total = Polynomial.const(1)
    for j, lam in enumerate(_validated_tuple(ctx, tup), start=1):
        nj = ctx.partial_sums[j - 1]
        for part in lam:
            total = total * elementary_symmetric(
                part, [("x", t) for t in range(1, nj + 1)]
            )
    return total


def G_tuple(ctx: ParabolicContext, tup) -> Polynomial:
    """G_lam, the same product with each factor quantized to G_{part}^j."""
    total = Polynomial.const(1)
    for j, lam in enumerate(_validated_tuple(ctx, tup), start=1):
        for part in lam:
            total = total * G_polynomial(ctx, part, j)
    return total


def _tuple_lead_key(ctx: ParabolicContext, tup, width: int) -> tuple:
    vec = [0] * width
    for j, lam in enumerate(tup, start=1):
        nj = ctx.partial_sums[j - 1]
        for part in lam:
            for t in range(nj - part, nj):
                vec[t] += 1
    return tuple(reversed(vec))


@cache
def _g_slice(composition: tuple, degree: int) -> EchelonSlice:
    base = ParabolicContext(composition)
    ctx = base.extend(degree + 1)
    levels = base.k + degree
    width = ctx.partial_sums[levels - 1]
    pending = sorted(
        (_tuple_lead_key(ctx, tup, width), tup)
        for tup in partition_tuples(ctx, degree, levels)
    )
    return EchelonSlice(width, pending, lambda tup: g_tuple(ctx, tup))


def _invariant_decompose(ctx: ParabolicContext, f: Polynomial) -> dict:
    by_degree: dict[int, dict] = {}
    for mono, c in f.terms.items():
        d = sum(e for _, e in mono)
        by_degree.setdefault(d, {})[mono] = c
    out: dict = {}
    for d, terms in by_degree.items():
        if d == 0:
            out[()] = out.get((), 0) + terms[()]
            continue
        coords = _g_slice(ctx.composition, d).decompose(terms)
        for tup, c in coords.items():
            out[tup] = out.get(tup, 0) + c
    return {tup: c for tup, c in out.items() if c}


def theta_P(ctx: ParabolicContext, f: Polynomial) -> Polynomial:
    """The parabolic quantization map: g_lam -> G_lam, Z[a, q]-linearly.

    The x part of the input must be W_P-invariant; this is checked on the
    generators of W_P.
    """
    for i in ctx.wp_generators():
        if f.swap_indices("x", i, i + 1) != f:
            raise ValueError(f"input is not invariant under the x swap at {i}")
    total = Polynomial.zero()
    for aq_mono, x_part in f.split("aq").items():
        carrier = Polynomial({aq_mono: 1})
        for tup, c in _invariant_decompose(ctx, x_part).items():
            degree = sum(sum(lam) for lam in tup)
            big = ctx.extend(degree + 1)
            total = total + carrier * (G_tuple(big, tup) * c)
    return total


# -- Cauchy formula --------------------------------------------------------------


def parabolic_cauchy_rhs(ctx: ParabolicContext, w) -> Polynomial:
    """Sum of Schub_{v w^{-1}}(-a) times the a -> 0 member of v, over the left
    weak order ideal of w; equals the member attached to w."""
    w = trim(w)
    if not ctx.is_min_rep(w):
        raise ValueError(f"{list(extend(w, ctx.n))} is not minimal in its coset")
    total = Polynomial.zero()
    for v in weak_order_ideal(w):
        left = x_to_minus_a(schubert_polynomial(compose(v, inverse(w)), "classical"))
        right = parabolic_q_double_schubert(ctx, v).zero_out("a")
        total = total + left * right
    return total


# -- basis expansion over the extended contexts ----------------------------------


def _context_for(ctx: ParabolicContext, w: Permutation) -> ParabolicContext:
    return ctx if len(w) <= ctx.n else ctx.extend(len(w) - ctx.n)


def expand_in_parabolic_basis(f: Polynomial, ctx: ParabolicContext) -> dict:
    """Expand f over the members of ctx and its singleton-block extensions.

    Returns {w: coefficient Polynomial in a, q}.  Every extracted leading
    code must belong to a minimal coset representative; anything else means
    f was not in the span and raises.
    """
    result: dict = {}
    previous = None
    rounds = 0
    bound = 4 * (len(f.terms) + 4) * (f.total_degree() + 4) ** 2
    while f.terms:
        rounds += 1
        if rounds > bound:
            raise RuntimeError("expansion failed to terminate; order assumption violated")
        vec = x_lead_vector(f)
        if previous is not None:
            width = max(f.max_index("x"), len(vec), len(previous))
            if not _x_key(vec, width) < _x_key(previous, width):
                raise RuntimeError(
                    "expansion leading term did not decrease; order assumption violated"
                )
        previous = vec
        w = perm_from_code(vec)
        sub = _context_for(ctx, w)
        if not sub.is_min_rep(w):
            raise ValueError(
                f"leading code {list(vec)} is not the code of a minimal "
                f"representative; input outside the parabolic span"
            )
        coeff = _x_coefficient(f, vec)
        result[w] = result.get(w, Polynomial.zero()) + coeff
        f = f - coeff * parabolic_q_double_schubert(sub, w)
    return {w: c for w, c in result.items() if c}


if __name__ == "__main__":
    import doctest

    doctest.testmod()
