"""Permutation and root combinatorics for the symmetric groups S_n inside S_oo.

A permutation is a trimmed one-line tuple: trailing fixed points are removed,
so every element of S_oo = union of the S_n has exactly one representative
and the identity is the empty tuple.  Products compose as functions,
(u*v)(i) = u(v(i)).

>>> compose(simple(2), simple(1))
(3, 1, 2)
>>> length((3, 1, 2))
2
>>> code((3, 1, 2))
(2,)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poly import Polynomial

__all__ = [
    "Permutation",
    "Root",
    "ParabolicContext",
    "perm",
    "identity",
    "apply_to",
    "extend",
    "compose",
    "inverse",
    "length",
    "code",
    "perm_from_code",
    "simple",
    "longest_element",
    "reduced_word",
    "perm_from_word",
    "reflect",
    "is_cover",
    "bruhat_leq",
    "left_weak_leq",
    "weak_order_ideal",
    "all_perms",
    "cycle",
    "pair_omega",
    "pair_two_rho",
    "coroot_vector",
    "q_coroot",
    "eta_p",
    "parabolic_decompose",
    "parse_permutation",
    "format_permutation",
]

Permutation = tuple[int, ...]
Root = tuple[int, int]

identity: Permutation = ()


def trim(seq) -> Permutation:
    """Drop trailing fixed points to reach the canonical form."""
    w = list(seq)
    while w and w[-1] == len(w):
        w.pop()
    return tuple(w)


def perm(seq) -> Permutation:
    """Validate a one-line sequence and return its canonical trimmed form.

    >>> perm([1, 2, 3])
    ()
    >>> perm([2, 1, 3])
    (2, 1)
    """
    w = tuple(seq)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation of 1..{len(w)}: {list(w)}")
    return trim(w)


def apply_to(w: Permutation, i: int) -> int:
    """w(i), with every index beyond the support fixed."""
    return w[i - 1] if i <= len(w) else i


def extend(w: Permutation, n: int) -> tuple:
    """One-line form of length at least n, padding with fixed points."""
    return w + tuple(range(len(w) + 1, n + 1))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u comp v)(i) = u(v(i))."""
    n = max(len(u), len(v))
    return trim(tuple(apply_to(u, apply_to(v, i)) for i in range(1, n + 1)))


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        out[wi - 1] = i
    return tuple(out)


def length(w: Permutation) -> int:
    """Coxeter length = inversion count.

    >>> length((3, 2, 1))
    3
    """
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def code(w: Permutation) -> tuple:
    """Lehmer code c_i = #{j > i : w(j) < w(i)}, trailing zeros trimmed.

    >>> code((1, 3, 2))
    (0, 1)
    """
    c = [sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w))]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def perm_from_code(c) -> Permutation:
    """The unique w with code(w) = c.

    >>> perm_from_code((2,))
    (3, 1, 2)
    >>> code(perm_from_code((0, 3, 1)))
    (0, 3, 1)
    """
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    if any(ci < 0 for ci in c):
        raise ValueError("code entries must be nonnegative")
    if not c:
        return identity
    pool = list(range(1, len(c) + max(c) + 1))
    out = []
    for ci in c:
        out.append(pool.pop(ci))
    return trim(out + pool)


def simple(i: int) -> Permutation:
    """The simple transposition s_i."""
    if i < 1:
        raise ValueError("simple reflection index must be >= 1")
    return tuple(range(1, i)) + (i + 1, i)


def longest_element(n: int) -> Permutation:
    """w_0 of S_n, the order-reversing permutation."""
    return trim(range(n, 0, -1))


def reduced_word(w: Permutation) -> tuple:
    """Lexicographically smallest reduced word; multiplies back to w.

    >>> reduced_word((3, 1, 2))
    (2, 1)
    """
    word = []
    w = trim(w)
    while w:
        winv = inverse(w)
        i = next(i for i in range(1, len(w)) if winv[i - 1] > winv[i])
        word.append(i)
        w = compose(simple(i), w)
    return tuple(word)


def perm_from_word(word) -> Permutation:
    out = identity
    for i in word:
        out = compose(out, simple(i))
    return out


def reflect(w: Permutation, alpha: Root) -> Permutation:
    """w*s_alpha for alpha = alpha_{rs}; swaps the values at positions r, s."""
    r, s = alpha
    if not 1 <= r < s:
        raise ValueError(f"not a positive root: {alpha}")
    line = list(extend(w, s))
    line[r - 1], line[s - 1] = line[s - 1], line[r - 1]
    return trim(line)


def is_cover(w: Permutation, alpha: Root) -> bool:
    """True iff w*s_alpha covers w in Bruhat order (length goes up by 1)."""
    r, s = alpha
    wr, ws = apply_to(w, r), apply_to(w, s)
    if wr > ws:
        return False
    return not any(wr < apply_to(w, t) < ws for t in range(r + 1, s))


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order by the rank-matrix (sorted prefix) criterion."""
    n = max(len(u), len(w))
    uu, ww = extend(u, n), extend(w, n)
    for i in range(1, n):
        for us, vs in zip(sorted(uu[:i]), sorted(ww[:i])):
            if us > vs:
                return False
    return True


def left_weak_leq(v: Permutation, w: Permutation) -> bool:
    """True iff ell(w v^-1) + ell(v) = ell(w)."""
    return length(compose(w, inverse(v))) + length(v) == length(w)


def weak_order_ideal(w: Permutation) -> list:
    """All v with v left-weak-below w, in length-increasing order."""
    n = max(len(w), 1)
    ideal = [v for v in all_perms(n) if left_weak_leq(v, w)]
    ideal.sort(key=lambda v: (length(v), v))
    return ideal


def all_perms(n: int) -> list:
    """Canonical (trimmed) forms of every element of S_n."""
    return [trim(p) for p in itertools.permutations(range(1, n + 1))]


def cycle(i: int, p: int) -> Permutation:
    """The cycle c_{i,p} = s_{p+1-i} ... s_{p-1} s_p, with 1 <= i <= p."""
    if not 1 <= i <= p:
        raise ValueError(f"cycle needs 1 <= i <= p, got i={i}, p={p}")
    return perm_from_word(range(p + 1 - i, p + 1))


# -- pairings and coroots -----------------------------------------------------


def pair_omega(alpha: Root, i: int) -> int:
    """<alpha_{rs}^vee, omega_i>: 1 if r <= i < s else 0."""
    r, s = alpha
    return 1 if r <= i < s else 0


def pair_two_rho(alpha: Root) -> int:
    """<alpha_{rs}^vee, 2 rho> = 2(s - r) for rho = (0, -1, -2, ...)."""
    r, s = alpha
    return 2 * (s - r)


def coroot_vector(alpha: Root) -> dict:
    """alpha_{rs}^vee = sum of alpha_t^vee over r <= t < s, as {t: 1}."""
    r, s = alpha
    return {t: 1 for t in range(r, s)}


def q_coroot(alpha: Root) -> Polynomial:
    """q_{alpha^vee} = q_r q_{r+1} ... q_{s-1}."""
    mono = tuple((("q", t), 1) for t in sorted(coroot_vector(alpha)))
    return Polynomial({mono: 1})


# -- parabolic contexts -------------------------------------------------------


@dataclass(frozen=True)
class ParabolicContext:
    """Block data for a composition (n_1, ..., n_k) of n.

    Positions 1..n are split into consecutive blocks of sizes n_j; W_P is
    generated by the simple reflections inside blocks, and the Dynkin nodes
    {N_1, ..., N_{k-1}} at the block boundaries index the q variables.

    >>> ctx = ParabolicContext((2, 1, 3))
    >>> ctx.n, ctx.partial_sums, sorted(ctx.nodes)
    (6, (2, 3, 6), [2, 3])
    >>> ctx.q_degree(1)
    3
    """

    composition: tuple
    partial_sums: tuple = field(init=False, repr=False)

    def __post_init__(self):
        comp = tuple(int(b) for b in self.composition)
        if not comp or any(b < 1 for b in comp):
            raise ValueError(f"composition must be nonempty positive: {comp}")
        object.__setattr__(self, "composition", comp)
        object.__setattr__(self, "partial_sums", tuple(itertools.accumulate(comp)))

    @property
    def n(self) -> int:
        return self.partial_sums[-1]

    @property
    def k(self) -> int:
        return len(self.composition)

    @property
    def nodes(self) -> tuple:
        """Dynkin nodes N_1, ..., N_{k-1} indexing the q variables."""
        return self.partial_sums[:-1]

    def q_degree(self, j: int) -> int:
        """Grading deg q_j = n_j + n_{j+1}."""
        if not 1 <= j <= self.k - 1:
            raise ValueError(f"q index out of range: {j}")
        return self.composition[j - 1] + self.composition[j]

    def q_degrees(self) -> dict:
        return {j: self.q_degree(j) for j in range(1, self.k)}

    def block_of(self, t: int) -> int:
        """1-based block index of position t <= n."""
        for j, nj in enumerate(self.partial_sums, start=1):
            if t <= nj:
                return j
        raise ValueError(f"position {t} beyond n={self.n}")

    def blocks(self) -> list:
        """Position ranges [(lo, hi), ...] of the blocks, inclusive."""
        out = []
        lo = 1
        for hi in self.partial_sums:
            out.append((lo, hi))
            lo = hi + 1
        return out

    def wp_generators(self) -> list:
        """Simple reflection indices generating W_P."""
        return [i for i in range(1, self.n) if i not in set(self.nodes)]

    def extend(self, extra: int) -> "ParabolicContext":
        """Append `extra` singleton blocks."""
        return ParabolicContext(self.composition + (1,) * extra)

    def min_rep(self, w: Permutation) -> Permutation:
        """pi_P(w) = w^P: sort w's values ascending within each position block."""
        if len(w) > self.n:
            raise ValueError(f"permutation {list(w)} has support beyond n={self.n}")
        line = list(extend(w, self.n))
        out = []
        for lo, hi in self.blocks():
            out.extend(sorted(line[lo - 1 : hi]))
        return trim(out)

    def is_min_rep(self, w: Permutation) -> bool:
        return self.min_rep(w) == trim(w)

    def decompose(self, w: Permutation):
        """w = w^P * w_P with w^P minimal in its coset and lengths adding up."""
        wp = self.min_rep(w)
        return wp, compose(inverse(wp), trim(w))

    def minimal_reps(self) -> list:
        """All of W^P = W^P intersected with S_n, sorted by (length, one-line)."""
        reps = []
        values = list(range(1, self.n + 1))
        for split in _block_splits(values, list(self.composition)):
            reps.append(trim([v for blk in split for v in blk]))
        reps.sort(key=lambda w: (length(w), w))
        return reps

    def w0_p(self) -> Permutation:
        """Minimal coset representative of the longest element of S_n."""
        return self.min_rep(longest_element(self.n))

    def two_rho_p(self, t: int) -> int:
        """Coordinate t of 2 rho_P, the half sum of Levi positive roots doubled.

        Within a block of size m the coordinates are (m-1, m-3, ..., 1-m);
        positions past n sit in appended singleton blocks and give 0.  The
        per-block centering matters: it makes <alpha^vee, 2(rho - rho_P)>
        equal the q-degree sum over the nodes alpha crosses, so the length
        condition selecting B roots matches the grading of the quantum ring.
        """
        if t > self.n:
            return 0
        j = self.block_of(t)
        start = 0 if j == 1 else self.partial_sums[j - 2]
        return self.composition[j - 1] - 1 - 2 * (t - 1 - start)

    def pair_two_rho_p(self, alpha: Root) -> int:
        """<alpha_{rs}^vee, 2 rho_P>."""
        r, s = alpha
        return self.two_rho_p(r) - self.two_rho_p(s)

    def is_p_root(self, alpha: Root) -> bool:
        """True iff alpha lies in Phi^+_P (both ends in one block)."""
        r, s = alpha
        return s <= self.n and self.block_of(r) == self.block_of(s)


def _block_splits(values, sizes):
    if not sizes:
        yield []
        return
    head = sizes[0]
    for combo in itertools.combinations(values, head):
        rest = [v for v in values if v not in combo]
        for tail in _block_splits(rest, sizes[1:]):
            yield [sorted(combo)] + tail


def eta_p(alpha: Root, ctx: ParabolicContext) -> Polynomial:
    """q_{eta_P(alpha^vee)} = prod of q_i over the nodes N_i in [r, s)."""
    r, s = alpha
    factors = tuple(
        (("q", i), 1) for i, node in enumerate(ctx.nodes, start=1) if r <= node < s
    )
    return Polynomial({factors: 1})


def parabolic_decompose(w: Permutation, ctx: ParabolicContext):
    return ctx.decompose(w)


# -- text forms ---------------------------------------------------------------


def format_permutation(w: Permutation) -> str:
    return "[" + ",".join(str(v) for v in w) + "]"


def parse_permutation(text: str) -> Permutation:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"permutation must look like [3,1,2], got {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return identity
    try:
        values = [int(piece) for piece in inner.split(",")]
    except ValueError:
        raise ValueError(f"bad one-line notation: {text!r}") from None
    return perm(values)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
