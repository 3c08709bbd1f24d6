"""Acceptance checks shared by the command line driver and the test suite.

Each check returns (ok, detail) and is exact: every comparison is integer
polynomial equality.  run_all prints one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import itertools
import random
import time

from .parabolic import parabolic_cauchy_rhs, parabolic_q_double_schubert
from .poly import Polynomial, a, elementary_symmetric, format_polynomial, q, x
from .quantization import (
    E_relation_residual,
    e_relation_residual,
    theta,
)
from .quantum_ring import (
    StructureTable,
    bijection_check,
    verify_chevalley,
)
from .schubert import (
    FAMILY_KINDS,
    _x_coefficient,
    cauchy_rhs,
    divided_difference,
    expand_in_schubert_basis,
    schubert_polynomial,
    x_lead_vector,
)
from .weyl import (
    ParabolicContext,
    all_perms,
    code,
    cycle,
    inverse,
    length,
    perm_from_word,
    reduced_word,
    simple,
    trim,
)

__all__ = ["CRITERIA", "run_all", "compositions"]


def compositions(n: int) -> list:
    """All compositions of n in the order given by cut positions."""
    out = []
    for mask in range(1 << (n - 1)):
        parts, last = [], 0
        for pos in range(1, n):
            if mask >> (pos - 1) & 1:
                parts.append(pos - last)
                last = pos
        parts.append(n - last)
        out.append(tuple(parts))
    return out


def proper_contexts(n: int) -> list:
    return [ParabolicContext(c) for c in compositions(n) if len(c) >= 2]


def check_parabolic_example() -> tuple:
    """The composition (2,1,3) member of [5,6,4,1,2,3], against the closed product."""
    ctx = ParabolicContext((2, 1, 3))
    w = (5, 6, 4, 1, 2, 3)
    expected = (x(1) - a(4)) * (x(2) - a(4))
    for i in range(1, 4):
        expected = expected * (
            (x(1) - a(i)) * (x(2) - a(i)) * (x(3) - a(i)) + q(1)
        )
    got = parabolic_q_double_schubert(ctx, w)
    if got != expected:
        return False, "member differs from the closed product"
    return True, "bit-exact"


def check_reflection_formulas(max_i: int = 5) -> tuple:
    """Members of simple reflections are the fundamental-weight differences."""
    for i in range(1, max_i + 1):
        expected = Polynomial.zero()
        for j in range(1, i + 1):
            expected = expected + x(j) - a(j)
        if schubert_polynomial(simple(i), "quantum_double") != expected:
            return False, f"quantum double member of s_{i} is not omega_{i}(x) - omega_{i}(a)"
        quantum = schubert_polynomial(simple(i), "quantum")
        if quantum != schubert_polynomial(simple(i), "classical"):
            return False, f"quantum member of s_{i} differs from the classical one"
    return True, f"i <= {max_i}"


def check_quantization(max_n: int = 4) -> tuple:
    """theta carries both classical families onto their quantum versions."""
    count = 0
    for w in all_perms(max_n):
        if theta(schubert_polynomial(w, "classical")) != schubert_polynomial(w, "quantum"):
            return False, f"theta misses the quantum member of {list(w)}"
        if theta(schubert_polynomial(w, "double")) != schubert_polynomial(
            w, "quantum_double"
        ):
            return False, f"theta misses the quantum double member of {list(w)}"
        count += 1
    return True, f"{count} permutations"


def check_cauchy(max_n: int = 4) -> tuple:
    """Interpolation sums over weak order ideals reproduce the members."""
    for w in all_perms(max_n):
        if cauchy_rhs(w, quantum=False) != schubert_polynomial(w, "double"):
            return False, f"double sum fails at {list(w)}"
        if cauchy_rhs(w, quantum=True) != schubert_polynomial(w, "quantum_double"):
            return False, f"quantum double sum fails at {list(w)}"
    cosets = 0
    for comp in compositions(max_n):
        ctx = ParabolicContext(comp)
        for w in ctx.minimal_reps():
            if parabolic_cauchy_rhs(ctx, w) != parabolic_q_double_schubert(ctx, w):
                return False, f"parabolic sum fails at {comp}, {list(w)}"
            cosets += 1
    return True, f"S_{max_n} plus {cosets} parabolic cases"


def check_chevalley(max_n: int = 4, flavor: str | None = None) -> tuple:
    """Divisor multiplication rule, all flavors, including every composition."""
    stable = [flavor] if flavor in FAMILY_KINDS else list(FAMILY_KINDS)
    if flavor in FAMILY_KINDS:
        parabolic = False
    elif flavor == "parabolic":
        stable, parabolic = [], True
    elif flavor is None:
        parabolic = True
    else:
        return False, f"unknown flavor {flavor!r}"
    checks = 0
    for kind in stable:
        for w in all_perms(max_n):
            for i in range(1, max_n + 1):
                ok, diff = verify_chevalley(i, w, kind)
                if not ok:
                    return False, (
                        f"{kind} rule fails at {list(w)}, i={i}; "
                        f"difference {format_polynomial(diff)}"
                    )
                checks += 1
    if parabolic:
        for n in range(2, max_n + 1):
            for ctx in proper_contexts(n):
                for w in ctx.minimal_reps():
                    for i in ctx.nodes:
                        ok, diff = verify_chevalley(i, w, "parabolic", ctx)
                        if not ok:
                            return False, (
                                f"parabolic rule fails at {ctx.composition}, "
                                f"{list(w)}, i={i}; "
                                f"difference {format_polynomial(diff)}"
                            )
                        checks += 1
    return True, f"{checks} identities"


def check_leading_terms(max_n: int = 5) -> tuple:
    """The x-leading term of every family member is the code monomial."""
    count = 0
    for w in all_perms(max_n):
        for kind in FAMILY_KINDS:
            f = schubert_polynomial(w, kind)
            lead = x_lead_vector(f)
            vec = tuple(lead) if lead else ()
            while vec and vec[-1] == 0:
                vec = vec[:-1]
            if vec != code(w):
                return False, f"{kind} member of {list(w)} leads at {vec}"
            if _x_coefficient(f, lead or ()) != Polynomial.const(1):
                return False, f"{kind} member of {list(w)} has a non-unit lead"
            count += 1
    return True, f"{count} members"


def check_full_flag_table(n: int = 3) -> tuple:
    """Three-strand structure table: ring axioms and divisor rows."""
    table = StructureTable.build(n)
    if not table.check_commutative():
        return False, "table is not commutative"
    if not table.check_associative():
        return False, "an associativity triple fails"
    if not table.check_divisor_rows():
        return False, "a divisor row disagrees with the Chevalley-Monk rule"
    if not table.check_quantum_specialization():
        return False, "a -> 0 divisor row disagrees with the quantum rule"
    if not table.check_classical_specialization():
        return False, "q -> 0 divisor row disagrees with the double rule"
    two = StructureTable.build(2)
    if two.product((2, 1), (2, 1)) != {(2, 1): a(2) - a(1), (): q(1)}:
        return False, "the two-strand square is wrong"
    size = len(table.basis)
    return True, f"{size}x{size} table, {size ** 3} triples"


def check_parabolic_tables(comps=((2, 2), (2, 1))) -> tuple:
    """Partial-flag structure tables: divisor rows and basis rank."""
    import math

    details = []
    for comp in comps:
        ctx = ParabolicContext(comp)
        table = StructureTable.build(ctx)
        rank = math.factorial(ctx.n)
        for block in comp:
            rank //= math.factorial(block)
        if len(table.basis) != rank:
            return False, f"{comp}: basis rank {len(table.basis)} != {rank}"
        if not table.check_commutative():
            return False, f"{comp}: table is not commutative"
        if not table.check_associative():
            return False, f"{comp}: an associativity triple fails"
        if not table.check_divisor_rows():
            return False, f"{comp}: a divisor row disagrees with the rule"
        if not table.check_quantum_specialization():
            return False, f"{comp}: a -> 0 divisor row disagrees"
        details.append(f"{comp} rank {rank}")
    return True, "; ".join(details)


def _random_polynomial(rng: random.Random) -> Polynomial:
    factories = {"a": a, "x": x, "q": q}
    bounds = {"a": 5, "x": 3, "q": 2}
    total = Polynomial.zero()
    for _ in range(rng.randint(2, 6)):
        term = Polynomial.const(rng.randint(-9, 9))
        for _ in range(rng.randint(0, 4)):
            family = rng.choice("aaxq")
            term = term * factories[family](rng.randint(1, bounds[family]))
        total = total + term
    return total


def _random_reduced_word(w, rng: random.Random) -> tuple:
    from .weyl import compose

    word = []
    w = trim(w)
    while w:
        winv = inverse(w)
        descents = [i for i in range(1, len(w)) if winv[i - 1] > winv[i]]
        i = rng.choice(descents)
        word.append(i)
        w = compose(simple(i), w)
    return tuple(word)


def _apply_word(word, f: Polynomial) -> Polynomial:
    for i in reversed(word):
        f = divided_difference(i, f)
    return f


def check_operator_algebra(samples: int = 200, seed: int = 20260815) -> tuple:
    """Divided differences: relations, word independence, and the two ladders."""
    rng = random.Random(seed)
    for _ in range(20):
        f = _random_polynomial(rng)
        for i in range(1, 5):
            if divided_difference(i, divided_difference(i, f)):
                return False, f"square of the operator at {i} is nonzero"
        for i in range(1, 4):
            lhs = divided_difference(
                i, divided_difference(i + 1, divided_difference(i, f))
            )
            rhs = divided_difference(
                i + 1, divided_difference(i, divided_difference(i + 1, f))
            )
            if lhs != rhs:
                return False, f"braid relation fails at {i}"
        if divided_difference(1, divided_difference(3, f)) != divided_difference(
            3, divided_difference(1, f)
        ):
            return False, "distant operators do not commute"
    perms = [w for w in all_perms(5) if length(w) >= 1]
    for _ in range(samples):
        w = rng.choice(perms)
        f = _random_polynomial(rng)
        word = _random_reduced_word(w, rng)
        if perm_from_word(word) != w:
            return False, "random reduced word does not rebuild its permutation"
        if _apply_word(word, f) != _apply_word(reduced_word(w), f):
            return False, f"two reduced words of {list(w)} disagree"
    # descending chains: a^beta with beta_i <= n-i dies unless beta_1 = n-1,
    # in which case the exponents shift down one slot
    for n in range(2, 5):
        betas = itertools.product(
            *[range(n - i + 1) if i > 1 else range(n) for i in range(1, n + 1)]
        )
        for beta in betas:
            f = Polynomial(
                {tuple((("a", i), e) for i, e in enumerate(beta, 1) if e): 1}
            )
            for i in range(1, n):
                f = divided_difference(i, f)
            if beta[0] < n - 1:
                if f:
                    return False, f"chain on a^{beta} should vanish"
            else:
                shifted = tuple((("a", i), e) for i, e in enumerate(beta[1:], 1) if e)
                if f != Polynomial({shifted: 1}):
                    return False, f"chain on a^{beta} should shift the exponents"
    # difference of elementary symmetrics is unitriangular with cycle members
    for p in range(1, 5):
        for i in range(1, p + 1):
            diff = elementary_symmetric(
                i, [("x", t) for t in range(1, p + 1)]
            ) - elementary_symmetric(i, [("a", t) for t in range(1, p + 1)])
            expansion = expand_in_schubert_basis(diff, "double")
            cycles = {cycle(j, p): j for j in range(1, i + 1)}
            if any(w not in cycles for w in expansion):
                return False, f"e_{i}^{p} difference leaves the cycle span"
            if expansion.get(cycle(i, p)) != Polynomial.const(1):
                return False, f"e_{i}^{p} difference is not unitriangular"
    # straightening relations among (quantum) elementary symmetrics
    for p in range(5):
        for i in range(p + 1):
            for j in range(i + 1):
                if e_relation_residual(i, j, p):
                    return False, f"classical straightening fails at {(i, j, p)}"
                if E_relation_residual(i, j, p):
                    return False, f"quantum straightening fails at {(i, j, p)}"
    return True, f"{samples} word-independence samples plus ladders"


def check_bijections(max_n: int = 4) -> tuple:
    """Pair bijections behind the quantum correction sums."""
    count = 0
    for w in all_perms(max_n):
        if not bijection_check(w):
            return False, f"full flag pairing fails at {list(w)}"
        count += 1
    for ctx in proper_contexts(max_n):
        for w in ctx.minimal_reps():
            if not bijection_check(w, ctx):
                return False, f"parabolic pairing fails at {ctx.composition}, {list(w)}"
            count += 1
    return True, f"{count} base permutations"


CRITERIA = (
    ("parabolic member worked product", check_parabolic_example),
    ("simple reflection members", check_reflection_formulas),
    ("quantization map on both families", check_quantization),
    ("interpolation sums", check_cauchy),
    ("divisor multiplication rule, all flavors", check_chevalley),
    ("leading term law", check_leading_terms),
    ("three-strand structure table", check_full_flag_table),
    ("partial-flag structure tables", check_parabolic_tables),
    ("divided difference operator algebra", check_operator_algebra),
    ("correction sum bijections", check_bijections),
)


def run_all(write=print) -> bool:
    ok_all = True
    for index, (name, fn) in enumerate(CRITERIA, start=1):
        start = time.perf_counter()
        ok, detail = fn()
        elapsed = time.perf_counter() - start
        status = "PASS" if ok else "FAIL"
        write(f"{status} criterion {index}: {name} [{detail}] ({elapsed:.2f}s)")
        ok_all = ok_all and ok
    return ok_all
