"""Exact sparse polynomials over the indexed variable families x, a, q.

Everything in this package lives in the ring Z[x1,x2,...; a1,a2,...;
q1,q2,...].  Coefficients are Python ints, so arithmetic is exact at every
step; no floats appear anywhere.  A monomial is a sorted tuple of
((family, index), exponent) pairs with positive exponents, and a polynomial
is a dict from monomials to nonzero integer coefficients.  Polynomial values
are treated as immutable once constructed.

>>> f = (x(1) - a(1)) * (x(1) - a(2)) - q(1)
>>> print(f)
x1^2 - x1*a1 - x1*a2 + a1*a2 - q1
>>> parse_polynomial(str(f)) == f
True
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

__all__ = [
    "Polynomial",
    "SymbolicMatrix",
    "Variable",
    "Monomial",
    "x",
    "a",
    "q",
    "variable",
    "elementary_symmetric",
    "char_poly_coeffs",
    "graded_degree",
    "parse_polynomial",
    "format_polynomial",
    "polynomial_to_json",
    "polynomial_from_json",
]

FAMILIES = ("x", "a", "q")

# A variable is a (family, index) pair with family in FAMILIES and index >= 1.
Variable = tuple[str, int]
Monomial = tuple[tuple[Variable, int], ...]

_EMPTY: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_part(m: Monomial, families: str) -> tuple[Monomial, Monomial]:
    """Split a monomial into (part over families, remaining part)."""
    inside = tuple(p for p in m if p[0][0] in families)
    outside = tuple(p for p in m if p[0][0] not in families)
    return inside, outside


class Polynomial:
    """Immutable sparse polynomial with exact integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        # Trusted constructor: `terms` must already be normalized (no zero
        # coefficients, monomials sorted with positive exponents).
        self.terms = terms

    @classmethod
    def from_terms(cls, items) -> "Polynomial":
        acc: dict = {}
        for mono, coeff in items:
            if coeff:
                key = tuple(sorted((v, e) for v, e in mono if e))
                acc[key] = acc.get(key, 0) + coeff
                if not acc[key]:
                    del acc[key]
        return cls(acc)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({_EMPTY: c}) if c else cls({})

    @classmethod
    def var(cls, family: str, index: int) -> "Polynomial":
        if family not in FAMILIES:
            raise ValueError(f"unknown variable family {family!r}")
        if index < 1:
            raise ValueError(f"variable index must be >= 1, got {index}")
        return cls({(((family, index), 1),): 1})

    # -- ring operations ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        big, small = self.terms, other.terms
        if len(big) < len(small):
            big, small = small, big
        acc = dict(big)
        for m, c in small.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            elif m in acc:
                del acc[m]
        return Polynomial(acc)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return Polynomial({})
            return Polynomial({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc: dict = {}
        if len(self.terms) < len(other.terms):
            fa, fb = self.terms, other.terms
        else:
            fa, fb = other.terms, self.terms
        for m1, c1 in fa.items():
            for m2, c2 in fb.items():
                key = _mono_mul(m1, m2)
                s = acc.get(key, 0) + c1 * c2
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        return Polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- queries -----------------------------------------------------------

    def is_constant(self) -> bool:
        return all(m == _EMPTY for m in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_EMPTY, 0)

    def total_degree(self) -> int:
        """Plain total degree (every variable weighted 1); 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(_mono_degree(m) for m in self.terms)

    def max_index(self, family: str) -> int:
        """Largest index of the given family appearing, or 0."""
        best = 0
        for m in self.terms:
            for (fam, idx), _ in m:
                if fam == family and idx > best:
                    best = idx
        return best

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(tuple(sorted(mono)), 0)

    def split(self, families: str) -> dict:
        """Group terms by their sub-monomial over `families`.

        Returns a dict mapping each sub-monomial to the polynomial of
        everything else that multiplies it.

        >>> f = x(1) * a(1) + 2 * x(1) - q(1)
        >>> parts = f.split("x")
        >>> print(parts[((("x", 1), 1),)])
        a1 + 2
        """
        acc: dict = {}
        for m, c in self.terms.items():
            inside, outside = _mono_part(m, families)
            bucket = acc.setdefault(inside, {})
            bucket[outside] = bucket.get(outside, 0) + c
        return {k: Polynomial(v) for k, v in acc.items()}

    # -- substitutions -----------------------------------------------------

    def specialize(self, assignment: dict) -> "Polynomial":
        """Substitute variables; `assignment` maps Variable to Polynomial or int.

        >>> f = (x(1) - a(1)) ** 2
        >>> print(f.specialize({("a", 1): 0}))
        x1^2
        """
        fixed = {
            v: (p if isinstance(p, Polynomial) else Polynomial.const(p))
            for v, p in assignment.items()
        }
        total = Polynomial({})
        for m, c in self.terms.items():
            factor = Polynomial.const(c)
            for v, e in m:
                if v in fixed:
                    factor = factor * (fixed[v] ** e)
                    if not factor:
                        break
                else:
                    factor = factor * Polynomial({((v, e),): 1})
            total = total + factor
        return total

    def zero_out(self, family: str, min_index: int = 1) -> "Polynomial":
        """Set every variable of `family` with index >= min_index to zero."""
        acc = {}
        for m, c in self.terms.items():
            if any(fam == family and idx >= min_index for (fam, idx), _ in m):
                continue
            acc[m] = c
        return Polynomial(acc)

    def swap_indices(self, family: str, i: int, j: int) -> "Polynomial":
        """Exchange the variables (family, i) and (family, j)."""
        vi, vj = (family, i), (family, j)
        acc: dict = {}
        for m, c in self.terms.items():
            d = dict(m)
            ei, ej = d.pop(vi, 0), d.pop(vj, 0)
            if ei:
                d[vj] = ei
            if ej:
                d[vi] = ej
            key = tuple(sorted(d.items()))
            acc[key] = acc.get(key, 0) + c
        return Polynomial({m: c for m, c in acc.items() if c})

    # -- presentation --------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"<Polynomial {format_polynomial(self)}>"


def variable(family: str, index: int) -> Polynomial:
    return Polynomial.var(family, index)


def x(i: int) -> Polynomial:
    return Polynomial.var("x", i)


def a(i: int) -> Polynomial:
    return Polynomial.var("a", i)


def q(i: int) -> Polynomial:
    return Polynomial.var("q", i)


def elementary_symmetric(k: int, variables: list) -> Polynomial:
    """Elementary symmetric polynomial e_k in the given variables.

    >>> print(elementary_symmetric(2, [("x", 1), ("x", 2), ("x", 3)]))
    x2*x3 + x1*x3 + x1*x2
    """
    if k < 0 or k > len(variables):
        return Polynomial.zero()
    if k == 0:
        return Polynomial.const(1)
    acc = {}
    for combo in itertools.combinations(sorted(variables), k):
        acc[tuple((v, 1) for v in combo)] = 1
    return Polynomial(acc)


def graded_degree(f: Polynomial, q_degrees=None):
    """Degree of f under deg x_i = deg a_i = 1 and deg q_j = q_degrees[j].

    With q_degrees None every q_j has degree 2.  Returns the common degree of
    all terms, or None when f is not homogeneous.  The zero polynomial reports
    degree 0.

    >>> graded_degree(q(1))
    2
    >>> graded_degree(x(1) + q(1)) is None
    True
    """
    degs = set()
    for m in f.terms:
        d = 0
        for (fam, idx), e in m:
            if fam == "q":
                d += e * (2 if q_degrees is None else q_degrees[idx])
            else:
                d += e
        degs.add(d)
    if not degs:
        return 0
    if len(degs) > 1:
        return None
    return degs.pop()


# -- determinants of small symbolic matrices ---------------------------------


@dataclass(frozen=True)
class SymbolicMatrix:
    """Square matrix with Polynomial entries, 1-based sparse storage."""

    size: int
    entries: dict  # (row, col) -> Polynomial, missing means zero

    def entry(self, r: int, c: int) -> Polynomial:
        return self.entries.get((r, c), Polynomial.zero())


def char_poly_coeffs(m: SymbolicMatrix) -> list:
    """Coefficients [E_0, ..., E_n] with det(m - t*Id) = sum_j (-t)^(n-j) E_j.

    Computed by exact cofactor expansion; entries stay in Z[x,a,q]
    throughout.
    """
    n = m.size
    # A polynomial in t is a list of Polynomial coefficients, low degree first.
    zero = Polynomial.zero()
    memo: dict = {}

    def det(cols: tuple) -> list:
        if not cols:
            return [Polynomial.const(1)]
        if cols in memo:
            return memo[cols]
        row = len(cols)
        total: list = [zero]
        for pos, col in enumerate(cols):
            ent = [m.entry(row, col)]
            if col == row:
                ent.append(Polynomial.const(-1))
            if len(ent) == 1 and not ent[0]:
                continue
            sub = det(cols[:pos] + cols[pos + 1 :])
            sign = 1 if (row + pos + 1) % 2 == 0 else -1
            prod = [zero] * (len(ent) + len(sub) - 1)
            for i, ei in enumerate(ent):
                if not ei:
                    continue
                for j, sj in enumerate(sub):
                    prod[i + j] = prod[i + j] + ei * sj
            if len(prod) > len(total):
                total += [zero] * (len(prod) - len(total))
            for i, p in enumerate(prod):
                total[i] = total[i] + (p if sign > 0 else -p)
        memo[cols] = total
        return total

    full = det(tuple(range(1, n + 1)))
    full += [zero] * (n + 1 - len(full))
    result = []
    for j in range(n + 1):
        c = full[n - j]
        result.append(c if (n - j) % 2 == 0 else -c)
    return result


# -- canonical text form ------------------------------------------------------


def _family_vector(m: Monomial, family: str, width: int) -> list:
    vec = [0] * width
    for (fam, idx), e in m:
        if fam == family:
            vec[idx - 1] = e
    return vec


def _term_sort_key(m: Monomial, widths: dict):
    xv = _family_vector(m, "x", widths["x"])
    av = _family_vector(m, "a", widths["a"])
    qv = _family_vector(m, "q", widths["q"])
    # Descending total degree; then the x parts in reverse-lex order where at
    # the largest differing index the larger exponent comes first; then the a
    # and q parts lexicographically from the low indices.
    return (
        -_mono_degree(m),
        tuple(-e for e in reversed(xv)),
        tuple(-e for e in av),
        tuple(-e for e in qv),
    )


def _sorted_terms(f: Polynomial) -> list:
    widths = {fam: max(1, f.max_index(fam)) for fam in FAMILIES}
    return sorted(f.terms.items(), key=lambda mc: _term_sort_key(mc[0], widths))


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form, e.g. 'x1^2 - 2*x1*a1 + a1^2 - q1'."""
    if not f.terms:
        return "0"
    pieces = []
    for m, c in _sorted_terms(f):
        factors = []
        for fam in ("x", "a", "q"):
            for (vfam, idx), e in sorted(p for p in m if p[0][0] == fam):
                factors.append(f"{vfam}{idx}" + (f"^{e}" if e > 1 else ""))
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([xaq])(\d+)|(\^)|(\*)|(\+)|(-)|(.))")


class PolynomialParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str):
    tokens = []
    for match in _TOKEN.finditer(text):
        pos = min(match.start(g) for g in range(1, 9) if match.group(g) is not None)
        if match.group(1):
            tokens.append(("int", int(match.group(1)), pos))
        elif match.group(2):
            tokens.append(("var", (match.group(2), int(match.group(3))), pos))
        elif match.group(4):
            tokens.append(("pow", None, pos))
        elif match.group(5):
            tokens.append(("mul", None, pos))
        elif match.group(6):
            tokens.append(("plus", None, pos))
        elif match.group(7):
            tokens.append(("minus", None, pos))
        elif match.group(8) and match.group(8).strip():
            raise PolynomialParseError(f"unexpected character {match.group(8)!r}", pos)
    return tokens


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical text form back into a Polynomial.

    Raises PolynomialParseError (a ValueError) with the offending position on
    malformed input.

    >>> print(parse_polynomial("x1^2 - 2*x1*a1 + a1^2 - q1") + q(1))
    x1^2 - 2*x1*a1 + a1^2
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial text", 0)
    n = len(tokens)
    i = 0
    total = Polynomial.zero()

    def parse_factor(i):
        kind, val, pos = tokens[i]
        if kind == "var":
            fam, idx = val
            if idx < 1:
                raise PolynomialParseError("variable index must be >= 1", pos)
            i += 1
            exp = 1
            if i < n and tokens[i][0] == "pow":
                i += 1
                if i >= n or tokens[i][0] != "int":
                    raise PolynomialParseError("expected integer exponent", tokens[i - 1][2])
                exp = tokens[i][1]
                i += 1
            return Polynomial.var(fam, idx) ** exp, i
        if kind == "int":
            return Polynomial.const(val), i + 1
        raise PolynomialParseError("expected a variable or integer", pos)

    while i < n:
        sign = 1
        kind, _, pos = tokens[i]
        if kind == "plus":
            if not total.terms and i == 0:
                raise PolynomialParseError("leading '+' is not allowed", pos)
            i += 1
        elif kind == "minus":
            sign = -1
            i += 1
        elif i > 0:
            raise PolynomialParseError("expected '+' or '-' between terms", pos)
        if i >= n:
            raise PolynomialParseError("dangling sign", tokens[-1][2])
        term, i = parse_factor(i)
        while i < n and tokens[i][0] == "mul":
            i += 1
            if i >= n:
                raise PolynomialParseError("dangling '*'", tokens[i - 1][2])
            factor, i = parse_factor(i)
            term = term * factor
        total = total + term * sign
    return total


# -- canonical JSON form ------------------------------------------------------


def polynomial_to_json(f: Polynomial) -> list:
    """JSON-ready list of term objects; round-trips bit-exactly."""
    out = []
    for m, c in _sorted_terms(f):
        entry = {"c": str(c), "x": [], "a": [], "q": []}
        for (fam, idx), e in sorted(m):
            entry[fam].append([idx, e])
        out.append(entry)
    return out


def polynomial_from_json(data) -> Polynomial:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list):
        raise ValueError("polynomial JSON must be a list of term objects")
    items = []
    for entry in data:
        coeff = int(entry["c"])
        mono = []
        for fam in FAMILIES:
            for idx, e in entry.get(fam, []):
                if idx < 1 or e < 1:
                    raise ValueError(f"bad exponent pair [{idx}, {e}]")
                mono.append(((fam, idx), e))
        items.append((tuple(mono), coeff))
    return Polynomial.from_terms(items)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
