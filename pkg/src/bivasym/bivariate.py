"""Sparse bivariate polynomials with exact rational coefficients.

Terms are a map from exponent pairs ``(i, j)`` to nonzero Fractions.  All
arithmetic is exact; only evaluation at complex points is floating, and it
uses a fixed lexicographic Horner scheme so results are bit-reproducible
at a given precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

from mpmath import mpf

from .errors import EvaluationOverflow
from .precision import is_finite, to_mpc, to_mpf
from .rationals import parse_rational

Exponent = Tuple[int, int]


class BivariatePolynomial:
    """Polynomial in x and y over the rationals, stored sparsely.

    Zero coefficients are never stored; the zero polynomial has no terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exponent, Fraction] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent ({i}, {j})")
                c = Fraction(c)
                if c != 0:
                    clean[(int(i), int(j))] = c
        self.terms = clean

    # -- construction ----------------------------------------------------

    @classmethod
    def from_items(cls, items: Iterable[Tuple[int, int, object]]) -> "BivariatePolynomial":
        """Build from (i, j, coefficient) triples; coefficient strings allowed."""
        terms: Dict[Exponent, Fraction] = {}
        for i, j, c in items:
            key = (int(i), int(j))
            terms[key] = terms.get(key, Fraction(0)) + parse_rational(c)
        return cls(terms)

    @classmethod
    def constant(cls, c) -> "BivariatePolynomial":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def x(cls) -> "BivariatePolynomial":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> "BivariatePolynomial":
        return cls({(0, 1): Fraction(1)})

    # -- basic structure -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms in lexicographic (i, j) order; the canonical ordering."""
        return sorted(self.terms.items())

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=0)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def coefficient_scale(self) -> Fraction:
        """Largest coefficient magnitude (0 for the zero polynomial)."""
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    # -- arithmetic (exact) ----------------------------------------------

    def __add__(self, other) -> "BivariatePolynomial":
        if not isinstance(other, BivariatePolynomial):
            other = BivariatePolynomial.constant(other)
        terms = dict(self.terms)
        for ij, c in other.terms.items():
            terms[ij] = terms.get(ij, Fraction(0)) + c
        return BivariatePolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({ij: -c for ij, c in self.terms.items()})

    def __sub__(self, other) -> "BivariatePolynomial":
        if not isinstance(other, BivariatePolynomial):
            other = BivariatePolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "BivariatePolynomial":
        return BivariatePolynomial.constant(other) - self

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        terms: Dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return BivariatePolynomial(terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "BivariatePolynomial":
        c = Fraction(c)
        return BivariatePolynomial({ij: c * v for ij, v in self.terms.items()})

    def __pow__(self, n: int) -> "BivariatePolynomial":
        if n < 0:
            raise ValueError("negative power")
        out = BivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, var: str) -> "BivariatePolynomial":
        """Exact formal partial derivative with respect to "x" or "y"."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        terms: Dict[Exponent, Fraction] = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                terms[(i - 1, j)] = terms.get((i - 1, j), Fraction(0)) + c * i
            elif var == "y" and j > 0:
                terms[(i, j - 1)] = terms.get((i, j - 1), Fraction(0)) + c * j
        return BivariatePolynomial(terms)

    # -- views ------------------------------------------------------------

    def coeffs_in_y(self):
        """Coefficients as polynomials in x, indexed by y-degree.

        Returns a list of length degree_y + 1; element j is the list of
        Fraction x-coefficients of [y^j] self.
        """
        dy = self.degree_y()
        dx = self.degree_x()
        out = [[Fraction(0)] * (dx + 1) for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            out[j][i] = c
        return [_trim(row) for row in out]

    def coeffs_in_x(self):
        """Coefficients as polynomials in y, indexed by x-degree."""
        return self.swap_variables().coeffs_in_y()

    def swap_variables(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(j, i): c for (i, j), c in self.terms.items()})

    def specialize_y(self, value):
        """Univariate coefficient list in x (ascending) with y set to ``value``.

        ``value`` may be a Fraction (exact result) or a complex scalar
        (mpc result).
        """
        exact = isinstance(value, (int, Fraction))
        dx = self.degree_x()
        if exact:
            val = Fraction(value)
            out = [Fraction(0)] * (dx + 1)
            for (i, j), c in sorted(self.terms.items()):
                out[i] += c * val**j
            return out
        v = to_mpc(value)
        outc = [to_mpc(0)] * (dx + 1)
        for (i, j), c in sorted(self.terms.items()):
            outc[i] += to_mpc(c) * v**j
        return outc

    def specialize_x(self, value):
        return self.swap_variables().specialize_y(value)

    # -- evaluation --------------------------------------------------------

    def eval_exact(self, qx: Fraction, qy: Fraction) -> Fraction:
        """Exact rational evaluation (reference path for tests)."""
        qx, qy = Fraction(qx), Fraction(qy)
        total = Fraction(0)
        for (i, j), c in sorted(self.terms.items()):
            total += c * qx**i * qy**j
        return total

    def eval(self, x, y):
        """Evaluate at complex (x, y) by nested Horner in lexicographic order."""
        if not self.terms:
            return to_mpc(0)
        xz, yz = to_mpc(x), to_mpc(y)
        rows: Dict[int, list] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, []).append((j, c))
        outer = [
            (i, _horner_sparse(sorted(rows[i], reverse=True), yz))
            for i in sorted(rows, reverse=True)
        ]
        acc = _horner_sparse(outer, xz)
        if not is_finite(acc):
            raise EvaluationOverflow("evaluation overflow")
        return acc

    def eval_magnitude_scale(self, x, y) -> mpf:
        """Sum of |h_ij| |x|^i |y|^j: the natural scale for residual checks."""
        ax, ay = abs(to_mpc(x)), abs(to_mpc(y))
        total = to_mpf(0)
        for (i, j), c in sorted(self.terms.items()):
            total += to_mpf(abs(c)) * ax**i * ay**j
        return total

    # -- formatting ---------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "BivariatePolynomial(0)"
        bits = []
        for (i, j), c in self.sorted_terms():
            mono = "".join(
                f"{v}^{e}" if e > 1 else (v if e == 1 else "")
                for v, e in (("x", i), ("y", j))
            )
            bits.append(f"{c}{'*' if mono else ''}{mono}")
        return "BivariatePolynomial(" + " + ".join(bits) + ")"


def _horner_sparse(pairs_desc, z):
    """Horner evaluation of sparse (exponent, value) pairs, exponents descending."""
    acc = to_mpc(pairs_desc[0][1])
    prev = pairs_desc[0][0]
    for e, v in pairs_desc[1:]:
        acc = acc * z ** (prev - e) + to_mpc(v)
        prev = e
    if prev:
        acc = acc * z**prev
    return acc


def _trim(coeffs):
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_eval(p: BivariatePolynomial, x, y):
    """Evaluate ``p`` at a complex point; see BivariatePolynomial.eval."""
    return p.eval(x, y)


def poly_partial(p: BivariatePolynomial, var: str) -> BivariatePolynomial:
    """Exact formal partial derivative of ``p``; see BivariatePolynomial.partial."""
    return p.partial(var)
