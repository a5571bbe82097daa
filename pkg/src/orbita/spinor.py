"""Sparse Clifford algebra on e1..e7, f1..f7 and the 64-dimensional
half-spin module.

Conventions fixed here:

* Monomials are stored in normal order e1 < ... < e7 < f1 < ... < f7,
  encoded as a pair of 7-bit masks; rewriting uses e_i f_i + f_i e_i = 1,
  e_i^2 = f_i^2 = 0, and anticommutation of distinct generators, with
  exact sign bookkeeping (trivial at p=2 but maintained generally).
* Spinors are sums of monomials f_S for S a subset of {1..7}; the even
  subsets span the 64-dimensional half-spin module X.  The spin action
  is genuine left multiplication on the minimal left ideal with vacuum
  e1...e7: each f_j acts by exterior multiplication, each e_j by
  contraction, both with the Koszul sign (-1)^|{i in S : i < j}|.
* Role-reversed ("f-convention") group elements are the default:
  s_i(lam) = lam^-1 + (lam - lam^-1) f_i e_i and s_{i,j}(lam) =
  1 + lam w_i w_j with w_a = f_a for a <= 7 and w_a = e_{a-7} for
  a >= 8.  convention="original" gives the e-indexed originals;
  convention="legacy" additionally renumbers indices by the involution
  (3 7)(4 6), the unique index dictionary (up to stabilizer symmetry)
  under which the old-notation stabilizer generator lists fix the
  tabulated representatives.
* Vectors transform by conjugation: Theta(s) v = s v s^-1.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .field import FieldSpec

Mono = Tuple[int, int]          # (e-mask, f-mask), bit i <-> index i+1


def _popcount_above(mask: int, j: int) -> int:
    return bin(mask >> (j + 1)).count("1")


def _popcount_below(mask: int, j: int) -> int:
    return bin(mask & ((1 << j) - 1)).count("1")


class Cliff:
    """Sparse Clifford-algebra element: {(emask, fmask): coeff}."""

    __slots__ = ("F", "terms")

    def __init__(self, F: FieldSpec, terms: Optional[Dict[Mono, int]] = None):
        self.F = F
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors --------------------------------------------------

    @staticmethod
    def scalar(F: FieldSpec, c: int) -> "Cliff":
        return Cliff(F, {(0, 0): c})

    @staticmethod
    def one(F: FieldSpec) -> "Cliff":
        return Cliff.scalar(F, 1)

    @staticmethod
    def gen_e(F: FieldSpec, i: int) -> "Cliff":
        if not 1 <= i <= 7:
            raise ValueError("generator index out of range")
        return Cliff(F, {(1 << (i - 1), 0): 1})

    @staticmethod
    def gen_f(F: FieldSpec, i: int) -> "Cliff":
        if not 1 <= i <= 7:
            raise ValueError("generator index out of range")
        return Cliff(F, {(0, 1 << (i - 1)): 1})

    # -- structure -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Cliff) and self.F == other.F and \
            self.terms == other.terms

    def __repr__(self) -> str:
        return f"Cliff({_format_terms(self.terms)})"

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def is_even(self) -> bool:
        return all((bin(e).count("1") + bin(f).count("1")) % 2 == 0
                   for (e, f) in self.terms)

    def degree_one_part(self):
        """Coefficient vector (a1..a7, b1..b7) if the element is purely
        degree 1, else None."""
        out = [0] * 14
        for (e, f), c in self.terms.items():
            tot = bin(e).count("1") + bin(f).count("1")
            if tot != 1:
                return None
            if e:
                out[e.bit_length() - 1] = c
            else:
                out[7 + f.bit_length() - 1] = c
        return tuple(out)

    # -- linear ops ----------------------------------------------------

    def __add__(self, other: "Cliff") -> "Cliff":
        F = self.F
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return Cliff(F, out)

    def __sub__(self, other: "Cliff") -> "Cliff":
        return self + other.smul(self.F.neg(1))

    def smul(self, c: int) -> "Cliff":
        F = self.F
        return Cliff(F, {m: F.mul(c, x) for m, x in self.terms.items()})

    # -- multiplication ------------------------------------------------

    def _times_gen_e(self, j: int) -> "Cliff":
        """Right-multiply by e_j (0-based bit index j)."""
        F = self.F
        bit = 1 << j
        out: Dict[Mono, int] = {}

        def rec(e, f, c) -> List[Tuple[int, int, int]]:
            # normal-order (e_E f_F) e_j with coefficient c
            if f == 0:
                if e & bit:
                    return []
                if _popcount_above(e, j) % 2:
                    c = F.neg(c)
                return [(e | bit, 0, c)]
            t = f.bit_length() - 1      # rightmost generator of the monomial
            rest = f & ~(1 << t)
            terms = []
            if t == j:
                # f_j e_j = 1 - e_j f_j
                terms.append((e, rest, c))
            # move e_j past f_t: (e_E f_rest e_j) f_t with a sign flip
            for (e2, f2, c2) in rec(e, rest, F.neg(c)):
                terms.append((e2, f2 | (1 << t), c2))
            return terms

        for (e, f), c in self.terms.items():
            for (e2, f2, c2) in rec(e, f, c):
                if c2:
                    m = (e2, f2)
                    out[m] = F.add(out.get(m, 0), c2)
        return Cliff(F, out)

    def _times_gen_f(self, j: int) -> "Cliff":
        F = self.F
        bit = 1 << j
        out: Dict[Mono, int] = {}
        for (e, f), c in self.terms.items():
            if f & bit:
                continue
            if _popcount_above(f, j) % 2:
                c = F.neg(c)
            m = (e, f | bit)
            out[m] = F.add(out.get(m, 0), c)
        return Cliff(F, out)

    def _times_mono(self, mono: Mono, coeff: int) -> "Cliff":
        acc = self.smul(coeff)
        e, f = mono
        for j in range(7):
            if e & (1 << j):
                acc = acc._times_gen_e(j)
        for j in range(7):
            if f & (1 << j):
                acc = acc._times_gen_f(j)
        return acc

    def __mul__(self, other: "Cliff") -> "Cliff":
        if self.F != other.F:
            raise ValueError("field mismatch")
        acc = Cliff(self.F)
        for mono, c in other.terms.items():
            acc = acc + self._times_mono(mono, c)
        return acc

    # -- reversal antiautomorphism ------------------------------------

    def reversal(self) -> "Cliff":
        """x1 x2 ... xk -> xk ... x1, extended linearly."""
        F = self.F
        acc = Cliff(F)
        for (e, f), c in self.terms.items():
            term = Cliff.scalar(F, c)
            for j in reversed(range(7)):
                if f & (1 << j):
                    term = term._times_gen_f(j)
            for j in reversed(range(7)):
                if e & (1 << j):
                    term = term._times_gen_e(j)
            acc = acc + term
        return acc

    def inverse(self) -> "Cliff":
        """Inverse via reversal (valid for the group elements built
        here); verified by multiplication."""
        r = self.reversal()
        if (self * r) != Cliff.one(self.F):
            raise ValueError("reversal is not the inverse of this element")
        return r


def clifford_mul(x: Cliff, y: Cliff) -> Cliff:
    return x * y


def _format_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for (e, f), c in sorted(terms.items()):
        gens = [f"e{i + 1}" for i in range(7) if e & (1 << i)]
        gens += [f"f{i + 1}" for i in range(7) if f & (1 << i)]
        body = "".join(gens) or "1"
        parts.append(f"{c}*{body}" if (c != 1 or body == "1") else body)
    return " + ".join(parts)


# ----------------------------------------------------------------------
# group elements
# ----------------------------------------------------------------------

# index renumbering used by the old-notation generator lists
_LEGACY_TAU = {1: 1, 2: 2, 3: 7, 4: 6, 5: 5, 6: 4, 7: 3}

CONVENTIONS = ("reversed", "original", "legacy")


def _w(F: FieldSpec, a: int, convention: str) -> Cliff:
    """Indexed basis vector w_a, 1 <= a <= 14; indices 8..14 alias the
    partners of 1..7."""
    if not 1 <= a <= 14:
        raise ValueError("vector index out of range")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    base = a if a <= 7 else a - 7
    if convention == "original":
        return Cliff.gen_e(F, base) if a <= 7 else Cliff.gen_f(F, base)
    if convention == "legacy":
        base = _LEGACY_TAU[base]
    return Cliff.gen_f(F, base) if a <= 7 else Cliff.gen_e(F, base)


def torus_element(F: FieldSpec, i: int, lam: int,
                  convention: str = "reversed") -> Cliff:
    """s_i(lam) = lam^-1 + (lam - lam^-1) w_i w_{7+i}."""
    if lam == 0:
        raise ValueError("torus parameter must be nonzero")
    li = F.inv(lam)
    pair = _w(F, i, convention) * _w(F, 7 + i, convention)
    return Cliff.scalar(F, li) + pair.smul(F.sub(lam, li))


def root_element(F: FieldSpec, i: int, j: int, lam: int,
                 convention: str = "reversed") -> Cliff:
    """s_{i,j}(lam) = 1 + lam w_i w_j, requiring (w_i, w_j) = 0."""
    if i == j or abs(i - j) == 7:
        raise ValueError("indices must name orthogonal basis vectors")
    pair = _w(F, i, convention) * _w(F, j, convention)
    return Cliff.one(F) + pair.smul(lam)


def exp_quadratic(F: FieldSpec, terms: Iterable[Tuple[int, int, int]],
                  convention: str = "reversed") -> Cliff:
    """exp u = prod (1 + a_ij w_i w_j) over the given (i, j, a) terms."""
    acc = Cliff.one(F)
    for (i, j, a) in terms:
        acc = acc * root_element(F, i, j, a, convention)
    return acc


def vector_action(s: Cliff, v: Sequence[int]) -> Tuple[int, ...]:
    """Theta(s) v = s v s^-1 on a 14-coefficient vector
    (a1..a7 for e1..e7, b1..b7 for f1..f7)."""
    F = s.F
    terms: Dict[Mono, int] = {}
    for i in range(7):
        if v[i]:
            terms[(1 << i, 0)] = v[i]
        if v[7 + i]:
            terms[(0, 1 << i)] = v[7 + i]
    img = s * Cliff(F, terms) * s.inverse()
    out = img.degree_one_part()
    if out is None:
        raise ValueError("conjugate is not of degree 1")
    return out


# ----------------------------------------------------------------------
# half-spin module
# ----------------------------------------------------------------------

class Spinor:
    """Sum of monomials f_S, S a subset of {1..7}: {mask: coeff}."""

    __slots__ = ("F", "terms")

    def __init__(self, F: FieldSpec, terms: Optional[Dict[int, int]] = None):
        self.F = F
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @staticmethod
    def monomial(F: FieldSpec, indices: Iterable[int], c: int = 1) -> "Spinor":
        mask = 0
        for i in indices:
            if not 1 <= i <= 7:
                raise ValueError("spinor index out of range")
            mask |= 1 << (i - 1)
        return Spinor(F, {mask: c})

    @staticmethod
    def from_string(F: FieldSpec, text: str) -> "Spinor":
        """Parse sums like "1 + f1f2f3f4 + f3f4f5f6"."""
        acc = Spinor(F)
        for part in text.replace(" ", "").split("+"):
            if not part:
                continue
            if part == "1":
                acc = acc + Spinor(F, {0: 1})
                continue
            digits = [int(d) for d in part.replace("f", "") if d.isdigit()]
            acc = acc + Spinor.monomial(F, digits)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Spinor) and self.F == other.F and \
            self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "Spinor(0)"
        parts = []
        for m, c in sorted(self.terms.items()):
            body = "".join(f"f{i + 1}" for i in range(7) if m & (1 << i)) or "1"
            parts.append(f"{c}*{body}" if (c != 1 or body == "1") else body)
        return "Spinor(" + " + ".join(parts) + ")"

    def __add__(self, other: "Spinor") -> "Spinor":
        F = self.F
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return Spinor(F, out)

    def smul(self, c: int) -> "Spinor":
        F = self.F
        return Spinor(F, {m: F.mul(c, x) for m, x in self.terms.items()})

    def is_even(self) -> bool:
        return all(bin(m).count("1") % 2 == 0 for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def _wedge(F: FieldSpec, j: int, x: Spinor) -> Spinor:
    bit = 1 << j
    out: Dict[int, int] = {}
    for m, c in x.terms.items():
        if m & bit:
            continue
        if _popcount_below(m, j) % 2:
            c = F.neg(c)
        key = m | bit
        out[key] = F.add(out.get(key, 0), c)
    return Spinor(F, out)


def _contract(F: FieldSpec, j: int, x: Spinor) -> Spinor:
    bit = 1 << j
    out: Dict[int, int] = {}
    for m, c in x.terms.items():
        if not m & bit:
            continue
        if _popcount_below(m, j) % 2:
            c = F.neg(c)
        key = m & ~bit
        out[key] = F.add(out.get(key, 0), c)
    return Spinor(F, out)


def spin_action(s: Cliff, x: Spinor, require_even: bool = True) -> Spinor:
    """Left multiplication on the minimal left ideal: rho(s) . x."""
    if s.F != x.F:
        raise ValueError("field mismatch")
    if require_even and not s.is_even():
        raise ValueError("spin action requires an even Clifford element")
    F = s.F
    acc = Spinor(F)
    for (e, f), c in s.terms.items():
        cur = x.smul(c)
        for j in reversed(range(7)):       # rightmost generator first
            if f & (1 << j):
                cur = _wedge(F, j, cur)
        for j in reversed(range(7)):
            if e & (1 << j):
                cur = _contract(F, j, cur)
        acc = acc + cur
    return acc


# ----------------------------------------------------------------------
# expression parsing (CLI "spinor eval")
# ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<plus>\+)"
    r"|(?P<exp>exp\(([^()]*)\))"
    r"|(?P<root>s\{?(\d+)\s*,\s*(\d+)\}?\((\d+)\))"
    r"|(?P<torus>s(\d+)\((\d+)\))"
    r"|(?P<gen>[ef][1-7])"
    r"|(?P<scalar>\d+)"
    r")")


def parse_clifford(F: FieldSpec, text: str,
                   convention: str = "reversed") -> Cliff:
    """Parse a sum of juxtaposed products of generators e1..e7, f1..f7,
    torus elements s{i}(lam), root elements s{i,j}(lam), scalars, and
    exp(i,j:a; ...) factors."""
    total = Cliff(F)
    pos = 0
    current: Optional[Cliff] = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse expression at: {text[pos:]!r}")
        pos = m.end()
        if m.group("plus"):
            if current is None:
                raise ValueError("unexpected '+'")
            total = total + current
            current = None
            continue
        if m.group("exp"):
            terms = []
            body = m.group(3).strip()
            if body:
                for part in body.split(";"):
                    ij, _, a = part.partition(":")
                    i, j = (int(t) for t in ij.split(","))
                    terms.append((i, j, int(a) % F.q if a else 1))
            factor = exp_quadratic(F, terms, convention)
        elif m.group("root"):
            i, j, lam = int(m.group(5)), int(m.group(6)), int(m.group(7))
            factor = root_element(F, i, j, lam % F.q, convention)
        elif m.group("torus"):
            i, lam = int(m.group(9)), int(m.group(10))
            factor = torus_element(F, i, lam % F.q, convention)
        elif m.group("gen"):
            tok = m.group("gen")
            idx = int(tok[1])
            factor = Cliff.gen_e(F, idx) if tok[0] == "e" else \
                Cliff.gen_f(F, idx)
        else:
            factor = Cliff.scalar(F, int(m.group("scalar")) % F.q)
        current = factor if current is None else current * factor
    if current is not None:
        total = total + current
    return total


def as_spinor(x: Cliff) -> Optional[Spinor]:
    """View a Clifford element with f-only monomials as a spinor."""
    if any(e for (e, _f) in x.terms):
        return None
    return Spinor(x.F, {f: c for (_e, f), c in x.terms.items()})


def format_clifford(x: Cliff) -> str:
    return _format_terms(x.terms)


def spin_quadratic(x: Spinor) -> int:
    """The characteristic-2 quadratic form Q_X: each even S <= {1..6}
    pairs with its complement in {1..6}, and S u {7} with
    (complement of S) u {7}."""
    F = x.F
    if F.p != 2:
        raise ValueError("the spinor quadratic form is defined at p = 2 only")
    acc = 0
    seen = set()
    for m, c in x.terms.items():
        partner = (m & 0x40) | ((m & 0x3F) ^ 0x3F)
        if m in seen or partner in seen:
            continue
        seen.add(m)
        seen.add(partner)
        c2 = x.terms.get(partner, 0)
        acc = F.add(acc, F.mul(c, c2))
    return acc
