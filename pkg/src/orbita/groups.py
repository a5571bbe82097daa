"""Generator sets and exact orders for the finite classical groups the
suite acts with, plus small explicit permutation groups with
automorphisms for twisted-class computations.

Conventions fixed here once and used everywhere:

* Vectors are rows and groups act on the right (v -> v.g).
* Symplectic/orthogonal bases are ordered e_1..e_n, f_n..f_1, so basis
  position i pairs with position 2n+1-i (1-based).  The symplectic
  Gram J is antidiagonal with +1 above the middle and -1 below; the
  block convention J' = [[0, -I],[I, 0]] used in some sources is this
  J conjugated by the recorded permutation `block_to_interleaved`.
* The plus-type quadratic form is Q(v) = sum_{i<=n} v_i v_{2n+1-i}.

Generator recipes are root elements for the simple roots (positive and
negative), with parameters running over a GF(p)-basis of GF(q); these
generate the full group (validated by closure at tiny parameters and
by transitivity/orbit-divisibility checks downstream).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

from .field import GF, FieldSpec
from .matrix import Mat
from .quadform import QuadraticForm


# ----------------------------------------------------------------------
# forms
# ----------------------------------------------------------------------

def symplectic_gram(F: FieldSpec, degree: int) -> Mat:
    """Antidiagonal symplectic Gram for basis e_1..e_n, f_n..f_1."""
    if degree % 2:
        raise ValueError("symplectic degree must be even")
    n = degree // 2
    J = [[0] * degree for _ in range(degree)]
    for i in range(n):
        J[i][degree - 1 - i] = 1
        J[degree - 1 - i][i] = F.neg(1)
    return Mat(F, J)


def plus_quadratic_form(F: FieldSpec, degree: int) -> QuadraticForm:
    """Q(v) = sum v_i v_(2n+1-i) over the first half: plus type."""
    if degree % 2:
        raise ValueError("even degree required")
    n = degree // 2
    U = [[0] * degree for _ in range(degree)]
    for i in range(n):
        U[i][degree - 1 - i] = 1
    return QuadraticForm(F, U)


def block_to_interleaved(F: FieldSpec, degree: int) -> Mat:
    """Permutation P with P^-1 . J_block . P^-T = J (row convention),
    sending the e_1..e_n, f_1..f_n block ordering to e_1..e_n, f_n..f_1."""
    n = degree // 2
    P = [[0] * degree for _ in range(degree)]
    for i in range(n):
        P[i][i] = 1                      # e_i stays at slot i
        P[n + i][degree - 1 - i] = 1     # f_i moves to slot 2n+1-i
    return Mat(F, P)


# ----------------------------------------------------------------------
# GroupSpec
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    family: str                  # "SL" | "Sp" | "OmegaPlus" | "PGL2"
    n: int                       # matrix degree
    q: int
    F: FieldSpec
    generators: Tuple[Mat, ...]
    order: int
    gram: Optional[Mat] = None               # symplectic J for Sp
    quad: Optional[QuadraticForm] = None     # quadratic form for OmegaPlus

    def __repr__(self) -> str:
        return f"GroupSpec({self.family}{self.n}({self.q}), {len(self.generators)} gens)"


def group_order(family: str, n: int, q: int) -> int:
    """Standard order formulas, exact big integers."""
    if family == "SL":
        order = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            order *= q ** i - 1
        return order
    if family == "Sp":
        if n % 2:
            raise ValueError("Sp degree must be even")
        m = n // 2
        order = q ** (m * m)
        for i in range(1, m + 1):
            order *= q ** (2 * i) - 1
        return order
    if family == "OmegaPlus":
        if n % 2:
            raise ValueError("OmegaPlus degree must be even")
        m = n // 2
        order = q ** (m * (m - 1)) * (q ** m - 1)
        for i in range(1, m):
            order *= q ** (2 * i) - 1
        return order // gcd(2, q - 1)
    if family == "PGL2":
        return q * (q * q - 1)
    raise ValueError(f"unsupported family {family!r}")


def _field_basis(F: FieldSpec) -> List[int]:
    """GF(p)-basis 1, t, ..., t^(k-1) of GF(q), packed."""
    return [F.pack([1 if r == s else 0 for s in range(F.k)]) for r in range(F.k)]


def _elementary(F: FieldSpec, n: int, updates) -> Mat:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j, c) in updates:
        rows[i][j] = F.add(rows[i][j], c)
    return Mat(F, rows)


def sl_generators(F: FieldSpec, n: int) -> List[Mat]:
    gens = []
    for c in _field_basis(F):
        for i in range(n - 1):
            gens.append(_elementary(F, n, [(i, i + 1, c)]))
            gens.append(_elementary(F, n, [(i + 1, i, c)]))
    return gens


def sp_generators(F: FieldSpec, degree: int) -> List[Mat]:
    """Root elements for the simple roots of type C_n in the
    e_1..e_n, f_n..f_1 ordering."""
    n = degree // 2
    e = lambda i: i - 1            # 1-based e_i -> row index
    f = lambda i: degree - i       # 1-based f_i -> row index
    gens = []
    for c in _field_basis(F):
        mc = F.neg(c)
        for i in range(1, n):
            # eps_i - eps_{i+1}:  e_{i+1} += c e_i,  f_i -= c f_{i+1}
            gens.append(_elementary(F, degree, [(e(i + 1), e(i), c), (f(i), f(i + 1), mc)]))
            # eps_{i+1} - eps_i:  e_i += c e_{i+1},  f_{i+1} -= c f_i
            gens.append(_elementary(F, degree, [(e(i), e(i + 1), c), (f(i + 1), f(i), mc)]))
        # long roots ±2 eps_n: symplectic transvections along e_n, f_n
        gens.append(_elementary(F, degree, [(f(n), e(n), mc)]))
        gens.append(_elementary(F, degree, [(e(n), f(n), c)]))
    return gens


def omega_plus_generators(F: FieldSpec, degree: int) -> List[Mat]:
    """Siegel-transformation root elements for the simple roots of
    type D_n (eps_i - eps_{i+1} and eps_{n-1} + eps_n, both signs)."""
    n = degree // 2
    e = lambda i: i - 1
    f = lambda i: degree - i
    gens = []
    for c in _field_basis(F):
        mc = F.neg(c)
        for i in range(1, n):
            gens.append(_elementary(F, degree, [(e(i + 1), e(i), c), (f(i), f(i + 1), mc)]))
            gens.append(_elementary(F, degree, [(e(i), e(i + 1), c), (f(i + 1), f(i), mc)]))
        i, j = n - 1, n
        # eps_{n-1} + eps_n:  f_j += c e_i,  f_i -= c e_j
        gens.append(_elementary(F, degree, [(f(j), e(i), c), (f(i), e(j), mc)]))
        # -(eps_{n-1} + eps_n):  e_j += c f_i,  e_i -= c f_j
        gens.append(_elementary(F, degree, [(e(j), f(i), c), (e(i), f(j), mc)]))
    return gens


def classical_generators(family: str, n: int, q: int) -> GroupSpec:
    """Generator sets for SL_n(q), Sp_2m(q), Omega+_8(2), PGL_2(q).

    Every generator is checked against the family's defining form.
    """
    F = GF(q)
    if family == "SL":
        gens = sl_generators(F, n)
        for g in gens:
            assert g.det() == 1
        return GroupSpec("SL", n, q, F, tuple(gens), group_order("SL", n, q))
    if family == "Sp":
        if n % 2:
            raise ValueError("Sp degree must be even")
        J = symplectic_gram(F, n)
        gens = sp_generators(F, n)
        for g in gens:
            assert g * J * g.T == J, "generator does not preserve the symplectic form"
        return GroupSpec("Sp", n, q, F, tuple(gens), group_order("Sp", n, q), gram=J)
    if family == "OmegaPlus":
        if (n, q) != (8, 2):
            raise ValueError("OmegaPlus is supported only as Omega+_8(2)")
        Q = plus_quadratic_form(F, n)
        gens = omega_plus_generators(F, n)
        for g in gens:
            assert Q.is_invariant_under(g), "generator does not preserve the quadratic form"
        return GroupSpec("OmegaPlus", n, q, F, tuple(gens),
                         group_order("OmegaPlus", n, q), quad=Q)
    if family == "PGL2":
        gens = sl_generators(F, 2)
        if F.p != 2:
            nu = F.non_square()
            gens.append(Mat.diag(F, [nu, 1]))
        return GroupSpec("PGL2", 2, q, F, tuple(gens), group_order("PGL2", 2, q))
    raise ValueError(f"unsupported family {family!r}")


# ----------------------------------------------------------------------
# closure validation
# ----------------------------------------------------------------------

def _projective_normalize(M: Mat) -> Tuple[Tuple[int, ...], ...]:
    F = M.F
    flat = [x for row in M.rows for x in row]
    lead = next(x for x in flat if x)
    if lead == 1:
        return M.rows
    inv = F.inv(lead)
    return tuple(tuple(F.mul(inv, x) for x in row) for row in M.rows)


def closure_size(gens: Sequence[Mat], limit: int = 10 ** 6,
                 projective: bool = False) -> Optional[int]:
    """Breadth-first closure of the generated (matrix or projective)
    group; returns None when the closure exceeds `limit`."""
    if not gens:
        return 1
    key = _projective_normalize if projective else (lambda M: M.rows)
    start = Mat.identity(gens[0].F, gens[0].n)
    seen = {key(start)}
    frontier = [start]
    while frontier:
        new = []
        for M in frontier:
            for g in gens:
                Mg = M * g
                k = key(Mg)
                if k not in seen:
                    seen.add(k)
                    if len(seen) > limit:
                        return None
                    new.append(Mg)
        frontier = new
    return len(seen)


# ----------------------------------------------------------------------
# small explicit groups
# ----------------------------------------------------------------------

Perm = Tuple[int, ...]


def _pcompose(a: Perm, b: Perm) -> Perm:
    """(a then b): x -> b[a[x]]."""
    return tuple(b[a[x]] for x in range(len(a)))


def _pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def _perm_sign(a: Perm) -> int:
    sign = 1
    seen = [False] * len(a)
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SmallGroup:
    name: str
    elements: Tuple[Perm, ...]
    sigma: Callable[[Perm], Perm] = dc_field(default=lambda x: x, compare=False)
    sigma_name: str = "inner-trivial"

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return _pcompose(a, b)

    def inv(self, a: Perm) -> Perm:
        return _pinv(a)

    def identity(self) -> Perm:
        return tuple(range(len(self.elements[0])))

    def conjugacy_classes(self) -> List[List[Perm]]:
        rest = set(self.elements)
        classes = []
        while rest:
            x = min(rest)
            cls = {_pcompose(_pcompose(_pinv(z), x), z) for z in self.elements}
            assert cls <= set(self.elements)
            classes.append(sorted(cls))
            rest -= cls
        return sorted(classes, key=lambda c: (len(c), c[0]))


def small_group(name: str, automorphism: str = "inner-trivial") -> SmallGroup:
    """Alt4 or Sym4 on {0,1,2,3}; automorphism options 'inner-trivial'
    and 'conjugation-by-odd-element' (conjugation by the transposition
    (0 1), an outer automorphism of Alt4)."""
    import itertools
    if name not in ("Alt4", "Sym4"):
        raise ValueError("supported groups: Alt4, Sym4")
    all_perms = list(itertools.permutations(range(4)))
    if name == "Alt4":
        elements = tuple(p for p in all_perms if _perm_sign(p) == 1)
    else:
        elements = tuple(all_perms)
    if automorphism == "inner-trivial":
        sigma = lambda x: x
    elif automorphism == "conjugation-by-odd-element":
        t = (1, 0, 2, 3)
        sigma = lambda x: _pcompose(_pcompose(t, x), t)  # t^-1 x t, t = t^-1
    else:
        raise ValueError("unknown automorphism option")
    # sigma must be an automorphism of the group
    elset = set(elements)
    for a in elements:
        assert sigma(a) in elset
    for a in elements[:6]:
        for b in elements[:6]:
            assert sigma(_pcompose(a, b)) == _pcompose(sigma(a), sigma(b))
    return SmallGroup(name, elements, sigma, automorphism)
