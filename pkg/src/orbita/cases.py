"""Factory for the module cases the suite studies: for each named
action it assembles the representation matrices of the group
generators, the (unique) invariant quadratic form, the action kernel,
and the distinguished representatives to be checked.

Cases
-----
A1-sym4       PGL2(q) on quartic binary forms (dim 5, p >= 5)
A2-adjoint    SL3(q) conjugating trace-zero 3x3 matrices (dim 8, p != 3)
B2-adjoint    Sp4(q) conjugating its Lie algebra (dim 10, p odd)
A3-adjoint-p2 SL4(q) conjugating sl4/<I> (dim 14, p = 2)
D4-so8-p2     Omega+8(2) conjugating W/<I> (dim 26, q = 2)
C4-lambda2-p2 Sp8(q) on ker(contraction) of Lambda^2 modulo <omega> (dim 26, p = 2)
C3-lambda2    Sp6(q) on ker(contraction) of Lambda^2 (dim 14, p != 3)
Sp4xSp4       Sp4(q) x Sp4(q) on 4x4 matrices (dim 16)
Sp4xSpN       Sp4(q) x SpN(q) on 4xN matrices (dim 4N)
Sp6xSp6-diag  Sp6(q) x Sp6(q) on 6x6 matrices; singular 1-spaces
              analyzed through diagonal double cosets (see scan)
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb, gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .field import GF, FieldSpec
from .groups import GroupSpec, classical_generators, group_order, symplectic_gram
from .matrix import (
    Mat, ProjectivePoint, canonical_point, is_nilpotent, is_semisimple,
)
from .quadform import QuadraticForm, invariant_quadratic_space


# ----------------------------------------------------------------------
# sub/quotient coordinate machinery
# ----------------------------------------------------------------------

class Subquotient:
    """Coordinates on span(basis)/span(quotient) inside F^ambient.

    `basis` spans the submodule W (it may be redundant with the
    quotient vectors); `quotient` is a central subspace Z of W.  The
    class picks a deterministic complement of Z in W and provides
    coordinates, a lifting section, and push-forward of ambient linear
    maps to the subquotient.
    """

    def __init__(self, F: FieldSpec, ambient: int,
                 basis: Sequence[Sequence[int]],
                 quotient: Sequence[Sequence[int]] = ()):
        self.F = F
        self.ambient = ambient
        kept: List[Tuple[int, ...]] = []
        echelon: List[List[int]] = []   # row-reduced copies of kept rows
        pivots: List[int] = []

        def try_add(v) -> bool:
            w = list(v)
            for row, pc in zip(echelon, pivots):
                if w[pc]:
                    c = w[pc]
                    w = [F.sub(x, F.mul(c, y)) for x, y in zip(w, row)]
            pc = next((i for i, x in enumerate(w) if x), None)
            if pc is None:
                return False
            inv = F.inv(w[pc])
            echelon.append([F.mul(inv, x) for x in w])
            pivots.append(pc)
            kept.append(tuple(v))
            return True

        for v in quotient:
            if not try_add(v):
                raise ValueError("quotient vectors must be independent")
        self.n_quot = len(kept)
        for v in basis:
            try_add(v)
        self.dim = len(kept) - self.n_quot
        self._section = kept[self.n_quot:]
        # coordinate extractor: x = v[J] . inv(S[:, J]) recovers full
        # coordinates in the kept rows, since those are independent
        S = Mat(F, kept)
        _, piv = S.rref()
        self._cols = piv
        self._Sinv = Mat(F, [[S[i, j] for j in piv]
                             for i in range(len(kept))]).inverse()
        self._S = S

    def full_coords(self, v: Sequence[int]) -> Tuple[int, ...]:
        sub = tuple(v[j] for j in self._cols)
        x = self._Sinv.apply(sub)
        if self._S.apply(x) != tuple(v):
            raise ValueError("vector not in the submodule")
        return x

    def coords(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Subquotient coordinates of an ambient vector in W."""
        return self.full_coords(v)[self.n_quot:]

    def lift(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """Section: subquotient coordinates -> ambient representative."""
        F = self.F
        out = [0] * self.ambient
        for c, row in zip(coords, self._section):
            if c:
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def push_action(self, ambient_map: Mat) -> Mat:
        """Module matrix of an ambient linear map preserving W and Z."""
        rows = [self.coords(ambient_map.apply(b)) for b in self._section]
        return Mat(self.F, rows)


def conjugation_matrix(g: Mat) -> Mat:
    """Matrix of X -> g^-1 X g on row-major flattened n x n matrices."""
    F = g.F
    n = g.n
    gi = g.inverse()
    out = [[0] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            src = i * n + j
            for a in range(n):
                c1 = gi[a, i]
                if not c1:
                    continue
                for b in range(n):
                    c2 = g[j, b]
                    if c2:
                        out[src][a * n + b] = F.add(out[src][a * n + b],
                                                    F.mul(c1, c2))
    return Mat(F, out)


def flatten_mat(M: Mat) -> Tuple[int, ...]:
    return tuple(x for row in M.rows for x in row)


# ----------------------------------------------------------------------
# ModuleCase
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Representative:
    label: str
    coords: Optional[Tuple[int, ...]]   # None when absent over this field
    ext_degree: int = 1                 # coords live over GF(q^ext_degree)
    note: str = ""


@dataclass(frozen=True)
class ModuleCase:
    id: str
    F: FieldSpec
    dim: int
    gens: Tuple[Mat, ...]
    groups: Tuple[GroupSpec, ...]
    form: QuadraticForm
    kernel_order: int
    effective_order: int
    representatives: Tuple[Representative, ...] = ()
    invariant_name: Optional[str] = None
    invariant_fn: Optional[Callable[[Sequence[int]], str]] = dc_field(
        default=None, compare=False, repr=False)
    structure: dict = dc_field(default_factory=dict, compare=False, repr=False)
    notes: Tuple[str, ...] = ()

    def __repr__(self) -> str:
        return f"ModuleCase({self.id}, q={self.F.q}, dim={self.dim})"


def _eval_form_ext(form: QuadraticForm, coords: Sequence[int],
                   E: FieldSpec) -> int:
    """Evaluate the form on coordinates given over an extension field."""
    F = form.F
    phi = F.embedding_into(E)
    acc = 0
    n = form.dim
    for i in range(n):
        for j in range(i, n):
            u = form.U[i][j]
            if u:
                acc = E.add(acc, E.mul(phi(u), E.mul(coords[i], coords[j])))
    return acc


def _finalize(case: ModuleCase) -> ModuleCase:
    """Exact build-time checks shared by all cases."""
    for g in case.gens:
        assert g.det() != 0, "generator image not invertible"
        assert case.form.is_invariant_under(g), \
            f"{case.id}: generator does not preserve the form"
    for rep in case.representatives:
        if rep.coords is None:
            continue
        if rep.ext_degree == 1:
            assert case.form.evaluate(rep.coords) == 0, \
                f"{case.id}: representative {rep.label} is not singular"
        else:
            E = GF(case.F.q ** rep.ext_degree)
            assert _eval_form_ext(case.form, rep.coords, E) == 0, \
                f"{case.id}: representative {rep.label} is not singular"
    return case


# ----------------------------------------------------------------------
# A1-sym4: PGL2 on quartic forms
# ----------------------------------------------------------------------

def _sym4_matrix(g: Mat) -> Mat:
    """Substitution action on the basis e^4, e^3 f, e^2 f^2, e f^3, f^4."""
    F = g.F
    a, b = g[0, 0], g[0, 1]
    c, d = g[1, 0], g[1, 1]

    def power_coeffs(x, y, s):
        # (x e + y f)^s as f-degree coefficient list
        return [F.mul(F.mul(comb(s, t) % F.p, F.pow(x, s - t)), F.pow(y, t))
                for t in range(s + 1)]

    rows = []
    for i in range(5):
        pe = power_coeffs(a, b, 4 - i)
        pf = power_coeffs(c, d, i)
        out = [0] * 5
        for t1, c1 in enumerate(pe):
            for t2, c2 in enumerate(pf):
                out[t1 + t2] = F.add(out[t1 + t2], F.mul(c1, c2))
        rows.append(out)
    return Mat(F, rows)


def build_sym4(q: int) -> ModuleCase:
    F = GF(q)
    if F.p < 5:
        raise ValueError("A1-sym4 requires characteristic >= 5")
    G = classical_generators("PGL2", 2, q)
    # Q(v) = v0 v4 - v1 v3 / 4 + v2^2 / 12 (symmetrized tensor pairing)
    U = [[0] * 5 for _ in range(5)]
    U[0][4] = 1
    U[1][3] = F.neg(F.inv(4 % F.p))
    U[2][2] = F.inv(12 % F.p)
    form = QuadraticForm(F, U)
    gens = []
    for g in G.generators:
        S = _sym4_matrix(g)
        # a determinant-d generator scales Q by d^4; rescaling its image
        # by d^-2 restores exact invariance without changing the
        # projective action
        d = g.det()
        if d != 1:
            S = S.scale(F.inv(F.mul(d, d)))
        gens.append(S)
    reps = (
        Representative("e^4", (1, 0, 0, 0, 0)),
        Representative("e^3 f", (0, 1, 0, 0, 0)),
    )
    return _finalize(ModuleCase(
        "A1-sym4", F, 5, tuple(gens), (G,), form,
        kernel_order=1, effective_order=G.order, representatives=reps))


# ----------------------------------------------------------------------
# adjoint-type conjugation cases
# ----------------------------------------------------------------------

def _conj_case(case_id: str, F: FieldSpec, n: int, groups: Tuple[GroupSpec, ...],
               group_gens: Sequence[Mat], basis_mats: Sequence[Mat],
               quotient_mats: Sequence[Mat], kernel_order: int) -> Tuple:
    """Shared scaffolding: subquotient, pushed generators, solved form."""
    subq = Subquotient(F, n * n,
                       [flatten_mat(M) for M in basis_mats],
                       [flatten_mat(M) for M in quotient_mats])
    gens = [subq.push_action(conjugation_matrix(g)) for g in group_gens]
    basis = invariant_quadratic_space(F, gens)
    assert len(basis) == 1, \
        f"{case_id}: invariant quadratic space has dimension {len(basis)}"
    return subq, gens, basis[0]


def _coset_flag(F, subq: Subquotient, n: int, with_cosets: bool):
    """nilpotent/semisimple label of a module vector's matrix (coset)."""
    def flag(coords) -> str:
        M = Mat(F, [list(subq.lift(coords)[i * n:(i + 1) * n])
                    for i in range(n)])
        cands = [M]
        if with_cosets:
            I = Mat.identity(F, n)
            cands = [M + I.scale(c) for c in F.elements()]
        if any(is_nilpotent(C) for C in cands):
            return "nilpotent"
        if any(is_semisimple(C) for C in cands):
            return "semisimple"
        return "mixed"
    return flag


def build_adjoint(case: str, q: int) -> ModuleCase:
    F = GF(q)
    p = F.p
    if case == "A2":
        if p == 3:
            raise ValueError("A2-adjoint requires characteristic not 3")
        G = classical_generators("SL", 3, q)
        basis = [_unit_mat(F, 3, i, j) for i in range(3) for j in range(3) if i != j]
        basis.append(Mat.diag(F, [1, F.neg(1), 0]))
        basis.append(Mat.diag(F, [0, 1, F.neg(1)]))
        subq, gens, form = _conj_case("A2-adjoint", F, 3, (G,), G.generators,
                                      basis, [], gcd(3, q - 1))
        kernel = gcd(3, q - 1)
        reps, notes = _zero_weight_reps(F, subq, 3, form, _a2_diags(F))
        return _finalize(ModuleCase(
            "A2-adjoint", F, 8, tuple(gens), (G,), form,
            kernel_order=kernel, effective_order=G.order // kernel,
            representatives=reps,
            invariant_name="nilpotent-or-semisimple",
            invariant_fn=_coset_flag(F, subq, 3, False),
            structure={"subq": subq, "ambient": 3}, notes=notes))
    if case == "B2":
        if p == 2:
            raise ValueError("B2-adjoint requires odd characteristic")
        G = classical_generators("Sp", 4, q)
        J = G.gram
        # sp4 = kernel of X -> X J + J X^T
        L = [[0] * 16 for _ in range(16)]
        for i in range(4):
            for j in range(4):
                src = i * 4 + j
                for b in range(4):
                    L[src][i * 4 + b] = F.add(L[src][i * 4 + b], J[j, b])
                for a in range(4):
                    L[src][a * 4 + i] = F.add(L[src][a * 4 + i], J[a, j])
        basis_vecs = Mat(F, L).kernel()
        assert len(basis_vecs) == 10
        basis = [Mat(F, [list(v[i * 4:(i + 1) * 4]) for i in range(4)])
                 for v in basis_vecs]
        subq, gens, form = _conj_case("B2-adjoint", F, 4, (G,), G.generators,
                                      basis, [], 2)
        reps, notes = _zero_weight_reps(F, subq, 4, form, _b2_diags(F))
        return _finalize(ModuleCase(
            "B2-adjoint", F, 10, tuple(gens), (G,), form,
            kernel_order=2, effective_order=G.order // 2,
            representatives=reps,
            invariant_name="nilpotent-or-semisimple",
            invariant_fn=_coset_flag(F, subq, 4, False),
            structure={"subq": subq, "ambient": 4}, notes=notes))
    if case == "A3p2":
        if p != 2:
            raise ValueError("A3-adjoint-p2 requires characteristic 2")
        G = classical_generators("SL", 4, q)
        pair_order = [(i, j) for i in range(4) for j in range(4) if i != j]
        basis = [_unit_mat(F, 4, i, j) for (i, j) in pair_order]
        basis.append(Mat.diag(F, [1, 1, 0, 0]))
        basis.append(Mat.diag(F, [0, 1, 1, 0]))
        subq, gens, form = _conj_case("A3-adjoint-p2", F, 4, (G,), G.generators,
                                      basis, [Mat.identity(F, 4)], 1)
        # normalize so that (E12-bar, E21-bar) is a hyperbolic pair
        e12 = subq.coords(flatten_mat(_unit_mat(F, 4, 0, 1)))
        e21 = subq.coords(flatten_mat(_unit_mat(F, 4, 1, 0)))
        c = form.polar(e12, e21)
        assert c != 0
        form = form.scale(F.inv(c))
        assert form.polar(e12, e21) == 1
        kernel = gcd(4, q - 1)
        reps = []
        roots = sorted(F.quadratic_roots(1, 1, 1))
        for a in roots:
            coords = subq.coords(flatten_mat(Mat.diag(F, [0, 1, a, F.add(1, a)])))
            reps.append(Representative(f"diag(0,1,a,1+a)+<I>, a={a}", coords))
        notes = ()
        if not roots:
            reps.append(Representative(
                "diag(0,1,a,1+a)+<I>", None,
                note=f"needs a^2+a+1=0, insoluble over GF({q})"))
            notes = (f"zero-weight semisimple representatives absent over GF({q})",)
        return _finalize(ModuleCase(
            "A3-adjoint-p2", F, 14, tuple(gens), (G,), form,
            kernel_order=kernel, effective_order=G.order // kernel,
            representatives=tuple(reps),
            invariant_name="nilpotent-or-semisimple",
            invariant_fn=_coset_flag(F, subq, 4, True),
            structure={"subq": subq, "ambient": 4}, notes=notes))
    if case == "D4p2":
        if q != 2:
            raise ValueError("D4-so8-p2 is supported only at q = 2")
        from .groups import block_to_interleaved
        F = GF(2)
        G = classical_generators("OmegaPlus", 8, 2)
        T = block_to_interleaved(F, 8)
        Ti = T.inverse()
        # work in the block basis e1..e4, f1..f4 where W has the block
        # shape [[A, P], [Q, A^T]] with P, Q symmetric zero-diagonal
        group_gens = [T * g * Ti for g in G.generators]
        basis = []
        for i in range(4):
            for j in range(4):
                if i != j:
                    M = [[0] * 8 for _ in range(8)]
                    M[i][j] = 1
                    M[4 + j][4 + i] = 1
                    basis.append(Mat(F, M))
        for i in range(3):
            d = [0] * 8
            d[i] = d[i + 1] = d[4 + i] = d[4 + i + 1] = 1
            basis.append(Mat.diag(F, d))
        for i in range(4):
            for j in range(i + 1, 4):
                M = [[0] * 8 for _ in range(8)]
                M[i][4 + j] = M[j][4 + i] = 1
                basis.append(Mat(F, M))
                N = [[0] * 8 for _ in range(8)]
                N[4 + i][j] = N[4 + j][i] = 1
                basis.append(Mat(F, N))
        subq, gens, form = _conj_case("D4-so8-p2", F, 8, (G,), group_gens,
                                      basis, [Mat.identity(F, 8)], 1)
        assert subq.dim == 26
        return _finalize(ModuleCase(
            "D4-so8-p2", F, 26, tuple(gens), (G,), form,
            kernel_order=1, effective_order=G.order,
            representatives=(Representative(
                "semisimple zero-weight class", None,
                note="needs a^2+a+1=0, insoluble over GF(2); "
                     "every singular class over GF(2) is nilpotent"),),
            invariant_name="nilpotent-or-semisimple",
            invariant_fn=_coset_flag(F, subq, 8, True),
            structure={"subq": subq, "ambient": 8}))
    raise ValueError(f"unknown adjoint case {case!r}")


def _unit_mat(F, n, i, j) -> Mat:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return Mat(F, rows)


def _a2_diags(F):
    for a in F.elements():
        for b in F.elements():
            c = F.neg(F.add(a, b))
            if a or b or c:
                yield Mat.diag(F, [a, b, c])


def _b2_diags(F):
    for a in F.elements():
        for b in F.elements():
            if a or b:
                yield Mat.diag(F, [a, b, F.neg(b), F.neg(a)])


def _zero_weight_reps(F, subq, n, form, diags):
    """Singular points of the diagonal (zero-weight) subspace."""
    seen = {}
    for D in diags:
        coords = subq.coords(flatten_mat(D))
        if any(coords) and form.evaluate(coords) == 0:
            pt = canonical_point(F, coords)
            seen[pt.key] = pt
    reps = tuple(Representative(f"zero-weight-singular-{t + 1}", pt.coords)
                 for t, (_, pt) in enumerate(sorted(seen.items())))
    if reps:
        notes = (f"{len(reps)} zero-weight singular point(s) over GF({F.q})",)
    else:
        notes = (f"no zero-weight singular points over GF({F.q})",)
    return reps, notes


def zero_weight_singular_points(case: ModuleCase) -> List[ProjectivePoint]:
    """Distinct singular projective points of the zero-weight space."""
    subq = case.structure.get("subq")
    if subq is None:
        raise ValueError("case has no diagonal subspace structure")
    F = case.F
    n = case.structure["ambient"]
    if case.id == "A2-adjoint":
        diags = _a2_diags(F)
    elif case.id == "B2-adjoint":
        diags = _b2_diags(F)
    elif case.id == "A3-adjoint-p2":
        def gen():
            for a in F.elements():
                for b in F.elements():
                    for c in F.elements():
                        d = F.add(a, F.add(b, c))
                        yield Mat.diag(F, [a, b, c, d])
        diags = gen()
    else:
        raise ValueError(f"no zero-weight enumeration for {case.id}")
    seen = {}
    for D in diags:
        coords = subq.coords(flatten_mat(D))
        if any(coords) and case.form.evaluate(coords) == 0:
            pt = canonical_point(F, coords)
            seen[pt.key] = pt
    return [seen[k] for k in sorted(seen)]


# ----------------------------------------------------------------------
# lambda^2 of the symplectic module
# ----------------------------------------------------------------------

def _lambda2_matrix(g: Mat, pairs: List[Tuple[int, int]]) -> Mat:
    F = g.F
    D = len(pairs)
    rows = []
    for (i, j) in pairs:
        out = [0] * D
        for t, (k, l) in enumerate(pairs):
            v = F.sub(F.mul(g[i, k], g[j, l]), F.mul(g[i, l], g[j, k]))
            out[t] = v
        rows.append(out)
    return Mat(F, rows)


def build_lambda2_sp(n: int, q: int) -> ModuleCase:
    F = GF(q)
    p = F.p
    if n == 3:
        if p == 3:
            raise ValueError("C3-lambda2 requires characteristic not 3")
        case_id = "C3-lambda2"
    elif n == 4:
        if p != 2:
            raise ValueError("C4-lambda2-p2 requires characteristic 2")
        case_id = "C4-lambda2-p2"
    else:
        raise ValueError("lambda2 cases are built for n in {3, 4}")
    deg = 2 * n
    G = classical_generators("Sp", deg, q)
    J = G.gram
    pairs = [(i, j) for i in range(deg) for j in range(i + 1, deg)]
    index = {pr: t for t, pr in enumerate(pairs)}
    D = len(pairs)
    # contraction along the symplectic form; its kernel is the module
    phi = [J[i, j] for (i, j) in pairs]
    kernel_vecs = Mat(F, [phi]).right_kernel()
    assert len(kernel_vecs) == D - 1
    quotient = []
    omega = [0] * D
    for i in range(n):
        omega[index[(i, deg - 1 - i)]] = 1   # e_i ^ f_i
    contraction_of_omega = n % p
    if contraction_of_omega == 0:
        quotient = [tuple(omega)]
    subq = Subquotient(F, D, kernel_vecs, quotient)
    expected = 2 * n * n - n - 1 - (1 if quotient else 0)
    assert subq.dim == expected
    gens = [subq.push_action(_lambda2_matrix(g, pairs))
            for g in G.generators]
    basis = invariant_quadratic_space(F, gens)
    assert len(basis) == 1, f"{case_id}: invariant space dim {len(basis)}"
    form = basis[0]
    kernel_order = gcd(2, q - 1)
    return _finalize(ModuleCase(
        case_id, F, subq.dim, tuple(gens), (G,), form,
        kernel_order=kernel_order, effective_order=G.order // kernel_order,
        structure={"subq": subq, "pairs": pairs}))


# ----------------------------------------------------------------------
# tensor products of symplectic modules
# ----------------------------------------------------------------------

def tensor_gram(F: FieldSpec, m: int, n: int) -> QuadraticForm:
    """Product-of-forms quadratic form on m x n matrices (row-major).

    With both factors in the e_1..e_mu, f_mu..f_1 ordering, coordinate
    (i, c) pairs with (m+1-i, n+1-c); the sign is +1 for c <= n/2 and
    -1 otherwise.
    """
    mu, nu = m // 2, n // 2
    U = [[0] * (m * n) for _ in range(m * n)]
    for i in range(1, mu + 1):
        ii = m + 1 - i
        for c in range(1, n + 1):
            cc = n + 1 - c
            t1 = (i - 1) * n + (c - 1)
            t2 = (ii - 1) * n + (cc - 1)
            U[t1][t2] = 1 if c <= nu else F.neg(1)
    return QuadraticForm(F, U)


def _tensor_left_matrix(g: Mat, m: int, n: int) -> Mat:
    """Module matrix of A -> g A on flattened m x n matrices."""
    F = g.F
    out = [[0] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for b in range(n):
            src = i * n + b
            for a in range(m):
                if g[a, i]:
                    out[src][a * n + b] = g[a, i]
    return Mat(F, out)


def _tensor_right_matrix(h: Mat, m: int, n: int) -> Mat:
    """Module matrix of A -> A h^T on flattened m x n matrices."""
    F = h.F
    out = [[0] * (m * n) for _ in range(m * n)]
    for a in range(m):
        for j in range(n):
            src = a * n + j
            for b in range(n):
                if h[b, j]:
                    out[src][a * n + b] = h[b, j]
    return Mat(F, out)


def _flat_units(F, m, n, entries) -> Tuple[int, ...]:
    out = [0] * (m * n)
    for (i, j, c) in entries:
        out[i * n + j] = F.add(out[i * n + j], c)
    return tuple(out)


def _sp4sp4_representatives(F: FieldSpec) -> Tuple[Representative, ...]:
    """Orbit representatives on singular 1-spaces of the 4x4 tensor
    case, in the basis ordering e1, e2, f2, f1 (so e1<->0, e2<->1,
    f2<->2, f1<->3)."""
    m = n = 4
    E = lambda *ents: _flat_units(F, m, n, [(i, j, 1) for (i, j) in ents])
    common = [
        Representative("e1*e1+f1*e2+e2*f2", E((0, 0), (3, 1), (1, 2))),
        Representative("e1*e1+e2*e2", E((0, 0), (1, 1))),
        Representative("e1*e1+f1*e2", E((0, 0), (3, 1))),
        Representative("e1*e1+e2*f1", E((0, 0), (1, 3))),
        Representative("e1*e1", E((0, 0))),
    ]
    if F.p == 2:
        vI = flatten_mat(Mat.identity(F, 4))
        vI_plus = list(vI)
        vI_plus[0 * 4 + 1] = F.add(vI_plus[0 * 4 + 1], 1)
        return tuple([Representative("v_I", vI),
                      Representative("v_I+e1*e2", tuple(vI_plus))] + common)
    # rank-4 representative diag(1,1,w,-w) with w^2 = -1
    w = F.square_root(F.neg(1))
    if w is not None:
        rep = Representative("diag(1,1,w,-w)",
                             flatten_mat(Mat.diag(F, [1, 1, w, F.neg(w)])))
    else:
        EF = GF(F.q ** 2)
        we = EF.square_root(EF.neg(1))
        assert we is not None
        phi = F.embedding_into(EF)
        rep = Representative(
            "diag(1,1,w,-w)",
            flatten_mat(Mat.diag(EF, [phi(1), phi(1), we, EF.neg(we)])),
            ext_degree=2,
            note=f"w^2=-1 has no root over GF({F.q}); checked over GF({F.q ** 2})")
    return tuple([rep] + common)


def build_tensor_spsp(m: int, n: int, q: int) -> ModuleCase:
    if m % 2 or n % 2 or m < 4 or n < 4:
        raise ValueError("tensor factors must have even degree >= 4")
    F = GF(q)
    G1 = classical_generators("Sp", m, q)
    G2 = classical_generators("Sp", n, q) if n != m else G1
    gens = [_tensor_left_matrix(g, m, n) for g in G1.generators]
    gens += [_tensor_right_matrix(h, m, n) for h in G2.generators]
    form = tensor_gram(F, m, n)
    if (m, n) == (4, 4):
        reps = _sp4sp4_representatives(F)
    else:
        reps = (Representative("e1*e1", _flat_units(F, m, n, [(0, 0, 1)])),)
    kernel_order = gcd(2, q - 1)    # (-I, -I) for odd q
    case_id = "Sp4xSp4" if (m, n) == (4, 4) else f"Sp{m}xSp{n}"

    def rank_fn(coords):
        return f"rank-{Mat(F, [list(coords[i * n:(i + 1) * n]) for i in range(m)]).rank()}"

    return _finalize(ModuleCase(
        case_id, F, m * n, tuple(gens), (G1, G2), form,
        kernel_order=kernel_order,
        effective_order=G1.order * G2.order // kernel_order,
        representatives=reps, invariant_name="tensor-rank",
        invariant_fn=rank_fn))


# ----------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CaseInfo:
    id: str
    constraints: str
    dim: str
    group: str
    builder: Callable[..., ModuleCase] = dc_field(compare=False, repr=False,
                                                  default=None)


def _build_sp6_diag(q: int) -> ModuleCase:
    case = build_tensor_spsp(6, 6, q)
    return ModuleCase(
        "Sp6xSp6-diag", case.F, case.dim, case.gens, case.groups, case.form,
        case.kernel_order, case.effective_order, case.representatives,
        case.invariant_name, case.invariant_fn, dict(case.structure),
        notes=("full orbit scan infeasible; singular 1-spaces analyzed "
               "through diagonal double cosets (see scan)",))


CASES: Dict[str, CaseInfo] = {
    "A1-sym4": CaseInfo("A1-sym4", "p >= 5", "5", "PGL2(q)",
                        lambda q, **kw: build_sym4(q)),
    "A2-adjoint": CaseInfo("A2-adjoint", "p != 3", "8", "SL3(q)",
                           lambda q, **kw: build_adjoint("A2", q)),
    "B2-adjoint": CaseInfo("B2-adjoint", "p odd", "10", "Sp4(q)",
                           lambda q, **kw: build_adjoint("B2", q)),
    "A3-adjoint-p2": CaseInfo("A3-adjoint-p2", "p = 2", "14", "SL4(q)",
                              lambda q, **kw: build_adjoint("A3p2", q)),
    "D4-so8-p2": CaseInfo("D4-so8-p2", "q = 2", "26", "Omega+8(2)",
                          lambda q, **kw: build_adjoint("D4p2", q)),
    "C4-lambda2-p2": CaseInfo("C4-lambda2-p2", "p = 2", "26", "Sp8(q)",
                              lambda q, **kw: build_lambda2_sp(4, q)),
    "C3-lambda2": CaseInfo("C3-lambda2", "p != 3", "14", "Sp6(q)",
                           lambda q, **kw: build_lambda2_sp(3, q)),
    "Sp4xSp4": CaseInfo("Sp4xSp4", "any q", "16", "Sp4(q) x Sp4(q)",
                        lambda q, **kw: build_tensor_spsp(4, 4, q)),
    "Sp4xSpN": CaseInfo("Sp4xSpN", "any q; even N >= 4 (default 6)", "4N",
                        "Sp4(q) x SpN(q)",
                        lambda q, n=6, **kw: build_tensor_spsp(4, n, q)),
    "Sp6xSp6-diag": CaseInfo("Sp6xSp6-diag", "any q", "36",
                             "Sp6(q) x Sp6(q)",
                             lambda q, **kw: _build_sp6_diag(q)),
}


def list_cases() -> List[CaseInfo]:
    return [CASES[k] for k in sorted(CASES)]


def build_case(case_id: str, q: int, **kw) -> ModuleCase:
    if case_id not in CASES:
        raise ValueError(f"unknown case {case_id!r}; known: {sorted(CASES)}")
    return CASES[case_id].builder(q, **kw)
