"""Vectorized canonical projective-point space over GF(q).

A canonical point is the unique scalar multiple of a nonzero vector
whose first nonzero coordinate is 1.  Points are indexed densely:

    index = offset[lead] + (base-q value of the coordinates after the
            leading 1, most significant first)

with offset[i] counting all canonical points whose leading 1 sits
before position i.  The total is (q^dim - 1)/(q - 1).  The same base-q
packing (over the full coordinate vector) is used as the key encoding
of matrix.canonical_point, so index and key are interconvertible.

All bulk operations work on numpy arrays of coordinate codes (uint8,
one packed GF(q) element per coordinate).  Matrix actions decompose
the field into GF(p) digits so the heavy lifting is a float32 matmul
of small residues (exact: all intermediate values < 2^24).
"""

from __future__ import annotations

from typing import Iterator, Tuple

import numpy as np

from .field import FieldSpec
from .matrix import Mat


def blowup_matrix(g: Mat) -> np.ndarray:
    """GF(p)-linear matrix of the row action v -> v.g on p-ary digits.

    Coordinate i of GF(q)=GF(p^k) occupies digit columns i*k..i*k+k-1
    (low digit first).  Returns a float32 (dim*k, dim*k) array.
    """
    F = g.F
    p, k, dim = F.p, F.k, g.n
    if g.m != dim:
        raise ValueError("square generator required")
    D = dim * k
    out = np.zeros((D, D), dtype=np.float32)
    for i in range(dim):
        for j in range(dim):
            a = g[i, j]
            if not a:
                continue
            for r in range(k):
                prod = F.mul(F.pack([1 if t == r else 0 for t in range(k)]), a)
                digs = F.coeffs(prod)
                for s in range(k):
                    if digs[s]:
                        out[i * k + r, j * k + s] = digs[s]
    return out


class PointSpace:
    """Canonical projective points of GF(q)^dim with dense indexing."""

    def __init__(self, F: FieldSpec, dim: int):
        self.F = F
        self.dim = dim
        q = F.q
        self.q = q
        self.p, self.k = F.p, F.k
        self.n_points = (q ** dim - 1) // (q - 1)
        self.powvec = np.array([q ** (dim - 1 - j) for j in range(dim)],
                               dtype=np.int64)
        self.offsets = np.zeros(dim, dtype=np.int64)
        acc = 0
        for i in range(dim):
            self.offsets[i] = acc
            acc += q ** (dim - 1 - i)
        if F.np_mul is None:
            raise ValueError("field too large for vectorized point space")
        self._mul = F.np_mul
        self._add = F.np_add
        self._inv_rows = {v: F.np_mul[F.inv(v)] for v in range(2, q)}
        # digit weights for code <-> digit conversion
        self._digit_w = np.array([F.p ** r for r in range(F.k)], dtype=np.uint8)
        # residue table covering any digit dot product with a blown matrix
        self._modtab = (np.arange((F.p - 1) ** 2 * dim * F.k + 1,
                                  dtype=np.int64) % F.p).astype(np.uint8)

    # -- index <-> codes ----------------------------------------------

    def decode(self, idx: np.ndarray) -> np.ndarray:
        """(N,) int64 indices -> (N, dim) uint8 canonical codes."""
        idx = np.asarray(idx, dtype=np.int64)
        lead = np.searchsorted(self.offsets, idx, side="right") - 1
        r = idx - self.offsets[lead]
        codes = np.empty((idx.shape[0], self.dim), dtype=np.uint8)
        for j in range(self.dim):
            d, r = np.divmod(r, self.powvec[j])
            codes[:, j] = d
        codes[np.arange(idx.shape[0]), lead] = 1
        return codes

    def encode(self, codes: np.ndarray) -> np.ndarray:
        """(N, dim) uint8 codes of nonzero vectors -> canonical indices."""
        lead = np.argmax(codes != 0, axis=1)
        codes = self._scale_to_lead_one(codes, lead)
        idx = codes.astype(np.int64) @ self.powvec
        return idx - self.powvec[lead] + self.offsets[lead]

    def canonicalize(self, codes: np.ndarray) -> np.ndarray:
        """Scale each row so its first nonzero coordinate is 1."""
        return self._scale_to_lead_one(codes, np.argmax(codes != 0, axis=1))

    def _scale_to_lead_one(self, codes: np.ndarray, lead: np.ndarray
                           ) -> np.ndarray:
        if self.q == 2:
            return codes
        leadval = codes[np.arange(codes.shape[0]), lead]
        out = codes
        copied = False
        for v, row in self._inv_rows.items():
            mask = leadval == v
            if mask.any():
                if not copied:
                    out = codes.copy()
                    copied = True
                out[mask] = row[out[mask]]
        return out

    def iter_blocks(self, chunk: int = 1 << 20) -> Iterator[Tuple[int, np.ndarray]]:
        """Yield (start_index, codes) over the whole point space."""
        for start in range(0, self.n_points, chunk):
            stop = min(start + chunk, self.n_points)
            yield start, self.decode(np.arange(start, stop, dtype=np.int64))

    # -- linear action -------------------------------------------------

    def to_digits(self, codes: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return codes
        N = codes.shape[0]
        digs = np.empty((N, self.dim * self.k), dtype=np.uint8)
        for r in range(self.k):
            digs[:, r::self.k] = (codes // self._digit_w[r]) % self.p
        return digs

    def from_digits(self, digs: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return digs
        N = digs.shape[0]
        codes = np.zeros((N, self.dim), dtype=np.uint8)
        for r in range(self.k):
            codes += digs[:, r::self.k] * self._digit_w[r]
        return codes

    def act(self, codes: np.ndarray, blown: np.ndarray) -> np.ndarray:
        """Apply a blown generator (float32) to rows of codes."""
        digs = self.to_digits(codes).astype(np.float32)
        img = self._modtab[(digs @ blown).astype(np.int16)]
        return self.from_digits(img)

    def act_all(self, codes: np.ndarray, stack: np.ndarray) -> list:
        """Apply horizontally stacked blown generators in one matmul.

        Returns one (N, dim) code array per generator.
        """
        D = self.dim * self.k
        digs = self.to_digits(codes).astype(np.float32)
        img = self._modtab[(digs @ stack).astype(np.int16)]
        return [self.from_digits(np.ascontiguousarray(img[:, t:t + D]))
                for t in range(0, stack.shape[1], D)]

    # -- quadratic evaluation -----------------------------------------

    def eval_form(self, gram_upper, codes: np.ndarray) -> np.ndarray:
        """Vectorized Q(v) = sum U_ij v_i v_j over rows of codes."""
        add, mul = self._add, self._mul
        acc = np.zeros(codes.shape[0], dtype=np.uint8)
        for i in range(self.dim):
            row = gram_upper[i]
            for j in range(i, self.dim):
                u = row[j]
                if u:
                    term = mul[codes[:, i], codes[:, j]]
                    if u != 1:
                        term = mul[u, term]
                    acc = add[acc, term]
        return acc
