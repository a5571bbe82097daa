"""Exact-computation engine for orbit classifications of classical-group
modules over small finite fields: fields, matrices, quadratic forms,
group generators, module constructions, a Clifford/spinor layer, orbit
scans, and a verification CLI."""

from .field import GF, FieldSpec

__all__ = ["GF", "FieldSpec"]
__version__ = "0.1.0"
