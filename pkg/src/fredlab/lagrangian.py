"""Graphs of symmetric operators as Lagrangian subspaces of the doubled space.

The doubling ``R^n (+) R^n`` carries the complex structure ``J = [[0,-I],[I,0]]``;
a subspace is Lagrangian when ``J`` maps it onto its orthogonal complement.
Graphs ``{(x, Ax)}`` of symmetric matrices are exactly such subspaces, and the
pair ``(R^n (+) 0, graph)`` is the finite shadow of a Fredholm pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, topology
from .errors import AmbientMismatch, NonSquare
from .linalg import DEFAULT_TOLERANCES, Subspace
from .topology import SelfAdjointOperator

#: Residual below which the Lagrangian condition J P J^T = I - P is accepted.
LAGRANGIAN_TOL = 1e-10


@dataclass(frozen=True)
class SymplecticDoubling:
    """The doubled space R^{2N} with its standard complex structure."""

    half_dim: int

    def __post_init__(self):
        if self.half_dim < 1:
            raise ValueError("half dimension must be positive")

    @property
    def ambient_dim(self):
        return 2 * self.half_dim

    def complex_structure(self):
        n = self.half_dim
        j = np.zeros((2 * n, 2 * n))
        j[:n, n:] = -np.eye(n)
        j[n:, :n] = np.eye(n)
        return j

    def horizontal(self):
        """The subspace R^N (+) 0."""
        basis = np.zeros((2 * self.half_dim, self.half_dim))
        basis[: self.half_dim] = np.eye(self.half_dim)
        return Subspace(self.ambient_dim, basis)


def graph_subspace(a):
    """Graph ``{(x, Ax)}`` as a subspace, built by orthonormalizing ``[I; A]``."""
    n = a.dim
    stacked = np.vstack([np.eye(n), a.matrix])
    q, r = np.linalg.qr(stacked)
    # fix the sign convention so the basis is deterministic
    q = q * np.sign(np.diag(r))
    return Subspace(2 * n, q)


def graph_projection_formula(a):
    """Projection onto the graph from the resolvent-style block formula.

    Independent of the QR construction and of spectral calculus: the blocks
    ``(1+A^2)^{-1}``, ``(1+A^2)^{-1} A``, ``A (1+A^2)^{-1}`` and
    ``A (1+A^2)^{-1} A`` are computed with plain linear solves.
    """
    m = a.matrix
    n = a.dim
    g = np.linalg.solve(np.eye(n) + m @ m, np.eye(n))
    return np.block([[g, g @ m], [m @ g, m @ g @ m]])


def is_lagrangian(s, doubling, tol=LAGRANGIAN_TOL):
    """Whether ``J`` carries ``s`` onto its orthogonal complement."""
    if s.ambient_dim != doubling.ambient_dim:
        raise AmbientMismatch(
            f"subspace lives in R^{s.ambient_dim}, doubling in R^{doubling.ambient_dim}"
        )
    if s.dim != doubling.half_dim:
        return False
    p = linalg.projection_from_basis(s)
    j = doubling.complex_structure()
    residual = linalg.operator_norm(j @ p @ j.T - (np.eye(s.ambient_dim) - p))
    return bool(residual <= tol)


@dataclass(frozen=True, eq=False)
class LagrangianPair:
    """Two Lagrangian subspaces of one doubling, validated at construction."""

    lambda0: Subspace
    lambda1: Subspace

    def __post_init__(self):
        if self.lambda0.ambient_dim != self.lambda1.ambient_dim:
            raise AmbientMismatch("pair must share the ambient space")
        ambient = self.lambda0.ambient_dim
        if ambient % 2 != 0:
            raise ValueError("ambient dimension must be even")
        doubling = SymplecticDoubling(ambient // 2)
        for name, s in (("lambda0", self.lambda0), ("lambda1", self.lambda1)):
            if not is_lagrangian(s, doubling):
                raise ValueError(f"{name} is not Lagrangian")


def fredholm_pair_index(pair, tol=DEFAULT_TOLERANCES):
    """Index and kernel dimension of a pair of Lagrangians.

    Returns ``(dim(L0 & L1) - codim(L0 + L1), dim(L0 & L1))``.  For two
    half-dimensional subspaces of a finite doubling the index is always 0;
    the informative integer is the kernel dimension.
    """
    meet, codim = linalg.subspace_meet_dims(pair.lambda0, pair.lambda1, tol)
    return meet - codim, meet


def suspension(l):
    """Odd selfadjoint operator ``[[0, L^T], [L, 0]]`` encoding a square matrix.

    Anticommutes with the grading ``diag(I, -I)`` by construction; its
    spectrum is the symmetrized set of singular values of ``L``.
    """
    l = np.asarray(l, dtype=float)
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise NonSquare(f"suspension needs a square matrix, got shape {l.shape}")
    n = l.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, n:] = l.T
    out[n:, :n] = l
    return SelfAdjointOperator(out)


def kato_consistency(a0, a1):
    """Graph distance and gap distance of a pair, for joint-convergence checks."""
    delta = topology.subspace_gap(graph_subspace(a0), graph_subspace(a1))
    return delta, topology.gap_metric(a0, a1)
