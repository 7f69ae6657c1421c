"""Derivations and the classical differential modules of a presentation.

For B = A[x_1..x_n]/(f_1..f_m) and a finite B-module J, an A-linear
derivation D: B -> J is determined by the images D(x_i); the images must
kill every relation through the chain rule, which is one block-linear
condition per relation.  The same Jacobian data presents the module of
differentials, and the syzygies of the relations present the conormal
module of the ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .algebras import FiniteModule, PresentedAlgebra
from .groebner import buchberger, normal_form, syzygy_basis
from .linalg import Matrix, kernel_basis, vec_add, vec_is_zero, vec_scale
from .poly import GREVLEX, Polynomial


def block_matrix(J: FiniteModule, entries: Sequence[Sequence[Polynomial]], nrows: int, ncols: int) -> Matrix:
    """Assemble the scalar matrix of a map J^ncols -> J^nrows whose
    (j, i) block acts by the polynomial entries[j][i]."""
    f = J.field
    t = J.rank
    if nrows == 0 or ncols == 0:
        return Matrix.zeros(f, nrows * t, ncols * t)
    rows = []
    for j in range(nrows):
        blocks = [J.action_of_poly(entries[j][i]) for i in range(ncols)]
        for rr in range(t):
            rows.append([b.entry(rr, cc) for b in blocks for cc in range(t)])
    return Matrix.from_rows(f, rows, ncols=ncols * t)


def jacobian_entries(B: PresentedAlgebra) -> List[List[Polynomial]]:
    """Partials of the relative relations by the relative generators,
    reduced to normal form; entry [j][i] is d f_j / d x_i mod the ideal."""
    nb = B.n_base
    out = []
    for fj in B.relations:
        out.append([B.normal_form(fj.derivative(nb + i)) for i in range(B.n_gens)])
    return out


def derivation_matrix(B: PresentedAlgebra, J: FiniteModule) -> Matrix:
    """The map J^n -> J^m whose kernel is the space of derivations."""
    jac = jacobian_entries(B)
    return block_matrix(J, jac, len(B.relations), B.n_gens)


@dataclass
class Derivation:
    """An A-linear derivation B -> J, stored by generator images."""

    B: PresentedAlgebra
    J: FiniteModule
    images: tuple  # one J-vector per relative generator

    def __post_init__(self):
        self.images = tuple(tuple(v) for v in self.images)
        if len(self.images) != self.B.n_gens:
            raise ValueError("need one image per relative generator")

    def apply(self, p: Polynomial) -> list:
        """D(p) for any representative p; independent of the choice."""
        B, J = self.B, self.J
        f = J.field
        nb = B.n_base
        out = [f.zero()] * J.rank
        for i in range(B.n_gens):
            part = p.derivative(nb + i)
            if part.is_zero():
                continue
            w = J.action_of_poly(part).mul_vec(list(self.images[i]))
            out = vec_add(f, out, w)
        return out

    def as_flat(self) -> list:
        return [c for v in self.images for c in v]

    def is_zero(self) -> bool:
        return all(vec_is_zero(self.J.field, v) for v in self.images)


@dataclass
class DerivationSpace:
    """Basis of the derivations of B over its base with values in J."""

    B: PresentedAlgebra
    J: FiniteModule
    matrix: Matrix
    basis: Tuple[Derivation, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def derivation_from_flat(B: PresentedAlgebra, J: FiniteModule, flat: Sequence) -> Derivation:
    t = J.rank
    imgs = [tuple(flat[i * t : (i + 1) * t]) for i in range(B.n_gens)]
    return Derivation(B, J, tuple(imgs))


def derivation_space(B: PresentedAlgebra, J: FiniteModule) -> DerivationSpace:
    mat = derivation_matrix(B, J)
    ker = kernel_basis(mat)
    basis = tuple(derivation_from_flat(B, J, ker.col(c)) for c in range(ker.ncols))
    for d in basis:
        for r in B.ideal_gens():
            if not vec_is_zero(J.field, d.apply(r)):
                raise AssertionError("kernel vector is not a derivation")
    return DerivationSpace(B, J, mat, basis)


@dataclass
class KaehlerPresentation:
    """The module of relative differentials, by generators and relations.

    One generator per relative variable; one relation row per relative
    relation, with Jacobian entries in normal form.
    """

    B: PresentedAlgebra
    gen_labels: Tuple[str, ...]
    rows: Tuple[Tuple[Polynomial, ...], ...]

    def hom_dim(self, J: FiniteModule) -> int:
        """dim Hom_B(Omega, J); must match the derivation space of J."""
        mat = block_matrix(J, [list(r) for r in self.rows], len(self.rows), len(self.gen_labels))
        return kernel_basis(mat).ncols


def kaehler(B: PresentedAlgebra) -> KaehlerPresentation:
    labels = tuple("d" + n for n in B.gen_names)
    rows = tuple(tuple(r) for r in jacobian_entries(B))
    return KaehlerPresentation(B, labels, rows)


def relation_syzygies(B: PresentedAlgebra) -> List[List[Polynomial]]:
    """Generators of the syzygies of the relative relations over the base
    polynomial ring, as vectors with entries reduced modulo the base ideal.

    Each returned vector s satisfies: sum_j s_j f_j lies in the ideal of
    the base relations, exactly, in the flattened ring.
    """
    m = len(B.relations)
    if m == 0:
        return []
    gens = list(B.relations) + list(B.base_relations)
    syz = syzygy_basis(gens, GREVLEX)
    out = []
    seen = set()
    for col in syz.columns:
        vec = [B.base_normal_form(col[j]) for j in range(m)]
        if all(p.is_zero() for p in vec):
            continue
        key = tuple(tuple(sorted(p.terms.items())) for p in vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    out.sort(key=lambda v: [p.key() for p in v])
    return out


@dataclass
class ConormalPresentation:
    """I/I^2 as a B-module: one generator per relation, one relation row
    per syzygy, entries in normal form modulo the full ideal."""

    B: PresentedAlgebra
    gen_labels: Tuple[str, ...]
    rows: Tuple[Tuple[Polynomial, ...], ...]

    def hom_dim(self, J: FiniteModule) -> int:
        mat = block_matrix(J, [list(r) for r in self.rows], len(self.rows), len(self.gen_labels))
        return kernel_basis(mat).ncols


def conormal(B: PresentedAlgebra) -> ConormalPresentation:
    m = len(B.relations)
    labels = tuple(f"[{fj.to_string(B.names)}]" for fj in B.relations)
    syz = relation_syzygies(B)
    rows = tuple(tuple(B.normal_form(s) for s in vec) for vec in syz)
    # each reduced row must pair with the relations into the square of the ideal
    if m:
        sq_gens = [B.relations[i] * B.relations[j] for i in range(m) for j in range(i, m)]
        sq = buchberger(sq_gens + list(B.base_relations) or [B.zero_poly()], GREVLEX)
        for vec in rows:
            q = B.zero_poly()
            for j in range(m):
                q = q + vec[j] * B.relations[j]
            if not normal_form(q, sq).is_zero():
                raise AssertionError("conormal relation does not land in the ideal square")
    return ConormalPresentation(B, labels, rows)


def apply_derivation(D: Derivation, p: Polynomial) -> list:
    return D.apply(p)
