"""Low-degree cohomology of a presentation with module coefficients.

The three-term complex attached to B = A[x_1..x_n]/(f_1..f_m) runs

    (syzygies of f mod Koszul)  ->  free rank m  ->  free rank n

and applying Hom(-, J) gives a cochain complex of finite k-spaces

    J^n  --D0-->  J^m  --D1-->  {Psi in J^r : W Psi = 0}

whose cohomology spaces are computed here.  D0 acts by the Jacobian,
D1 by the chosen syzygy generators s^(1)..s^(r), and the W rows record
every relation among the s's modulo Koszul syzygies, so the last term
is the honest Hom out of the quotient.  The identities D1 D0 = 0 and
W D1 = 0 hold exactly at the matrix level and are asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .algebras import FiniteModule, PresentedAlgebra
from .differential import block_matrix, jacobian_entries, relation_syzygies
from .groebner import module_syzygies, normal_form
from .linalg import Matrix, complete_basis, kernel_basis, solve_affine, vec_is_zero
from .poly import GREVLEX, Polynomial


@dataclass
class CotangentComplex:
    """Presentation data of the three-term complex of B."""

    B: PresentedAlgebra
    jac: Tuple[Tuple[Polynomial, ...], ...]       # m rows, n cols
    syz: Tuple[Tuple[Polynomial, ...], ...]       # r vectors in the rank-m free module
    kos: Tuple[Tuple[Polynomial, ...], ...]       # Koszul vectors, for reference
    w_rows: Tuple[Tuple[Polynomial, ...], ...]    # relations among the syzygy classes

    @property
    def n_gens(self) -> int:
        return self.B.n_gens

    @property
    def n_rels(self) -> int:
        return len(self.B.relations)

    @property
    def n_syz(self) -> int:
        return len(self.syz)


def koszul_vectors(B: PresentedAlgebra) -> List[List[Polynomial]]:
    m = len(B.relations)
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            vec = [B.zero_poly() for _ in range(m)]
            vec[i] = B.relations[j]
            vec[j] = -B.relations[i]
            out.append(vec)
    return out


def cotangent_complex(B: PresentedAlgebra) -> CotangentComplex:
    """Build the complex and assert its structural identities."""
    m = len(B.relations)
    jac = tuple(tuple(r) for r in jacobian_entries(B))
    syz = relation_syzygies(B)
    kos = koszul_vectors(B)

    base_gb = B.base_groebner()
    for vec in syz:
        acc = B.zero_poly()
        for j in range(m):
            acc = acc + vec[j] * B.relations[j]
        if not normal_form(acc, base_gb).is_zero():
            raise AssertionError("syzygy does not pair to zero over the base")
        for i in range(B.n_gens):
            d = B.zero_poly()
            for j in range(m):
                d = d + vec[j] * B.relations[j].derivative(B.n_base + i)
            if not B.normal_form(d).is_zero():
                raise AssertionError("syzygy does not compose to zero with the Jacobian")
    for vec in kos:
        acc = B.zero_poly()
        for j in range(m):
            acc = acc + vec[j] * B.relations[j]
        if not acc.is_zero():
            raise AssertionError("Koszul vector is not a syzygy")

    r = len(syz)
    w_rows: List[Tuple[Polynomial, ...]] = []
    if r:
        family = [list(v) for v in syz] + [list(v) for v in kos]
        for g in B.base_relations:
            for b in range(m):
                vec = [B.zero_poly() for _ in range(m)]
                vec[b] = g
                family.append(vec)
        rels = module_syzygies(family, m, GREVLEX)
        seen = set()
        for rel in rels:
            crow = tuple(B.normal_form(rel[k]) for k in range(r))
            if all(p.is_zero() for p in crow):
                continue
            key = tuple(tuple(sorted(p.terms.items())) for p in crow)
            if key in seen:
                continue
            seen.add(key)
            # the c-part must pair with the syzygy vectors into the ideal
            for j in range(m):
                acc = B.zero_poly()
                for k in range(r):
                    acc = acc + crow[k] * syz[k][j]
                if not B.normal_form(acc).is_zero():
                    raise AssertionError("relation row does not kill the syzygy classes")
            w_rows.append(crow)
        w_rows.sort(key=lambda row: [p.key() for p in row])

    return CotangentComplex(
        B,
        jac,
        tuple(tuple(v) for v in syz),
        tuple(tuple(v) for v in kos),
        tuple(w_rows),
    )


@dataclass
class CochainMaps:
    """Scalar matrices of the Hom complex for one coefficient module."""

    complex: CotangentComplex
    J: FiniteModule
    d0: Matrix  # J^n -> J^m
    d1: Matrix  # J^m -> J^r
    w: Matrix   # J^r -> J^(#w_rows)


def cochain_maps(cx: CotangentComplex, J: FiniteModule) -> CochainMaps:
    B = cx.B
    m, n, r = cx.n_rels, cx.n_gens, cx.n_syz
    d0 = block_matrix(J, [list(row) for row in cx.jac], m, n)
    d1 = block_matrix(J, [[cx.syz[k][j] for j in range(m)] for k in range(r)], r, m)
    w = block_matrix(J, [[row[k] for k in range(r)] for row in cx.w_rows], len(cx.w_rows), r)
    if not d1.mul(d0).is_zero():
        raise AssertionError("cochain maps do not compose to zero in low degree")
    if not w.mul(d1).is_zero():
        raise AssertionError("cochain maps do not compose to zero in top degree")
    return CochainMaps(cx, J, d0, d1, w)


@dataclass
class CohomologyClass:
    """An element of T^degree, stored as a flat cocycle vector."""

    B: PresentedAlgebra
    J: FiniteModule
    degree: int
    vector: tuple

    def is_cocycle_of(self, maps: CochainMaps) -> bool:
        v = list(self.vector)
        if self.degree == 1:
            return vec_is_zero(self.J.field, maps.d1.mul_vec(v))
        if self.degree == 2:
            return vec_is_zero(self.J.field, maps.w.mul_vec(v))
        return True


@dataclass
class TModuleResult:
    """One cohomology space: dimension plus representative cocycles."""

    B: PresentedAlgebra
    J: FiniteModule
    degree: int
    dim: int
    reps: Tuple[tuple, ...]
    cocycle_dim: int
    coboundary_dim: int
    maps: CochainMaps

    def classes(self) -> Tuple[CohomologyClass, ...]:
        return tuple(CohomologyClass(self.B, self.J, self.degree, v) for v in self.reps)


def _quotient_result(
    B: PresentedAlgebra,
    J: FiniteModule,
    degree: int,
    cocycles: Matrix,
    coboundary_cols: Matrix,
    maps: CochainMaps,
) -> TModuleResult:
    f = J.field
    ambient = cocycles.nrows
    inner = [coboundary_cols.col(c) for c in range(coboundary_cols.ncols)]
    outer = [cocycles.col(c) for c in range(cocycles.ncols)]
    from .linalg import span_rank

    cob_rank = span_rank(f, inner, ambient)
    picked = complete_basis(f, inner, outer, ambient)
    dim = cocycles.ncols - cob_rank
    if len(picked) != dim:
        raise AssertionError("transversal size disagrees with the rank count")
    reps = tuple(tuple(outer[i]) for i in picked)
    return TModuleResult(B, J, degree, dim, reps, cocycles.ncols, cob_rank, maps)


def t_modules(B: PresentedAlgebra, J: FiniteModule) -> Tuple[TModuleResult, TModuleResult, TModuleResult]:
    """T^0, T^1, T^2 of B over its base with coefficients in J."""
    cx = cotangent_complex(B)
    maps = cochain_maps(cx, J)
    f = J.field

    k0 = kernel_basis(maps.d0)
    res0 = _quotient_result(B, J, 0, k0, Matrix.zeros(f, k0.nrows, 0), maps)

    k1 = kernel_basis(maps.d1)
    res1 = _quotient_result(B, J, 1, k1, maps.d0, maps)

    k2 = kernel_basis(maps.w)
    res2 = _quotient_result(B, J, 2, k2, maps.d1, maps)
    return res0, res1, res2


def t_module(B: PresentedAlgebra, J: FiniteModule, degree: int) -> TModuleResult:
    if degree not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    return t_modules(B, J)[degree]


def is_coboundary(cls: CohomologyClass, maps: Optional[CochainMaps] = None) -> Tuple[bool, Optional[list]]:
    """Decide whether a cocycle bounds; the witness is the preimage
    under the previous differential, re-verified before returning."""
    if maps is None:
        maps = cochain_maps(cotangent_complex(cls.B), cls.J)
    if cls.degree == 1:
        prev = maps.d0
    elif cls.degree == 2:
        prev = maps.d1
    else:
        return (vec_is_zero(cls.J.field, list(cls.vector)), [])
    if not cls.is_cocycle_of(maps):
        raise ValueError("vector is not a cocycle")
    sol = solve_affine(prev, list(cls.vector))
    if sol is None:
        return (False, None)
    if prev.mul_vec(sol) != list(cls.vector):
        raise AssertionError("solver returned a bad witness")
    return (True, sol)
