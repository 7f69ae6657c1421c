"""Square-zero extensions, lifting of maps, and base-change obstructions.

Everything here works with one concrete picture.  A square-zero
extension of B by the module J is a structure table on (basis of B)
followed by (basis of J): the chosen monomial section makes the
B-part of a product honest multiplication in B, and the J-part is a
symmetric correction table fed by a relation cocycle through exact
division cofactors.  Obstruction classes against a base extension
0 -> I -> A' -> A -> 0 are computed literally: pair each syzygy with
the relations, reduce the result in a presentation of A' where I is
spanned by explicit nilpotent variables, and push the coefficients
into J.  All identities that make these constructions well defined
are asserted at runtime rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .algebras import (
    AlgebraHom,
    FiniteModule,
    PresentedAlgebra,
    StructureAlgebra,
    validate,
)
from .cotangent import (
    CochainMaps,
    CohomologyClass,
    CotangentComplex,
    cochain_maps,
    cotangent_complex,
    is_coboundary,
    t_modules,
)
from .differential import derivation_space
from .fields import Field, PrimeField, Scalar
from .groebner import GroebnerBasis, buchberger, normal_form, normal_form_quotients
from .linalg import Matrix, kernel_basis, solve_affine, vec_add, vec_is_zero, vec_scale, vec_sub
from .poly import GREVLEX, Polynomial


def division_data(B: PresentedAlgebra, p: Polynomial) -> Tuple[Polynomial, List[Polynomial]]:
    """Deterministic division: p = nf + sum_i cof_i * gens_i with the
    cofactors indexed like B.ideal_gens(); the identity is re-checked."""
    gb = B.groebner()
    nf, quots = normal_form_quotients(p, gb)
    cof = [B.zero_poly() for _ in gb.gens]
    for j, q in enumerate(quots):
        if q.is_zero():
            continue
        for i, u in enumerate(gb.to_gens[j]):
            if not u.is_zero():
                cof[i] = cof[i] + q * u
    check = nf
    for c, g in zip(cof, gb.gens):
        check = check + c * g
    if check != p:
        raise AssertionError("division certificate failed to re-expand")
    return nf, cof


# ---------------------------------------------------------------------------
# square-zero extensions of B by J


@dataclass
class SquareZeroExtension:
    """0 -> J -> B' -> B -> 0 with J^2 = 0, in section coordinates."""

    B: PresentedAlgebra
    J: FiniteModule
    table: StructureAlgebra
    cocycle: Optional[tuple] = None  # flat vector in J^m, when known

    @property
    def s(self) -> int:
        return self.B.dim()

    @property
    def t(self) -> int:
        return self.J.rank

    def project(self, vec: Sequence[Scalar]) -> list:
        return list(vec[: self.s])

    def fiber_part(self, vec: Sequence[Scalar]) -> list:
        return list(vec[self.s :])

    def include_fiber(self, jvec: Sequence[Scalar]) -> list:
        return [self.J.field.zero()] * self.s + list(jvec)

    def section(self, bvec: Sequence[Scalar]) -> list:
        return list(bvec) + [self.J.field.zero()] * self.t

    def gen_image(self, v: int) -> list:
        return list(self.table.gen_images[v])

    def validate(self) -> List[str]:
        out = validate(self.table)
        f = self.J.field
        s, t = self.s, self.t
        for a in range(t):
            for b in range(t):
                prod = self.table.mul_entry(s + a, s + b)
                if any(not f.is_zero(c) for c in prod):
                    out.append("fiber is not square-zero")
        # the fiber must be an ideal whose B-action matches J
        for i in range(s):
            for b in range(t):
                prod = self.table.mul_entry(i, s + b)
                if any(not f.is_zero(c) for c in prod[:s]):
                    out.append("fiber is not an ideal")
                want = self.J.action_of_poly(self._basis_poly(i)).col(b)
                if prod[s:] != want:
                    out.append("fiber action disagrees with the module structure")
        # section projects to honest multiplication in B
        S = self.B.to_structure()
        for i in range(s):
            for j in range(i, s):
                if self.project(self.table.mul_entry(i, j)) != S.mul_entry(i, j):
                    out.append("section does not project onto the product of B")
        return out

    def _basis_poly(self, i: int) -> Polynomial:
        m = self.B.std_monomials()[i]
        return Polynomial.monomial(self.B.field, self.B.nvars, m)


def extension_from_cocycle(B: PresentedAlgebra, J: FiniteModule, psi: Sequence[Scalar]) -> SquareZeroExtension:
    """Build the extension table whose relation values are psi.

    psi is a flat vector in J^m (one J-value per relative relation); it
    must be killed by the syzygies, which is re-checked through the
    associativity of the produced table.
    """
    f = B.field
    std = B.std_monomials()
    s = len(std)
    t = J.rank
    m = len(B.relations)
    nb = len(B.base_relations)
    if len(psi) != m * t:
        raise ValueError("cocycle vector has the wrong length")
    psi_blocks = [list(psi[j * t : (j + 1) * t]) for j in range(m)]
    dim = s + t
    labels = tuple(B.mono_label(mo) for mo in std) + tuple("eps:" + l for l in J.labels)

    if isinstance(f, PrimeField):
        import numpy as np

        mul = np.zeros((dim, dim, dim), np.int64)
    else:
        mul = [[[f.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]

    def put(i, j, k, c):
        if isinstance(f, PrimeField):
            mul[i][j][k] = int(c) % f.p
            mul[j][i][k] = int(c) % f.p
        else:
            mul[i][j][k] = c
            mul[j][i][k] = c

    index = {mo: i for i, mo in enumerate(std)}
    for i, mi in enumerate(std):
        for j in range(i, s):
            w = Polynomial.monomial(f, B.nvars, tuple(a + b for a, b in zip(mi, std[j])))
            nf, cof = division_data(B, w)
            for mo, c in nf.terms.items():
                put(i, j, index[mo], c)
            corr = [f.zero()] * t
            for r in range(m):
                h = cof[nb + r]
                if h.is_zero():
                    continue
                corr = vec_add(f, corr, J.action_of_poly(h).mul_vec(psi_blocks[r]))
            for b in range(t):
                if not f.is_zero(corr[b]):
                    put(i, j, s + b, corr[b])
    # B times fiber: the module action; fiber times fiber: zero
    for i, mi in enumerate(std):
        act = J.action_of_poly(Polynomial.monomial(f, B.nvars, mi))
        for b in range(t):
            col = act.col(b)
            for c in range(t):
                if not f.is_zero(col[c]):
                    put(i, s + b, s + c, col[c])

    gen_images = []
    for v in range(B.nvars):
        vec = B.coordinates(B.var(v)) + [f.zero()] * t
        gen_images.append(vec)
    tab = StructureAlgebra(
        field=f,
        labels=labels,
        mul=mul,
        gen_names=B.names,
        gen_images=gen_images,
        base_names=B.base_names,
        base_images=gen_images[: B.n_base],
    )
    ext = SquareZeroExtension(B, J, tab, cocycle=tuple(psi))
    bad = validate(tab)
    if bad:
        raise ValueError(f"not a cocycle: the table fails validation: {bad}")
    return ext


def cocycle_from_extension(ext: SquareZeroExtension, gen_offsets: Optional[Sequence[Sequence[Scalar]]] = None) -> tuple:
    """Relation values of the extension under the monomial section,
    optionally shifted by J-offsets on the relative generator images.

    Different offsets change the answer by a coboundary and nothing
    else; with zero offsets this inverts extension_from_cocycle exactly.
    """
    B, J = ext.B, ext.J
    f = B.field
    imgs = [ext.gen_image(v) for v in range(B.nvars)]
    if gen_offsets is not None:
        if len(gen_offsets) != B.n_gens:
            raise ValueError("need one offset per relative generator")
        for i, off in enumerate(gen_offsets):
            imgs[B.n_base + i] = vec_add(f, imgs[B.n_base + i], ext.include_fiber(off))
    out = []
    for fj in B.relations:
        val = ext.table.evaluate(fj, imgs)
        if any(not f.is_zero(c) for c in ext.project(val)):
            raise AssertionError("relation value escaped the fiber")
        out.extend(ext.fiber_part(val))
    return tuple(out)


def trivial_extension(B: PresentedAlgebra, J: FiniteModule) -> SquareZeroExtension:
    t = J.rank
    return extension_from_cocycle(B, J, [B.field.zero()] * (len(B.relations) * t))


def extension_class(ext: SquareZeroExtension, maps: Optional[CochainMaps] = None) -> CohomologyClass:
    return CohomologyClass(ext.B, ext.J, 1, cocycle_from_extension(ext))


def is_trivial_extension(ext: SquareZeroExtension, maps: Optional[CochainMaps] = None) -> bool:
    ok, _ = is_coboundary(extension_class(ext), maps)
    return ok


def extensions_equivalent(e1: SquareZeroExtension, e2: SquareZeroExtension, maps: Optional[CochainMaps] = None) -> bool:
    f = e1.B.field
    c1 = cocycle_from_extension(e1)
    c2 = cocycle_from_extension(e2)
    diff = vec_sub(f, list(c1), list(c2))
    ok, _ = is_coboundary(CohomologyClass(e1.B, e1.J, 1, tuple(diff)), maps)
    return ok


def baer_sum(e1: SquareZeroExtension, e2: SquareZeroExtension) -> SquareZeroExtension:
    """Geometric Baer sum: fibered product over B, then quotient by the
    antidiagonal copy of J, re-coordinatized to section form."""
    if e1.B is not e2.B and e1.B.std_monomials() != e2.B.std_monomials():
        raise ValueError("extensions are not over the same algebra")
    B, J = e1.B, e1.J
    f = B.field
    s, t = e1.s, e1.t

    # basis of the fibered product: (sigma(b), sigma(b)), (eps_b, 0), (0, eps_b);
    # the class map sends (u + j1, u + j2) to (u, j1 + j2) in section form.
    def pair_mul(u1, u2, v1, v2):
        return e1.table.mul_vec(u1, v1), e2.table.mul_vec(u2, v2)

    dim = s + t
    rows = []
    reps = []  # representatives in the fibered product
    for i in range(s):
        b = [f.zero()] * (s + t)
        b[i] = f.one()
        reps.append((b, list(b)))
    for b in range(t):
        v = [f.zero()] * (s + t)
        v[s + b] = f.one()
        reps.append((v, [f.zero()] * (s + t)))

    if isinstance(f, PrimeField):
        import numpy as np

        mul = np.zeros((dim, dim, dim), np.int64)
    else:
        mul = [[[f.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]

    for i in range(dim):
        for j in range(i, dim):
            p1, p2 = pair_mul(reps[i][0], reps[i][1], reps[j][0], reps[j][1])
            if e1.project(p1) != e2.project(p2):
                raise AssertionError("product left the fibered subalgebra")
            cls = e1.project(p1) + vec_add(f, e1.fiber_part(p1), e2.fiber_part(p2))
            for k, c in enumerate(cls):
                if not f.is_zero(c):
                    if isinstance(f, PrimeField):
                        mul[i][j][k] = int(c)
                        mul[j][i][k] = int(c)
                    else:
                        mul[i][j][k] = c
                        mul[j][i][k] = c

    tab = StructureAlgebra(
        field=f,
        labels=e1.table.labels,
        mul=mul,
        gen_names=e1.table.gen_names,
        gen_images=[list(v) for v in e1.table.gen_images],
        base_names=e1.table.base_names,
        base_images=[list(v) for v in e1.table.base_images],
    )
    out = SquareZeroExtension(B, J, tab)
    bad = out.validate()
    if bad:
        raise AssertionError(f"Baer sum failed validation: {bad}")
    return out


def baer_difference(e1: SquareZeroExtension, e2: SquareZeroExtension) -> SquareZeroExtension:
    f = e1.B.field
    c2 = cocycle_from_extension(e2)
    neg = [f.neg(c) for c in c2]
    return baer_sum(e1, extension_from_cocycle(e1.B, e1.J, neg))


@dataclass
class ExtensionClassification:
    """The group of extension classes of B by J over the base."""

    B: PresentedAlgebra
    J: FiniteModule
    t1_dim: int
    representatives: Tuple[SquareZeroExtension, ...]
    count: Optional[int]  # number of classes when the field is finite
    complete: bool        # whether representatives covers every class

    def class_of(self, ext: SquareZeroExtension) -> int:
        """Index of the representative equivalent to ext."""
        for i, rep in enumerate(self.representatives):
            if extensions_equivalent(ext, rep):
                return i
        raise AssertionError("extension matches no representative")


def classify_extensions(B: PresentedAlgebra, J: FiniteModule, max_reps: int = 4096) -> ExtensionClassification:
    _, r1, _ = t_modules(B, J)
    f = B.field
    count = f.p**r1.dim if isinstance(f, PrimeField) else None
    if count is not None and count <= max_reps:
        # every class once: span the representative cocycles over the field
        p = f.p
        reps = []
        for n in range(count):
            vec = [f.zero()] * (len(B.relations) * J.rank)
            mcur = n
            for rep in r1.reps:
                dig = mcur % p
                mcur //= p
                if dig:
                    vec = vec_add(f, vec, vec_scale(f, dig, list(rep)))
            reps.append(extension_from_cocycle(B, J, vec))
        return ExtensionClassification(B, J, r1.dim, tuple(reps), count, True)
    reps = [trivial_extension(B, J)]
    for rep in r1.reps:
        reps.append(extension_from_cocycle(B, J, list(rep)))
    return ExtensionClassification(B, J, r1.dim, tuple(reps), count, r1.dim == 0)


def torsor_action(ext: SquareZeroExtension, cls: CohomologyClass) -> SquareZeroExtension:
    """Translate an extension by a degree-one class."""
    if cls.degree != 1:
        raise ValueError("extensions are translated by degree-one classes")
    f = ext.B.field
    psi = vec_add(f, list(cocycle_from_extension(ext)), list(cls.vector))
    return extension_from_cocycle(ext.B, ext.J, psi)


# ---------------------------------------------------------------------------
# lifting homomorphisms through a square-zero quotient


@dataclass
class LiftProblem:
    """Lift phi: B -> C through the square-zero quotient C' -> C.

    Concretely: C' is a structure table, the ideal N is the span of the
    last fiber_dim basis vectors... no assumption that strong: N is any
    list of coordinate vectors in C' closed under multiplication by C'
    with N*N = 0, and C-data is derived.  phi is recorded by preimage
    vectors in C' for every flattened generator of B.
    """

    B: PresentedAlgebra
    Cprime: StructureAlgebra
    n_basis: Tuple[tuple, ...]       # k-basis of the ideal, as C' vectors
    preimages: Tuple[tuple, ...]     # one C' vector per flattened generator of B
    J: FiniteModule = dc_field(init=False)

    def __post_init__(self):
        B, Cp = self.B, self.Cprime
        f = B.field
        if f != Cp.field:
            raise ValueError("field mismatch")
        nb = [list(v) for v in self.n_basis]
        t = len(nb)
        if t == 0:
            raise ValueError("the ideal must be nonzero to pose a lifting problem")
        nmat = Matrix.from_rows(f, nb, ncols=Cp.dim)
        if nmat.rank() != t:
            raise ValueError("ideal basis is linearly dependent")
        for u in nb:
            for v in nb:
                if any(not f.is_zero(c) for c in Cp.mul_vec(u, v)):
                    raise ValueError("ideal is not square-zero")
        # J: the ideal as a B-module through the preimages
        mats = []
        for v in range(B.nvars):
            cols = []
            for w in nb:
                prod = Cp.mul_vec(list(self.preimages[v]), w)
                coords = _coords_in_span(f, nb, prod, Cp.dim)
                if coords is None:
                    raise ValueError("ideal is not stable under the generator images")
                cols.append(coords)
            mats.append(Matrix.from_cols(f, cols, nrows=t))
        labels = tuple(f"n{i}" for i in range(t))
        self.J = FiniteModule(B, labels, tuple(mats), "presented")
        bad = validate(self.J)
        if bad:
            raise ValueError(f"ideal does not carry a module structure over B: {bad}")

    @classmethod
    def from_presented(
        cls,
        B: PresentedAlgebra,
        Cprime_pres: PresentedAlgebra,
        ideal_gens: Sequence[Polynomial],
        phi_images: Sequence[Polynomial],
    ) -> "LiftProblem":
        """Build the problem from a presented C' with a designated ideal."""
        Cp = Cprime_pres.to_structure()
        f = B.field
        std = Cprime_pres.std_monomials()
        # span of the ideal inside C'
        vecs = []
        for g in ideal_gens:
            for mo in std:
                p = g * Polynomial.monomial(f, Cprime_pres.nvars, mo)
                vecs.append(Cprime_pres.coordinates(p))
        mat = Matrix.from_rows(f, vecs, ncols=len(std)) if vecs else Matrix.zeros(f, 0, len(std))
        red, piv, rank = mat.rref()
        nb = [red.row(i) for i in range(rank)]
        pre = [Cprime_pres.coordinates(img) for img in phi_images]
        return cls(B, Cp, tuple(tuple(v) for v in nb), tuple(tuple(v) for v in pre))

    def defect(self) -> list:
        """f_j at the preimages, written in ideal coordinates (flat J^m)."""
        B, Cp = self.B, self.Cprime
        f = B.field
        out = []
        imgs = [list(v) for v in self.preimages]
        for fj in B.relations:
            val = Cp.evaluate(fj, imgs)
            coords = _coords_in_span(f, [list(v) for v in self.n_basis], val, Cp.dim)
            if coords is None:
                raise ValueError("a relation value is not in the ideal: the map does not land in C")
            out.extend(coords)
        # base relations must hold on the nose for the base structure to lift
        for g in B.base_relations:
            val = Cp.evaluate(g, imgs)
            if any(not f.is_zero(c) for c in val):
                raise ValueError("a base relation fails in the total ring")
        return out


def _coords_in_span(field: Field, basis: List[list], v: Sequence[Scalar], dim: int) -> Optional[list]:
    if not basis:
        return [] if vec_is_zero(field, list(v)) else None
    m = Matrix.from_cols(field, basis, nrows=dim)
    return solve_affine(m, list(v))


@dataclass
class LiftResult:
    problem: LiftProblem
    solvable: bool
    obstruction: CohomologyClass          # degree-one class of the defect
    correction: Optional[tuple]           # eta in J^n with D0 eta = -defect
    lifted_images: Optional[Tuple[tuple, ...]]
    freedom_dim: int                      # derivations = ambiguity of the lift
    count: Optional[int]                  # number of lifts over a finite field

    @property
    def t0_dim(self) -> int:
        return self.freedom_dim


def lift_homomorphism(problem: LiftProblem) -> LiftResult:
    B, J = problem.B, problem.J
    f = B.field
    delta = problem.defect()
    maps = cochain_maps(cotangent_complex(B), J)
    cls = CohomologyClass(B, J, 1, tuple(delta))
    if not cls.is_cocycle_of(maps):
        raise AssertionError("defect is not a cocycle")
    neg = [f.neg(c) for c in delta]
    eta = solve_affine(maps.d0, neg)
    ds = derivation_space(B, J)
    t = J.rank
    if eta is None:
        return LiftResult(problem, False, cls, None, None, ds.dim, 0 if isinstance(f, PrimeField) else None)
    # corrected preimages: v_i + eta_i, verified to kill every relation
    Cp = problem.Cprime
    nb = [list(v) for v in problem.n_basis]
    imgs = []
    for v in range(B.nvars):
        vec = list(problem.preimages[v])
        if v >= B.n_base:
            i = v - B.n_base
            off = eta[i * t : (i + 1) * t]
            lift_off = [f.zero()] * Cp.dim
            for b, c in enumerate(off):
                if not f.is_zero(c):
                    lift_off = vec_add(f, lift_off, vec_scale(f, c, nb[b]))
            vec = vec_add(f, vec, lift_off)
        imgs.append(vec)
    for fj in list(B.relations) + list(B.base_relations):
        val = Cp.evaluate(fj, imgs)
        if any(not f.is_zero(c) for c in val):
            raise AssertionError("corrected images do not satisfy the relations")
    count = f.p**ds.dim if isinstance(f, PrimeField) else None
    return LiftResult(problem, True, cls, tuple(eta), tuple(tuple(v) for v in imgs), ds.dim, count)


# ---------------------------------------------------------------------------
# obstructions against a base extension


@dataclass
class BaseDeformationProblem:
    """Deform B = A[x]/(f) across 0 -> I -> A' -> A -> 0, coefficients in J.

    I is a finite A-module with one action matrix per base generator;
    alpha records the value of each base relation inside I (the cocycle
    of the base extension); phi: I -> J is an A-linear map into the
    coefficient module.
    """

    B: PresentedAlgebra
    J: FiniteModule
    i_labels: Tuple[str, ...]
    i_mats: Tuple[Matrix, ...]     # action of each base generator on I
    alpha: Tuple[tuple, ...]       # one I-vector per base relation
    phi: Matrix                    # J.rank x len(i_labels)

    def __post_init__(self):
        B = self.B
        f = B.field
        tI = len(self.i_labels)
        if len(self.i_mats) != B.n_base:
            raise ValueError("need one action matrix per base generator")
        if len(self.alpha) != len(B.base_relations):
            raise ValueError("need one cocycle value per base relation")
        if self.phi.nrows != self.J.rank or self.phi.ncols != tI:
            raise ValueError("phi has the wrong shape")
        # I as a module over the base, validated through the machinery
        # for the base presented as an algebra over the ground field
        A = B.base_algebra()
        self._A = A
        I = FiniteModule(A, self.i_labels, self.i_mats, "presented")
        bad = validate(I)
        if bad:
            raise ValueError(f"I is not a module over the base: {bad}")
        self._I = I
        # alpha must be a cocycle for the base over the ground field,
        # which is exactly the condition that the base extension exists
        flat = [c for vec in self.alpha for c in vec]
        a_maps = cochain_maps(cotangent_complex(A), I)
        if not CohomologyClass(A, I, 1, tuple(flat)).is_cocycle_of(a_maps):
            raise ValueError("alpha is not a cocycle: no base extension has these values")
        # phi must intertwine the base actions
        for v in range(B.n_base):
            left = self.phi.mul(self.i_mats[v])
            right = self.J.action_of_poly(B.var(v)).mul(self.phi)
            if left != right:
                raise ValueError("phi is not linear over the base")
        self._zring = _ZRing(self)

    @classmethod
    def from_presented_total(
        cls,
        B: PresentedAlgebra,
        J: FiniteModule,
        Aprime: PresentedAlgebra,
        ideal_gens: Sequence[Polynomial],
        phi: Optional[Matrix] = None,
    ) -> "BaseDeformationProblem":
        """Read off I, alpha and the actions from a presented total ring.

        Aprime must use the same base generator names; its quotient by
        the span of ideal_gens must present the base of B.
        """
        f = B.field
        if Aprime.names != B.base_names:
            raise ValueError("total ring must be presented on the base generators")
        std = Aprime.std_monomials()
        vecs = []
        for g in ideal_gens:
            for mo in std:
                vecs.append(Aprime.coordinates(g * Polynomial.monomial(f, Aprime.nvars, mo)))
        mat = Matrix.from_rows(f, vecs, ncols=len(std)) if vecs else Matrix.zeros(f, 0, len(std))
        red, piv, rank = mat.rref()
        nb = [red.row(i) for i in range(rank)]
        for u in nb:
            for v in nb:
                w = _structure_mul(Aprime, u, v)
                if any(not f.is_zero(c) for c in w):
                    raise ValueError("designated ideal of the total ring is not square-zero")
        labels = tuple(f"i{k}" for k in range(rank))
        mats = []
        for v in range(Aprime.nvars):
            cols = []
            for u in nb:
                w = _structure_mul(Aprime, Aprime.coordinates(Aprime.var(v)), u)
                coords = _coords_in_span(f, nb, w, len(std))
                if coords is None:
                    raise ValueError("ideal is not stable in the total ring")
                cols.append(coords)
            mats.append(Matrix.from_cols(f, cols, nrows=rank))
        alpha = []
        for g in B.base_algebra().relations:
            val = Aprime.coordinates(g)
            coords = _coords_in_span(f, nb, val, len(std))
            if coords is None:
                raise ValueError("a base relation does not land in the ideal of the total ring")
            alpha.append(tuple(coords))
        if phi is None:
            if J.rank != rank:
                raise ValueError("phi omitted but J does not have the rank of I")
            phi = Matrix.identity(f, rank)
        return cls(B, J, labels, tuple(mats), tuple(alpha), phi)

    def aprime_presentation(self) -> "_ZRing":
        return self._zring


def _structure_mul(A: PresentedAlgebra, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
    """Product of two coordinate vectors in a presented algebra."""
    f = A.field
    std = A.std_monomials()
    acc = Polynomial.zero(f, A.nvars)
    for i, ci in enumerate(u):
        if f.is_zero(ci):
            continue
        for j, cj in enumerate(v):
            if f.is_zero(cj):
                continue
            mo = tuple(a + b for a, b in zip(std[i], std[j]))
            acc = acc + Polynomial.monomial(f, A.nvars, mo) * f.mul(ci, cj)
    return A.coordinates(acc)


class _ZRing:
    """Presentation of A' on (base gens, nilpotents, relative gens):
    base relations shifted by their cocycle values, products of
    nilpotents, and the action rows; reduction modulo it linearizes
    anything that lands in the ideal of the base relations."""

    def __init__(self, prob: BaseDeformationProblem):
        B = prob.B
        f = B.field
        nb = B.n_base
        tI = len(prob.i_labels)
        n = B.n_gens
        self.nvars = nb + tI + n
        self.nb, self.tI, self.n = nb, tI, n
        self.field = f
        # old flattened index -> new index (base first, x's after the z block)
        self.embed_map = list(range(nb)) + [nb + tI + i for i in range(n)]
        rels = []
        for a, g in enumerate(B.base_relations):
            p = g.embed(self.nvars, self.embed_map)
            for b, c in enumerate(prob.alpha[a]):
                if not f.is_zero(c):
                    mo = tuple(1 if k == nb + b else 0 for k in range(self.nvars))
                    p = p - Polynomial.monomial(f, self.nvars, mo) * c
            rels.append(p)
        for b in range(tI):
            for c in range(b, tI):
                mo = tuple(
                    (1 if k == nb + b else 0) + (1 if k == nb + c else 0) for k in range(self.nvars)
                )
                rels.append(Polynomial.monomial(f, self.nvars, mo))
        for v in range(nb):
            for b in range(tI):
                mo = tuple(
                    (1 if k == v else 0) + (1 if k == nb + b else 0) for k in range(self.nvars)
                )
                p = Polynomial.monomial(f, self.nvars, mo)
                col = prob.i_mats[v].col(b)
                for c, coeff in enumerate(col):
                    if not f.is_zero(coeff):
                        mz = tuple(1 if k == nb + c else 0 for k in range(self.nvars))
                        p = p - Polynomial.monomial(f, self.nvars, mz) * coeff
                rels.append(p)
        self.gb = buchberger(rels or [Polynomial.zero(f, self.nvars)], GREVLEX)

    def embed(self, p: Polynomial) -> Polynomial:
        return p.embed(self.nvars, self.embed_map)

    def reduce_to_fiber(self, p: Polynomial) -> List[Tuple[int, Polynomial]]:
        """Normal form of an element of the base-relation ideal, split as
        nilpotent-index, cofactor pairs; asserts the linear shape."""
        return _split_fiber(self, normal_form(self.embed(p), self.gb))


def _push_fiber(prob: BaseDeformationProblem, pairs: List[Tuple[int, Polynomial]]) -> list:
    """Send sum_b z_b * q_b(x) to sum_b rho_J(q_b) phi(iota_b) in J."""
    J = prob.J
    f = J.field
    out = [f.zero()] * J.rank
    for b, q in pairs:
        w = J.action_of_poly(q).mul_vec(prob.phi.col(b))
        out = vec_add(f, out, w)
    return out


@dataclass
class ObstructionResult:
    problem: BaseDeformationProblem
    complex: CotangentComplex
    maps: CochainMaps
    psi: tuple                       # cocycle in J^r
    obstructed: bool
    witness: Optional[tuple]         # xi in J^m with D1 xi = psi, when unobstructed

    def cohomology_class(self) -> CohomologyClass:
        return CohomologyClass(self.problem.B, self.problem.J, 2, self.psi)


def obstruction_class(prob: BaseDeformationProblem, second_lift_seed: Optional[int] = None) -> ObstructionResult:
    """The class in T^2 blocking a flat extension of B across the base
    extension, pushed into J; computed from the literal syzygy pairings."""
    B, J = prob.B, prob.J
    f = B.field
    cx = cotangent_complex(B)
    maps = cochain_maps(cx, J)
    zr = prob.aprime_presentation()
    m = len(B.relations)
    t = J.rank
    psi: List[Scalar] = []
    for vec in cx.syz:
        sigma = B.zero_poly()
        for j in range(m):
            sigma = sigma + vec[j] * B.relations[j]
        pairs = zr.reduce_to_fiber(sigma)
        psi.extend(_push_fiber(prob, pairs))
    psi_t = tuple(psi)
    cls = CohomologyClass(B, J, 2, psi_t)
    if not cls.is_cocycle_of(maps):
        raise AssertionError("obstruction vector is not killed by the relation rows")
    if second_lift_seed is not None:
        shifted = _obstruction_with_shifted_lift(prob, cx, second_lift_seed)
        diff = vec_sub(f, list(shifted), list(psi_t))
        ok, _ = is_coboundary(CohomologyClass(B, J, 2, tuple(diff)), maps)
        if not ok:
            raise AssertionError("two lifts of the relations gave inequivalent classes")
    xi = solve_affine(maps.d1, list(psi_t))
    return ObstructionResult(prob, cx, maps, psi_t, xi is None, tuple(xi) if xi is not None else None)


def _obstruction_with_shifted_lift(prob: BaseDeformationProblem, cx: CotangentComplex, seed: int) -> tuple:
    """Recompute the class with relations lifted as f_j + (nilpotent
    noise); the result must differ by a coboundary only."""
    import random

    B, J = prob.B, prob.J
    f = B.field
    zr = prob.aprime_presentation()
    rng = random.Random(seed)
    m = len(B.relations)
    # noise: for each relation a z-linear polynomial with small x-monomials
    noise: List[Polynomial] = []
    nb, tI, n = zr.nb, zr.tI, zr.n
    xmonos = [tuple(0 for _ in range(n))] + [
        tuple(1 if k == i else 0 for k in range(n)) for i in range(n)
    ]
    if isinstance(f, PrimeField):
        pick = lambda: rng.randrange(f.p)
    else:
        pick = lambda: rng.randrange(-2, 3)
    from fractions import Fraction

    for _ in range(m):
        terms = {}
        for b in range(tI):
            for xm in xmonos:
                c = pick()
                if c:
                    mo = tuple(
                        [0] * nb
                        + [1 if k == b else 0 for k in range(tI)]
                        + list(xm)
                    )
                    terms[mo] = c % f.p if isinstance(f, PrimeField) else Fraction(c)
        noise.append(Polynomial(f, zr.nvars, terms))
    psi: List[Scalar] = []
    for vec in cx.syz:
        sigma_z = Polynomial.zero(f, zr.nvars)
        for j in range(m):
            sigma_z = sigma_z + zr.embed(vec[j] * B.relations[j]) + zr.embed(vec[j]) * noise[j]
        nf = normal_form(sigma_z, zr.gb)
        pairs = _split_fiber(zr, nf)
        psi.extend(_push_fiber(prob, pairs))
    return tuple(psi)


def _split_fiber(zr: _ZRing, nf: Polynomial) -> List[Tuple[int, Polynomial]]:
    f = zr.field
    grouped: dict = {}
    for mo, c in nf.terms.items():
        zdeg = sum(mo[zr.nb : zr.nb + zr.tI])
        ydeg = sum(mo[: zr.nb])
        if zdeg != 1 or ydeg != 0:
            raise AssertionError("reduction is not linear in the nilpotents")
        b = next(k for k in range(zr.tI) if mo[zr.nb + k] == 1)
        xmono = tuple(mo[zr.nb + zr.tI + i] for i in range(zr.n))
        grouped.setdefault(b, {})[xmono] = c
    res = []
    for b in sorted(grouped):
        terms = {}
        for xmono, c in grouped[b].items():
            full = tuple([0] * zr.nb) + tuple(xmono)
            terms[full] = c
        res.append((b, Polynomial(f, zr.nb + zr.n, terms)))
    return res


# ---------------------------------------------------------------------------
# realizing an unobstructed deformation


@dataclass
class RealizedDeformation:
    problem: BaseDeformationProblem
    xi: tuple                       # relation values in J^m
    table: StructureAlgebra         # the deformed algebra B'
    aprime_images: Tuple[tuple, ...]  # images of (base gens, nilpotents) in B'

    def section(self, bvec):
        s = self.problem.B.dim()
        return list(bvec) + [self.problem.B.field.zero()] * (self.table.dim - s)


def realize_deformation(prob: BaseDeformationProblem, result: Optional[ObstructionResult] = None, twist: Optional[Sequence[Scalar]] = None) -> RealizedDeformation:
    """Build the deformed algebra over the extended base when the
    obstruction vanishes, then validate the entire diagram."""
    B, J = prob.B, prob.J
    f = B.field
    if not B.is_finite_dimensional():
        raise ValueError(
            "the algebra is not finite-dimensional; realize a truncation instead"
        )
    if result is None:
        result = obstruction_class(prob)
    if result.obstructed:
        raise ValueError("the obstruction class does not vanish")
    xi = list(result.witness)
    if twist is not None:
        tw = list(twist)
        if not vec_is_zero(f, result.maps.d1.mul_vec(tw)):
            raise ValueError("twist is not a cocycle")
        xi = vec_add(f, xi, tw)

    zr = prob.aprime_presentation()
    std = B.std_monomials()
    s = len(std)
    t = J.rank
    m = len(B.relations)
    nbase = len(B.base_relations)
    dim = s + t

    def lam(p: Polynomial) -> list:
        nf, cof = division_data(B, p)
        out = [f.zero()] * t
        for j in range(m):
            h = cof[nbase + j]
            if not h.is_zero():
                out = vec_add(f, out, J.action_of_poly(h).mul_vec(xi[j * t : (j + 1) * t]))
        gpart = B.zero_poly()
        for a in range(nbase):
            if not cof[a].is_zero():
                gpart = gpart + cof[a] * B.base_relations[a]
        if not gpart.is_zero():
            out = vec_add(f, out, _push_fiber(prob, zr.reduce_to_fiber(gpart)))
        return out

    if isinstance(f, PrimeField):
        import numpy as np

        mul = np.zeros((dim, dim, dim), np.int64)
    else:
        mul = [[[f.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]

    def put(i, j, k, c):
        if isinstance(f, PrimeField):
            mul[i][j][k] = int(c) % f.p
            mul[j][i][k] = int(c) % f.p
        else:
            mul[i][j][k] = c
            mul[j][i][k] = c

    index = {mo: i for i, mo in enumerate(std)}
    for i, mi in enumerate(std):
        for j in range(i, s):
            w = Polynomial.monomial(f, B.nvars, tuple(a + b for a, b in zip(mi, std[j])))
            nf, _ = division_data(B, w)
            for mo, c in nf.terms.items():
                put(i, j, index[mo], c)
            corr = lam(w)
            for b in range(t):
                if not f.is_zero(corr[b]):
                    put(i, j, s + b, corr[b])
    for i, mi in enumerate(std):
        act = J.action_of_poly(Polynomial.monomial(f, B.nvars, mi))
        for b in range(t):
            col = act.col(b)
            for c in range(t):
                if not f.is_zero(col[c]):
                    put(i, s + b, s + c, col[c])

    labels = tuple(B.mono_label(mo) for mo in std) + tuple("eps:" + l for l in J.labels)
    gen_images = []
    for v in range(B.nvars):
        # generators that are not standard monomials pick up the same
        # fiber correction as any other reducible word
        gen_images.append(B.coordinates(B.var(v)) + lam(B.var(v)))
    tab = StructureAlgebra(
        field=f,
        labels=labels,
        mul=mul,
        gen_names=B.names,
        gen_images=gen_images,
    )
    bad = validate(tab)
    if bad:
        raise AssertionError(f"deformed table failed validation: {bad}")

    # the extended base must map in: base gens to their sections, the
    # nilpotents to phi of the corresponding fiber vectors
    tI = len(prob.i_labels)
    ap_names = tuple(B.base_names) + tuple("z:" + l for l in prob.i_labels)
    ap_rels = _zring_relations_for(prob, zr)
    Aprime = PresentedAlgebra.over_ground(f, ap_names, ap_rels, )
    imgs = []
    for v in range(B.n_base):
        imgs.append(tuple(gen_images[v]))
    for b in range(tI):
        vec = [f.zero()] * s + prob.phi.col(b)
        imgs.append(tuple(vec))
    hom = AlgebraHom(Aprime, tab, tuple(imgs))
    bad = hom.validate()
    if bad:
        raise AssertionError(f"extended base does not map to the deformation: {bad}")

    # the quotient by the fiber must return B with its base structure:
    # relation values of B' must land in the fiber and equal xi
    for j, fj in enumerate(B.relations):
        val = tab.evaluate(fj, [list(v) for v in gen_images])
        if any(not f.is_zero(c) for c in val[:s]):
            raise AssertionError("a relation value escaped the fiber")
        if val[s:] != [int(c) if isinstance(f, PrimeField) else c for c in xi[j * t : (j + 1) * t]]:
            raise AssertionError("relation values disagree with the chosen witness")
    return RealizedDeformation(prob, tuple(xi), tab, tuple(imgs))


def _zring_relations_for(prob: BaseDeformationProblem, zr: _ZRing) -> List[Polynomial]:
    """The relations of A' on (base gens, nilpotents) alone."""
    B = prob.B
    f = B.field
    nb, tI = zr.nb, zr.tI
    nvars = nb + tI
    emb = list(range(nb))
    rels = []
    for a, g in enumerate(B.base_algebra().relations):
        p = g.embed(nvars, emb)
        for b, c in enumerate(prob.alpha[a]):
            if not f.is_zero(c):
                mo = tuple(1 if k == nb + b else 0 for k in range(nvars))
                p = p - Polynomial.monomial(f, nvars, mo) * c
        rels.append(p)
    for b in range(tI):
        for c in range(b, tI):
            mo = tuple((1 if k == nb + b else 0) + (1 if k == nb + c else 0) for k in range(nvars))
            rels.append(Polynomial.monomial(f, nvars, mo))
    for v in range(nb):
        for b in range(tI):
            mo = tuple((1 if k == v else 0) + (1 if k == nb + b else 0) for k in range(nvars))
            p = Polynomial.monomial(f, nvars, mo)
            col = prob.i_mats[v].col(b)
            for c, coeff in enumerate(col):
                if not f.is_zero(coeff):
                    mz = tuple(1 if k == nb + c else 0 for k in range(nvars))
                    p = p - Polynomial.monomial(f, nvars, mz) * coeff
            rels.append(p)
    return rels
