"""Finitely presented commutative algebras and their finite companions.

A PresentedAlgebra is B = A[x_1..x_n]/(f_1..f_m) where the base ring
A = k[y_1..y_b]/(g_1..g_c) is itself presented over the ground field.
Internally everything is flattened into k[y_1..y_b, x_1..x_n]: base
variables first, then relative ones, with a cached Groebner basis of
the flattened ideal providing canonical normal forms.

A StructureAlgebra is a finite-dimensional algebra given by its basis
and multiplication tensor; basis element 0 is always the unit.  A
FiniteModule carries commuting action matrices over either
representation.  AlgebraHom ties them together.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .budget import DEFAULT_ENUM_BUDGET, as_budget
from .fields import Field, PrimeField, Scalar
from .groebner import GroebnerBasis, buchberger, normal_form, normal_form_quotients
from .linalg import Matrix
from .poly import GREVLEX, Monomial, Polynomial, mono_deg, mono_divides


class PresentedAlgebra:
    """B = A[x..]/(relations), flattened over the ground field."""

    def __init__(
        self,
        field: Field,
        base_names: Sequence[str],
        base_relations: Sequence[Polynomial],
        gen_names: Sequence[str],
        relations: Sequence[Polynomial],
        allow_zero: bool = False,
    ):
        self.field = field
        self.base_names = tuple(base_names)
        self.gen_names = tuple(gen_names)
        self.names = self.base_names + self.gen_names
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.nvars = len(self.names)
        self.base_relations = tuple(base_relations)
        self.relations = tuple(relations)
        self.allow_zero = allow_zero
        for p in self.base_relations + self.relations:
            if p.nvars != self.nvars or p.field != field:
                raise ValueError("relation not in the flattened ring")
        for p in self.base_relations:
            for m in p.terms:
                if any(m[i] for i in range(len(self.base_names), self.nvars)):
                    raise ValueError("base relation uses a relative generator")
        self._gb: Optional[GroebnerBasis] = None
        self._base_gb: Optional[GroebnerBasis] = None
        self._std: Optional[Tuple[Monomial, ...]] = None

    # -- construction conveniences --------------------------------------

    @classmethod
    def over_ground(cls, field: Field, gen_names: Sequence[str], relations: Sequence[Polynomial]):
        return cls(field, (), (), gen_names, relations)

    @classmethod
    def from_strings(
        cls,
        field: Field,
        gen_names: Sequence[str],
        relation_strs: Sequence[str],
        base_names: Sequence[str] = (),
        base_relation_strs: Sequence[str] = (),
        allow_zero: bool = False,
    ):
        from .problems import parse_polynomial

        names = tuple(base_names) + tuple(gen_names)
        base_rels = [parse_polynomial(s, names, field) for s in base_relation_strs]
        rels = [parse_polynomial(s, names, field) for s in relation_strs]
        return cls(field, base_names, base_rels, gen_names, rels, allow_zero=allow_zero)

    # -- ring structure ---------------------------------------------------

    @property
    def n_base(self) -> int:
        return len(self.base_names)

    @property
    def n_gens(self) -> int:
        return len(self.gen_names)

    def var(self, i: int) -> Polynomial:
        return Polynomial.variable(self.field, self.nvars, i)

    def gen_var(self, i: int) -> Polynomial:
        return self.var(self.n_base + i)

    def zero_poly(self) -> Polynomial:
        return Polynomial.zero(self.field, self.nvars)

    def one_poly(self) -> Polynomial:
        return Polynomial.one(self.field, self.nvars)

    def ideal_gens(self) -> Tuple[Polynomial, ...]:
        return self.base_relations + self.relations

    def base_algebra(self) -> "PresentedAlgebra":
        """The base ring as an algebra over the ground field, in its own
        variables (base relations contracted out of the flattened ring)."""
        nb = self.n_base
        rels = []
        for p in self.base_relations:
            rels.append(Polynomial(self.field, nb, {m[:nb]: c for m, c in p.terms.items()}))
        return PresentedAlgebra.over_ground(self.field, self.base_names, rels)

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            gens = list(self.ideal_gens()) or [self.zero_poly()]
            self._gb = buchberger(gens, GREVLEX)
        return self._gb

    def base_groebner(self) -> GroebnerBasis:
        if self._base_gb is None:
            gens = list(self.base_relations) or [self.zero_poly()]
            self._base_gb = buchberger(gens, GREVLEX)
        return self._base_gb

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Canonical representative modulo the full flattened ideal."""
        return normal_form(p, self.groebner())

    def base_normal_form(self, p: Polynomial) -> Polynomial:
        """Canonical representative modulo the base ideal only."""
        return normal_form(p, self.base_groebner())

    def is_zero_ring(self) -> bool:
        return self.groebner().contains_one()

    def element_equal(self, p: Polynomial, q: Polynomial) -> bool:
        return self.normal_form(p - q).is_zero()

    # -- finiteness and bases ----------------------------------------------

    def std_monomials(self) -> Tuple[Monomial, ...]:
        """Monomials not divisible by any leading monomial of the ideal,
        sorted ascending; the k-basis of B when finite."""
        if self._std is not None:
            return self._std
        gb = self.groebner()
        lts = gb.leading_monomials()
        if gb.contains_one():
            self._std = ()
            return self._std
        for v in range(self.nvars):
            if not any(all(m[i] == 0 for i in range(self.nvars) if i != v) and m[v] > 0 for m in lts):
                raise ValueError(
                    f"not finite-dimensional: no pure power of {self.names[v]} leads the ideal"
                )
        unit = (0,) * self.nvars
        seen = {unit}
        queue = [unit]
        out = []
        while queue:
            m = queue.pop()
            out.append(m)
            for v in range(self.nvars):
                m2 = tuple(e + 1 if i == v else e for i, e in enumerate(m))
                if m2 in seen or any(mono_divides(lt, m2) for lt in lts):
                    continue
                seen.add(m2)
                queue.append(m2)
        out.sort(key=GREVLEX.key)
        self._std = tuple(out)
        return self._std

    def is_finite_dimensional(self) -> bool:
        try:
            self.std_monomials()
            return True
        except ValueError:
            return False

    def dim(self) -> int:
        return len(self.std_monomials())

    def mono_label(self, m: Monomial) -> str:
        if mono_deg(m) == 0:
            return "1"
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts)

    def coordinates(self, p: Polynomial) -> List[Scalar]:
        """Coordinates of p's class in the std-monomial basis."""
        std = self.std_monomials()
        index = {m: i for i, m in enumerate(std)}
        nf = self.normal_form(p)
        out = [self.field.zero()] * len(std)
        for m, c in nf.terms.items():
            out[index[m]] = c
        return out

    # -- truncation -----------------------------------------------------------

    def truncation_relations(self, d: int, relative_only: bool = True) -> List[Polynomial]:
        lo = self.n_base if relative_only else 0
        idxs = range(lo, self.nvars)
        out = []
        for combo in itertools.combinations_with_replacement(idxs, d):
            m = [0] * self.nvars
            for i in combo:
                m[i] += 1
            out.append(Polynomial.monomial(self.field, self.nvars, tuple(m)))
        return out

    def truncated_presentation(self, d: int, relative_only: bool = True) -> "PresentedAlgebra":
        """Quotient by the d-th power of the ideal generated by the
        relative generators (or by all generators), as a new presentation."""
        if d < 1:
            raise ValueError("truncation degree must be >= 1")
        extra = self.truncation_relations(d, relative_only)
        return PresentedAlgebra(
            self.field,
            self.base_names,
            self.base_relations,
            self.gen_names,
            self.relations + tuple(extra),
            allow_zero=self.allow_zero,
        )

    def to_structure(self) -> "StructureAlgebra":
        std = self.std_monomials()
        n = len(std)
        if n == 0:
            raise ValueError("zero ring has no structure table here")
        if std[0] != (0,) * self.nvars:
            raise AssertionError("unit monomial missing from basis")
        index = {m: i for i, m in enumerate(std)}
        f = self.field
        if isinstance(f, PrimeField):
            mul = np.zeros((n, n, n), np.int64)
        else:
            mul = [[[f.zero() for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for i, mi in enumerate(std):
            for j in range(i, n):
                mj = std[j]
                prod = Polynomial.monomial(f, self.nvars, tuple(a + b for a, b in zip(mi, mj)))
                nf = self.normal_form(prod)
                for m, c in nf.terms.items():
                    k = index[m]
                    if isinstance(f, PrimeField):
                        mul[i, j, k] = c
                        mul[j, i, k] = c
                    else:
                        mul[i][j][k] = c
                        mul[j][i][k] = c
        labels = tuple(self.mono_label(m) for m in std)
        gen_images = tuple(self.coordinates(self.var(v)) for v in range(self.nvars))
        return StructureAlgebra(
            field=f,
            labels=labels,
            mul=mul,
            gen_names=self.names,
            gen_images=gen_images,
            base_names=self.base_names,
            base_images=gen_images[: self.n_base],
            basis_gen_exps=std,
            source=self,
        )

    def __repr__(self):
        rels = ", ".join(p.to_string(self.names) for p in self.relations) or "0"
        if self.base_names:
            base = ", ".join(p.to_string(self.names) for p in self.base_relations) or "0"
            return (
                f"<{self.field.name}[{','.join(self.base_names)}]/({base})"
                f"[{','.join(self.gen_names)}]/({rels})>"
            )
        return f"<{self.field.name}[{','.join(self.gen_names)}]/({rels})>"


def truncate(B: PresentedAlgebra, d: int) -> "StructureAlgebra":
    """Structure table of B modulo the d-th power of the relative
    generators' ideal, with the quotient hom attached."""
    S = B.truncated_presentation(d).to_structure()
    S.truncated_from = B
    S.truncation_degree = d
    return S


class StructureAlgebra:
    """Finite-dimensional commutative algebra by multiplication table.

    mul[i][j][k] is the e_k coefficient of e_i * e_j; basis element 0 is
    the unit.  Vectors are lists of field scalars.
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        mul,
        gen_names: Sequence[str] = None,
        gen_images: Sequence[Sequence[Scalar]] = None,
        base_names: Sequence[str] = (),
        base_images: Sequence[Sequence[Scalar]] = (),
        basis_gen_exps: Optional[Sequence[Monomial]] = None,
        source: Optional[PresentedAlgebra] = None,
    ):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if isinstance(field, PrimeField):
            self.mul = np.asarray(mul, np.int64) % field.p
            if self.mul.shape != (self.dim, self.dim, self.dim):
                raise ValueError("multiplication tensor shape mismatch")
        else:
            self.mul = [
                [[Fraction(mul[i][j][k]) for k in range(self.dim)] for j in range(self.dim)]
                for i in range(self.dim)
            ]
        if gen_names is None:
            # default designated generators: every non-unit basis element
            gen_names = self.labels[1:]
            gen_images = tuple(self.basis_vector(i) for i in range(1, self.dim))
            basis_gen_exps = [tuple(0 for _ in range(self.dim - 1))] + [
                tuple(1 if g == i - 1 else 0 for g in range(self.dim - 1))
                for i in range(1, self.dim)
            ]
        self.gen_names = tuple(gen_names)
        self.gen_images = tuple(tuple(v) for v in gen_images)
        self.base_names = tuple(base_names)
        self.base_images = tuple(tuple(v) for v in base_images)
        self.basis_gen_exps = tuple(tuple(m) for m in basis_gen_exps) if basis_gen_exps is not None else None
        self.source = source
        self.truncated_from: Optional[PresentedAlgebra] = None
        self.truncation_degree: Optional[int] = None

    # -- vectors ---------------------------------------------------------

    def zero_vector(self) -> list:
        return [self.field.zero()] * self.dim

    def unit_vector(self) -> list:
        v = self.zero_vector()
        v[0] = self.field.one()
        return v

    def basis_vector(self, i: int) -> list:
        v = self.zero_vector()
        v[i] = self.field.one()
        return v

    def add(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
        f = self.field
        return [f.add(a, b) for a, b in zip(u, v)]

    def sub(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
        f = self.field
        return [f.sub(a, b) for a, b in zip(u, v)]

    def scale(self, c: Scalar, v: Sequence[Scalar]) -> list:
        f = self.field
        return [f.mul(c, a) for a in v]

    def mul_vec(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
        f = self.field
        if isinstance(f, PrimeField):
            ua = np.asarray([int(a) for a in u], np.int64)
            va = np.asarray([int(a) for a in v], np.int64)
            return [int(x) for x in np.einsum("a,b,abk->k", ua, va, self.mul) % f.p]
        out = self.zero_vector()
        for a, ca in enumerate(u):
            if f.is_zero(ca):
                continue
            for b, cb in enumerate(v):
                if f.is_zero(cb):
                    continue
                cab = f.mul(ca, cb)
                for k in range(self.dim):
                    out[k] = f.add(out[k], f.mul(cab, self.mul[a][b][k]))
        return out

    def pow_vec(self, u: Sequence[Scalar], e: int) -> list:
        out = self.unit_vector()
        for _ in range(e):
            out = self.mul_vec(out, u)
        return out

    def evaluate(self, p: Polynomial, images: Sequence[Sequence[Scalar]]) -> list:
        """Evaluate a polynomial at algebra elements, one per variable."""
        if p.nvars != len(images):
            raise ValueError("need one image per variable")
        f = self.field
        acc = self.zero_vector()
        for m, c in p.terms.items():
            w = self.unit_vector()
            for v, e in enumerate(m):
                for _ in range(e):
                    w = self.mul_vec(w, images[v])
            acc = self.add(acc, self.scale(c, w))
        return acc

    def mul_tensor_int(self) -> np.ndarray:
        if not isinstance(self.field, PrimeField):
            raise TypeError("integer tensor only exists over prime fields")
        return self.mul

    def element_label(self, v: Sequence[Scalar]) -> str:
        f = self.field
        bits = []
        for i, c in enumerate(v):
            if f.is_zero(c):
                continue
            if str(c) == "1":
                bits.append(self.labels[i])
            else:
                bits.append(f"{c}*{self.labels[i]}")
        return " + ".join(bits) if bits else "0"

    def mul_entry(self, i: int, j: int) -> list:
        if isinstance(self.field, PrimeField):
            return [int(x) for x in self.mul[i, j]]
        return list(self.mul[i][j])

    def __repr__(self):
        return f"<StructureAlgebra dim {self.dim} over {self.field.name}>"


class FiniteModule:
    """Finite-dimensional module over a presented or structure algebra.

    kind "presented": one action matrix per flattened generator.
    kind "structure": one action matrix per basis element.
    """

    def __init__(self, owner, labels: Sequence[str], mats: Sequence[Matrix], kind: str):
        if kind not in ("presented", "structure"):
            raise ValueError("kind must be presented or structure")
        self.owner = owner
        self.labels = tuple(labels)
        self.mats = tuple(mats)
        self.kind = kind
        t = len(self.labels)
        for m in self.mats:
            if m.nrows != t or m.ncols != t:
                raise ValueError("action matrix shape mismatch")

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def field(self) -> Field:
        return self.owner.field

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_matrices(cls, B: PresentedAlgebra, labels, mats) -> "FiniteModule":
        return cls(B, labels, [m if isinstance(m, Matrix) else Matrix.from_rows(B.field, m) for m in mats], "presented")

    @classmethod
    def trivial(cls, B: PresentedAlgebra, label: str = "j0") -> "FiniteModule":
        """The residue module k: every generator acts by zero."""
        z = Matrix.zeros(B.field, 1, 1)
        return cls(B, (label,), tuple(z for _ in range(B.nvars)), "presented")

    @classmethod
    def regular(cls, B: PresentedAlgebra) -> "FiniteModule":
        """B as a module over itself (finite-dimensional B only)."""
        std = B.std_monomials()
        mats = []
        for v in range(B.nvars):
            xs = B.var(v)
            cols = []
            for m in std:
                prod = xs * Polynomial.monomial(B.field, B.nvars, m)
                cols.append(B.coordinates(prod))
            mats.append(Matrix.from_cols(B.field, cols, nrows=len(std)))
        labels = tuple(B.mono_label(m) for m in std)
        return cls(B, labels, mats, "presented")

    @classmethod
    def truncated_regular(cls, B: PresentedAlgebra, d: int) -> "FiniteModule":
        """B / (all generators)^d as a B-module."""
        Bq = B.truncated_presentation(d, relative_only=False)
        J = cls.regular(Bq)
        return cls(B, J.labels, J.mats, "presented")

    @classmethod
    def over_structure(cls, S: StructureAlgebra, labels, mats) -> "FiniteModule":
        return cls(S, labels, [m if isinstance(m, Matrix) else Matrix.from_rows(S.field, m) for m in mats], "structure")

    # -- action ------------------------------------------------------------

    def action_of_poly(self, p: Polynomial) -> Matrix:
        if self.kind != "presented":
            raise TypeError("polynomial action needs a presented owner")
        B: PresentedAlgebra = self.owner
        if p.nvars != B.nvars:
            raise ValueError("polynomial not in the flattened ring")
        f = self.field
        t = self.rank
        acc = Matrix.zeros(f, t, t)
        for m, c in p.terms.items():
            w = Matrix.identity(f, t)
            for v, e in enumerate(m):
                for _ in range(e):
                    w = self.mats[v].mul(w)
            acc = acc.add(w.scale(c))
        return acc

    def action_of_vec(self, v: Sequence[Scalar]) -> Matrix:
        if self.kind != "structure":
            raise TypeError("vector action needs a structure owner")
        f = self.field
        t = self.rank
        acc = Matrix.zeros(f, t, t)
        for i, c in enumerate(v):
            if not f.is_zero(c):
                acc = acc.add(self.mats[i].scale(c))
        return acc

    def apply(self, elem, w: Sequence[Scalar]) -> list:
        mat = self.action_of_poly(elem) if self.kind == "presented" else self.action_of_vec(elem)
        return mat.mul_vec(list(w))

    def basis_action_tensor(self, S: StructureAlgebra) -> np.ndarray:
        """Action of each basis element of S on this module, as an
        int64 tensor for the scan kernels (prime fields only)."""
        if not isinstance(self.field, PrimeField):
            raise TypeError("tensor form only exists over prime fields")
        t = self.rank
        out = np.zeros((S.dim, t, t), np.int64)
        if self.kind == "structure":
            if self.owner is not S:
                raise ValueError("module is not over this structure algebra")
            for i, m in enumerate(self.mats):
                out[i] = np.array(m.to_rows(), np.int64).reshape(t, t)
            return out
        B: PresentedAlgebra = self.owner
        if S.source is not B or S.basis_gen_exps is None:
            raise ValueError("structure algebra was not built from this module's owner")
        for i, m in enumerate(S.basis_gen_exps):
            mat = self.action_of_poly(Polynomial.monomial(B.field, B.nvars, m))
            out[i] = np.array(mat.to_rows(), np.int64).reshape(t, t)
        return out

    def __repr__(self):
        return f"<FiniteModule rank {self.rank} over {self.owner!r}>"


@dataclass
class AlgebraHom:
    """Algebra map given by generator images.

    Presented source: one image per flattened generator (base first).
    Structure source: one image per designated generator.  Images are
    polynomials when the target is presented, coordinate vectors when
    the target is a structure algebra.
    """

    source: Union[PresentedAlgebra, StructureAlgebra]
    target: Union[PresentedAlgebra, StructureAlgebra]
    images: tuple

    def __post_init__(self):
        self.images = tuple(
            tuple(v) if not isinstance(v, Polynomial) else v for v in self.images
        )

    def _source_gen_count(self) -> int:
        if isinstance(self.source, PresentedAlgebra):
            return self.source.nvars
        return len(self.source.gen_names)

    def apply_poly(self, p: Polynomial):
        """Image of a flattened-ring polynomial of the presented source."""
        if not isinstance(self.source, PresentedAlgebra):
            raise TypeError("polynomial application needs a presented source")
        if isinstance(self.target, PresentedAlgebra):
            imgs = [im if isinstance(im, Polynomial) else None for im in self.images]
            return self.target.normal_form(p.substitute(imgs))
        return self.target.evaluate(p, [list(im) for im in self.images])

    def apply_vec(self, v: Sequence[Scalar]):
        """Image of a structure-source element given by coordinates."""
        S = self.source
        if not isinstance(S, StructureAlgebra):
            raise TypeError("vector application needs a structure source")
        if S.basis_gen_exps is None:
            raise TypeError("source basis is not expressed in its generators")
        T = self.target
        if not isinstance(T, StructureAlgebra):
            raise TypeError("vector application needs a structure target")
        acc = T.zero_vector()
        for b, c in enumerate(v):
            if S.field.is_zero(c):
                continue
            w = T.unit_vector()
            for g, e in enumerate(S.basis_gen_exps[b]):
                for _ in range(e):
                    w = T.mul_vec(w, list(self.images[g]))
            acc = T.add(acc, T.scale(c, w))
        return acc

    def validate(self) -> List[str]:
        out = []
        if len(self.images) != self._source_gen_count():
            return ["wrong number of generator images"]
        if isinstance(self.source, PresentedAlgebra):
            for r in self.source.ideal_gens():
                img = self.apply_poly(r)
                bad = (not img.is_zero()) if isinstance(img, Polynomial) else any(
                    not self.source.field.is_zero(c) for c in img
                )
                if bad:
                    out.append(f"relation {r.to_string(self.source.names)} does not map to zero")
            out.extend(self._base_compat())
        else:
            S = self.source
            T = self.target
            if S.basis_gen_exps is None:
                return ["source basis is not expressed in its generators"]
            basis_imgs = [self.apply_vec(S.basis_vector(b)) for b in range(S.dim)]
            if basis_imgs[0] != T.unit_vector():
                out.append("unit does not map to unit")
            for i in range(S.dim):
                for j in range(i, S.dim):
                    lhs = T.mul_vec(basis_imgs[i], basis_imgs[j])
                    rhs = self.apply_vec(S.mul_entry(i, j))
                    if lhs != rhs:
                        out.append(
                            f"product {S.labels[i]} * {S.labels[j]} is not respected"
                        )
        return out

    def _base_compat(self) -> List[str]:
        B = self.source
        if not isinstance(B, PresentedAlgebra) or not B.base_names:
            return []
        T = self.target
        out = []
        if isinstance(T, StructureAlgebra):
            if T.base_names != B.base_names:
                out.append("target does not declare the same base ring")
                return out
            for v in range(B.n_base):
                if tuple(self.images[v]) != tuple(T.base_images[v]):
                    out.append(f"base generator {B.base_names[v]} is not sent to its canonical image")
        else:
            if T.base_names != B.base_names:
                out.append("target does not declare the same base ring")
                return out
            for v in range(B.n_base):
                diff = self.images[v] - T.var(v)
                if not T.normal_form(diff).is_zero():
                    out.append(f"base generator {B.base_names[v]} is not sent to its canonical image")
        return out

    def is_valid(self) -> bool:
        return not self.validate()


def compose(f: AlgebraHom, g: AlgebraHom) -> AlgebraHom:
    """compose(f, g) applies f first: the result maps x to g(f(x))."""
    if f.target is not g.source:
        raise ValueError("compose needs f.target to be g.source")
    if isinstance(f.source, PresentedAlgebra):
        imgs = []
        for im in f.images:
            if isinstance(im, Polynomial):
                imgs.append(g.apply_poly(im))
            else:
                imgs.append(g.apply_vec(im))
        return AlgebraHom(f.source, g.target, tuple(imgs))
    imgs = tuple(g.apply_vec(im) for im in f.images)
    return AlgebraHom(f.source, g.target, imgs)


def validate(obj) -> List[str]:
    """Structural soundness report: empty list means no findings."""
    if isinstance(obj, PresentedAlgebra):
        out = []
        if obj.is_zero_ring() and not obj.allow_zero:
            out.append("flattened ideal contains 1 (zero ring not flagged as intended)")
        for r in obj.relations:
            if not obj.normal_form(r).is_zero():
                out.append("relation does not reduce to zero in its own quotient")
        return out
    if isinstance(obj, StructureAlgebra):
        return _validate_structure(obj)
    if isinstance(obj, FiniteModule):
        return _validate_module(obj)
    if isinstance(obj, AlgebraHom):
        return obj.validate()
    raise TypeError(f"cannot validate {type(obj).__name__}")


def _validate_structure(S: StructureAlgebra) -> List[str]:
    out = []
    f = S.field
    n = S.dim
    if isinstance(f, PrimeField):
        mul = S.mul
        ident = np.zeros((n, n), np.int64)
        np.fill_diagonal(ident, 1)
        if not np.array_equal(mul[0] % f.p, ident):
            out.append("basis element 0 is not a left unit")
        if not np.array_equal(mul[:, 0] % f.p, ident):
            out.append("basis element 0 is not a right unit")
        if np.any((mul - mul.transpose(1, 0, 2)) % f.p):
            out.append("multiplication is not commutative")
        lhs = np.einsum("ijm,mkl->ijkl", mul, mul) % f.p
        rhs = np.einsum("jkm,iml->ijkl", mul, mul) % f.p
        if np.any((lhs - rhs) % f.p):
            out.append("multiplication is not associative")
        return out
    for j in range(n):
        for k in range(n):
            want = f.one() if j == k else f.zero()
            if S.mul[0][j][k] != want or S.mul[j][0][k] != want:
                out.append("basis element 0 is not a unit")
                break
        else:
            continue
        break
    for i in range(n):
        for j in range(i + 1, n):
            if S.mul[i][j] != S.mul[j][i]:
                out.append(f"product {S.labels[i]} * {S.labels[j]} is not commutative")
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                lhs = [f.zero()] * n
                rhs = [f.zero()] * n
                for m in range(n):
                    for l in range(n):
                        lhs[l] = f.add(lhs[l], f.mul(S.mul[i][j][m], S.mul[m][k][l]))
                        rhs[l] = f.add(rhs[l], f.mul(S.mul[j][k][m], S.mul[i][m][l]))
                if lhs != rhs:
                    out.append("multiplication is not associative")
                    return out
    return out


def _validate_module(J: FiniteModule) -> List[str]:
    out = []
    f = J.field
    if J.kind == "presented":
        B: PresentedAlgebra = J.owner
        for v in range(B.nvars):
            for w in range(v + 1, B.nvars):
                if J.mats[v].mul(J.mats[w]) != J.mats[w].mul(J.mats[v]):
                    out.append(f"actions of {B.names[v]} and {B.names[w]} do not commute")
        for r in B.ideal_gens():
            if not J.action_of_poly(r).is_zero():
                out.append(f"relation {r.to_string(B.names)} acts nontrivially")
        return out
    S: StructureAlgebra = J.owner
    t = J.rank
    if J.mats[0] != Matrix.identity(f, t):
        out.append("unit basis element does not act as identity")
    for i in range(S.dim):
        for j in range(i, S.dim):
            lhs = J.mats[i].mul(J.mats[j])
            rhs = Matrix.zeros(f, t, t)
            for k, c in enumerate(S.mul_entry(i, j)):
                if not f.is_zero(c):
                    rhs = rhs.add(J.mats[k].scale(c))
            if lhs != rhs:
                out.append(f"action fails on product {S.labels[i]} * {S.labels[j]}")
    return out


# ---------------------------------------------------------------------------
# exhaustive hom enumeration


def _encode_relations(B: PresentedAlgebra, C: StructureAlgebra, base_imgs=None):
    """Relations of B as vector-coefficient term arrays over the
    relative generators, with base-generator images folded in.
    Returns None when the base images alone violate a base relation."""
    f = B.field
    nb = B.n_base
    if base_imgs is None:
        if nb and (not C.base_images or C.base_names != B.base_names):
            raise ValueError("target does not declare images for the shared base")
        base_imgs = [list(v) for v in C.base_images[:nb]]
    else:
        base_imgs = [list(v) for v in base_imgs]
        if len(base_imgs) != nb:
            raise ValueError("need one image per base generator")
    rel_rows = []
    for r in B.ideal_gens():
        terms = {}
        for m, c in r.terms.items():
            w = C.unit_vector()
            for v in range(nb):
                for _ in range(m[v]):
                    w = C.mul_vec(w, base_imgs[v])
            w = C.scale(c, w)
            key = m[nb:]
            if key in terms:
                terms[key] = C.add(terms[key], w)
            else:
                terms[key] = w
        terms = {e: w for e, w in terms.items() if any(not f.is_zero(x) for x in w)}
        if not terms:
            continue
        if all(mono_deg(e) == 0 for e in terms):
            return None  # a pure-base relation fails on the declared images
        rel_rows.append(sorted(terms.items()))
    return rel_rows


def hom_enumerate(
    B: PresentedAlgebra,
    C: StructureAlgebra,
    budget=None,
) -> Tuple[AlgebraHom, ...]:
    """All maps from B to a finite-dimensional C fixing the shared base,
    by exhaustive scan over relative-generator images.

    Candidates are ordered by their scan index, so the output order is
    deterministic and basis-independent claims can be tested against it.
    """
    if not isinstance(B, PresentedAlgebra):
        raise TypeError("source must be a presented algebra")
    if not isinstance(C.field, PrimeField) or C.field != B.field:
        raise TypeError("hom enumeration needs matching prime fields")
    bud = as_budget(budget if budget is not None else DEFAULT_ENUM_BUDGET)
    p = C.field.p
    ng = B.n_gens
    total = p ** (C.dim * ng)
    rel_rows = _encode_relations(B, C)
    if rel_rows is None:
        return ()
    bud.charge(total, "hom enumeration")
    nb = B.n_base
    ptr = [0]
    coefv = []
    exps = []
    for rows in rel_rows:
        for e, w in rows:
            coefv.append([int(x) for x in w])
            exps.append(list(e))
        ptr.append(len(coefv))
    if ng == 0:
        # no relative generators: the single candidate is the base map itself
        idxs = [0]
        for rows in rel_rows:
            acc = C.zero_vector()
            for e, w in rows:
                acc = C.add(acc, list(w))
            if any(not C.field.is_zero(c) for c in acc):
                idxs = []
                break
    else:
        mulc = C.mul_tensor_int()
        base = np.zeros((ng, C.dim), np.int64)
        span = np.zeros((C.dim, C.dim), np.int64)
        np.fill_diagonal(span, 1)
        rel_ptr = np.array(ptr, np.int64)
        coefv_a = np.array(coefv, np.int64).reshape(len(coefv), C.dim)
        exps_a = np.array(exps, np.int64).reshape(len(exps), ng)
        idxs = [
            int(n)
            for n in _kernels.scan_polyrel(mulc, base, span, rel_ptr, coefv_a, exps_a, p, 0, total)
        ]
    out = []
    pows = [p**k for k in range(C.dim * ng + 1)]
    for n in idxs:
        imgs = [list(v) for v in C.base_images[:nb]]
        for g in range(ng):
            vec = [(n // pows[g * C.dim + a]) % p for a in range(C.dim)]
            imgs.append(vec)
        hom = AlgebraHom(B, C, tuple(tuple(v) for v in imgs))
        bad = hom.validate()
        if bad:
            raise AssertionError(f"scan produced an invalid hom: {bad}")
        out.append(hom)
    return tuple(out)
