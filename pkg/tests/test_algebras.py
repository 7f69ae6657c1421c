"""Presented algebras, structure tables, modules, and homomorphisms."""

import pytest

from defalg import GF, QQ
from defalg.algebras import (
    AlgebraHom,
    FiniteModule,
    PresentedAlgebra,
    compose,
    hom_enumerate,
    truncate,
    validate,
)
from defalg.budget import BudgetExceeded
from defalg.problems import parse_polynomial

from .conftest import dual_numbers, fat_point, make_algebra


class TestPresentedAlgebra:
    def test_dual_numbers_basis(self, any_field):
        B = dual_numbers(any_field)
        assert B.dim() == 2
        assert B.std_monomials() == ((0,), (1,))
        assert [B.mono_label(m) for m in B.std_monomials()] == ["1", "x"]

    def test_fat_point_basis(self, any_field):
        B = fat_point(any_field)
        assert B.dim() == 3
        coords = B.coordinates(parse_polynomial("1 + 2*x - y", B.names, any_field))
        by_label = {B.mono_label(m): c for m, c in zip(B.std_monomials(), coords)}
        assert by_label == {
            "1": any_field.from_int(1),
            "x": any_field.from_int(2),
            "y": any_field.from_int(-1),
        }

    def test_infinite_dimensional_detected(self):
        B = make_algebra(GF(2), ["x", "y"], ["x*y"])
        assert not B.is_finite_dimensional()
        with pytest.raises(ValueError, match="not finite-dimensional"):
            B.std_monomials()

    def test_truncation_makes_it_finite(self):
        B = make_algebra(GF(2), ["x", "y"], ["x*y"])
        B4 = B.truncated_presentation(4)
        # basis 1, x, y, x^2, y^2, x^3, y^3
        assert B4.dim() == 7
        S = truncate(B, 4)
        assert S.dim == 7
        assert S.truncated_from is B and S.truncation_degree == 4

    def test_normal_form_reduces_relations(self, any_field):
        B = make_algebra(any_field, ["x"], ["x^3 - x"])
        p = parse_polynomial("x^5", B.names, any_field)
        assert B.normal_form(p) == parse_polynomial("x", B.names, any_field)

    def test_zero_ring_flagged(self):
        B = PresentedAlgebra.from_strings(GF(2), ["x"], ["x", "x + 1"])
        assert B.is_zero_ring()
        assert validate(B) != []
        ok = PresentedAlgebra.from_strings(GF(2), ["x"], ["x", "x + 1"], allow_zero=True)
        assert validate(ok) == []

    def test_relative_presentation_flattens(self):
        B = make_algebra(GF(3), ["x"], ["x^2 - s"], base_gens=["s"], base_relations=["s^2"])
        assert B.names == ("s", "x")
        assert B.n_base == 1 and B.n_gens == 1
        assert B.dim() == 4  # 1, s, x, sx with x^2 = s
        base = B.base_algebra()
        assert base.names == ("s",) and base.dim() == 2

    def test_base_relation_cannot_use_relative_generator(self):
        f = GF(2)
        bad = parse_polynomial("x", ("s", "x"), f)
        with pytest.raises(ValueError, match="base relation"):
            PresentedAlgebra(f, ("s",), (bad,), ("x",), ())

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            make_algebra(GF(2), ["x", "x"], [])


class TestStructureAlgebra:
    def test_table_of_dual_numbers(self, any_field):
        S = dual_numbers(any_field).to_structure()
        assert S.dim == 2
        assert validate(S) == []
        x = S.gen_images[0]
        assert S.mul_vec(x, x) == S.zero_vector()
        assert S.mul_vec(S.unit_vector(), x) == list(x)

    def test_evaluate_matches_normal_form(self, prime_field):
        B = fat_point(prime_field)
        S = B.to_structure()
        p = parse_polynomial("x^2 + x + y + 1", B.names, prime_field)
        got = S.evaluate(p, [list(v) for v in S.gen_images])
        assert got == B.coordinates(p)

    def test_validate_catches_broken_tables(self):
        import numpy as np

        f = GF(2)
        S = dual_numbers(f).to_structure()
        bad = np.array(S.mul)
        bad[0, 1, 1] = 0  # 1 * x = 0 while x * 1 = x
        T = type(S)(field=f, labels=S.labels, mul=bad)
        assert validate(T) != []


class TestFiniteModule:
    def test_trivial_module(self, any_field):
        B = fat_point(any_field)
        J = FiniteModule.trivial(B)
        assert J.rank == 1
        assert validate(J) == []
        x = parse_polynomial("x", B.names, any_field)
        assert J.action_of_poly(x).is_zero()

    def test_regular_module(self, prime_field):
        B = dual_numbers(prime_field)
        J = FiniteModule.regular(B)
        assert J.rank == 2
        assert validate(J) == []
        x = parse_polynomial("x", B.names, prime_field)
        assert J.action_of_poly(x).col(0) == [0, 1]  # x * 1 = x

    def test_truncated_regular(self):
        B = make_algebra(GF(2), ["x", "y"], ["x*y"])
        J = FiniteModule.truncated_regular(B, 2)
        assert J.rank == 3  # 1, x, y
        assert validate(J) == []

    def test_relations_must_act_by_zero(self):
        B = dual_numbers(GF(2))
        from defalg.linalg import Matrix

        bad = FiniteModule(B, ("j0",), (Matrix.from_rows(GF(2), [[1]]),), "presented")
        assert any("acts nontrivially" in msg for msg in validate(bad))

    def test_structure_module_from_table(self, prime_field):
        B = fat_point(prime_field)
        S = B.to_structure()
        J = FiniteModule.trivial(B)
        act = J.basis_action_tensor(S)
        assert act.shape == (3, 1, 1)
        assert act[0, 0, 0] == 1 and not act[1:].any()


class TestAlgebraHom:
    def test_valid_quotient_map(self, prime_field):
        B = make_algebra(prime_field, ["x"], ["x^4"])
        C = make_algebra(prime_field, ["x"], ["x^2"]).to_structure()
        hom = AlgebraHom(B, C, (C.gen_images[0],))
        assert hom.is_valid()

    def test_invalid_map_reported(self, prime_field):
        B = dual_numbers(prime_field)
        C = make_algebra(prime_field, ["x"], ["x^3"]).to_structure()
        hom = AlgebraHom(B, C, (C.gen_images[0],))
        assert any("does not map to zero" in m for m in hom.validate())

    def test_compose(self):
        f = GF(2)
        B = make_algebra(f, ["x"], ["x^8"])
        C = make_algebra(f, ["x"], ["x^4"])
        D = make_algebra(f, ["x"], ["x^2"]).to_structure()
        g1 = AlgebraHom(B, C, (parse_polynomial("x", C.names, f),))
        g2 = AlgebraHom(C, D, (D.gen_images[0],))
        h = compose(g1, g2)
        assert h.source is B and h.target is D
        assert h.is_valid()

    def test_base_images_must_be_canonical(self):
        f = GF(2)
        B = make_algebra(f, ["x"], [], base_gens=["s"], base_relations=["s^2"])
        C = make_algebra(f, ["x"], ["x^2"], base_gens=["s"], base_relations=["s^2"]).to_structure()
        good = AlgebraHom(B, C, (C.base_images[0], C.gen_images[1]))
        assert good.is_valid()
        bad = AlgebraHom(B, C, (C.zero_vector(), C.gen_images[1]))
        assert any("canonical image" in m for m in bad.validate())


class TestHomEnumeration:
    def test_counts_maps_into_dual_numbers(self):
        # maps k[x]/(x^2) -> k[e]/(e^2): x can land on any multiple of e
        B = dual_numbers(GF(3))
        C = dual_numbers(GF(3)).to_structure()
        homs = hom_enumerate(B, C)
        assert len(homs) == 3

    def test_respects_budget(self):
        B = dual_numbers(GF(3))
        C = fat_point(GF(3)).to_structure()
        with pytest.raises(BudgetExceeded):
            hom_enumerate(B, C, budget=10)

    def test_all_maps_valid_and_deterministic(self):
        B = fat_point(GF(2))
        C = fat_point(GF(2)).to_structure()
        homs = hom_enumerate(B, C)
        again = hom_enumerate(B, C)
        assert [h.images for h in homs] == [h.images for h in again]
        assert all(h.is_valid() for h in homs)
        # x and y must both land in the span of {x, y}: 4 choices each
        assert len(homs) == 16
