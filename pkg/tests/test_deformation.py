"""Square-zero extensions, the Baer group law, homomorphism lifting, and
obstruction classes for deformations across a thickened base."""

import pytest

from defalg import GF
from defalg.algebras import FiniteModule
from defalg.cotangent import (
    CohomologyClass,
    cochain_maps,
    cotangent_complex,
    is_coboundary,
    t_modules,
)
from defalg.linalg import Matrix
from defalg.problems import parse_polynomial
from defalg.deformation import (
    BaseDeformationProblem,
    LiftProblem,
    baer_difference,
    baer_sum,
    classify_extensions,
    cocycle_from_extension,
    extension_class,
    extension_from_cocycle,
    extensions_equivalent,
    is_trivial_extension,
    lift_homomorphism,
    obstruction_class,
    realize_deformation,
    torsor_action,
    trivial_extension,
)
from defalg.linalg import vec_add, vec_is_zero

from .conftest import dual_numbers, fat_point, make_algebra


def _fat_setup(field):
    B = fat_point(field)
    J = FiniteModule.trivial(B)
    return B, J


class TestSquareZeroExtension:
    def test_trivial_extension_is_trivial(self, prime_field):
        B, J = _fat_setup(prime_field)
        ext = trivial_extension(B, J)
        assert ext.validate() == []
        assert is_trivial_extension(ext)
        cls = extension_class(ext)
        assert all(prime_field.is_zero(c) for c in cls.vector)

    def test_projection_and_section_split_linearly(self, prime_field):
        B, J = _fat_setup(prime_field)
        ext = trivial_extension(B, J)
        one = prime_field.one()
        bvec = [one] * B.dim()
        assert ext.project(ext.section(bvec)) == bvec
        jvec = [one] * J.rank
        assert ext.fiber_part(ext.include_fiber(jvec)) == jvec
        assert vec_is_zero(prime_field, ext.project(ext.include_fiber(jvec)))

    def test_nontrivial_extension_from_cocycle(self, prime_field):
        B, J = _fat_setup(prime_field)
        _, r1, _ = t_modules(B, J)
        psi = list(r1.reps[0])
        ext = extension_from_cocycle(B, J, psi)
        assert ext.validate() == []
        assert not is_trivial_extension(ext)

    def test_cocycle_round_trip(self, prime_field):
        B, J = _fat_setup(prime_field)
        _, r1, _ = t_modules(B, J)
        psi = list(r1.reps[-1])
        ext = extension_from_cocycle(B, J, psi)
        back = cocycle_from_extension(ext)
        again = extension_from_cocycle(B, J, list(back))
        assert extensions_equivalent(ext, again)

    def test_extension_reproduces_psi_on_relation_values(self, prime_field):
        # x*x in the extension falls into the fiber and equals the psi
        # entry attached to the relation x^2
        B, J = _fat_setup(prime_field)
        _, r1, _ = t_modules(B, J)
        psi = list(r1.reps[0])
        ext = extension_from_cocycle(B, J, psi)
        x = ext.gen_image(0)
        prod = ext.table.mul_vec(x, x)
        assert vec_is_zero(prime_field, ext.project(prod))
        assert ext.fiber_part(prod) == psi[: J.rank]


class TestClassification:
    def test_fat_point_has_eight_classes(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J)
        assert cl.t1_dim == 3
        assert cl.count == 8 and cl.complete
        assert len(cl.representatives) == 8
        seen = {cl.class_of(rep) for rep in cl.representatives}
        assert seen == set(range(8))

    def test_representatives_are_pairwise_inequivalent(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J)
        reps = cl.representatives
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                assert not extensions_equivalent(reps[i], reps[j])

    def test_dual_numbers_over_f3(self):
        B = dual_numbers(GF(3))
        J = FiniteModule.trivial(B)
        cl = classify_extensions(B, J)
        assert cl.t1_dim == 1 and cl.count == 3 and cl.complete

    def test_max_reps_cutoff_keeps_a_spanning_family(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J, max_reps=4)
        assert not cl.complete
        assert cl.count == 8
        # trivial plus one representative per basis class
        assert len(cl.representatives) == 1 + cl.t1_dim


class TestBaerGroupLaw:
    def test_sum_matches_cocycle_addition(self, prime_field):
        B, J = _fat_setup(prime_field)
        _, r1, _ = t_modules(B, J)
        a, b = list(r1.reps[0]), list(r1.reps[1])
        ea = extension_from_cocycle(B, J, a)
        eb = extension_from_cocycle(B, J, b)
        s = baer_sum(ea, eb)
        direct = extension_from_cocycle(B, J, vec_add(prime_field, a, b))
        assert extensions_equivalent(s, direct)

    def test_trivial_is_the_identity(self, prime_field):
        B, J = _fat_setup(prime_field)
        _, r1, _ = t_modules(B, J)
        e = extension_from_cocycle(B, J, list(r1.reps[0]))
        t = trivial_extension(B, J)
        assert extensions_equivalent(baer_sum(e, t), e)
        assert extensions_equivalent(baer_sum(t, e), e)

    def test_difference_with_itself_is_trivial(self, prime_field):
        B, J = _fat_setup(prime_field)
        cl = classify_extensions(B, J, max_reps=16)
        for rep in cl.representatives:
            assert is_trivial_extension(baer_difference(rep, rep))

    def test_commutative_on_class_indices(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J)
        reps = cl.representatives
        for i in (1, 3, 5):
            for j in (2, 4):
                lhs = cl.class_of(baer_sum(reps[i], reps[j]))
                rhs = cl.class_of(baer_sum(reps[j], reps[i]))
                assert lhs == rhs

    def test_associative_on_a_triple(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J)
        a, b, c = cl.representatives[1], cl.representatives[2], cl.representatives[4]
        left = baer_sum(baer_sum(a, b), c)
        right = baer_sum(a, baer_sum(b, c))
        assert cl.class_of(left) == cl.class_of(right)


class TestTorsorAction:
    def test_action_on_trivial_reaches_every_class(self):
        B, J = _fat_setup(GF(2))
        cl = classify_extensions(B, J)
        _, r1, _ = t_modules(B, J)
        t = trivial_extension(B, J)
        hit = set()
        for rep in cl.representatives:
            psi = cocycle_from_extension(rep)
            moved = torsor_action(t, CohomologyClass(B, J, 1, tuple(psi)))
            hit.add(cl.class_of(moved))
        assert hit == set(range(8))

    def test_acting_twice_in_characteristic_two_returns(self):
        B, J = _fat_setup(GF(2))
        _, r1, _ = t_modules(B, J)
        cls = t_modules(B, J)[1].classes()[0]
        e = trivial_extension(B, J)
        once = torsor_action(e, cls)
        twice = torsor_action(once, cls)
        assert not extensions_equivalent(once, e)
        assert extensions_equivalent(twice, e)

    def test_rejects_wrong_degree(self):
        B, J = _fat_setup(GF(2))
        _, _, r2 = t_modules(B, J)
        e = trivial_extension(B, J)
        with pytest.raises(ValueError):
            torsor_action(e, r2.classes()[0])


class TestLifting:
    def _solvable_problem(self, field):
        B = dual_numbers(field)
        Cp = make_algebra(field, ["w", "e"], ["w^2", "w*e", "e^2"])
        ideal = [parse_polynomial("e", Cp.names, field)]
        phi = [parse_polynomial("w", Cp.names, field)]
        return LiftProblem.from_presented(B, Cp, ideal, phi)

    def _unsolvable_problem(self, field):
        B = dual_numbers(field)
        Cp = make_algebra(field, ["w"], ["w^4"])
        ideal = [parse_polynomial("w^2", Cp.names, field)]
        phi = [parse_polynomial("w", Cp.names, field)]
        return LiftProblem.from_presented(B, Cp, ideal, phi)

    def test_solvable_lift(self, prime_field):
        prob = self._solvable_problem(prime_field)
        assert prob.J.rank == 1
        res = lift_homomorphism(prob)
        assert res.solvable
        assert res.freedom_dim == 1
        assert res.count == prime_field.p
        # plugging the lifted images back in leaves no defect
        relifted = LiftProblem(prob.B, prob.Cprime, prob.n_basis, res.lifted_images)
        assert vec_is_zero(prime_field, relifted.defect())

    def test_unsolvable_lift(self, prime_field):
        prob = self._unsolvable_problem(prime_field)
        res = lift_homomorphism(prob)
        assert not res.solvable
        assert res.count == 0
        assert res.lifted_images is None and res.correction is None
        ok, _ = is_coboundary(res.obstruction)
        assert not ok, "the obstruction of an unsolvable problem is essential"

    def test_zero_defect_gives_zero_obstruction(self, prime_field):
        prob = self._solvable_problem(prime_field)
        res = lift_homomorphism(prob)
        assert res.obstruction.is_cocycle_of(cochain_maps(cotangent_complex(prob.B), prob.J))
        ok, _ = is_coboundary(res.obstruction)
        assert ok

    def test_ideal_must_be_square_zero(self):
        field = GF(2)
        B = dual_numbers(field)
        Cp = make_algebra(field, ["w"], ["w^4"])
        ideal = [parse_polynomial("w", Cp.names, field)]
        phi = [parse_polynomial("w", Cp.names, field)]
        with pytest.raises(ValueError, match="square-zero"):
            LiftProblem.from_presented(B, Cp, ideal, phi)

    def test_relation_value_must_land_in_the_ideal(self):
        field = GF(2)
        B = dual_numbers(field)
        Cp = make_algebra(field, ["w"], ["w^4"])
        ideal = [parse_polynomial("w^3", Cp.names, field)]
        phi = [parse_polynomial("w", Cp.names, field)]
        prob = LiftProblem.from_presented(B, Cp, ideal, phi)
        with pytest.raises(ValueError, match="does not land"):
            prob.defect()


def _base_problem(field, gens, relations, thick_rel, ideal_str, base_rel):
    B = make_algebra(field, gens, relations, base_gens=["s"], base_relations=[base_rel])
    J = FiniteModule.trivial(B)
    Ap = make_algebra(field, ["s"], [thick_rel])
    gen = parse_polynomial(ideal_str, ("s",), field)
    return BaseDeformationProblem.from_presented_total(B, J, Ap, [gen])


class TestObstructions:
    def test_unobstructed_complete_intersection(self, prime_field):
        prob = _base_problem(prime_field, ["x"], ["x^2 - s"], "s^3", "s^2", "s^2")
        res = obstruction_class(prob)
        assert not res.obstructed
        assert res.witness is not None

    def test_pinch_point_is_obstructed(self, prime_field):
        prob = _base_problem(
            prime_field, ["x", "y"], ["x^2 + s", "x*y", "y^2 + s"], "s^3", "s^2", "s^2"
        )
        res = obstruction_class(prob)
        assert res.obstructed
        cls = res.cohomology_class()
        assert cls.degree == 2
        ok, _ = is_coboundary(cls, res.maps)
        assert not ok

    def test_second_lift_gives_the_same_class(self, prime_field):
        prob = _base_problem(prime_field, ["x"], ["x^2 - s"], "s^3", "s^2", "s^2")
        for seed in (1, 7, 23):
            res = obstruction_class(prob, second_lift_seed=seed)
            assert not res.obstructed

    def test_realize_unobstructed(self, prime_field):
        prob = _base_problem(prime_field, ["x"], ["x^2 - s"], "s^3", "s^2", "s^2")
        real = realize_deformation(prob)
        # one image for the base generator s, one for the nilpotent s^2,
        # and the table realizes s*s = s^2 with (s^2)^2 = 0
        s_img, nil_img = real.aprime_images
        assert list(real.table.mul_vec(list(s_img), list(s_img))) == list(nil_img)
        sq = real.table.mul_vec(list(nil_img), list(nil_img))
        assert all(prime_field.is_zero(c) for c in sq)

    def test_realize_refuses_obstructed(self):
        prob = _base_problem(
            GF(2), ["x", "y"], ["x^2 + s", "x*y", "y^2 + s"], "s^3", "s^2", "s^2"
        )
        with pytest.raises(ValueError, match="obstruction"):
            realize_deformation(prob)

    def test_realize_refuses_bad_twist(self):
        # a fiber module with a nilpotent generator action makes d1 nonzero,
        # so non-cocycle twists exist and must be rejected
        field = GF(2)
        B = make_algebra(
            field,
            ["x", "y"],
            ["x^2", "x*y", "y^2"],
            base_gens=["s"],
            base_relations=["s"],
        )
        zero2 = [[0, 0], [0, 0]]
        nil = [[0, 1], [0, 0]]
        J = FiniteModule.from_matrices(B, ("j0", "j1"), [zero2, nil, zero2])
        Ap = make_algebra(field, ["s"], ["s^2"])
        gen = parse_polynomial("s", ("s",), field)
        phi = Matrix.from_cols(field, [[field.one(), field.zero()]], nrows=2)
        prob = BaseDeformationProblem.from_presented_total(B, J, Ap, [gen], phi=phi)
        res = obstruction_class(prob)
        assert not res.obstructed
        maps = res.maps
        bad = None
        for i in range(maps.d1.ncols):
            v = [field.zero()] * maps.d1.ncols
            v[i] = field.one()
            if any(not field.is_zero(c) for c in maps.d1.mul_vec(v)):
                bad = v
                break
        assert bad is not None
        with pytest.raises(ValueError, match="twist"):
            realize_deformation(prob, result=res, twist=bad)

    def test_realize_refuses_infinite_dimensional(self):
        field = GF(2)
        B = make_algebra(
            field, ["x", "y"], ["x*y"], base_gens=["s"], base_relations=["s"]
        )
        J = FiniteModule.trivial(B)
        Ap = make_algebra(field, ["s"], ["s^2"])
        gen = parse_polynomial("s", ("s",), field)
        prob = BaseDeformationProblem.from_presented_total(B, J, Ap, [gen])
        with pytest.raises(ValueError, match="finite-dimensional"):
            realize_deformation(prob)

    def test_twisted_realizations_differ(self):
        field = GF(2)
        prob = _base_problem(field, ["x"], ["x^2 - s"], "s^3", "s^2", "s^2")
        res = obstruction_class(prob)
        _, r1, _ = t_modules(prob.B, prob.J)
        assert r1.dim >= 1
        plain = realize_deformation(prob, result=res)
        twisted = realize_deformation(prob, result=res, twist=list(r1.reps[0]))
        assert plain.xi != twisted.xi
