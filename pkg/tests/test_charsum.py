import pytest

from src.charsum import (
    Character,
    all_characters,
    assemble,
    assemble_lemma1,
    build_w,
    characters_dividing,
    corollary1_characters,
    count_by_split,
    count_from_w,
    lemma1_characters,
    t_sum,
    twisted_profile,
)
from src.counter import naive_count
from src.diagonal import diag_oracle
from src.eqmodel import derive_params
from src.gf import eta


@pytest.fixture
def linear_f7(make_spec):
    # x + y = b x y over F_7
    return make_spec(7, a=[1, 1], b=1, m=[1, 1], kj=[1, 1], k=1)


@pytest.fixture
def square_of_sum_f7(make_spec):
    # (x + y)^2 = b x y over F_7
    return make_spec(7, a=[1, 1], b=1, m=[1, 1], kj=[1, 1], k=2)


class TestCharacters:
    def test_order_and_reduced_exponent(self, f7):
        """Order and reduced exponent of psi_r follow from gcd(r, q - 1)."""
        psi = Character(f7, 3)
        assert psi.order == 2
        assert psi.reduced_exponent == 1
        assert Character(f7, 8).r == 2
        assert Character(f7, 0).is_trivial()

    def test_quadratic_character_is_eta(self, f7):
        """The order-2 character agrees with eta on F_q*."""
        psi = Character(f7, 3)
        for x in f7.nonzero():
            assert psi.value(x).to_integer() == eta(f7, x)

    def test_value_at_zero(self, f7):
        """Only the trivial character is 1 at zero."""
        assert Character(f7, 0).value(0).to_integer() == 1
        assert Character(f7, 2).value(0).is_zero()

    def test_power_and_conjugate(self, f7):
        """Powers multiply r; the conjugate negates it mod q - 1."""
        psi = Character(f7, 1)
        assert psi.power(3).r == 3
        assert psi.conjugate().r == 5
        assert psi.is_trivial_power(6)
        assert not psi.is_trivial_power(3)

    def test_families(self, f7):
        """Character families are listed by exponent r."""
        assert len(all_characters(f7)) == 6
        assert [psi.r for psi in characters_dividing(f7, 4)] == [0, 3]
        assert [psi.r for psi in corollary1_characters(f7, 6, 2)] == [1, 2, 4, 5]
        assert [psi.r for psi in lemma1_characters(f7, 1)] == [1, 2, 3, 4, 5]
        assert corollary1_characters(f7, 2, 2) == []


class TestWTable:
    def test_mass_and_zero_row(self, linear_f7):
        """W counts all of (F_q*)^n; its zero row counts the diagonal zeros."""
        W = build_w(linear_f7)
        assert W.total() == 36
        assert W.zero_row_total() == 6

    def test_read_only(self, linear_f7):
        """The W table is frozen after construction."""
        W = build_w(linear_f7)
        with pytest.raises(ValueError):
            W.counts[0, 0] = 1

    def test_trivial_character_sum(self, linear_f7):
        """T of the trivial character counts every nonzero solution of the linear form."""
        W = build_w(linear_f7)
        assert t_sum(W, Character(W.spec.field, 0)).to_integer() == 5

    def test_nonzero_counts_match_enumeration(self, square_of_sum_f7):
        """N_q* from the W table plus the diagonal split matches enumeration for every b."""
        W = build_w(square_of_sum_f7)
        profile = twisted_profile(W)
        diag = diag_oracle(square_of_sum_f7)
        for b in square_of_sum_f7.field.nonzero():
            nstar, nstar0 = count_from_w(W, profile=profile, b=b)
            assert nstar0 == diag.nstar0
            spec = square_of_sum_f7.with_b(b)
            assert nstar + diag.n0 - nstar0 == naive_count(spec)

    def test_nonpower_b_has_no_nonzero_solutions(self, make_spec):
        """No solution in (F_7*)^2 when b is not a square."""
        # both sides of (x^2 + y^2)^2 = 3 x^2 y^2 differ in quadratic class
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        nstar, _ = count_from_w(build_w(spec))
        assert nstar == 0


class TestCharacterSums:
    def test_vanishing_outside_d(self, make_spec):
        """With d = 1 every nontrivial T(psi) is exactly zero."""
        spec = make_spec(5, a=[1, 1], b=1, m=[1, 1], kj=[1, 1], k=1)
        dp = derive_params(spec)
        assert dp.d == 1
        W = build_w(spec)
        profile = twisted_profile(W)
        assert t_sum(W, Character(spec.field, 0), profile).to_integer() == 3
        for psi in all_characters(spec.field)[1:]:
            assert t_sum(W, psi, profile).is_zero()

    def test_conjugation_symmetry(self, make_spec):
        """T of the conjugate character is the conjugate of T."""
        spec = make_spec(13, a=[1, 2, 3], b=1, m=[2, 3, 1], kj=[1, 2, 1], k=3)
        W = build_w(spec)
        profile = twisted_profile(W)
        for psi in all_characters(spec.field):
            assert t_sum(W, psi.conjugate(), profile) == t_sum(W, psi, profile).conjugate()


class TestAssembly:
    def test_square_of_sum(self, square_of_sum_f7):
        """(x + y)^2 = 2xy over F_7 has 13 solutions."""
        assert naive_count(square_of_sum_f7) == 13

    def test_routes_agree_for_every_b(self, square_of_sum_f7):
        """Split, restricted and full character sums give the same N_q."""
        spec = square_of_sum_f7
        dp = derive_params(spec)
        W = build_w(spec)
        profile = twisted_profile(W)
        diag = diag_oracle(spec)
        for b in spec.field.nonzero():
            expected = count_by_split(W, diag, b=b, profile=profile)
            assert assemble(spec, dp, W, diag, b=b, profile=profile) == expected
            assert assemble_lemma1(spec, dp, W, diag, b=b, profile=profile) == expected

    def test_nonpower_b_reduces_to_diagonal(self, make_spec):
        """For b outside the k0-th powers only the all-zero solution remains."""
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        dp = derive_params(spec)
        W = build_w(spec)
        assert assemble(spec, dp, W) == 1
        assert assemble_lemma1(spec, dp, W) == 1

    def test_mixed_exponents(self, make_spec):
        """Assembly matches enumeration with distinct m_j, k_j and a_j."""
        spec = make_spec(11, a=[3, 7, 2], b=6, m=[2, 5, 1], kj=[3, 1, 4], k=2)
        dp = derive_params(spec)
        W = build_w(spec)
        diag = diag_oracle(spec)
        expected = naive_count(spec)
        assert count_by_split(W, diag) == expected
        assert assemble(spec, dp, W, diag) == expected
