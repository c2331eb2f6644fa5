import pytest
from hypothesis import given, settings, strategies as st

from src.cli.spec_file import SpecFile
from src.cli.tables import ALL_ROWS, TABLE_1, verify_row
from src.counter import (
    EVALUATORS,
    b_profile,
    carlitz_n3,
    carlitz_n4,
    closed_forms,
    dispatch,
    evaluate,
    naive_count,
    oracle_count,
    pzc,
    theorem1,
    theorem2,
    theorem2_equal,
    theorem2_general,
    theorem3,
    theorem4,
)
from src.eqmodel import BClass, EquationSpec, Method, classify, derive_params
from src.exceptions import ClosedFormMismatchError, HypothesisViolationError, ValidationError
from src.gf import cached_field, is_kth_power


def _params(spec):
    return derive_params(spec)


class TestTheorems:
    def test_theorem1_sum_of_squares(self, make_spec):
        """Theorem 1 on (x^2 + y^2)^2 = 3 x^2 y^2 over F_7."""
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        assert theorem1(spec, _params(spec)) == 1
        assert oracle_count(spec) == 1

    def test_theorem2_f16(self, make_spec):
        """Theorem 2 over F_16 with a non-cube b."""
        spec = make_spec(2, a=[1, 1], b=2, m=[5, 5], kj=[3, 3], k=3, s=4)
        assert theorem2(spec, _params(spec)) == 1
        assert naive_count(spec) == 1

    def test_theorem4_f16(self, make_spec):
        """Theorem 4 over F_16 gives 51, as enumeration does."""
        spec = make_spec(2, a=[1, 1], b=1, m=[5, 5], kj=[5, 5], k=10, s=4)
        assert theorem4(spec, _params(spec)) == 51
        assert naive_count(spec) == 51

    def test_pzc_and_theorem3_agree(self, make_spec):
        """PZC and Theorem 3 agree when d = 1 and the gcd condition holds."""
        spec = make_spec(5, a=[1, 1], b=2, m=[1, 1], kj=[1, 1], k=3)
        dp = _params(spec)
        assert pzc(spec, dp) == 4
        assert theorem3(spec, dp) == 4
        assert naive_count(spec) == 4

    def test_carlitz_n3(self, make_spec):
        """All three applicable forms give q^2 + 1."""
        spec = make_spec(7, a=[1, 1, 1], b=1, m=[1, 1, 1], kj=[1, 1, 1], k=2)
        dp = _params(spec)
        assert carlitz_n3(spec, dp) == 50
        assert closed_forms(spec, dp, classify(spec, dp)) == {
            Method.THEOREM3: 50, Method.PZC: 50, Method.CARLITZ_N3: 50}

    @pytest.mark.parametrize("b,expected", [(1, 335), (3, 349)])
    def test_carlitz_n4(self, make_spec, b, expected):
        """The sign follows eta(b a_1 a_2 a_3 a_4)."""
        spec = make_spec(7, a=[1, 1, 1, 1], b=b, m=[1] * 4, kj=[1] * 4, k=2)
        assert carlitz_n4(spec, _params(spec)) == expected
        assert oracle_count(spec) == expected

    def test_refuses_outside_hypotheses(self, make_spec):
        """Every registered form raises instead of returning a wrong count."""
        spec = make_spec(7, a=[1, 1], b=1, m=[3, 3], kj=[1, 1], k=1)
        dp = _params(spec)
        for method in EVALUATORS:
            with pytest.raises(HypothesisViolationError):
                evaluate(method, spec, dp)

    def test_oracle_is_not_a_closed_form(self, make_spec):
        """The oracle cannot be evaluated as a closed form."""
        spec = make_spec(7, a=[1, 1], b=1, m=[1, 1], kj=[1, 1], k=2)
        with pytest.raises(HypothesisViolationError, match="not a closed form"):
            evaluate(Method.ORACLE, spec, _params(spec))

    def test_theorem2_forms_agree_on_q81_row(self):
        """Subset-sum and binomial forms agree when every d_j equals D."""
        row = next(row for row in TABLE_1 if row.q == 81)
        spec = row.to_spec_file().to_equation_spec()
        dp = _params(spec)
        assert theorem2_general(spec, dp) == theorem2_equal(spec, dp) == 7041

    def test_theorem2_equal_needs_equal_dj(self):
        """The general Theorem 2 form covers unequal d_j; the equal form refuses."""
        spec = SpecFile(p=3, s=2, a=[1, 1], b=BClass.NONPOWER, m=[4, 2], kj=[2, 2], k=2).to_equation_spec()
        dp = _params(spec)
        assert dp.dj == (4, 2)
        assert theorem2(spec, dp) == naive_count(spec)
        with pytest.raises(HypothesisViolationError, match="d_1 = ... = d_n"):
            theorem2_equal(spec, dp)


class TestOracle:
    def test_naive_limit(self, make_spec):
        """Enumeration past the limit is refused, naming n."""
        spec = make_spec(7, a=[1, 1, 1], b=1, m=[1, 1, 1], kj=[1, 1, 1], k=2)
        with pytest.raises(ValidationError) as excinfo:
            naive_count(spec, limit=100)
        assert excinfo.value.field == 'n'

    def test_routes_agree(self, make_spec):
        """W-table route, enumeration and the cross-checked route agree."""
        spec = make_spec(11, a=[2, 5, 7], b=4, m=[3, 2, 5], kj=[2, 1, 3], k=4)
        via_w = oracle_count(spec, naive_limit=None)
        assert via_w == naive_count(spec)
        assert oracle_count(spec, naive_limit=10 ** 6, crosscheck_naive=True) == via_w

    def test_b_profile_classes(self, make_spec):
        """With d = 2 the profile splits into squares and non-squares."""
        spec = make_spec(7, a=[1, 1, 1, 1], b=1, m=[1] * 4, kj=[1] * 4, k=2)
        profile = b_profile(spec)
        assert profile.k0 == 1
        assert sorted(set(profile.counts.values())) == [335, 349]
        # d = 2 separates squares from non-squares
        assert {b: v for b, v in profile.counts.items() if v == 335} == {1: 335, 2: 335, 4: 335}
        assert all(len(set(values)) == 1 for values in profile.cosets().values())

    def test_b_profile_to_dict(self, make_spec):
        """Counts and non-power entries serialise with string values."""
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        data = b_profile(spec).to_dict()
        assert data['nonpower'] == {'1': 3}
        assert set(data['counts']) == {str(b) for b in range(1, 7)}

    def test_permutation_invariance(self, make_spec):
        """Relabelling variables leaves N_q unchanged."""
        spec = make_spec(13, a=[1, 4, 9], b=5, m=[2, 3, 4], kj=[1, 2, 3], k=2)
        value = oracle_count(spec)
        for perm in ([1, 0, 2], [2, 1, 0], [1, 2, 0]):
            assert oracle_count(spec.permuted(perm)) == value

    @pytest.mark.parametrize("p,a,m,kj,k", [
        (7, [1, 1], [1, 1], [2, 2], 2),
        (13, [1, 2, 3], [2, 3, 1], [2, 4, 2], 2),
    ])
    def test_constant_on_power_classes_when_d_is_k0(self, make_spec, p, a, m, kj, k):
        """With d = k0 the count depends on b only through its k0-th power class."""
        spec = make_spec(p, a=a, b=1, m=m, kj=kj, k=k)
        dp = derive_params(spec)
        assert dp.d == dp.k0 == 2
        by_class = {True: set(), False: set()}
        for b in spec.field.nonzero():
            by_class[is_kth_power(spec.field, b, dp.k0)].add(oracle_count(spec.with_b(b)))
        assert len(by_class[True]) == 1
        assert len(by_class[False]) == 1


class TestDispatch:
    def test_report(self, make_spec):
        """Three agreeing forms are joined in the method name."""
        spec = make_spec(7, a=[1, 1, 1], b=1, m=[1, 1, 1], kj=[1, 1, 1], k=2)
        report = dispatch(spec)
        assert report.closed_form_method == 'theorem3+pzc+carlitz_n3'
        assert report.closed_form_value == report.oracle_value == 50
        assert report.agreement is True
        data = report.to_dict()
        assert data['closed_form_value'] == '50'
        assert data['closed_form_value_native'] == 50

    def test_without_closed_form(self, make_spec):
        """With no closed form the oracle value is the answer."""
        spec = make_spec(7, a=[1, 1], b=1, m=[3, 3], kj=[1, 1], k=1)
        report = dispatch(spec)
        assert report.closed_form_value is None
        assert report.agreement is None
        assert report.value == report.oracle_value == naive_count(spec)

    def test_no_oracle(self, make_spec):
        """Without the oracle the closed form alone is the answer."""
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        report = dispatch(spec, run_oracle=False)
        assert report.oracle_value is None
        assert report.value == 1

    def test_disagreeing_closed_forms(self, make_spec, mocker):
        """Two applicable forms with different values raise."""
        spec = make_spec(7, a=[1, 1, 1], b=1, m=[1, 1, 1], kj=[1, 1, 1], k=2)
        mocker.patch.dict(EVALUATORS, {Method.PZC: lambda spec, dp: 0})
        with pytest.raises(ClosedFormMismatchError, match="pzc=0"):
            dispatch(spec)

    def test_oracle_disagreement_is_reported(self, make_spec, mocker):
        """A wrong oracle value is flagged, not raised."""
        spec = make_spec(7, a=[1, 1], b=3, m=[2, 2], kj=[2, 2], k=2)
        mocker.patch('src.counter.dispatcher.oracle_count', return_value=99)
        report = dispatch(spec)
        assert report.agreement is False


class TestPublishedTables:
    @pytest.mark.parametrize("row", ALL_ROWS, ids=lambda row: row.label)
    def test_row(self, row):
        """Each reference row is reproduced by its closed form and by the oracle."""
        result = verify_row(row)
        assert result.error is None
        assert result.k0 == row.k0
        assert result.closed_form_value == row.expected
        assert result.oracle_value == row.expected
        assert result.b_independent
        assert result.passed

    def test_nonpower_rows_use_nonpower_b(self):
        """Table 1 rows take b outside the k0-th powers."""
        row = TABLE_1[0]
        spec = row.to_spec_file().to_equation_spec()
        assert not derive_params(spec).b_is_k0_power
        assert row.b_class == BClass.NONPOWER


def test_d_one_without_gcd_condition_is_not_pzc(make_spec):
    """d = 1 alone does not grant the PZC form."""
    # d = 1 here, yet N_q differs from q^(n-1) + (-1)^(n-1) = 6
    spec = make_spec(7, a=[1, 1], b=1, m=[2, 2], kj=[1, 1], k=2)
    report = dispatch(spec)
    assert report.params.d == 1
    assert Method.PZC not in report.applicability.applicable_methods()
    assert report.oracle_value == 7


@settings(max_examples=40, deadline=None)
@given(
    order=st.sampled_from([(5, 1), (7, 1), (3, 2), (11, 1)]),
    n=st.integers(min_value=2, max_value=3),
    data=st.data(),
)
def test_oracle_invariant_under_variable_scaling(order, n, data):
    """x_j -> c x_j maps solutions for (a_j, b) onto solutions for (a_j c^m_j, b c^k_j)."""
    F = cached_field(*order)
    a = data.draw(st.lists(st.integers(1, F.q - 1), min_size=n, max_size=n))
    m = data.draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    kj = data.draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    k = data.draw(st.integers(1, 6))
    b = data.draw(st.integers(1, F.q - 1))
    c = data.draw(st.integers(1, F.q - 1))
    j = data.draw(st.integers(0, n - 1))

    spec = EquationSpec(field=F, a=a, b=b, m=m, kj=kj, k=k)
    scaled_a = list(a)
    scaled_a[j] = F.mul(a[j], F.power(c, m[j]))
    scaled = EquationSpec(field=F, a=scaled_a, b=F.mul(b, F.power(c, kj[j])), m=m, kj=kj, k=k)
    assert oracle_count(scaled) == oracle_count(spec)
