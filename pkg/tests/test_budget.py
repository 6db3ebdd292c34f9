import pytest

from fejerlift.budget import BudgetInsufficient, CertifiedValue, TruncationBudget, product_bound


def test_budget_defaults_and_with_M():
    b = TruncationBudget()
    assert (b.M, b.tail_tol, b.digits) == (2000, 1e-6, 15)
    assert b.with_M(50).M == 50 and b.with_M(50).tail_tol == b.tail_tol


@pytest.mark.parametrize("kwargs", [{"M": 1}, {"M": 2.5}, {"tail_tol": 0}, {"tail_tol": -1}, {"digits": 10}])
def test_budget_rejects_bad_fields(kwargs):
    with pytest.raises(ValueError):
        TruncationBudget(**kwargs)


def test_budget_check_reports_achievable():
    b = TruncationBudget(M=10, tail_tol=1e-8)
    with pytest.raises(BudgetInsufficient) as exc:
        b.check(1e-3, "demo")
    assert exc.value.achievable == 1e-3 and exc.value.M == 10
    b.check(1e-9)


def test_certified_value_contains_and_dict():
    c = CertifiedValue(1 + 2j, 0.1)
    assert c.contains(1.05 + 2j)
    assert not c.contains(1.2 + 2j)
    assert c.to_dict() == {"re": 1.0, "im": 2.0, "tail_bound": 0.1, "heuristic": False}
    with pytest.raises(ValueError):
        CertifiedValue(0.0, -1.0)


def test_product_bound_covers_worst_case():
    x, y = CertifiedValue(2.0, 0.1), CertifiedValue(3.0, 0.2)
    worst = max(abs((2 + a) * (3 + b) - 6) for a in (-0.1, 0.1) for b in (-0.2, 0.2))
    assert product_bound(x, y) >= worst - 1e-15
