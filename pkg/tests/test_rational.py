from fractions import Fraction

import pytest

from fiberorder.rational import as_rational, format_rational, size_cap


def test_parse_and_format():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(2) == 2 and as_rational("-5") == -5
    assert format_rational(Fraction(6, 8)) == "3/4" and format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True])
def test_floats_rejected(bad):
    with pytest.raises((TypeError, ValueError)):
        as_rational(bad)


def test_size_cap_env(monkeypatch):
    monkeypatch.setenv("FIBERORDER_SIZE_CAP", "7")
    assert size_cap() == 7
    monkeypatch.delenv("FIBERORDER_SIZE_CAP")
    assert size_cap(5) == 5
