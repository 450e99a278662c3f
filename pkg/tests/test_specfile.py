from fractions import Fraction

import pytest

from pisoliton.fixtures import example_spec_path, example_structure
from pisoliton.specfile import SpecError, dumps, load_spec, loads

GOOD = """\
name = tiny
dim = 3
params = a

[brackets]
[e1, e2] = a*e0

[metric]
2 0 0
0 1 0
0 0 1

[phi]
e1 = e2
e2 = e1

[xi]
1/2*e0

[eta]
2 0 0
"""


def test_example_file_loads():
    spec = load_spec(example_spec_path())
    assert spec.dim == 5 and spec.params == ["p", "q"] and spec.name == "para-sasaki-5d"


def test_example_file_matches_compiled_fixture():
    frame, s = load_spec(example_spec_path()).build()
    ref = example_structure()
    assert frame.params == ref.frame.params
    assert frame.brackets == ref.frame.brackets and frame.metric == ref.frame.metric
    assert (s.phi, s.xi, s.eta) == (ref.phi, ref.xi, ref.eta)


def test_explicit_metric_and_rational_xi():
    spec = loads(GOOD)
    frame, s = spec.build()
    assert frame.metric[0, 0] == 2
    assert s.xi[0] == Fraction(1, 2)
    assert str(frame.brackets[1, 2, 0]) == "a"


def test_substitution():
    frame, s = loads(GOOD).build({"a": Fraction(3)})
    assert frame.params.names == ()
    assert frame.brackets[2, 1, 0] == -3


def test_dumps_roundtrip():
    spec = load_spec(example_spec_path())
    again = loads(dumps(spec))
    assert again.build()[0].brackets == spec.build()[0].brackets
    assert again.phi == spec.phi and again.xi == spec.xi and again.eta == spec.eta


def _error(text) -> SpecError:
    with pytest.raises(SpecError) as info:
        loads(text, source="t.pis")
    return info.value


def test_bracket_with_equal_indices():
    err = _error(GOOD.replace("[e1, e2] = a*e0", "[e1, e1] = a*e0"))
    assert err.line == 6 and "i < j" in err.message


def test_implicit_multiplication_column():
    err = _error(GOOD.replace("[e1, e2] = a*e0", "[e1, e2] = 2a*e0"))
    assert (err.line, err.column) == (6, 13)
    assert "implicit multiplication" in err.message
    assert str(err).startswith("t.pis:6:13:")


@pytest.mark.parametrize("old,new,fragment", [
    ("dim = 3", "dim = 4", "odd"),
    ("dim = 3", "dim = x", "positive integer"),
    ("0 0 1\n\n[phi]", "0 0\n\n[phi]", "expected 3 entries"),
    ("e1 = e2\n", "e1 = a*e2\n", "rational constant"),
    ("[e1, e2] = a*e0", "[e1, e2] = a*e0\n[e1, e2] = e0", "twice"),
    ("[e1, e2] = a*e0", "[e1, e5] = a*e0", "out of range"),
    ("[e1, e2] = a*e0", "[e1, e2] = a*e0*e1", "exactly one basis vector"),
    ("params = a", "params = e1", "collide"),
    ("[xi]", "[chi]", "unknown section"),
    ("name = tiny", "nom = tiny", "unknown key"),
])
def test_validation_errors(old, new, fragment):
    assert fragment in _error(GOOD.replace(old, new, 1)).message


def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        load_spec(tmp_path / "absent.pis")


def test_bad_substitution():
    with pytest.raises(SpecError):
        loads(GOOD).build({"zz": Fraction(1)})
