"""Unit tests for the system file format and its position-tracked parser."""

import json
from fractions import Fraction

import pytest

from jetsolve import InputError, parse_system_text
from jetsolve.sysfile import default_variables, system_to_file

from conftest import P, sq_system

GOOD = """
{
  "variables": ["lambda", "x1", "x2"],
  "equations": [
    [ {"coefficient": "1", "exponents": [0, 0, 2]},
      {"coefficient": "-1", "exponents": [1, 0, 0]} ],
    [ {"coefficient": 1, "exponents": [0, 0, 1]},
      {"coefficient": "-1/1", "exponents": [0, 1, 0]} ]
  ],
  "metadata": {"note": "sqrt pair"}
}
"""


def test_parse_good_document():
    sf = parse_system_text(GOOD)
    assert sf.variables == ["lambda", "x1", "x2"]
    assert sf.nvars == 2
    assert sf.metadata == {"note": "sqrt pair"}
    sys2 = sf.system()
    assert sys2.level == 2
    assert sys2.equations[0].terms == {(0, 0, 2): Fraction(1),
                                       (1, 0, 0): Fraction(-1)}


def test_complex_coefficient():
    text = json.dumps({
        "variables": ["lambda", "x"],
        "equations": [[{"coefficient": ["0.0", "1.0"],
                        "exponents": [0, 1]},
                       {"coefficient": "1", "exponents": [1, 0]}]],
    })
    sf = parse_system_text(text)
    c = sf.equations[0].terms[(0, 1)]
    assert abs(c - complex(0, 1)) < 1e-12


def test_roundtrip_through_to_obj():
    sf = parse_system_text(GOOD)
    again = parse_system_text(sf.dumps())
    assert again.equations == sf.equations
    assert again.variables == sf.variables


def test_float_literals_rejected_with_position():
    bad = '{"variables": ["lambda", "x"],\n "equations": [[{' \
          '"coefficient": 0.5, "exponents": [1, 0]}]]}'
    with pytest.raises(InputError) as exc:
        parse_system_text(bad)
    assert "float" in str(exc.value)
    assert exc.value.line == 2


def test_wrong_exponent_length():
    bad = json.dumps({
        "variables": ["lambda", "x1", "x2"],
        "equations": [[{"coefficient": "1", "exponents": [0, 0]}]],
    })
    with pytest.raises(InputError) as exc:
        parse_system_text(bad)
    assert "length 3" in str(exc.value)
    assert exc.value.line is not None and exc.value.column is not None


def test_negative_exponent_rejected():
    bad = json.dumps({
        "variables": ["lambda", "x"],
        "equations": [[{"coefficient": "1", "exponents": [-1, 1]}]],
    })
    with pytest.raises(InputError):
        parse_system_text(bad)


def test_zero_equation_rejected():
    bad = json.dumps({
        "variables": ["lambda", "x"],
        "equations": [[{"coefficient": "1", "exponents": [0, 1]},
                       {"coefficient": "-1", "exponents": [0, 1]}]],
    })
    with pytest.raises(InputError):
        parse_system_text(bad)


def test_structural_errors():
    for bad in ('{"variables": ["lambda"], "equations": [[]]}',
                '{"variables": ["lambda", "x"], "equations": []}',
                '[1, 2]',
                '{"variables": ["lambda", "x"], "equations": [[]]} junk'):
        with pytest.raises(InputError):
            parse_system_text(bad)


def test_system_to_file_defaults():
    sys2 = sq_system([P(2, {(0, 0, 2): 1, (1, 0, 0): -1}),
                      P(2, {(0, 0, 1): 1, (0, 1, 0): -1})])
    sf = system_to_file(sys2)
    assert sf.variables == default_variables(2) == ["lambda", "x1", "x2"]
    assert parse_system_text(sf.dumps()).equations == sys2.equations
