import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispans.bispan import Bispan
from bispans.context import Mor, finite_set
from bispans.generate import random_bispan, random_object, random_span
from bispans.gset import Group, builtin_group
from bispans.serialize import (
    ParseError,
    bispan_dot,
    dist_dot,
    parse,
    parse_document,
    serialize,
)
from bispans.context import dependent_product
from bispans.finset import fmap


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([None, "C2", "S3", "C2xC2"]), st.integers(0, 2 ** 16))
def test_round_trip(group, seed):
    rng = random.Random(seed)
    G = builtin_group(group) if group else None
    I, J = random_object(rng, G, 4), random_object(rng, G, 4)
    values = {"b": random_bispan(rng, I, J, 4), "s": random_span(rng, I, J, 4)}
    text = serialize(values)
    back = parse(text)
    assert back["b"] == values["b"] and back["s"] == values["s"]
    assert serialize({"b": back["b"], "s": back["s"]}) == text


def test_canonical_text_is_stable():
    b = Bispan(*(finite_set(n) for n in (1, 1, 2, 1)),
               Mor(finite_set(2), finite_set(1), (0, 0)), Mor(finite_set(2), finite_set(1), (0, 0)),
               Mor(finite_set(1), finite_set(1), (0,)))
    text = serialize({"sq": b})
    assert text == serialize({"sq": b})
    assert text.splitlines()[0] == "{"
    assert '"sq": {"B": "sq.src", "E": "sq.E", "f": [0, 0], "l": [0], "p": [0, 0], "src": "sq.src", "tgt": "sq.src"}' in text


def test_custom_group_round_trip():
    G = Group.from_permutations([[1, 2, 0]], name="Z3")
    x = random_object(random.Random(1), G, 6)
    text = serialize({"x": x})
    assert '"generators"' in text
    assert parse(text)["x"] == x


def test_generator_actions():
    text = """{
  "groups": {"G": {"builtin": "C2"}},
  "objects": {"X": {"carrier": ["a", "b"], "group": "G", "action": [[1, 0]]}}
}"""
    x = parse(text)["X"]
    assert x.act(1, 0) == 1


@pytest.mark.parametrize("text, line, fragment", [
    ('{"objects": {"one": 1}, "bispans": {"b": {"src": "one", "tgt": "two", "E": "one", "B": "one",'
     ' "p": [0], "f": [0], "l": [0]}}}', 1, "unresolved object id 'two'"),
    ('{\n  "objects": {\n    "x": 2\n  },\n  "morphisms": {\n    "f": {"dom": "x", "cod": "x", "table": [0, 5]}\n  }\n}',
     6, "f: bad morphism"),
    ('{\n  "objects": [1, 2\n}', 3, "Expecting"),
    ('{"widgets": {}}', 1, "unknown section"),
])
def test_parse_errors_carry_locations(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_document(text)
    assert exc.value.line == line
    assert fragment in exc.value.message


def test_dot_output():
    d = dependent_product(fmap([0, 0, 1, 1, 1], 2), fmap([0, 0], 1))
    assert '"w" [label="w (6)"]' in dist_dot("d", d)
    b = random_bispan(random.Random(0), finite_set(1), finite_set(1), 3)
    assert bispan_dot("b", b).startswith('digraph "b" {')
