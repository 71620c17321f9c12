import pytest

from orbifold_fusion.builders import BadParameter, UnknownBuilder, build_example, parse_input
from orbifold_fusion.identifiers import BadIdentifier, format_label, parse_label
from orbifold_fusion.modules import Twisted, Type1, Type2

from conftest import EXAMPLES


def _counts(orb, mode):
    return tuple(len(v) for v in orb.enumerate_labels(mode).values())


@pytest.mark.parametrize("spec,want", [
    ("a2-double", (12, 24, 12)),
    ("neg-identity:[[2]]", (0, 4, 4)),
    ("an-dynkin:3", (2, 8, 2)),
])
def test_paper_counts(orb_of, spec, want):
    assert _counts(orb_of(spec), "paper") == want


@pytest.mark.parametrize("spec,want", [
    ("a2-double", (3, 6, 6)),
    ("neg-identity:[[2]]", (0, 4, 4)),
    ("an-dynkin:3", (1, 4, 4)),
    ("an-dynkin:4", (8, 8, 8)),
])
def test_canonical_class_counts(orb_of, spec, want):
    classes = orb_of(spec).canonical_classes
    assert tuple(sum(1 for c in classes if c.kind == k) for k in ("type1", "type2", "twisted")) == want


@pytest.mark.parametrize("spec", EXAMPLES)
def test_classes_partition_labels(orb_of, spec):
    o = orb_of(spec)
    labels = [x for fam in o.enumerate_labels("canonical").values() for x in fam]
    members = [m for c in o.canonical_classes for m in c.members]
    assert sorted(map(str, members)) == sorted(map(str, labels))
    assert len(set(members)) == len(members)
    for c in o.canonical_classes:
        assert c.representative in c.members
        assert all(o.normalize(m) == c.representative for m in c.members)
    assert not o.notes


@pytest.mark.parametrize("spec", EXAMPLES)
@pytest.mark.parametrize("mode", ["paper", "canonical"])
def test_identifier_roundtrip(orb_of, spec, mode):
    o = orb_of(spec)
    for fam in o.enumerate_labels(mode).values():
        for x in fam:
            text = format_label(o, x, mode)
            assert parse_label(o, text, mode) == x
            assert format_label(o, parse_label(o, text, mode), mode) == text


@pytest.mark.parametrize("text", ["type3:0/0", "type1:0,0", "type2:0,0/0,0:*", "twisted:99:chi00:+",
                                  "twisted:0:chi0:+", "type1:0,0/0,0", "type2:0,0/0,1:+", "twisted:0:chi00"])
def test_bad_identifiers(orb_of, text):
    with pytest.raises(BadIdentifier):
        parse_label(orb_of("a2-double"), text)


@pytest.mark.parametrize("spec", EXAMPLES)
def test_contragredient_is_involution(orb_of, spec):
    o = orb_of(spec)
    for fam in o.enumerate_labels("canonical").values():
        for x in fam:
            y = o.contragredient(x)
            assert type(y) is type(x)
            assert o.contragredient(y) == x
    assert o.contragredient(o.vacuum()) == o.vacuum()


@pytest.mark.parametrize("spec", EXAMPLES)
def test_current_signs(orb_of, spec):
    o = orb_of(spec)
    signs = o.current_signs
    assert set(signs) == set(o.setting.transversal)
    assert all(v in (1, -1) for v in signs.values())
    zero = tuple(0 for _ in range(o.setting.n))
    if zero in signs:
        assert signs[zero] == 1


def test_a2_double_current_signs(orb_of):
    o = orb_of("a2-double")
    assert sorted(o.current_signs.values()) == [-1, -1, -1, 1]


def test_paper_sign_fold(orb_of):
    assert orb_of("a2-double").paper_sign_folded
    assert not orb_of("neg-identity:[[2]]").paper_sign_folded
    tw = orb_of("a2-double").enumerate_labels("paper")["twisted"]
    assert all(x.sign == 1 for x in tw)


def test_moves_stay_in_class(orb_of):
    o = orb_of("a2-double")
    for c in o.canonical_classes:
        for m in c.members:
            assert all(y in c.members for y in o.moves(m))


@pytest.mark.parametrize("spec,exc", [
    ("nope", UnknownBuilder), ("an-dynkin:1", BadParameter), ("rank1-double:x", BadParameter),
    ("perm-double:[[2,1]]", BadParameter), ("a2-double:3", BadParameter), ("neg-identity:[[2.5]]", BadParameter),
])
def test_builder_errors(spec, exc):
    with pytest.raises(exc):
        build_example(spec)


def test_builders_shapes():
    doc = build_example("a2-double")
    assert doc.gram == ((2, -1, 0, 0), (-1, 2, 0, 0), (0, 0, 2, -1), (0, 0, -1, 2))
    assert doc.sigma == ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0))
    assert build_example("rank1-double:2").gram == ((4, 0), (0, 4))
    g = build_example("an-dynkin:3")
    assert g.sigma == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_parse_input():
    doc = parse_input('{"gram": [[2]], "sigma": [[-1]], "name": "A1"}')
    assert doc.to_dict() == {"gram": [[2]], "sigma": [[-1]], "name": "A1"}
    for bad in ("{", '{"gram": [[2]]}', '{"gram": [[2, 1]], "sigma": [[1]]}', '{"gram": [[true]], "sigma": [[1]]}'):
        with pytest.raises(BadParameter):
            parse_input(bad)


def test_label_kinds(orb_of):
    o = orb_of("a2-double")
    fam = o.enumerate_labels("paper")
    assert all(isinstance(x, Type1) for x in fam["type1"])
    assert all(isinstance(x, Type2) for x in fam["type2"])
    assert all(isinstance(x, Twisted) for x in fam["twisted"])
    assert all(not x.mu.twice_in_modulus() for x in fam["type1"])
