import json

import numpy as np
import pytest
from hypothesis import given

from conftest import groupoids, maps
from pathcat.groupoids import (
    NaturalIso,
    delooping,
    deloop_homomorphism,
    identity_map,
    interval,
    standard_objects,
    terminal_map,
    validate_map,
)
from pathcat.groups import cyclic_group, klein_four, symmetric_group
from pathcat.search import iter_natural_isos
from pathcat.serialize import (
    Document,
    FormatError,
    dumps,
    id_str,
    load,
    loads,
    single,
)

S3 = symmetric_group(3)


def same_tables(a, b):
    if (a.n_objects, a.n_morphisms) != (b.n_objects, b.n_morphisms):
        return False
    arrays = ("src", "dst", "ident", "inv")
    if not all(np.array_equal(getattr(a, k), getattr(b, k)) for k in arrays):
        return False
    return all(a.cmp(g, f) == b.cmp(g, f) for g in range(a.n_morphisms) for f in a.into_idx[a.src[g]])


def roundtrip(doc):
    text = dumps(doc)
    back = loads(text)
    assert dumps(back) == text
    return back


def test_id_rendering():
    assert id_str("x") == "x"
    assert id_str((0, (1, 2))) == "(0,(1,2))"
    assert id_str(3) == "3"


@pytest.mark.parametrize("name", sorted(standard_objects()))
def test_catalog_roundtrips(name):
    g = standard_objects()[name]
    doc = Document()
    key = doc.add_groupoid(g, name)
    back = roundtrip(doc)
    assert same_tables(back.groupoids[key], g)


@given(groupoids())
def test_random_groupoids_roundtrip(g):
    doc = Document()
    key = doc.add_groupoid(g, "g")
    assert same_tables(roundtrip(doc).groupoids[key], g)


@given(maps())
def test_random_maps_roundtrip(f):
    doc = Document()
    doc.add_map(f, "f")
    back = roundtrip(doc).maps["f"]
    assert back.obj_map.tolist() == f.obj_map.tolist()
    assert back.mor_map.tolist() == f.mor_map.tolist()


def test_isos_and_groups_roundtrip():
    Z3 = cyclic_group(3)
    f = deloop_homomorphism(Z3, Z3, lambda x: x)
    doc = Document()
    for k, eta in enumerate(iter_natural_isos(f, f)):
        doc.add_iso(eta, f"eta{k}")
    doc.groups["V4"] = klein_four()
    back = roundtrip(doc)
    assert len(back.isos) == 3
    assert back.groups["V4"].order == 4
    for k, eta in doc.isos.items():
        assert back.isos[k].components.tolist() == eta.components.tolist()


def test_named_and_file_references(tmp_path):
    doc = Document()
    doc.add_groupoid(delooping(cyclic_group(2)), "BZ2")
    (tmp_path / "bz2.json").write_text(dumps(doc))
    text = json.dumps({
        "format": "pathcat", "version": 1,
        "maps": {
            "u": {"domain": {"file": "bz2.json"}, "codomain": {"named": "terminal"},
                  "object_map": {"*": "0"}, "morphism_map": {"0": "(0,0)", "1": "(0,0)"}},
        },
    })
    path = tmp_path / "m.json"
    path.write_text(text)
    m = single(load(path), "maps")
    assert m.domain.n_morphisms == 2 and m.codomain.n_morphisms == 1


def test_named_delooping_reference():
    text = json.dumps({
        "format": "pathcat", "version": 1,
        "groupoids": {"G": {"named": "BS3"}},
    })
    assert single(loads(text), "groupoids").n_morphisms == 6


def test_circular_file_reference(tmp_path):
    p = tmp_path / "a.json"
    p.write_text(json.dumps({"format": "pathcat", "version": 1, "groupoids": {"G": {"file": "a.json"}}}))
    with pytest.raises(FormatError, match="circular"):
        load(p)


def test_dangling_source_names_the_id():
    doc = Document()
    doc.add_groupoid(interval(), "I")
    data = json.loads(dumps(doc))
    data["groupoids"]["I"]["morphisms"][1]["src"] = "nowhere"
    with pytest.raises(FormatError) as info:
        loads(json.dumps(data, indent=2))
    assert "nowhere" in str(info.value)
    assert info.value.line is not None


def test_syntax_error_has_line():
    with pytest.raises(FormatError) as info:
        loads('{\n  "format": "pathcat",\n  "version": 1,\n  oops\n}')
    assert info.value.line == 4
    assert str(info.value).startswith("line 4")


def test_wrong_format_and_version():
    with pytest.raises(FormatError, match="format"):
        loads(json.dumps({"format": "other", "version": 1}))
    with pytest.raises(FormatError, match="version"):
        loads(json.dumps({"format": "pathcat", "version": 7}))


def test_functor_breaking_composition_loads_but_fails_validation():
    g = delooping(cyclic_group(3))
    doc = Document()
    doc.add_map(identity_map(g), "f")
    data = json.loads(dumps(doc))
    data["maps"]["f"]["morphism_map"]["1"] = "0"  # 1 + 1 = 2 now goes to 0 + 0 != 2
    f = single(loads(json.dumps(data)), "maps")
    bad = validate_map(f)
    assert bad and bad[0].witness


def test_iso_missing_component():
    f = terminal_map(interval())
    doc = Document()
    doc.add_iso(NaturalIso.identity(f), "eta")
    data = json.loads(dumps(doc))
    del data["isos"]["eta"]["components"]["0"]
    with pytest.raises(FormatError, match="no component"):
        loads(json.dumps(data))


def test_single_requires_choice():
    doc = Document()
    doc.add_groupoid(interval(), "I")
    doc.add_groupoid(delooping(S3), "BS3")
    with pytest.raises(FormatError):
        single(doc, "groupoids")
    assert single(doc, "groupoids", "I").n_objects == 2


def test_output_is_canonical():
    doc = Document()
    doc.add_groupoid(delooping(S3), "BS3")
    text = dumps(doc)
    assert text.endswith("\n")
    assert text == dumps(loads(text))
    assert list(json.loads(text)) == sorted(json.loads(text))
