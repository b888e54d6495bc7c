"""File format round-trips and strictness."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from isofold import sqrt
from isofold.extension import Instance, extend_all, fold_boundary_region, cone_pieces
from isofold.fileio import (
    MapDocument,
    ParseError,
    instance_hash,
    number_from_json,
    number_to_json,
    parse_instance,
    parse_map,
    serialize_instance,
    serialize_map,
)
from isofold.geometry import ConvexPolygon, Point
from isofold.plmap import assemble
from isofold.verification import audit_structure


def P(x, y) -> Point:
    return Point(x, y)


GOLDEN = Instance(
    [P(0, 0), P(4, 0), P(0, 4)], [P(0, 0), P(4, 0), P(2, 2)]
)


def sqrt2_map():
    fr = fold_boundary_region(
        [P(0, 0), P(2, 0), P(0, 2)],
        P(2, 0), P(0, 2), P(0, 0), P(0, 0), P(2, 0), P(sqrt(2), sqrt(2)),
    )
    pieces, _ = cone_pieces(fr)
    return assemble(ConvexPolygon([P(0, 0), P(2, 0), P(0, 2)]), pieces)


class TestNumberCodec:
    @pytest.mark.parametrize("text", ["0", "7", "-3", "3/4", "-22/7"])
    def test_rational_round_trip(self, text):
        x = number_from_json(text)
        assert number_to_json(x) == text

    def test_normalization(self):
        assert number_to_json(number_from_json("2/4")) == "1/2"

    @pytest.mark.parametrize("bad", ["1.5", "1e3", "", "abc", "1/0", "--3", "1/ 2"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ParseError):
            number_from_json(bad)

    def test_rejects_raw_numbers(self):
        with pytest.raises(ParseError):
            number_from_json(5)

    def test_sqrt_encoding(self):
        x = sqrt(2)
        doc = number_to_json(x)
        assert doc == {
            "nodes": ["2", {"op": "sqrt", "args": [0]}],
            "approx": "1.414213562373",
        }
        assert number_from_json(doc) == x

    def test_nested_expression(self):
        x = (sqrt(2) + 1) / sqrt(3)
        doc = number_to_json(x)
        back = number_from_json(doc)
        assert back == x
        assert number_to_json(back) == doc

    def test_shared_nodes_stay_shared(self):
        root2 = sqrt(2)
        x = root2 + root2
        doc = number_to_json(x)
        assert doc["nodes"] == [
            "2",
            {"op": "sqrt", "args": [0]},
            {"op": "add", "args": [1, 1]},
        ]
        assert number_from_json(doc) == x

    def test_approx_is_annotation_only(self):
        doc = number_to_json(sqrt(2))
        doc["approx"] = "9.000000000000"
        assert number_from_json(doc) == sqrt(2)

    def test_collapsing_node_is_stable(self):
        # A DAG whose sqrt collapses to a rational parses to that
        # rational and stays there on re-serialization.
        doc = {"nodes": ["16/25", {"op": "sqrt", "args": [0]}]}
        assert number_to_json(number_from_json(doc)) == "4/5"

    @pytest.mark.parametrize("bad", [
        {"op": "sqrt", "args": [0]},
        {"nodes": []},
        {"nodes": ["2", {"op": "pow", "args": [0, 0]}]},
        {"nodes": ["2", {"op": "sqrt", "args": [0, 0]}]},
        {"nodes": ["2", {"op": "add", "args": [0]}]},
        {"nodes": ["2", {"op": "add"}]},
        {"nodes": ["2", {"op": "add", "args": [0, 1]}]},
        {"nodes": ["2", {"op": "add", "args": [0, "0"]}]},
        {"nodes": ["2", {"op": "add", "args": [0, True]}]},
        {"nodes": ["-1", {"op": "sqrt", "args": [0]}]},
        {"nodes": ["1", "0", {"op": "div", "args": [0, 1]}]},
        {"nodes": [7]},
        [],
        None,
    ])
    def test_malformed_nodes(self, bad):
        with pytest.raises(ParseError):
            number_from_json(bad)


class TestInstanceFiles:
    def test_round_trip(self):
        text = serialize_instance(GOLDEN)
        back = parse_instance(text)
        assert back.sources == GOLDEN.sources
        assert back.targets == GOLDEN.targets
        assert serialize_instance(back) == text

    def test_shape(self):
        doc = json.loads(serialize_instance(GOLDEN))
        assert doc == {
            "points": [
                {"a": ["0", "0"], "b": ["0", "0"]},
                {"a": ["4", "0"], "b": ["4", "0"]},
                {"a": ["0", "4"], "b": ["2", "2"]},
            ]
        }

    def test_fractions_survive(self):
        i = Instance([P("1/3", "-2/7")], [P("1/3", "-2/7")])
        assert parse_instance(serialize_instance(i)).sources[0] == P("1/3", "-2/7")

    @pytest.mark.parametrize("text", [
        "not json",
        "{}",
        '{"points": {}}',
        '{"points": []}',
        '{"points": [{"a": ["0", "0"]}]}',
        '{"points": [{"a": ["0"], "b": ["0", "0"]}]}',
        '{"points": [{"a": ["0", "0"], "b": ["0", "0.5"]}]}',
        '{"points": [{"a": [0, 0], "b": [0, 0]}]}',
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_instance(text)

    def test_hash_stability(self):
        h = instance_hash(GOLDEN)
        assert len(h) == 64 and int(h, 16) >= 0
        same = Instance(list(GOLDEN.sources), list(GOLDEN.targets))
        assert instance_hash(same) == h
        other = Instance([P(0, 0)], [P(0, 0)])
        assert instance_hash(other) != h


class TestMapFiles:
    def test_round_trip_exact_equality(self):
        f = extend_all(GOLDEN)
        text = serialize_map(f, instance_hash(GOLDEN))
        doc = parse_map(text)
        assert isinstance(doc, MapDocument)
        assert doc.map == f
        assert doc.instance_hash == instance_hash(GOLDEN)
        assert doc.tool_version == "0.1.0"
        assert doc.audits is None
        assert serialize_map(doc.map, doc.instance_hash, doc.audits) == text

    def test_audits_embedded(self):
        f = extend_all(GOLDEN)
        audits = {"all_passed": True, "checks": []}
        text = serialize_map(f, instance_hash(GOLDEN), audits)
        doc = parse_map(text)
        assert doc.audits == audits
        assert serialize_map(doc.map, doc.instance_hash, doc.audits) == text

    def test_irrational_round_trip(self):
        f = sqrt2_map()
        text = serialize_map(f, "0" * 64)
        assert '"op": "sqrt"' in text
        doc = parse_map(text)
        assert doc.map == f
        assert serialize_map(doc.map, doc.instance_hash, doc.audits) == text

    def test_corrupted_motion_parses_but_fails_audit(self):
        f = extend_all(GOLDEN)
        doc = json.loads(serialize_map(f, instance_hash(GOLDEN)))
        doc["map"]["motions"][0]["r"][0][0] = "2"
        broken = parse_map(json.dumps(doc))
        assert not audit_structure(broken.map).all_passed

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("instance_hash"),
        lambda d: d.pop("map"),
        lambda d: d["map"].pop("motions"),
        lambda d: d["map"]["triangles"].append([0, 1, 99, 0]),
        lambda d: d["map"]["triangles"].append([0, 1, 2, 5]),
        lambda d: d["map"]["triangles"].append([0, 1, True, 0]),
        lambda d: d["map"]["triangles"].append([0, 1, 2]),
        lambda d: d["map"]["motions"].append({"r": [["1"]], "t": ["0", "0"]}),
        lambda d: d["map"]["vertices"].append(["1/2"]),
        lambda d: d.__setitem__("audits", 7),
    ])
    def test_shape_errors(self, mutate):
        f = extend_all(GOLDEN)
        doc = json.loads(serialize_map(f, instance_hash(GOLDEN)))
        mutate(doc)
        with pytest.raises(ParseError):
            parse_map(json.dumps(doc))

    def test_truncated(self):
        f = extend_all(GOLDEN)
        text = serialize_map(f, instance_hash(GOLDEN))
        with pytest.raises(ParseError):
            parse_map(text[: len(text) // 2])

    def test_nonconvex_domain_rejected(self):
        f = extend_all(GOLDEN)
        doc = json.loads(serialize_map(f, instance_hash(GOLDEN)))
        doc["map"]["domain"].append(["0", "0"])
        with pytest.raises(ParseError):
            parse_map(json.dumps(doc))
