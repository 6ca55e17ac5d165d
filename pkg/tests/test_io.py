from fractions import Fraction

import pytest

from connquery import io as fileio
from connquery.certificates import CutCertificate, CutRankWitness
from connquery.graph import generate, make_graph


def test_text_round_trip(tmp_path):
    g = make_graph(4, [(1, 2, 1), (2, 4, Fraction(3, 2)), (3, 4, 7)])
    path = tmp_path / "g.txt"
    fileio.write_graph(g, path)
    assert path.read_text() == "4 3\n1 2 1\n2 4 3/2\n3 4 7\n"
    assert fileio.read_graph(path) == g


def test_json_round_trip(tmp_path):
    g = generate("erdos_renyi", 9, 4, max_weight=5)
    path = tmp_path / "g.json"
    fileio.write_graph(g, path)
    assert fileio.read_graph(path) == g


def test_text_with_comments_and_decimals():
    g = fileio.parse_graph_text("# a path\n3 2\n1 2 0.5  # half\n2 3 1\n")
    assert g.weight(1, 2) == Fraction(1, 2) and g.m == 2


@pytest.mark.parametrize("text", ["", "3\n", "3 2\n1 2 1\n", "2 1\n1 2 x\n", "2 1\n1 1 1\n",
                                  "2 1\n1 2\n", "a b\n"])
def test_malformed_text(text):
    with pytest.raises(fileio.FormatError):
        fileio.parse_graph_text(text)


@pytest.mark.parametrize("obj", [{}, {"n": 2}, {"n": 2, "edges": [[1, 2, "1/0"]]}, {"n": 2, "edges": [[1, 3, 1]]}])
def test_malformed_json(obj):
    with pytest.raises(fileio.FormatError):
        fileio.graph_from_json(obj)


def test_certificate_round_trip(tmp_path):
    A = CutCertificate(3, ((1, Fraction(-1, 2), 0), (0, 0, 3)))
    path = tmp_path / "a.json"
    fileio.write_json(fileio.certificate_to_json(A), path)
    assert fileio.read_certificate(path) == A


def test_certificate_wrong_width():
    with pytest.raises(fileio.FormatError):
        fileio.certificate_from_json({"n": 3, "rows": [["1", "2"]]})


def test_witness_round_trip(tmp_path):
    X = CutRankWitness(4, ((1, 0), (Fraction(1, 2), 1)), Fraction(1, 2),
                       shores=(frozenset({2}), frozenset({3, 4})), columns=(0, 5))
    path = tmp_path / "x.json"
    fileio.write_json(fileio.witness_to_json(X), path)
    assert fileio.read_witness(path) == X


def test_witness_missing_tau():
    with pytest.raises(fileio.FormatError):
        fileio.witness_from_json({"n": 2, "rows": [["1"]]})
