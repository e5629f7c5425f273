import math
import pathlib

import numpy as np
import pytest

import etk

MUTAG = pathlib.Path(__file__).resolve().parents[2] / "data" / "MUTAG"


def cycle(n):
    return etk.Graph(n, [(v, (v + 1) % n) for v in range(n)])


def test_one_level_entropy():
    triangle = etk.Graph(3, [(0, 1), (1, 2), (0, 2)])
    tree = etk.one_level_tree(triangle)
    assert tree.height == 1
    assert etk.structural_entropy(triangle, tree) == pytest.approx(math.log2(3), abs=1e-12)


def test_optimize_four_cycle():
    graph = cycle(4)
    tree, stats = etk.optimize(graph, height=2)
    assert tree.height == 2
    assert etk.structural_entropy(graph, tree) == pytest.approx(1.5, abs=1e-9)
    assert stats["entropy_trace"][-1] == pytest.approx(1.5, abs=1e-9)
    _, bits = etk.brute_force_min_entropy(graph, 2)
    assert bits == pytest.approx(1.5, abs=1e-9)


def test_tree_export_line():
    tree, _ = etk.optimize(cycle(5), height=3)
    import json

    record = json.loads(tree.to_json())
    assert record["height"] == 3
    assert len(record["nodes"]) == tree.node_count


def test_errors_map_to_python():
    with pytest.raises(etk.InputError):
        etk.Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        etk.optimize(etk.Graph(3, []), 2)


def test_mutag_gram_and_cv():
    data = etk.load_tudataset(MUTAG, "MUTAG")
    assert len(data) == 188
    gram, _ = etk.gram_matrix(data, height=2)
    assert gram.shape == (188, 188)
    assert np.array_equal(gram, gram.T)
    assert np.linalg.eigvalsh(gram).min() >= -1e-9 * np.trace(gram)
    report = etk.cross_validate(data, heights=[2], c_grid=[0.1])
    assert len(report["fold_accuracies"]) == 10
    assert 0.8 < report["mean"] <= 1.0


def test_smo_two_points():
    model = etk.smo_train(np.eye(2), [1, -1])
    assert model["decision"][0] > 0 > model["decision"][1]
    assert sorted(model["support"]) == [0, 1]
