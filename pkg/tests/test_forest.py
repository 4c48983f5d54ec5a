import numpy as np
import pytest
from oracles import cart_oracle

from aslface.errors import DimensionMismatch, EmptyTrainingSet
from aslface.forest import (
    ForestConfig,
    TreeNode,
    gini,
    predict,
    predict_proba,
    train_forest,
)
from aslface.landmarks import SentenceClass

TEST_MODE = dict(n_trees=1, bootstrap=False)


def _tree_equal(node: TreeNode, oracle: dict) -> bool:
    if tuple(oracle["counts"]) != node.class_counts:
        return False
    if node.is_leaf:
        return "f" not in oracle
    if "f" not in oracle:
        return False
    return (
        node.feature_index == oracle["f"]
        and node.threshold == oracle["t"]
        and _tree_equal(node.left, oracle["l"])
        and _tree_equal(node.right, oracle["r"])
    )


def test_gini_values():
    assert gini([4, 0]) == 0.0
    assert gini([2, 2]) == 0.5
    assert gini([3, 1]) == pytest.approx(0.375)
    with pytest.raises(ValueError):
        gini([0, 0])


def test_single_class_training():
    x = np.arange(8, dtype=float).reshape(4, 2)
    model = train_forest(x, [SentenceClass.AS] * 4, ForestConfig(n_trees=5))
    for tree in model.trees:
        assert tree.is_leaf and tree.leaf_vote() == 0
    assert predict(model, np.array([100.0, -5.0])) is SentenceClass.AS
    assert predict_proba(model, np.array([0.0, 0.0])) == (1.0, 0.0)


def test_separable_pair_single_split():
    x = np.array([[0.0], [1.0]])
    y = [SentenceClass.AS, SentenceClass.ST]
    model = train_forest(x, y, ForestConfig(max_features=1, **TEST_MODE))
    root = model.trees[0]
    assert not root.is_leaf
    assert root.feature_index == 0 and root.threshold == 0.5
    assert predict(model, np.array([0.2])) is SentenceClass.AS
    assert predict(model, np.array([0.9])) is SentenceClass.ST


def test_matches_cart_oracle_20_points():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(20, 2))
    y = rng.integers(0, 2, size=20).tolist()
    model = train_forest(x, y, ForestConfig(max_features=2, **TEST_MODE))
    assert _tree_equal(model.trees[0], cart_oracle(x, y))


def test_matches_cart_oracle_with_depth_limit():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(30, 3))
    y = rng.integers(0, 2, size=30).tolist()
    model = train_forest(x, y, ForestConfig(max_features=3, max_depth=2, **TEST_MODE))
    assert _tree_equal(model.trees[0], cart_oracle(x, y, max_depth=2))


def test_tied_splits_choose_lowest_feature_then_threshold():
    # duplicating the informative feature creates an exact score tie
    x = np.array([[0.0, 0.0], [1.0, 1.0]])
    y = [0, 1]
    model = train_forest(x, y, ForestConfig(max_features=2, **TEST_MODE))
    assert model.trees[0].feature_index == 0


def test_training_set_fit_is_perfect_without_label_conflicts():
    rng = np.random.default_rng(6)
    x = rng.normal(size=(40, 4))
    y = rng.integers(0, 2, size=40).tolist()
    model = train_forest(x, y, ForestConfig(max_features=4, **TEST_MODE))
    preds = [predict(model, row).value for row in x]
    assert preds == y


def test_row_permutation_invariance_in_test_mode():
    rng = np.random.default_rng(14)
    x = rng.normal(size=(25, 3))  # continuous draws: all values distinct
    y = rng.integers(0, 2, size=25).tolist()
    model_a = train_forest(x, y, ForestConfig(max_features=3, **TEST_MODE))
    perm = rng.permutation(25)
    model_b = train_forest(x[perm], [y[i] for i in perm], ForestConfig(max_features=3, **TEST_MODE))
    probe = rng.normal(size=(50, 3))
    for row in probe:
        assert predict(model_a, row) is predict(model_b, row)


def test_gini_monotonicity():
    rng = np.random.default_rng(15)
    x = rng.normal(size=(60, 4))
    y = rng.integers(0, 2, size=60).tolist()
    model = train_forest(x, y, ForestConfig(n_trees=10, seed=3))

    def check(node):
        if node.is_leaf:
            return
        parent = gini(node.class_counts)
        total = sum(node.class_counts)
        ln, rn = sum(node.left.class_counts), sum(node.right.class_counts)
        weighted = (ln * gini(node.left.class_counts) + rn * gini(node.right.class_counts)) / total
        assert weighted <= parent + 1e-12
        check(node.left)
        check(node.right)

    for tree in model.trees:
        check(tree)


def test_majority_vote_and_tie_rule():
    # build a forest of constant stumps by hand
    leaf_as = TreeNode(class_counts=(3, 0))
    leaf_st = TreeNode(class_counts=(0, 3))
    from aslface.forest import ForestModel

    votes = (leaf_as, leaf_as, leaf_st, leaf_st, leaf_st)
    model = ForestModel(votes, ForestConfig(n_trees=5), n_features=1)
    assert predict(model, np.array([0.0])) is SentenceClass.ST
    assert predict_proba(model, np.array([0.0])) == (0.4, 0.6)

    tied = ForestModel((leaf_as, leaf_st), ForestConfig(n_trees=2), n_features=1)
    assert predict(tied, np.array([0.0])) is SentenceClass.AS


def test_predict_proba_consistency():
    rng = np.random.default_rng(16)
    x = rng.normal(size=(50, 4))
    y = rng.integers(0, 2, size=50).tolist()
    model = train_forest(x, y, ForestConfig(n_trees=15, seed=8))
    for row in rng.normal(size=(20, 4)):
        p = predict_proba(model, row)
        assert p[0] + p[1] == pytest.approx(1.0, abs=1e-12)
        expected = SentenceClass.AS if p[0] >= p[1] else SentenceClass.ST
        assert predict(model, row) is expected


def test_determinism_bit_exact():
    rng = np.random.default_rng(17)
    x = rng.normal(size=(80, 4))
    y = rng.integers(0, 2, size=80).tolist()
    cfg = ForestConfig(n_trees=7, seed=21)
    a = train_forest(x, y, cfg)
    b = train_forest(x, y, cfg)
    assert a == b


def test_max_depth_respected():
    rng = np.random.default_rng(18)
    x = rng.normal(size=(100, 4))
    y = rng.integers(0, 2, size=100).tolist()
    model = train_forest(x, y, ForestConfig(n_trees=3, max_depth=3, seed=1))

    def depth(node):
        return 0 if node.is_leaf else 1 + max(depth(node.left), depth(node.right))

    assert all(depth(t) <= 3 for t in model.trees)


def test_errors():
    with pytest.raises(EmptyTrainingSet):
        train_forest(np.zeros((0, 4)), [], ForestConfig())
    with pytest.raises(DimensionMismatch):
        train_forest(np.zeros((3, 4)), [0, 1], ForestConfig())
    rng = np.random.default_rng(19)
    model = train_forest(rng.normal(size=(10, 4)), [0, 1] * 5, ForestConfig(n_trees=2))
    with pytest.raises(DimensionMismatch):
        predict(model, np.zeros(3))
