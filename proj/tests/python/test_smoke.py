import math

import numpy as np
import pytest

import conceptkit as ck


def test_duck_dog_eel_lattice():
    ctx = ck.Context(["duck", "dog", "eel"], ["swims", "flies", "has_legs"],
                     [[True, True, True], [False, False, True], [True, False, False]])
    assert ck.derive_intent(ctx, [0, 1]) == [2]
    lattice = ck.concept_lattice(ctx)
    assert len(lattice) == 4
    assert lattice.height == 2
    assert lattice.check_laws()["passed"]
    assert lattice.join(lattice.bottom, lattice.top) == lattice.top


def test_context_csv_round_trip():
    ctx = ck.gen_context(5, 4, 0.5, seed=2)
    back = ck.Context.from_csv(ctx.to_csv())
    assert back.objects == ctx.objects
    assert len(ck.enumerate_concepts(back)) == len(ck.enumerate_concepts(ctx))


def test_metrics_and_classification():
    assert ck.distance_euclid(np.array([0.0, 0.0]), np.array([3.0, 4.0]), np.ones(2)) == pytest.approx(5.0)
    assert ck.distance_l1(np.array([2.0, -1, 3]), np.zeros(3), np.array([0.5, 1, 2])) == pytest.approx(8.0)
    train = np.array([[0.0, 0.0], [10.0, 10.0]])
    out = ck.classify(train, ["first", "second"], np.array([[1.0, 1.0]]))
    assert out[0][0] == "first"
    assert out[0][1] == pytest.approx(math.sqrt(2))
    with pytest.raises(ck.DomainError):
        ck.cosine_similarity(np.zeros(2), np.ones(2))


def test_kmeans_on_blobs():
    pts, labels = ck.gen_blobs(np.array([[0.0, 0.0], [20.0, 20.0]]), 30, 1.0, seed=1)
    r = ck.kmeans(pts, 2, seed=0)
    a = np.array(r["assignments"])
    assert len(set(a[:30])) == 1 and len(set(a[30:])) == 1 and a[0] != a[30]


def test_sgns_and_vector_logic():
    corpus = ck.gen_topic_corpus(2, 8, 400, seed=0)
    space, loss = ck.train_sgns(corpus, epochs=2)
    assert space.vectors.shape == (16, 16)
    assert len(loss) == 2
    assert len(space.analogy("t0w1", "t0w2", "t1w1", top_k=3)) == 3
    a, b = np.array([1.0, 1.0]), np.array([1.0, 0.0])
    assert np.allclose(ck.vector_not(a, b), [0.0, 1.0])
    assert ck.vector_or([np.array([1.0, 1, 0]), np.array([2.0, 2, 0])]).shape == (3, 1)


def test_hierarchies():
    edges = ck.gen_tree(2, 2)
    p = ck.train_poincare(edges, epochs=50)
    assert np.all(np.linalg.norm(p["points"], axis=1) <= 1 - 1e-5)
    b = ck.fit_boxes(edges)
    assert b["containment_accuracy"] >= 0.9
    assert np.all(b["lo"] <= b["hi"])


def test_vae_and_level_sets():
    assert ck.level_membership("circle", 1.0, np.array([1.0, 0.0]))[0]
    assert ck.gaussian_kl(np.zeros(2), np.zeros(2)) == 0.0
    pts, _ = ck.gen_two_moons(100, seed=0)
    model, loss = ck.train_vae(ck.VaeModel.init(2, 1), pts, epochs=20)
    assert loss[-1] < loss[0]
    path = model.interpolate(pts[0], pts[1], steps=4)
    assert path.shape == (4, 2)
    again = ck.VaeModel.from_json(model.to_json())
    assert np.allclose(again.decode(np.zeros(1)), model.decode(np.zeros(1)))
    with pytest.raises(ck.InputError):
        ck.VaeModel.init(2, 2)
    with pytest.raises(ck.DivergenceError):
        ck.train_vae(ck.VaeModel.init(2, 1), pts, epochs=20, lr=1e6)


def test_groups_and_invariance():
    assert ck.verify_group(ck.Group.cyclic(4))["passed"]
    bad = ck.Group.from_table([[0, 1, 2, 3], [1, 2, 0, 3], [2, 3, 0, 1], [3, 0, 1, 2]])
    assert not ck.verify_group(bad)["passed"]
    rng = np.random.default_rng(0)
    pts = list(rng.uniform(-2, 2, size=(20, 2)))
    g = ck.Group.cyclic(8)
    assert ck.check_invariance(g, "rotation", "norm", pts)["passed"]
    assert not ck.check_invariance(g, "rotation", "identity", pts)["passed"]
    assert ck.check_equivariance(g, "rotation", "polar-angle", "angle-shift", pts)["passed"]
    max_res, _ = ck.lie_residual("unit-circle", [np.array(p) for p in pts])
    assert max_res < 1e-6


def test_torus_disentanglement():
    group, pts, _ = ck.gen_torus_orbits(6, 6)
    rows = list(pts)
    assert ck.check_disentangled(group, "identity", rows)["passed"]
    assert not ck.check_disentangled(group, "block-mixing-45", rows, tol=1e-3)["passed"]
