import pytest

from homorder import (
    Digraph,
    OrderRelation,
    classify,
    compare,
    core,
    directed_path,
    hom_exists,
    level_map,
    oriented_path,
    path_word,
)
from homorder.embedding import (
    build_gadget,
    build_t_double_prime,
    build_t_prime,
    enumerate_path_cores,
    gen_paths,
    phi,
    random_paths,
    verify_interval_embedding,
)
from homorder.gadgets import PreconditionError, build_dn, decompose

# cumulative number of path cores with at most k arcs, k = 1..9
PATH_CORE_COUNTS = [2, 3, 4, 5, 7, 10, 15, 24, 41]


@pytest.fixture(scope="module")
def t_prime(smallest_proper):
    return build_t_prime(smallest_proper, 2)


@pytest.fixture(scope="module")
def gadget(smallest_proper):
    return build_gadget(directed_path(1), smallest_proper)


def test_t_prime_anchors(t_prime):
    t = t_prime.tree
    assert classify(t).is_tree
    assert t.degree(t_prime.y_prime) == 1 and t.degree(t_prime.z_prime) == 1
    lv = level_map(t).level
    assert lv[t_prime.y_prime] == lv[t_prime.z_prime]
    p = t_prime.provenance
    assert {p["anchor_y_length"], p["anchor_z_length"]} <= {5, 6}
    assert len(t) == p["core_vertices"] + p["anchor_y_length"] + p["anchor_z_length"]


def test_t_prime_contains_core_of_chain(t_prime, smallest_proper):
    p = t_prime.provenance
    assert p["n"] == 2 + 2 * len(core(smallest_proper)) + 1 == 19
    assert (p["gadget_vertices"], p["core_vertices"], len(t_prime.tree)) == (230, 230, 241)
    chain = build_dn(decompose(smallest_proper), p["n"]).tree
    c = core(chain)
    assert t_prime.tree.induced(c.vertices) == c
    assert hom_exists(t_prime.tree, smallest_proper)


def test_gadget_interval(gadget, smallest_proper):
    t = gadget.tree
    assert len(t) == 243 and classify(t).is_tree
    assert gadget.provenance["t1_zigzag_length"] == 1
    assert compare(directed_path(1), t) is OrderRelation.STRICTLY_BELOW
    assert compare(t, smallest_proper) is OrderRelation.STRICTLY_BELOW


def test_phi_of_single_arc_is_the_gadget(gadget):
    img = phi(directed_path(1), gadget)
    rename = {"p0": gadget.y_prime, "p1": gadget.z_prime}
    back = Digraph(
        [rename.get(v, v[3:]) for v in img.vertices],
        [(rename.get(a, a[3:]), rename.get(b, b[3:])) for a, b in img.arcs],
    )
    assert set(back.vertices) == set(gadget.tree.vertices)
    assert back.arcset == gadget.tree.arcset


@pytest.mark.parametrize("word", ["FF", "FB", "FFBFF", "BFFB"])
def test_phi_size_and_shape(gadget, word):
    p = oriented_path(word)
    img = phi(p, gadget)
    m = len(p.arcs)
    assert len(img) == m * len(gadget.tree) - (m - 1)
    assert len(img.arcs) == m * len(gadget.tree.arcs)
    assert classify(img).is_tree


def test_phi_rejects_non_paths(gadget, star):
    with pytest.raises(ValueError):
        phi(star, gadget)
    with pytest.raises(ValueError):
        phi(Digraph(["v"]), gadget)


def test_embedding_on_small_paths(gadget, smallest_proper):
    paths = [oriented_path(w) for w in ["F", "FF", "FFBFF", "FB"]]
    report = verify_interval_embedding(paths, directed_path(1), smallest_proper, gadget)
    assert report.all_match and report.interval_ok
    assert all(rp is OrderRelation.EQUIVALENT for i, j, rp, _ in report.pairs if i == j)
    rel = {(i, j): rf for i, j, _, rf in report.pairs}
    assert rel[0, 1] is OrderRelation.STRICTLY_BELOW
    assert rel[0, 3] is OrderRelation.EQUIVALENT  # FB has core F
    assert "all_match = True" in report.to_text()


def test_t1_must_be_below(t_prime, smallest_proper):
    with pytest.raises(PreconditionError):
        build_t_double_prime(smallest_proper, t_prime)
    with pytest.raises(PreconditionError):
        build_gadget(directed_path(1), directed_path(3))


def test_enumerate_cores():
    assert [path_word(p) for p in enumerate_path_cores(1)] == ["", "F"]
    assert [len(enumerate_path_cores(k)) for k in range(1, 8)] == PATH_CORE_COUNTS[:7]
    assert [path_word(p) for p in enumerate_path_cores(5)] == ["", "F", "FF", "FFF", "FFFF", "FFFFF", "FFBFF"]


@pytest.mark.slow
def test_enumerate_cores_longer():
    assert [len(enumerate_path_cores(k)) for k in range(8, 10)] == PATH_CORE_COUNTS[7:]


def test_random_paths_deterministic():
    a = [path_word(p) for p in random_paths(20, 8, 7)]
    b = [path_word(p) for p in gen_paths("random", count=20, max_len=8, seed=7)]
    assert a == b
    assert all(1 <= len(w) <= 8 for w in a)
    assert [path_word(p) for p in random_paths(20, 8, 8)] != a
    with pytest.raises(ValueError):
        gen_paths("bogus")
