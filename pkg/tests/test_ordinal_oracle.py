"""Sanity checks of the explicit-order oracle itself."""

from itertools import product

from ordinal_oracle import absorption_map, add, domain, less, mul, normalize


def test_absorption_map_is_an_isomorphism_on_boxes():
    # on a finite box the map must be injective, order preserving, and hit
    # every tuple of the target box it can reach
    for a, b in [(0, 1), (0, 2), (1, 2), (1, 3), (0, 3)]:
        f = absorption_map(a, b)
        n = 4
        src = [(0, t) for t in product(range(n), repeat=a)]
        src += [(1, t) for t in product(range(n), repeat=b)]
        images = [f(x) for x in src]
        assert len(set(images)) == len(images)
        assert images == sorted(images)        # src is listed in order
        # onto: every tuple with coordinates < n-1 has a preimage
        target = set(images)
        for t in product(range(n - 1), repeat=b):
            assert t in target


def test_small_facts():
    one, w = (0,), (1,)
    assert add(one, w) == w
    assert add(w, one) == (1, 0)
    assert mul((0, 0), w) == w
    assert mul((1, 1, 0), w) == (2,)
    assert mul(w, w) == (2,)
    assert less((1, 1, 0, 0, 0), (2,))
    assert not less(w, w)


def test_domain_size_and_normal_forms():
    dom = domain()
    assert len(dom) == 125
    assert all(normalize(a) == a for a in dom)
    assert len(set(dom)) == 125
