from __future__ import annotations

import random

import pytest

from bigembed.core import Signature, is_isomorphic, validate
from bigembed.generate import (GenerationError, all_bigraphs, bigraph_family, canonical_form,
                               random_bigraph)

SIG = Signature.of(("K", 2), ("L", 1, False), ("M", 0))


def test_random_bigraphs_are_valid_with_requested_sizes():
    rng = random.Random(0)
    for _ in range(100):
        n, e, s, r = (rng.randint(0, 6), rng.randint(0, 3), rng.randint(0, 3), rng.randint(1, 3))
        xi, yo = rng.randint(0, 2), rng.randint(1, 2)
        b = random_bigraph(rng, SIG, nodes=n, edges=e, sites=s, roots=r, inner_names=xi,
                           outer_names=yo)
        assert validate(b) == []
        assert (len(b.nodes), len(b.edges), b.sites, b.roots) == (n, e, s, r)
        assert (len(b.inner_names), len(b.outer_names)) == (xi, yo)


def test_same_seed_same_bigraph():
    kw = dict(nodes=5, edges=2, sites=1, roots=2, inner_names=1, outer_names=1)
    assert random_bigraph(random.Random(42), SIG, **kw) == random_bigraph(random.Random(42), SIG, **kw)


@pytest.mark.parametrize("kw", [
    dict(nodes=-1),
    dict(nodes=1, roots=0),
    dict(sites=1, roots=0),
    dict(nodes=1, edges=0, outer_names=0),
])
def test_impossible_requests(kw):
    with pytest.raises(GenerationError):
        random_bigraph(random.Random(0), Signature.of(("K", 1)), **kw)


def test_canonical_form_agrees_with_isomorphism():
    rng = random.Random(3)
    sig = Signature.of(("K", 1), ("L", 0))
    bs = [random_bigraph(rng, sig, nodes=3, edges=1, roots=1, outer_names=1) for _ in range(40)]
    for a in bs[:20]:
        for b in bs[20:]:
            assert (canonical_form(a) == canonical_form(b)) == is_isomorphic(a, b)


def test_unlabelled_forest_counts():
    sig = Signature.of(("A", 0))
    # rooted unlabelled forests on n nodes under one root: 1, 1, 2, 4, 9
    counts = [sum(1 for _ in all_bigraphs(sig, nodes=n, edges=0, sites=0, roots=1))
              for n in range(5)]
    assert counts == [1, 1, 2, 4, 9]


def test_family_has_no_duplicates():
    sig = Signature.of(("K", 1))
    fam = list(bigraph_family(sig, max_nodes=2, max_edges=1, max_sites=1, max_roots=1,
                              max_inner=1, max_outer=1))
    keys = [canonical_form(b) for b in fam]
    assert len(keys) == len(set(keys))
    assert all(validate(b) == [] for b in fam)
