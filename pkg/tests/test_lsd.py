import random

import pytest

from mfaho.digraph import (
    WalkKind,
    build_digraph,
    is_strong,
    underlying_is_2connected,
    validate_walk,
)
from mfaho.errors import InputError, StrongDigraphError
from mfaho.generate import gen_lsd_nonstrong, gen_lsd_strong
from mfaho.lsd import (
    _component_distance,
    greedy_c1_cl_path,
    ham_cycle_strong_lsd,
    ham_cycle_strong_semicomplete,
    ham_path_lsd,
    lsd_decomposition,
    mfahoc_lsd,
)
from mfaho.oracle import oracle_mfahoc

FOUR_LSD = [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]


def test_decomposition_acyclic_path():
    dec = lsd_decomposition(build_digraph(3, [(0, 1), (1, 2)]))
    assert dec.components == ((0,), (1,), (2,))
    assert dec.domination_verified


def test_decomposition_digon_component():
    dec = lsd_decomposition(build_digraph(3, [(0, 1), (1, 0), (1, 2), (0, 2)]))
    assert dec.components == ((0, 1), (2,))


def test_decomposition_four_singletons():
    dec = lsd_decomposition(build_digraph(4, FOUR_LSD))
    assert dec.components == ((0,), (1,), (2,), (3,))


def test_decomposition_rejects_strong():
    with pytest.raises(StrongDigraphError):
        lsd_decomposition(build_digraph(3, [(0, 1), (1, 2), (2, 0)]))


def test_decomposition_rejects_non_lsd():
    with pytest.raises(InputError):
        lsd_decomposition(build_digraph(3, [(0, 1), (0, 2)]))


def test_ham_cycle_semicomplete_triangle():
    d = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert ham_cycle_strong_semicomplete(d) == (0, 1, 2)


def test_ham_cycle_semicomplete_digon():
    assert ham_cycle_strong_semicomplete(build_digraph(2, [(0, 1), (1, 0)])) == (0, 1)


def test_ham_cycle_semicomplete_rejects_non_strong():
    with pytest.raises(InputError):
        ham_cycle_strong_semicomplete(build_digraph(3, [(0, 1), (0, 2), (1, 2)]))


def test_ham_cycle_semicomplete_random_tournaments():
    rng = random.Random(17)
    done = 0
    while done < 25:
        n = rng.randint(3, 50)
        arcs = []
        for u in range(n):
            for v in range(u + 1, n):
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
        d = build_digraph(n, arcs)
        if not is_strong(d):
            continue
        done += 1
        cyc = ham_cycle_strong_semicomplete(d)
        w = validate_walk(d, cyc, WalkKind.CYCLE)
        assert w.sigma_minus == 0


def test_ham_path_triangle():
    d = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    seq = ham_path_lsd(d)
    assert validate_walk(d, seq, WalkKind.PATH).sigma_minus == 0


def test_ham_path_acyclic_path_is_itself():
    assert ham_path_lsd(build_digraph(3, [(0, 1), (1, 2)])) == (0, 1, 2)


def test_ham_path_random_lsds():
    rng = random.Random(29)
    for _ in range(30):
        if rng.random() < 0.5:
            d = gen_lsd_strong(rng.randint(2, 12), seed=rng.randrange(10**6))
        else:
            shape = rng.choice([(1, 2), (2, 2), (1, 2, 1), (3, 2), (2, 2, 2)])
            d = gen_lsd_nonstrong(shape, seed=rng.randrange(10**6))
        seq = ham_path_lsd(d)
        assert validate_walk(d, seq, WalkKind.PATH).sigma_minus == 0


def test_ham_cycle_strong_lsd_directed_cycle():
    n = 7
    d = build_digraph(n, [(i, (i + 1) % n) for i in range(n)])
    cyc = ham_cycle_strong_lsd(d)
    assert validate_walk(d, cyc, WalkKind.CYCLE).sigma_minus == 0


def test_ham_cycle_strong_lsd_semicomplete_subclass():
    d = build_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1)])
    assert is_strong(d)
    cyc = ham_cycle_strong_lsd(d)
    assert validate_walk(d, cyc, WalkKind.CYCLE).sigma_minus == 0


def test_ham_cycle_strong_lsd_rejects_non_strong():
    with pytest.raises(InputError):
        ham_cycle_strong_lsd(build_digraph(3, [(0, 1), (1, 2)]))


def test_ham_cycle_strong_lsd_random():
    rng = random.Random(61)
    for _ in range(25):
        d = gen_lsd_strong(rng.randint(2, 12), seed=rng.randrange(10**6))
        cyc = ham_cycle_strong_lsd(d)
        assert validate_walk(d, cyc, WalkKind.CYCLE).sigma_minus == 0


def test_greedy_path_on_acyclic_path():
    d = build_digraph(3, [(0, 1), (1, 2)])
    dec = lsd_decomposition(d)
    assert greedy_c1_cl_path(d, dec) == (0, 1, 2)


def test_greedy_path_four_vertex():
    d = build_digraph(4, FOUR_LSD)
    dec = lsd_decomposition(d)
    p = greedy_c1_cl_path(d, dec)
    assert p == (0, 2, 3)
    assert len(p) - 1 == _component_distance(d, dec) == 2


def test_greedy_path_matches_bfs_distance():
    rng = random.Random(71)
    for _ in range(30):
        shape = rng.choice([(1, 1, 1), (2, 1, 2), (1, 2, 1, 1), (3, 2), (2, 2, 1, 2)])
        d = gen_lsd_nonstrong(
            shape, seed=rng.randrange(10**6), reach_prob=rng.choice([0.0, 0.4])
        )
        dec = lsd_decomposition(d)
        p = greedy_c1_cl_path(d, dec)
        assert len(p) - 1 == _component_distance(d, dec)
        cn = dec.cn
        assert cn[p[0]] == 0 and cn[p[-1]] == len(dec.components) - 1
        assert all(0 < cn[v] < len(dec.components) - 1 for v in p[1:-1])


def test_mfahoc_lsd_triangle():
    d = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    sigma, walk, branch = mfahoc_lsd(d)
    assert sigma == 3 and branch == "lsd-strong"


def test_mfahoc_lsd_four_vertex_certificate():
    d = build_digraph(4, FOUR_LSD)
    sigma, walk, branch = mfahoc_lsd(d)
    assert sigma == 2
    assert branch == "lsd-nonstrong-2connected"
    assert oracle_mfahoc(d).value == 2
    assert walk.sigma_plus == 2 and walk.sigma_minus == 2


def test_mfahoc_lsd_cut_vertex_returns_none():
    assert mfahoc_lsd(build_digraph(3, [(0, 1), (1, 2)])) is None


def test_mfahoc_lsd_rejects_non_lsd():
    with pytest.raises(InputError):
        mfahoc_lsd(build_digraph(3, [(0, 1), (0, 2)]))


def test_mfahoc_lsd_matches_oracle():
    rng = random.Random(88)
    for _ in range(50):
        if rng.random() < 0.4:
            d = gen_lsd_strong(rng.randint(3, 9), seed=rng.randrange(10**6))
        else:
            shape = rng.choice([(1, 1), (2, 1), (1, 2, 1), (2, 2), (3, 2), (2, 2, 2), (1, 3, 1)])
            d = gen_lsd_nonstrong(
                shape, seed=rng.randrange(10**6), reach_prob=rng.choice([0.0, 0.3, 0.7])
            )
            if d.n < 3:
                continue
        res = mfahoc_lsd(d)
        got = None if res is None else res[0]
        assert got == oracle_mfahoc(d).value


def test_mfahoc_lsd_backward_steps_are_the_greedy_path():
    rng = random.Random(93)
    hits = 0
    for _ in range(40):
        shape = rng.choice([(1, 1, 1), (2, 2), (2, 1, 2), (1, 2, 2), (3, 3)])
        d = gen_lsd_nonstrong(
            shape, seed=rng.randrange(10**6), reach_prob=rng.choice([0.2, 0.6])
        )
        if d.n < 3 or is_strong(d) or not underlying_is_2connected(d):
            continue
        hits += 1
        dec = lsd_decomposition(d)
        p = greedy_c1_cl_path(d, dec)
        sigma, walk, _ = mfahoc_lsd(d)
        backward = {
            step for step, f in zip(walk.steps(), walk.forward_mask) if not f
        }
        assert backward == {(p[i + 1], p[i]) for i in range(len(p) - 1)}
        assert walk.sigma_minus == len(p) - 1
    assert hits >= 10


def test_lower_bound_on_oriented_component_paths():
    # every oriented first-to-last-component path carries at least the
    # component distance in forward arcs
    rng = random.Random(97)
    checked = 0
    for _ in range(25):
        shape = rng.choice([(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2)])
        d = gen_lsd_nonstrong(shape, seed=rng.randrange(10**6), reach_prob=0.3)
        if d.n > 8:
            continue
        dec = lsd_decomposition(d)
        dist = _component_distance(d, dec)
        first, last = set(dec.components[0]), set(dec.components[-1])
        mid = set(range(d.n)) - first - last
        checked += 1

        def extend(seq, fwd):
            v = seq[-1]
            if v in last:
                assert fwd >= dist, (sorted(d.arcs), seq)
                return
            for w in range(d.n):
                if w in seq or w in first:
                    continue
                if w in mid or w in last:
                    if d.has_arc(v, w):
                        extend(seq + [w], fwd + 1)
                    elif d.has_arc(w, v):
                        extend(seq + [w], fwd)

        for s in first:
            extend([s], 0)
    assert checked >= 15
