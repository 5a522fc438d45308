import itertools

import numpy as np
import pytest

from oracles import girth_by_edge_removal
from treeldpc.constructions import (
    ConstructionError,
    Family,
    build_type1a,
    build_type1b,
    build_type2_l3,
    build_type2_l3_eg,
    build_type2_l4,
    claimed_girth,
    construct,
    cycles_to_array,
    reduce_to_eg,
    type1a_permutations,
)
from treeldpc.tanner import degree_profile, girth, to_check_matrix


def regular(G, d):
    prof = degree_profile(G)
    return prof == {"variables": {d: G.num_vars}, "checks": {d: G.num_checks}}


def test_cycles_to_array():
    assert cycles_to_array([(0, 2, 1)], 4) == [2, 0, 1, 3]


@pytest.mark.parametrize("g", [6, 8, 10, 12])
def test_type1a_permutations_are_bijections(g):
    perms = type1a_permutations(g)
    for arr in (perms.pi, perms.tau, perms.tau_prime):
        assert sorted(arr) == list(range(perms.size))
    assert perms.size == 2 ** (g // 2 - 2)


@pytest.mark.parametrize("g", [4, 7, 14])
def test_type1a_unknown_girth(g):
    with pytest.raises(ConstructionError):
        build_type1a(g)


@pytest.mark.parametrize("g,n", [(6, 10), (8, 22), (10, 46), (12, 94)])
def test_type1a_shape(g, n):
    G = build_type1a(g)
    assert G.num_vars == G.num_checks == n
    assert regular(G, 3)
    assert not any(lab.imaginary for lab in G.var_labels + G.check_labels)


@pytest.mark.parametrize("g", [6, 8])
def test_type1a_girth_against_oracle(g):
    G = build_type1a(g)
    assert girth(G) == girth_by_edge_removal(G.var_adj, G.num_checks) == g


@pytest.mark.parametrize("p,s", [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_type1b_shape(p, s):
    q = p**s
    G = build_type1b(p, s)
    assert G.num_vars == G.num_checks == q * q + 1
    assert regular(G, q)
    assert girth(G) == 6
    assert "degenerate" not in G.meta


def test_type1b_q2_is_flagged_degenerate():
    G = build_type1b(2)
    assert G.meta["degenerate"] is True


def test_type1b_root_neighbourhood():
    G = build_type1b(2, 2)
    # root variable is emitted first and touches the q layer-1 checks
    assert G.var_labels[0].layer == 0
    assert all(G.check_labels[c].layer == 1 for c in G.var_adj[0])


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)])
def test_type2_l3_is_projective_plane(p, s):
    q = p**s
    G = build_type2_l3(p, s)
    N = q * q + q + 1
    assert G.num_vars == G.num_checks == N
    assert regular(G, q + 1)
    H = to_check_matrix(G).to_dense().astype(int)
    # any two points lie on exactly one line and any two lines meet in one point
    assert np.array_equal(H.T @ H, q * np.eye(N, dtype=int) + 1)
    assert np.array_equal(H @ H.T, q * np.eye(N, dtype=int) + 1)
    assert girth(G) == 6


@pytest.mark.parametrize("p,s", [(3, 1), (2, 2), (5, 1), (2, 3)])
def test_eg_reduction_is_affine_plane(p, s):
    q = p**s
    G = build_type2_l3_eg(p, s)
    N = q * q - 1
    assert G.num_vars == G.num_checks == N
    assert regular(G, q)
    H = to_check_matrix(G).to_dense().astype(int)
    overlap = H.T @ H - np.diag(np.full(N, q))
    assert overlap.max() == 1
    assert girth(G) == 6


def test_eg_reduction_requires_matching_input():
    with pytest.raises(ConstructionError):
        reduce_to_eg(build_type1b(3), 3)
    with pytest.raises(ConstructionError):
        reduce_to_eg(build_type2_l3(3), 4)


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2)])
def test_type2_l4_shape(p, s):
    q = p**s
    G = build_type2_l4(p, s)
    N = 1 + q + q * q + q**3
    assert G.num_vars == G.num_checks == N
    assert regular(G, q + 1)


def test_type2_l4_q2_girth_eight():
    G = build_type2_l4(2)
    assert girth(G) == girth_by_edge_removal(G.var_adj, G.num_checks) == 8


def test_construct_dispatch():
    assert construct("type1a", girth=6).num_vars == 10
    assert construct(Family.TYPE2_L3, p=2).num_vars == 7
    with pytest.raises(ConstructionError):
        construct("type1b")
    with pytest.raises(ValueError):
        construct("type3", p=2)
    assert claimed_girth("type2-l4") == 8
    assert claimed_girth("type1a", 10) == 10


def test_emission_is_deterministic():
    a, b = build_type2_l4(2), build_type2_l4(2)
    assert a.var_adj == b.var_adj
    assert a.var_labels == b.var_labels
