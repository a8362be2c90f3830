"""Pointer-jumping protocol tests: oracles, transcripts, exact costs."""

import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depjump.graphs import is_clique
from depjump.pointer_jumping import (
    Bipartite,
    CoverContext,
    Mpj3Instance,
    MpjHatInstance,
    bipartite_from_text,
    bipartite_to_text,
    bit_slice,
    count_preimages,
    default_prefix_bits,
    eval_mpj,
    eval_mpj_hat,
    induced_graph,
    instance_from_json,
    instance_to_json,
    is_preimage_limited,
    lex_least_limited,
    random_limited_function,
    random_mpj3_instance,
    random_mpjhat_instance,
    run_hat3_sm,
    run_hat4,
    run_oneway,
    run_oneway_core,
    run_sm,
    sample_bipartite,
    validate_bipartite,
)
from depjump.rng import stream, trial_seed


# ---------------------------------------------------------------------------
# evaluation oracles
# ---------------------------------------------------------------------------

def test_eval_identity_middle_layer():
    inst = Mpj3Instance(4, 2, (0, 1, 2, 3), (0, 1, 1, 0))
    assert inst.eval() == 1


def test_eval_four_player_trace():
    # x[f3(f2(0))] = x[f3(1)] = x[2] = 1
    assert eval_mpj(0, [(1, 2, 3, 0), (3, 2, 1, 0)], (1, 0, 1, 0)) == 1


def test_eval_all_zero_x():
    for i, f2 in product(range(4), [(0, 0, 0, 0), (1, 2, 3, 0)]):
        assert eval_mpj(i, [f2], (0, 0, 0, 0)) == 0


def test_eval_hat_identity():
    inst = MpjHatInstance(4, 3, 3, ((0, 1, 2, 3), (0, 1, 2, 3)))
    assert inst.eval() == 3


def test_eval_hat_four_player_trace():
    # f4(f3(f2(1))) = f4(f3(3)) = f4(2) = 1
    inst = MpjHatInstance(4, 4, 1, ((2, 3, 0, 1), (1, 1, 2, 2), (0, 3, 1, 2)))
    assert inst.eval() == 1


def test_eval_hat_constant_final_layer():
    f3 = (2, 2, 2, 2)
    for i in range(4):
        for seed in range(5):
            f2 = tuple(int(v) for v in stream(seed).integers(0, 4, 4))
            assert eval_mpj_hat(i, [f2, f3]) == 2


def test_instance_validation():
    with pytest.raises(ValueError):
        Mpj3Instance(4, 4, (0, 1, 2, 3), (0, 1, 1, 0))
    with pytest.raises(ValueError):
        Mpj3Instance(4, 0, (0, 1, 2, 9), (0, 1, 1, 0))
    with pytest.raises(ValueError):
        Mpj3Instance(4, 0, (0, 1, 2, 3), (0, 1, 2, 0))
    with pytest.raises(ValueError, match="power of two"):
        MpjHatInstance(6, 3, 0, ((0,) * 6, (0,) * 6))


# ---------------------------------------------------------------------------
# the induced graph
# ---------------------------------------------------------------------------

def test_induced_graph_complete():
    h = Bipartite.complete(5)
    g = induced_graph(h, [0, 1, 2, 3, 4])
    assert g.num_edges == 10


def test_induced_graph_empty():
    h = Bipartite.empty(5)
    assert induced_graph(h, [0, 0, 0, 0, 0]).num_edges == 0


def test_induced_graph_small_case():
    h = Bipartite.from_edges(3, [(0, 1), (1, 0), (2, 2)])
    g = induced_graph(h, [0, 1, 2])
    assert list(g.edges()) == [(0, 1)]


def test_induced_graph_matches_definition():
    h = sample_bipartite(12, 0.4, 5)
    f = [int(v) for v in stream(6).integers(0, 12, 12)]
    g = induced_graph(h, f)
    for i in range(12):
        for j in range(i + 1, 12):
            expected = h.has(i, f[j]) and h.has(j, f[i])
            assert g.has_edge(i, j) == expected


# ---------------------------------------------------------------------------
# bipartite parameter graphs
# ---------------------------------------------------------------------------

def test_sample_bipartite_extremes():
    assert sample_bipartite(6, 1.0, 0).num_edges == 36
    assert sample_bipartite(6, 0.0, 0).num_edges == 0


def test_sample_bipartite_deterministic():
    a, b = sample_bipartite(20, 0.3, 9), sample_bipartite(20, 0.3, 9)
    assert a == b
    assert a != sample_bipartite(20, 0.3, 10)


def test_sample_bipartite_cols_consistent():
    h = sample_bipartite(13, 0.5, 4)
    for a in range(13):
        for b in range(13):
            assert h.has(a, b) == bool(h.col_bools(b)[a])


def test_sample_bipartite_edge_counts_binomial():
    n, p = 256, 0.3
    sigma = math.sqrt(n * n * p * (1 - p))
    for s in range(100):
        count = sample_bipartite(n, p, trial_seed(123, s)).num_edges
        assert abs(count - p * n * n) <= 4 * sigma


def test_bipartite_text_round_trip():
    h = sample_bipartite(9, 0.4, 2)
    clone = bipartite_from_text(bipartite_to_text(h))
    assert clone == h
    assert clone.density == h.density


# ---------------------------------------------------------------------------
# preimage capping
# ---------------------------------------------------------------------------

def test_lex_least_keeps_limited_functions():
    f = [3, 1, 0, 2, 1]
    assert is_preimage_limited(f, 2)
    assert lex_least_limited(f, 2) == f


def test_lex_least_constant_cap_one():
    assert lex_least_limited([0, 0, 0, 0], 1) == [0, 1, 2, 3]


def test_lex_least_constant_cap_two():
    assert lex_least_limited([0, 0, 0, 0], 2) == [0, 0, 1, 1]


def brute_force_lex_least(f, cap):
    """Smallest cap-limited completion by exhaustive enumeration."""
    n = len(f)
    counts = count_preimages(f, n)
    fixed = {j: v for j, v in enumerate(f) if counts[v] <= cap}
    best = None
    for cand in product(range(n), repeat=n):
        if any(cand[j] != v for j, v in fixed.items()):
            continue
        if not is_preimage_limited(cand, cap):
            continue
        if best is None or cand < best:
            best = cand
    return list(best)


def test_lex_least_is_lexicographically_minimal():
    cases = [
        ([0, 0, 0, 0], 1), ([0, 0, 0, 0], 2), ([2, 2, 2, 1], 2),
        ([1, 1, 0, 1, 1], 2), ([0, 1, 0, 1, 0, 1], 2), ([3, 3, 3, 3, 3], 1),
    ]
    for f, cap in cases:
        assert lex_least_limited(f, cap) == brute_force_lex_least(f, cap)


def test_random_limited_function_respects_cap():
    f = random_limited_function(32, 3, 17)
    assert is_preimage_limited(f, 3)


# ---------------------------------------------------------------------------
# one-way core protocol
# ---------------------------------------------------------------------------

def test_oneway_core_complete_bipartite():
    n = 6
    h = Bipartite.complete(n)
    inst = random_mpj3_instance(n, 3)
    t, out = run_oneway_core(h, inst)
    assert out == inst.eval()
    by_party = t.bits_by_party()
    assert by_party["alice"] == 1  # one clique covers everything
    assert by_party["bob"] == n


def test_oneway_core_empty_bipartite():
    n = 6
    h = Bipartite.empty(n)
    inst = random_mpj3_instance(n, 4)
    t, out = run_oneway_core(h, inst)
    assert out == inst.eval()
    by_party = t.bits_by_party()
    assert by_party["alice"] == n  # n singleton clusters
    assert by_party.get("bob", 0) == 0
    # cluster bit for singleton {j} is x[f2(j)] and the receiver reads bit i
    alice_msg = t.messages[0].bits
    assert all(int(alice_msg[j]) == inst.x[inst.f2[j]] for j in range(n))


def test_oneway_core_random_referee():
    n = 16
    for s in range(300):
        h = sample_bipartite(n, (s % 9 + 1) / 10, trial_seed(5, s))
        inst = random_mpj3_instance(n, trial_seed(6, s))
        _, out = run_oneway_core(h, inst)
        assert out == inst.eval()


def test_oneway_core_constant_f2():
    n = 8
    for s in range(50):
        h = sample_bipartite(n, 0.4, trial_seed(7, s))
        base = random_mpj3_instance(n, trial_seed(8, s))
        inst = Mpj3Instance(n, base.i, (s % n,) * n, base.x)
        _, out = run_oneway_core(h, inst)
        assert out == inst.eval()


def test_cover_agreement_between_parties():
    # sender and receiver recompute the identical cover from (h, f) alone
    h = sample_bipartite(24, 0.3, 11)
    f = [int(v) for v in stream(12).integers(0, 24, 24)]
    a, b = CoverContext(h, f), CoverContext(h, list(f))
    assert a.parts == b.parts
    g = a.graph
    for part in a.parts:
        assert is_clique(g, part)


# ---------------------------------------------------------------------------
# general one-way wrapper
# ---------------------------------------------------------------------------

def test_wrapper_matches_core_for_permutations():
    n = 8
    h = sample_bipartite(n, 0.5, 21)
    gen = stream(22)
    f2 = tuple(int(v) for v in gen.permutation(n))
    inst = Mpj3Instance(n, 3, f2, tuple(int(b) for b in gen.integers(0, 2, n)))
    t_core, out_core = run_oneway_core(h, inst)
    t_gen, out_gen = run_oneway(h, inst, cap=1)
    assert out_gen == out_core == inst.eval()
    assert t_gen.total_bits == t_core.total_bits  # empty supplement
    supplement = [m for m in t_gen.messages if m.party == "alice" and m.round == 1]
    assert supplement[0].bits == ""


def test_wrapper_constant_f2_supplement():
    n = 8
    h = sample_bipartite(n, 0.5, 23)
    inst = Mpj3Instance(n, 5, (0,) * n, (1, 0, 1, 1, 0, 0, 1, 0))
    t, out = run_oneway(h, inst, cap=1)
    assert out == inst.x[0]
    supplement = [m for m in t.messages if m.party == "alice" and m.round == 1][0]
    assert supplement.bits == "1"  # only value 0 has a large preimage


def test_wrapper_supplement_within_budget():
    n = 64
    for s in range(100):
        h = sample_bipartite(n, 0.3, trial_seed(31, s))
        gen = stream(trial_seed(32, s))
        f2 = tuple(int(v) for v in gen.integers(0, max(1, n // 8), n))  # skewed
        inst = Mpj3Instance(n, int(gen.integers(n)), f2,
                            tuple(int(b) for b in gen.integers(0, 2, n)))
        cap = max(1, int(math.log2(n)))
        t, out = run_oneway(h, inst, cap)
        assert out == inst.eval()
        supplement = [m for m in t.messages if m.party == "alice" and m.round == 1][0]
        assert len(supplement.bits) <= n / cap


# ---------------------------------------------------------------------------
# simultaneous messages
# ---------------------------------------------------------------------------

def test_sm_cost_exactly_double():
    n = 16
    for s in range(100):
        h = sample_bipartite(n, 0.4, trial_seed(41, s))
        inst = random_mpj3_instance(n, trial_seed(42, s))
        t1, out1 = run_oneway_core(h, inst)
        t2, out2 = run_sm(h, inst)
        assert out1 == out2 == inst.eval()
        assert t2.total_bits == 2 * t1.total_bits


def test_sm_complete_bipartite_shapes():
    n = 4
    h = Bipartite.complete(n)
    inst = random_mpj3_instance(n, 43)
    t, out = run_sm(h, inst)
    assert out == inst.eval()
    by_party = t.bits_by_party()
    assert by_party == {"alice": 1, "bob": 4, "carol": 5}


def test_sm_duplicate_image_masks_single_bit():
    # constant f2 puts every vertex in one clique with one shared image:
    # the mask selects a single neighbor bit and no cluster bit
    n = 6
    h = Bipartite.complete(n)
    inst = Mpj3Instance(n, 2, (3,) * n, (0, 1, 0, 1, 1, 0))
    t, out = run_sm(h, inst)
    assert out == inst.x[3]
    carol = [m for m in t.messages if m.party == "carol"][0].bits
    alice_len = len([m for m in t.messages if m.party == "alice"][0].bits)
    assert carol[:alice_len].count("1") == 0
    assert carol[alice_len:].count("1") == 1


# ---------------------------------------------------------------------------
# non-Boolean protocols
# ---------------------------------------------------------------------------

def test_bit_slicing_msb_first():
    assert bit_slice([3, 1, 2, 0], 1, 2) == (1, 0, 1, 0)
    assert bit_slice([3, 1, 2, 0], 2, 2) == (1, 1, 0, 0)


def test_hat3_constant_zero_layer():
    h = sample_bipartite(4, 0.5, 51)
    inst = MpjHatInstance(4, 3, 1, ((2, 0, 3, 1), (0, 0, 0, 0)))
    _, out = run_hat3_sm(h, inst)
    assert out == 0


def test_hat3_slicing_trace():
    h = sample_bipartite(4, 0.5, 52)
    inst = MpjHatInstance(4, 3, 2, ((0, 1, 2, 3), (3, 1, 2, 0)))
    _, out = run_hat3_sm(h, inst)
    assert out == 2 == inst.eval()


def test_hat3_cost_identity():
    n = 16
    for s in range(30):
        h = sample_bipartite(n, 0.4, trial_seed(61, s))
        inst = random_mpjhat_instance(n, 3, trial_seed(62, s))
        t_hat, out = run_hat3_sm(h, inst)
        assert out == inst.eval()
        probe = Mpj3Instance(n, inst.i, inst.fs[0], (0,) * n)
        t_sm, _ = run_sm(h, probe)
        assert t_hat.total_bits == int(math.log2(n)) * t_sm.total_bits


def test_hat4_referee_and_cost():
    n = 16
    width = 4
    for s in range(30):
        h = sample_bipartite(n, 0.4, trial_seed(71, s))
        inst = random_mpjhat_instance(n, 4, trial_seed(72, s))
        for k_bits in (1, 2, 4):
            t, out = run_hat4(h, inst, prefix_bits=k_bits)
            assert out == inst.eval()
            probe = Mpj3Instance(n, inst.i, inst.fs[0], (0,) * n)
            cost_q = run_sm(h, probe)[0].total_bits
            expected = k_bits * cost_q + (n >> k_bits) * width
            assert t.total_bits == expected


def test_hat4_full_prefix_sends_single_value():
    n, width = 16, 4
    h = sample_bipartite(n, 0.5, 81)
    inst = random_mpjhat_instance(n, 4, 82)
    t, out = run_hat4(h, inst, prefix_bits=width)
    assert out == inst.eval()
    phase2 = [m for m in t.messages if m.party == "plr3" and m.round == width][0]
    assert len(phase2.bits) == width  # exactly one value
    assert int(phase2.bits, 2) == out


def test_hat4_one_prefix_bit_table_size():
    h = sample_bipartite(4, 0.5, 83)
    inst = random_mpjhat_instance(4, 4, 84)
    t, out = run_hat4(h, inst, prefix_bits=1)
    assert out == inst.eval()
    phase2 = [m for m in t.messages if m.party == "plr3" and m.round == 1][0]
    assert len(phase2.bits) == 4  # two values of two bits each


def test_default_prefix_bits():
    assert default_prefix_bits(4) == 1
    assert default_prefix_bits(16) == 1
    assert default_prefix_bits(256) == 2
    assert default_prefix_bits(16384) == 3
    with pytest.raises(ValueError):
        default_prefix_bits(12)


# ---------------------------------------------------------------------------
# transcripts, serialization, validation report
# ---------------------------------------------------------------------------

def test_transcript_totals():
    h = sample_bipartite(8, 0.5, 91)
    inst = random_mpj3_instance(8, 92)
    t, _ = run_sm(h, inst)
    assert t.total_bits == sum(len(m.bits) for m in t.messages)
    assert sum(t.bits_by_party().values()) == t.total_bits
    dump = t.dump()
    assert len(dump.splitlines()) == len(t.messages)
    party, rnd, bits = dump.splitlines()[0].split(" ", 2)
    assert party == "alice" and rnd == "0" and set(bits) <= {"0", "1"}


def test_instance_json_round_trip():
    inst = random_mpj3_instance(8, 93)
    assert instance_from_json(instance_to_json(inst)) == inst
    hat = random_mpjhat_instance(8, 4, 94)
    assert instance_from_json(instance_to_json(hat)) == hat


def test_validate_bipartite_complete():
    h = Bipartite.complete(8)
    rep_low = validate_bipartite(h, cap=2, sample_functions=3, seed=1, density=0.3)
    assert not rep_low.degree_ok  # degree n exceeds 2*0.3*n
    assert all(size == 1 for size in rep_low.cover_sizes)
    rep_high = validate_bipartite(h, cap=2, sample_functions=3, seed=1, density=0.6)
    assert rep_high.degree_ok


def test_validate_bipartite_empty():
    h = Bipartite.empty(8)
    rep = validate_bipartite(h, cap=2, sample_functions=2, seed=2, density=0.3)
    assert rep.degree_ok  # degree 0
    assert all(size == 8 for size in rep.cover_sizes)
    assert not rep.cover_ok


def test_validate_bipartite_sampled():
    n = 64
    density = math.log(math.log(n)) / math.log(n)
    h = sample_bipartite(n, density, 3)
    rep = validate_bipartite(h, cap=6, sample_functions=5, seed=4)
    assert rep.density == pytest.approx(density)
    assert len(rep.cover_sizes) == 5


# ---------------------------------------------------------------------------
# property-based correctness across protocols
# ---------------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(st.data())
def test_all_protocols_match_oracle(data):
    n = data.draw(st.sampled_from([4, 8, 16]))
    density = data.draw(st.sampled_from([0.0, 0.2, 0.5, 0.8, 1.0]))
    seed = data.draw(st.integers(0, 2**32))
    h = sample_bipartite(n, density, seed)
    i = data.draw(st.integers(0, n - 1))
    f2 = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    x = tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    inst = Mpj3Instance(n, i, f2, x)
    expected = inst.eval()
    assert run_oneway_core(h, inst)[1] == expected
    assert run_sm(h, inst)[1] == expected
    assert run_oneway(h, inst, cap=2)[1] == expected
    f3 = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    hat3 = MpjHatInstance(n, 3, i, (f2, f3))
    assert run_hat3_sm(h, hat3)[1] == hat3.eval()
    f4 = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    hat4 = MpjHatInstance(n, 4, i, (f2, f3, f4))
    assert run_hat4(h, hat4)[1] == hat4.eval()
