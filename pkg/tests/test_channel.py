import math

import numpy as np
import pytest

from oracles import naive_message_passing
from treeldpc.channel import (
    SimResult,
    ChannelPoint,
    Decoder,
    DecoderConfig,
    RandomCodeError,
    all_codewords,
    build_random_regular,
    channel_llr,
    channel_output,
    decode,
    ml_decode,
    run_sweep,
)
from treeldpc.constructions import build_type1a, build_type2_l3
from treeldpc.metrics import generator_basis
from treeldpc.tanner import BinaryMatrix, degree_profile, girth, to_check_matrix

SIX_CYCLE = BinaryMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def test_sigma_formula():
    pt = ChannelPoint(0.0, 0.5)
    assert pt.sigma == pytest.approx(1.0)
    assert ChannelPoint(3.0, 0.25).sigma == pytest.approx(math.sqrt(1 / (2 * 0.25 * 10**0.3)))


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.5])
def test_rate_validated(bad):
    with pytest.raises(ValueError):
        ChannelPoint(2.0, bad)


def test_noise_statistics():
    pt = ChannelPoint(2.0, 0.5)
    y = channel_output(np.zeros(1_000_000, dtype=np.uint8), pt, np.random.default_rng(0))
    assert y.mean() == pytest.approx(1.0, abs=5e-3)
    assert y.var() == pytest.approx(pt.sigma**2, rel=5e-3)


def test_llr_sign_convention():
    pt = ChannelPoint(30.0, 1.0)  # essentially noiseless
    llr = channel_llr(np.array([0, 1, 0]), pt, np.random.default_rng(1))
    assert llr[0] > 0 and llr[1] < 0 and llr[2] > 0


def test_min_sum_six_cycle_by_hand():
    # checks pass (2, -1), (3, 2), (3, -1); posteriors 4, 4, 4 -> all-zero word
    out = decode(SIX_CYCLE, [-1.0, 2.0, 3.0], DecoderConfig("min-sum", 10))
    assert out.bits.tolist() == [0, 0, 0]
    assert out.converged and out.iterations_used == 1


def test_already_valid_word_takes_zero_iterations():
    out = decode(SIX_CYCLE, [-1.0, -2.0, -3.0])
    assert out.bits.tolist() == [1, 1, 1]
    assert out.converged and out.iterations_used == 0


@pytest.mark.parametrize("variant", ["min-sum", "sum-product"])
@pytest.mark.parametrize("alpha", [1.0, 0.75])
def test_decoder_matches_naive_reference(variant, alpha):
    G = build_type1a(6)
    H = to_check_matrix(G)
    dense = H.to_dense()
    cfg = DecoderConfig(variant, 12, alpha)
    dec = Decoder(H, cfg)
    rng = np.random.default_rng(42)
    pt = ChannelPoint(1.0, 0.4)
    llr = np.stack([channel_llr(np.zeros(10, dtype=np.uint8), pt, rng) for _ in range(40)])
    bits, conv, iters = dec.decode_batch(llr)
    for f in range(len(llr)):
        rb, rit, rconv = naive_message_passing(dense, llr[f], 12, variant, alpha)
        assert bits[f].tolist() == rb.tolist()
        assert (int(iters[f]), bool(conv[f])) == (rit, rconv)


def test_decoder_converged_implies_zero_syndrome():
    G = build_type2_l3(2, 2)
    dec = Decoder(G, DecoderConfig(max_iterations=5))
    llr = channel_llr(np.zeros((500, G.num_vars), dtype=np.uint8), ChannelPoint(1.0, 0.5), np.random.default_rng(5))
    bits, conv, _ = dec.decode_batch(llr)
    assert not dec.syndrome(bits[conv]).any()


def test_decoder_config_validation():
    with pytest.raises(ValueError):
        DecoderConfig("bp")
    with pytest.raises(ValueError):
        DecoderConfig(max_iterations=0)
    with pytest.raises(ValueError):
        DecoderConfig(normalization=1.2)


def test_all_codewords_and_ml():
    B = generator_basis(to_check_matrix(build_type2_l3(2)).to_dense())
    words = all_codewords(B)
    assert len({w.tobytes() for w in words}) == 8
    x = 1.0 - 2.0 * words[3]
    assert ml_decode(B, x).tolist() == words[3].tolist()
    batch = np.stack([1.0 - 2.0 * w for w in words])
    assert np.array_equal(ml_decode(B, batch), words)


def test_ml_tie_goes_to_smallest_codeword():
    B = np.array([[1, 1]], dtype=np.uint8)  # repetition code {00, 11}
    assert ml_decode(B, np.zeros(2)).tolist() == [0, 0]


def test_sweep_csv_and_stopping():
    G = build_type1a(6)
    cfg = DecoderConfig(max_iterations=20)
    res = run_sweep(G, [1.0, 3.0], cfg, min_frame_errors=20, max_frames=4096, seed=3, batch_size=256)
    lines = res.to_csv().splitlines()
    assert lines[0] == SimResult.CSV_HEADER
    assert len(lines) == 3
    for pr in res.points:
        assert pr.frame_errors >= 20 or pr.frames >= 4096
        assert pr.frames % 256 == 0
        assert pr.frame_errors == pr.detected_errors + pr.undetected_errors
        assert pr.bit_errors <= pr.frames * pr.n


def test_sweep_workers_identical():
    G = build_type2_l3(2, 2)
    cfg = DecoderConfig(max_iterations=10)
    kw = dict(min_frame_errors=30, max_frames=20_000, seed=11, batch_size=128)
    a = run_sweep(G, [2.0, 4.0], cfg, workers=1, **kw).to_csv()
    b = run_sweep(G, [2.0, 4.0], cfg, workers=4, **kw).to_csv()
    c = run_sweep(G, [2.0, 4.0], cfg, workers=1, **{**kw, "seed": 12}).to_csv()
    assert a == b
    assert a != c


@pytest.mark.parametrize("n,dv,dc,seed", [(34, 3, 6, 7), (60, 3, 6, 1), (96, 4, 8, 2), (24, 3, 4, 0)])
def test_random_regular(n, dv, dc, seed):
    G = build_random_regular(n, dv, dc, seed=seed)
    assert degree_profile(G) == {"variables": {dv: n}, "checks": {dc: n * dv // dc}}
    assert girth(G) >= 6
    assert G.meta["girth"] == girth(G)
    assert build_random_regular(n, dv, dc, seed=seed).var_adj == G.var_adj


@pytest.mark.parametrize("args", [(10, 3, 4), (51, 3, 9), (20, 3, 6), (0, 3, 6)])
def test_random_regular_impossible(args):
    with pytest.raises((RandomCodeError, ValueError)):
        build_random_regular(*args, seed=0, budget=2000)
