# %% [markdown]
# # Iterative decoding on the AWGN channel
#
# BPSK maps bit 0 to +1 and bit 1 to -1; the receiver feeds channel LLRs
# 2y/sigma^2 (positive favours 0) into a flooding min-sum decoder.  A sweep
# transmits the all-zero codeword and keeps drawing fixed-size batches until
# enough frame errors have been seen at each Eb/N0 point.

# %%
import numpy as np

from treeldpc.channel import ChannelPoint, Decoder, DecoderConfig, channel_llr, ml_decode, run_sweep
from treeldpc.constructions import build_type1b, build_type2_l3
from treeldpc.metrics import generator_basis
from treeldpc.tanner import to_check_matrix

# %% [markdown]
# ## A single frame

# %%
G = build_type2_l3(2, 2)
dec = Decoder(G, DecoderConfig("min-sum", max_iterations=50))
rng = np.random.default_rng(0)
llr = channel_llr(np.zeros(G.num_vars, dtype=np.uint8), ChannelPoint(2.0, 11 / 21), rng)
out = dec.decode(llr)
print("hard decisions before decoding:", (llr < 0).astype(int))
print("decoded:", out.bits, "converged:", out.converged, "iterations:", out.iterations_used)

# %% [markdown]
# ## Comparing with maximum likelihood on the Fano code
# With only 8 codewords the ML decision is a brute-force correlation.

# %%
fano = build_type2_l3(2)
B = generator_basis(to_check_matrix(fano).to_dense())
y = 1.0 + 0.8 * rng.standard_normal((5, 7))
print(ml_decode(B, y))

# %% [markdown]
# ## Two short sweeps
# A frame error is "detected" when the decoder gives up without reaching a
# valid codeword and "undetected" when it converges to the wrong codeword.
# The Type I-B code shows a large share of detected errors; for the
# projective-plane code nearly every failure is a converged, wrong codeword,
# i.e. the decoder behaves much like a minimum-distance decoder.

# %%
cfg = DecoderConfig("min-sum", 50)
for name, code in [("Type I-B q=4", build_type1b(2, 2)), ("PG q=4", build_type2_l3(2, 2))]:
    res = run_sweep(code, [2.0, 3.0, 4.0], cfg, min_frame_errors=50, seed=1)
    print(name)
    print(res.to_csv())
