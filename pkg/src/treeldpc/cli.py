"""Command-line entry point: construct, analyze, simulate, mols, random."""

from __future__ import annotations

import argparse
import math
import os
import sys

from .channel import DecoderConfig, RandomCodeError, build_random_regular, run_sweep
from .constructions import ConstructionError, Family, claimed_girth, construct
from .finite_field import FieldError, build_mols, make_field, validate_mols
from .metrics import DimensionError, profile, safe_tree_bound
from .tanner import AlistError, TannerGraph, degree_profile, format_alist, girth, read_alist, to_check_matrix

PROG = "treeldpc"


class CliError(Exception):
    pass


def parse_ebno(spec: str) -> list[float]:
    """START:END:STEP, inclusive of START; END included when it lies on the grid."""
    try:
        start, end, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise CliError(f"--ebno expects START:END:STEP, got {spec!r}") from None
    if step <= 0:
        raise CliError("--ebno STEP must be positive")
    if end < start:
        raise CliError(f"--ebno range {spec} is empty")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def meta_path(alist_path: str) -> str:
    return alist_path + ".meta"


def write_meta(path: str, meta: dict) -> None:
    with open(path, "w", encoding="ascii") as f:
        f.write("# treeldpc construction metadata (key=value)\n")
        for key, val in meta.items():
            f.write(f"{key}={val}\n")


def read_meta(path: str) -> dict:
    meta = {}
    with open(path, "r", encoding="ascii") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#") and "=" in line:
                key, val = line.split("=", 1)
                meta[key.strip()] = val.strip()
    return meta


def _fmt_girth(g) -> str:
    return "inf" if math.isinf(g) else str(int(g))


def cmd_construct(args) -> int:
    G = construct(args.family, girth=args.girth, p=args.p, s=args.s)
    H = to_check_matrix(G)
    with open(args.out, "w", encoding="ascii") as f:
        f.write(format_alist(H))
    g = girth(G)
    degs = degree_profile(G)
    dv = min(degs["variables"], default=0)
    tb = safe_tree_bound(dv, g)
    family = Family(args.family)
    meta = {"family": family.value}
    if family is Family.TYPE1A:
        meta["girth_target"] = args.girth
    else:
        meta.update(p=args.p, s=args.s, q=args.p**args.s)
    meta.update(
        n=G.num_vars,
        m=G.num_checks,
        degree=G.meta.get("degree"),
        claimed_girth=claimed_girth(family, args.girth),
        measured_girth=_fmt_girth(g),
        tree_bound="none" if tb is None else tb,
        degenerate=str(bool(G.meta.get("degenerate", False))).lower(),
    )
    write_meta(meta_path(args.out), meta)
    print(f"{family.value}: {G.num_vars} variables, {G.num_checks} checks, {G.num_edges} edges")
    print(f"girth={_fmt_girth(g)} tree_bound={meta['tree_bound']} -> {args.out}")
    return 0


def parse_dmin(spec: str):
    if spec in ("exact", "auto", "none"):
        return spec, None
    if spec.startswith("bounded:"):
        try:
            return "bounded", int(spec.split(":", 1)[1])
        except ValueError:
            pass
    raise CliError(f"--dmin expects exact|auto|none|bounded:<w_max>, got {spec!r}")


def cmd_analyze(args) -> int:
    mode, w_max = parse_dmin(args.dmin)
    H = read_alist(args.file)
    G = TannerGraph.from_matrix(H)
    prof = profile(G, mode, w_max=w_max, budget=args.budget, seed=args.seed)
    rate = prof.rate
    print(f"Code {args.file}: n={prof.n} m={prof.m} rank={prof.rank_h} k={prof.k} rate={rate:.4f}")
    print(f"girth {_fmt_girth(prof.girth)}, min variable degree {prof.min_var_degree}, tree bound {prof.tree_bound}")
    print(f"minimum distance: {prof.dmin_status}")
    mp = meta_path(args.file)
    if os.path.exists(mp):
        meta = read_meta(mp)
        claim = meta.get("claimed_girth")
        if claim is not None:
            ok = claim == _fmt_girth(prof.girth)
            print(f"claim check ({meta.get('family')}): girth {claim} claimed, {_fmt_girth(prof.girth)} measured -> {'ok' if ok else 'MISMATCH'}")
    print("[profile]")
    for key, val in prof.as_dict().items():
        print(f"{key}={val}")
    return 0


def cmd_simulate(args) -> int:
    points = parse_ebno(args.ebno)
    cfg = DecoderConfig(args.decoder, args.max_iters, args.norm)
    H = read_alist(args.file)

    def report(pr):
        print(
            f"Eb/N0={pr.ebno_db:g} dB frames={pr.frames} ber={pr.ber:.3e} fer={pr.fer:.3e} "
            f"detected={pr.detected_errors} undetected={pr.undetected_errors} avg_iter={pr.avg_iterations:.2f}"
        )

    res = run_sweep(
        H, points, cfg,
        min_frame_errors=args.min_frame_errors, max_frames=args.max_frames,
        seed=args.seed, workers=args.workers, batch_size=args.batch_size, progress=report,
    )
    with open(args.out, "w", encoding="ascii", newline="") as f:
        f.write(res.to_csv())
    return 0


def cmd_mols(args) -> int:
    fam = build_mols(make_field(args.p, args.s))
    problems = validate_mols(fam)
    if problems:
        raise CliError("; ".join(problems))
    blocks = ["\n".join(" ".join(str(int(x)) for x in row) for row in sq) for sq in fam.squares]
    print("\n\n".join(blocks))
    return 0


def cmd_random(args) -> int:
    G = build_random_regular(args.n, args.dv, args.dc, seed=args.seed, budget=args.budget)
    text = format_alist(to_check_matrix(G))
    if args.out:
        with open(args.out, "w", encoding="ascii") as f:
            f.write(text)
        print(f"random ({args.dv},{args.dc}) code: n={G.num_vars} m={G.num_checks} girth={_fmt_girth(G.meta['girth'])} -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=PROG, description="Tree-based LDPC code construction and evaluation")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and write it as alist")
    c.add_argument("--family", required=True, choices=[f.value for f in Family])
    c.add_argument("--girth", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="rank, girth, tree bound and minimum distance")
    a.add_argument("file")
    a.add_argument("--dmin", default="auto", help="exact | auto | none | bounded:<w_max>")
    a.add_argument("--budget", type=int, default=1000, help="information-set rounds")
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="BPSK/AWGN Monte Carlo sweep")
    s.add_argument("file")
    s.add_argument("--ebno", required=True, help="START:END:STEP in dB")
    s.add_argument("--decoder", default="min-sum", choices=["min-sum", "sum-product"])
    s.add_argument("--max-iters", type=int, default=50)
    s.add_argument("--norm", type=float, default=1.0)
    s.add_argument("--min-frame-errors", type=int, default=100)
    s.add_argument("--max-frames", type=int, default=10_000_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--batch-size", type=int, default=1024)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("mols", help="print the MOLS family of order p^s")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--s", type=int, default=1)
    m.set_defaults(func=cmd_mols)

    r = sub.add_parser("random", help="random regular baseline code")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--dv", type=int, required=True)
    r.add_argument("--dc", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--budget", type=int, default=200_000)
    r.add_argument("--out")
    r.set_defaults(func=cmd_random)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ConstructionError, FieldError, AlistError, DimensionError, RandomCodeError, ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
