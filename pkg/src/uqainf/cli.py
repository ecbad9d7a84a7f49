"""Command line front end.

Exit status: 0 when everything requested passed, 1 when a check or campaign
failed, 2 for usage errors and malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import identities as ids
from . import verify as ver
from .action import (LinComb, apply_gen, Gen, build_matrix, matrix_to_text, parse_gen,
                     series_I_partial, series_bound)
from .patterns import (Signature, enumerate_basis, load_signature, pattern_from_text,
                       pattern_to_text, validate, weight)
from .qarith import to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    signature: str | None = None
    depth: int | None = None
    window: int | None = None
    mode: str = "exact"
    v_samples: tuple = (1.1, 0.9)
    tolerance: float = 1e-8
    seed: int = 0
    trials: int | None = None
    out: str | None = None

    def validate(self) -> None:
        if self.depth is not None and self.depth < 1:
            raise UsageError("--depth must be at least 1")
        if self.window is not None and self.window < 0:
            raise UsageError("--window must be non-negative")
        if self.mode not in ("exact", "numeric", "rational", "prime"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if self.trials is not None and self.trials < 1:
            raise UsageError("--trials must be positive")


def _samples(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sample list {text!r}") from None


def _common(p: argparse.ArgumentParser, *, signature_required: bool = False) -> None:
    p.add_argument("--signature", required=signature_required, metavar="FILE")
    p.add_argument("--depth", type=int, metavar="N")
    p.add_argument("--window", type=int, metavar="K")
    p.add_argument("--mode", default="exact")
    p.add_argument("--v-samples", type=_samples, default=(1.1, 0.9), metavar="LIST")
    p.add_argument("--tolerance", type=float, default=1e-8, metavar="X")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--trials", type=int, metavar="T")
    p.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uqainf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="list the basis of V_N")
    _common(p, signature_required=True)

    p = sub.add_parser("act", help="apply one generator to a pattern")
    _common(p, signature_required=True)
    p.add_argument("gen", choices=["e", "f", "h", "c"])
    p.add_argument("index", type=int, nargs="?", default=0)
    p.add_argument("--pattern", metavar="FILE", help="pattern file (default: highest weight)")

    p = sub.add_parser("matrix", help="export a generator as a sparse matrix on V_N")
    _common(p, signature_required=True)
    p.add_argument("gen", choices=["e", "f", "h", "c"])
    p.add_argument("index", type=int, nargs="?", default=0)

    p = sub.add_parser("verify", help="run relation suites")
    _common(p)
    p.add_argument("suite", choices=("all",) + tuple(ver.RUNNERS))
    p.add_argument("--orientation", choices=sorted(ver.act.ORIENTATIONS), default="resolved",
                   help="debug switch for the index -1 generators")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--timings", action="store_true", help="record wall-clock times in the report")

    p = sub.add_parser("identities", help="run the q-identity campaign")
    _common(p)
    p.add_argument("--identity", choices=sorted(ids.IDENTITIES))
    p.add_argument("--size", type=int)
    p.add_argument("--corrupt", action="store_true", help="debug: perturb every right-hand side")
    p.add_argument("--timings", action="store_true")

    p = sub.add_parser("series", help="partial sums of the diagonal series")
    _common(p, signature_required=True)
    p.add_argument("-T", "--terms", type=int, default=20)
    return parser


def _config(args) -> CliConfig:
    cfg = CliConfig(args.command, args.signature, args.depth, args.window, args.mode,
                    tuple(args.v_samples), args.tolerance, args.seed, args.trials, args.out)
    cfg.validate()
    return cfg


def _signature(path: str) -> Signature:
    try:
        return load_signature(path)
    except FileNotFoundError:
        raise UsageError(f"signature file not found: {path}") from None
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed signature file {path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def format_basis(sig: Signature, N: int, sig_ref: str = "-") -> str:
    basis = enumerate_basis(sig, N)
    parts = [f"basis sig={sig.digest()} N={N} count={len(basis)}\n"]
    for p in basis:
        parts.append("\n" + pattern_to_text(p, sig_ref))
    return "".join(parts)


def parse_basis(text: str, sig: Signature) -> list:
    blocks = [b for b in text.strip().split("\n\n")]
    head = blocks[0].split()
    if head[0] != "basis":
        raise ValueError("missing basis header")
    return [pattern_from_text(b, sig) for b in blocks[1:]]


def _inline(p) -> str:
    return " / ".join(" ".join(str(x) for x in p.row(r)) for r in range(p.depth, 0, -1))


def cmd_basis(cfg: CliConfig, args) -> int:
    sig = _signature(cfg.signature)
    _emit(format_basis(sig, cfg.depth or 3, cfg.signature), cfg.out)
    return EXIT_OK


def cmd_act(cfg: CliConfig, args) -> int:
    sig = _signature(cfg.signature)
    if args.pattern:
        try:
            p = pattern_from_text(Path(args.pattern).read_text(), sig)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read pattern: {exc}") from None
        problems = validate(p)
        if problems:
            raise UsageError("invalid pattern: " + "; ".join(problems))
    else:
        from .patterns import highest_weight
        p = highest_weight(sig)
    lines = []
    if args.gen in ("h", "c"):
        from .action import apply_c
        w = weight(p, args.index) if args.gen == "h" else apply_c(p)[0]
        lines.append(f"({w}) * ({_inline(p)})")
    else:
        y = apply_gen(Gen(args.gen, args.index), LinComb.basis(p))
        for t, c in y.terms.items():
            lines.append(f"{to_text(c)} * ({_inline(t)})")
    if not lines:
        print("zero vector", file=sys.stderr)
    _emit("".join(ln + "\n" for ln in lines), cfg.out)
    return EXIT_OK


def cmd_matrix(cfg: CliConfig, args) -> int:
    sig = _signature(cfg.signature)
    gen = args.gen if args.gen == "c" else f"{args.gen}{args.index}"
    parse_gen(gen)
    mat = build_matrix(gen, sig, cfg.depth or 3)
    mode = "numeric" if cfg.mode == "numeric" else "exact"
    _emit(matrix_to_text(mat, mode, cfg.v_samples[0] if cfg.v_samples else 1.1), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: CliConfig, args) -> int:
    if cfg.mode not in ("exact", "numeric"):
        raise UsageError("verify supports --mode exact or numeric")
    sigs = (_signature(cfg.signature),) if cfg.signature else ver.BATTERY
    kwargs = dict(signatures=sigs, mode=cfg.mode, v_samples=cfg.v_samples, tolerance=cfg.tolerance,
                  seed=cfg.seed, orientation=args.orientation, timings=args.timings)
    if cfg.depth is not None:
        kwargs["N"] = cfg.depth
    if cfg.window is not None:
        kwargs["window"] = cfg.window
    if cfg.trials is not None:
        kwargs["trials"] = cfg.trials
    try:
        vcfg = ver.CheckConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = ver.run_suite(args.suite, vcfg)
    text = json.dumps(rep.to_json(), indent=2, sort_keys=True) + "\n" if args.format == "json" else rep.to_text()
    _emit(text, cfg.out)
    if cfg.out:
        print(f"{rep.suite}: {rep.status}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_identities(cfg: CliConfig, args) -> int:
    if args.identity:
        size = args.size if args.size is not None else (1 if args.identity in ("eq22", "eq23") else 2)
        plan = [(args.identity, size, cfg.trials or 100)]
    else:
        plan = [(name, size, cfg.trials or trials) for name, size, trials in ids.DEFAULT_PLAN]
    try:
        rep = ids.run_campaign(plan, seed=cfg.seed, mode=cfg.mode, deterministic=not args.timings,
                               corrupt=args.corrupt)
    except ids.SamplingExhausted as exc:
        raise UsageError(str(exc)) from None
    _emit(rep.to_json() + "\n", cfg.out)
    return EXIT_OK if rep.status == "pass" else EXIT_FAIL


def cmd_series(cfg: CliConfig, args) -> int:
    sig = _signature(cfg.signature)
    if args.terms < 0:
        raise UsageError("-T must be non-negative")
    from .patterns import highest_weight
    p = highest_weight(sig)
    lines = [f"series sig={sig.digest()} bound={series_bound(p)}", "T\tpartial\tincrement"]
    prev = None
    for T in range(args.terms + 1):
        s = series_I_partial(p, T)
        inc = s.value if prev is None else s.value - prev
        lines.append(f"{T}\t{s.value}\t{inc}")
        prev = s.value
    final = series_I_partial(p, args.terms)
    lines.append(f"verdict: {final.status} value={final.value}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


COMMANDS = {
    "basis": cmd_basis,
    "act": cmd_act,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "identities": cmd_identities,
    "series": cmd_series,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "identities" and args.trials is not None and args.trials < 1:
            raise UsageError("--trials must be positive")
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
