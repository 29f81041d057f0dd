"""Command-line driver: ``wallqueens <subcommand> ...``.

Exit status: 0 yes or pass, 1 no or fail, 2 usage or bad input, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .core import QUEEN, BoardError, PieceRules, emit_board, parse_board
from .solver import DEFAULT_BUDGET, BudgetExhausted, decide, decide_tiled, max_placement

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CommandConfig:
    command: str
    input: Optional[Path] = None
    output: Optional[Path] = None
    rules: Optional[PieceRules] = None
    size: int = 16
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    render_format: str = "ascii"

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("--budget must be positive")


def _err(msg: str) -> None:
    print(f"wallqueens: {msg}", file=sys.stderr)


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _rules(arg: Optional[str]) -> Optional[PieceRules]:
    if arg is None:
        return None
    try:
        return PieceRules.parse(arg)
    except ValueError as e:
        raise UsageError(str(e)) from None


def sidecar_path(board_path: Path) -> Path:
    return board_path.with_suffix(".tiles")


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args, cfg: CommandConfig) -> int:
    from .reduce import decode, load_sidecar, output_from_sidecar
    try:
        parsed = parse_board(_read(cfg.input))
    except BoardError as e:
        raise UsageError(f"{cfg.input}: {e}") from None
    board = parsed.board
    side = None
    side_path = Path(args.sidecar) if args.sidecar else sidecar_path(cfg.input)
    if not args.no_tiles and side_path.exists():
        side = load_sidecar(_read(side_path))
    rules = cfg.rules or parsed.rules or (side.rules if side else QUEEN)
    if args.m is None:
        res = max_placement(board, rules, cfg.budget)
        print(f"max {res.max_count}")
        sys.stdout.write(emit_board(board, res.witness))
        return EXIT_YES
    placement = None
    if side is not None and args.m == side.tariff:
        res = decide_tiled(board, rules, args.m, side.regions(board), budget=cfg.budget)
        placement = res.placement
        print(f"tile-aware decision over {len(res.region_max)} regions, bound {res.upper_bound}")
    else:
        placement = decide(board, rules, args.m, cfg.budget)
    if placement is None:
        print(f"no: {args.m} pieces do not fit")
        return EXIT_NO
    print(f"yes: {args.m} pieces fit")
    sys.stdout.write(emit_board(board, placement))
    if side is not None and side.decoder and len(placement) >= side.tariff:
        model = decode(placement, output_from_sidecar(board, side))
        print("model " + " ".join(f"{v}={'T' if b else 'F'}" for v, b in model.items()))
    return EXIT_YES


def cmd_reduce(args, cfg: CommandConfig) -> int:
    from .reduce import FormulaError, NonPlanar, parse_dimacs, reduce, save_sidecar
    try:
        f = parse_dimacs(_read(cfg.input))
    except FormulaError as e:
        raise UsageError(f"{cfg.input}: {e}") from None
    rules = cfg.rules or QUEEN
    try:
        out = reduce(f, rules, cfg.size)
    except NonPlanar as e:
        _err(f"{cfg.input}: {e}; only planar instances are reduced")
        return EXIT_NO
    except FileNotFoundError as e:
        raise UsageError(str(e)) from None
    stem = cfg.output or cfg.input.with_suffix("")
    board_path = stem.with_suffix(".board")
    board_path.write_text(emit_board(out.board, rules=rules))
    sidecar_path(board_path).write_text(save_sidecar(out))
    print(f"m {out.tariff}")
    print(f"board {board_path} ({out.board.width}x{out.board.height}, plan {out.plan.width}x{out.plan.height} tiles)")
    print(f"sidecar {sidecar_path(board_path)}")
    return EXIT_YES


def cmd_verify_gadget(args, cfg: CommandConfig) -> int:
    from .gadgets.manifest import ManifestError, load_manifest
    from .gadgets.verify import FAIL, INCONCLUSIVE, verify_gadget
    try:
        g = load_manifest(_read(cfg.input))
    except ManifestError as e:
        raise UsageError(f"{cfg.input}: {e}") from None
    v = verify_gadget(g, cfg.rules, cfg.budget)
    print(f"{g.name}: {v.status}")
    for p in v.problems:
        print(f"  {p}")
    return {FAIL: EXIT_NO, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(v.status, EXIT_YES)


def parse_contract(text: str) -> dict:
    """Contract file: ``name:``, ``kind:``, ``size:``, optional ``tariff:`` and ``core:``,
    then ``port <edge> <M|F> [straight|flip]`` lines."""
    from .gadgets.manifest import Gender, Kind
    out = {"name": None, "kind": None, "size": None, "tariff": None, "core": "queen", "ports": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("port "):
                parts = line.split()
                flip = len(parts) > 3 and parts[3] == "flip"
                if len(parts) > 3 and parts[3] not in ("straight", "flip"):
                    raise ValueError(f"bad role {parts[3]!r}")
                out["ports"].append((parts[1], Gender(parts[2]), not flip))
                continue
            key, _, val = line.partition(":")
            key, val = key.strip(), val.strip()
            if key == "kind":
                out["kind"] = Kind(val)
            elif key in ("size", "tariff"):
                out[key] = int(val)
            elif key in ("name", "core"):
                out[key] = val
            else:
                raise ValueError(f"unknown key {key!r}")
        except (ValueError, IndexError) as e:
            raise UsageError(f"contract line {lineno}: {e}") from None
    if out["kind"] is None or not out["ports"] and out["kind"].value != "Blank":
        raise UsageError("contract needs a kind and at least one port")
    return out


def cmd_synth_gadget(args, cfg: CommandConfig) -> int:
    from .gadgets.manifest import Kind, PortSpec, blank_manifest, port_offset, save_manifest
    from .gadgets.synth import (
        KING_CORE, QUEEN_CORE, SynthesisError, SynthOptions, synthesize_clause, synthesize_two_state,
    )
    c = parse_contract(_read(cfg.input))
    size = c["size"] or cfg.size
    name = c["name"] or cfg.input.stem
    opts = SynthOptions(node_budget=cfg.budget)
    try:
        if c["kind"] is Kind.BLANK:
            g = blank_manifest(size)
        elif c["kind"] is Kind.TWO_STATE:
            ports = [PortSpec(e, port_offset(gd, size), gd) for e, gd, _ in c["ports"]]
            g = synthesize_two_state(name, size, ports, [s for _, _, s in c["ports"]], c["tariff"], opts)
        else:
            core = KING_CORE if c["core"] == "king" else QUEEN_CORE
            g = synthesize_clause(name, size, tuple(e for e, _, _ in c["ports"]), core, c["tariff"], opts)
    except SynthesisError as e:
        _err(f"synthesis failed: {e}")
        return EXIT_NO
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = save_manifest(g)
    if cfg.output:
        cfg.output.write_text(text)
        print(f"{g.name}: tariff {g.tariff}, written to {cfg.output}")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_render(args, cfg: CommandConfig) -> int:
    from .render import render_ascii, render_svg
    try:
        parsed = parse_board(_read(cfg.input))
    except BoardError as e:
        raise UsageError(f"{cfg.input}: {e}") from None
    placement = parsed.placement or ()
    text = render_svg(parsed.board, placement) if cfg.render_format == "svg" else render_ascii(parsed.board, placement)
    if cfg.output:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_oracle(args, cfg: CommandConfig) -> int:
    from .reduce import FormulaError, brute_force_sat, parse_dimacs
    try:
        f = parse_dimacs(_read(cfg.input))
    except FormulaError as e:
        raise UsageError(f"{cfg.input}: {e}") from None
    model = brute_force_sat(f)
    if model is None:
        print("unsat")
        return EXIT_NO
    print("sat")
    print("model " + " ".join(f"{v}={'T' if b else 'F'}" for v, b in sorted(model.items())))
    return EXIT_YES


def cmd_selftest(args, cfg: CommandConfig) -> int:
    from .acceptance import run_all
    checks = run_all(seed=cfg.seed)
    for c in checks:
        print(c.line())
    return EXIT_YES if all(c.ok for c in checks) else EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wallqueens", description="Queens on boards with walls.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("--range", dest="range_", metavar="R", help="piece range: inf, or a positive integer (1 = king)")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")

    p = sub.add_parser("solve", help="maximum placement, or decide whether M pieces fit")
    p.add_argument("board", type=Path)
    p.add_argument("-m", type=int, help="required number of pieces")
    p.add_argument("--sidecar", help="tile sidecar (default: <board stem>.tiles when present)")
    p.add_argument("--no-tiles", action="store_true", help="ignore any sidecar and search the whole board")
    common(p)

    p = sub.add_parser("reduce", help="build a board and tariff from a planar 3-SAT instance")
    p.add_argument("cnf", type=Path)
    p.add_argument("-o", "--output", type=Path, help="output stem (writes <stem>.board and <stem>.tiles)")
    p.add_argument("--size", type=int, default=16, help="tile size")
    common(p, budget=False)

    p = sub.add_parser("verify-gadget", help="verify a gadget manifest")
    p.add_argument("manifest", type=Path)
    common(p)

    p = sub.add_parser("synth-gadget", help="synthesize a gadget from a contract file")
    p.add_argument("contract", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--size", type=int, default=16)
    p.add_argument("--budget", type=int, default=400_000, help="router node budget")

    p = sub.add_parser("render", help="draw a board")
    p.add_argument("board", type=Path)
    fmt = p.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--svg", action="store_true")
    fmt.add_argument("--ascii", action="store_true")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("oracle", help="brute-force satisfiability of a CNF file")
    p.add_argument("cnf", type=Path)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--seed", type=int, default=0)
    return ap


COMMANDS = {
    "solve": cmd_solve,
    "reduce": cmd_reduce,
    "verify-gadget": cmd_verify_gadget,
    "synth-gadget": cmd_synth_gadget,
    "render": cmd_render,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_YES
    try:
        inp = next((getattr(args, k) for k in ("board", "cnf", "manifest", "contract") if hasattr(args, k)), None)
        cfg = CommandConfig(
            command=args.command,
            input=inp,
            output=getattr(args, "output", None),
            rules=_rules(getattr(args, "range_", None)),
            size=getattr(args, "size", 16),
            budget=getattr(args, "budget", DEFAULT_BUDGET),
            seed=getattr(args, "seed", 0),
            render_format="svg" if getattr(args, "svg", False) else "ascii",
        )
        return COMMANDS[args.command](args, cfg)
    except UsageError as e:
        _err(str(e))
        return EXIT_USAGE
    except BudgetExhausted as e:
        _err(f"inconclusive: {e}")
        return EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
