"""Rebuild the shipped gadget rosters by search and re-verify every tile.

usage: python3 scripts/build_gadgets.py [--size 16] [--free]

``--free`` skips the target tariffs and keeps the first verified layout.
"""
import argparse
import time

from wallqueens.core import PieceRules
from wallqueens.gadgets.library import write_roster
from wallqueens.gadgets.manifest import load_manifest
from wallqueens.gadgets.verify import verify_gadget


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=16)
    ap.add_argument("--free", action="store_true", help="do not aim for target tariffs")
    args = ap.parse_args()
    t0 = time.time()
    for path in write_roster(args.size, use_target=not args.free):
        g = load_manifest(path.read_text())
        verdicts = {r: verify_gadget(g, PieceRules.parse(r)).status for r in g.ranges}
        print(f"{g.name:16s} tariff {g.tariff:3d}  {verdicts}")
    print(f"done in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
