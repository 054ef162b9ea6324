"""figregen command line: render --panels all|LIST --in DIR --out DIR."""
from __future__ import annotations

import argparse
import sys

from .panels import PANEL_IDS
from .render import SchemaError, render_figures


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="figregen",
                                     description="Regenerate figure panels "
                                                 "from oqftsim CSV outputs.")
    sub = parser.add_subparsers(dest="command")
    sp = sub.add_parser("render", help="render panels to PNG + SVG")
    sp.add_argument("--panels", default="all",
                    help="'all' or a comma-separated panel list")
    sp.add_argument("--in", dest="in_dir", required=True, help="CSV directory")
    sp.add_argument("--out", dest="out_dir", required=True, help="image directory")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if args.command != "render":
        parser.print_usage()
        return 1
    ids = list(PANEL_IDS) if args.panels == "all" else [
        p.strip() for p in args.panels.split(",") if p.strip()]
    try:
        written = render_figures(ids, args.in_dir, args.out_dir)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"rendered {len(written)} files for {len(ids)} panel(s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
