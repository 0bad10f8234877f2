#!/usr/bin/env python3
"""Print triangle-free census tables for every k-part shape up to a vertex cap."""
import argparse

from compgraphs.enumeration import MAX_STREAM_EDGES, shapes_up_to
from compgraphs.verifier import census, census_rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--max-order", type=int, default=7)
    ap.add_argument("--filter", default="triangle-free")
    args = ap.parse_args()

    for k in args.k:
        for shape in shapes_up_to(k, args.max_order):
            if shape.edge_count > MAX_STREAM_EDGES:
                continue
            rows = census_rows(census(shape, args.filter))
            print(f"K{shape}  ({len(rows)} classes)")
            for row in rows:
                print(f"    {row['graph']:24s} {row['count']:>8d}")


if __name__ == "__main__":
    main()
