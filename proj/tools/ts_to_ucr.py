#!/usr/bin/env python3
"""Convert univariate sktime/aeon `.ts` files to UCR tab-separated text.

Usage: ts_to_ucr.py INPUT.ts OUTPUT.tsv

Each output line is `label<TAB>v1<TAB>...<TAB>vL`. Multivariate files,
variable-length series and missing values are rejected.
"""

import sys


def convert(src, dst):
    rows = []
    in_data = False
    with open(src, encoding="utf-8", errors="replace") as f:
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not in_data:
                if line.lower().startswith("@data"):
                    in_data = True
                continue
            parts = line.split(":")
            if len(parts) != 2:
                raise ValueError(f"{src}: not a univariate labelled series: {line[:60]}")
            values, label = parts
            cells = values.split(",")
            if any(c in ("?", "NaN", "") for c in cells):
                raise ValueError(f"{src}: missing values are not supported")
            rows.append((label.strip(), cells))
    lengths = {len(c) for _, c in rows}
    if len(lengths) != 1:
        raise ValueError(f"{src}: variable-length series")
    with open(dst, "w", encoding="utf-8") as out:
        for label, cells in rows:
            out.write(label + "\t" + "\t".join(cells) + "\n")
    return len(rows), lengths.pop()


def main(argv):
    if len(argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    n, length = convert(argv[1], argv[2])
    print(f"{argv[2]}: {n} series of length {length}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
