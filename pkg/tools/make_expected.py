"""Regenerate the frozen invariant table for the shipped sample library.

Run from the repository root:  python3 tools/make_expected.py
Only commit the result after independently re-verifying changed rows
(determinants and Conway coefficients against published tables).
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ckbands.files import sample_library
from ckbands.invariants import determinant, jones, v2, v3


def main():
    lines = ["name\tv2\tv3\tjones\tdet"]
    for name, d in sample_library().items():
        lines.append(
            f"{name}\t{v2(d)}\t{v3(d)}\t{jones(d).serialize()}\t{determinant(d)}"
        )
    out = (
        Path(__file__).resolve().parent.parent
        / "src"
        / "ckbands"
        / "data"
        / "samples_expected.tsv"
    )
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out}")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
