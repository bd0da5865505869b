#!/usr/bin/env python3
"""Rewrite data/MANIFEST with FNV-1a 64 checksums of every data/*.json file."""
import pathlib
import sys


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def main() -> int:
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data")
    lines = []
    for p in sorted(root.rglob("*.json")):
        rel = p.relative_to(root).as_posix()
        lines.append(f"{fnv1a64(p.read_bytes()):016x}  {rel}")
    (root / "MANIFEST").write_text("\n".join(lines) + "\n")
    print(f"{len(lines)} files")
    return 0


if __name__ == "__main__":
    sys.exit(main())
