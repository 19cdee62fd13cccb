"""Minimum half-integral cover and a packing of equal weight on a small cut instance.

Three terminals hang off one centre vertex.  The cover puts weight 1 on
the centre and the packing holds one integral terminal-to-terminal path.
"""

from __future__ import annotations

from halfint.cover import min_cover_max_packing
from halfint.packing import validate_packing
from halfint.problems import NodeMultiwayCut, encode
from halfint.verify import separation


def main() -> None:
    prob = NodeMultiwayCut(4, [(0, 3), (1, 3), (2, 3)], [0, 1, 2])
    enc = encode(prob)
    inst = enc.instance
    res = min_cover_max_packing(inst, enc.oracle, 2 * inst.n)
    weights = {enc.label(v): f"{res.cover[v]}/2" for v in range(inst.n) if res.cover[v]}
    print("cover:", weights)
    for path in res.packing.paths.values():
        print("packing path:", " ".join(enc.label(v) for v in path))
    print("packing valid:", validate_packing(inst, res.packing) is None)
    print("cover feasible:", separation(inst, res.cover) is None)
    print(f"weights: cover {sum(res.cover)}/2, packing {res.packing.size2}/2")


if __name__ == "__main__":
    main()
