"""Scan the set-q polytope over a grid of q values.

For each q: candidate count, surviving vertices, facets, dimension, and
whether the four q-dependent inequalities are among the facets.
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from nbtspoly import catalog as cat


@dataclass
class ScanConfig:
    qs: list = field(default_factory=lambda: ["0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"])


def scan(cfg: ScanConfig):
    for raw in cfg.qs:
        q = Fraction(raw)
        p = cat.build(cat.SET_Q, q)
        facets = {f.key() for f in p.h_description.inequalities}
        q_in = sum(i.key() in facets for i in cat.q_inequalities(q))
        yield q, p.candidates, len(p.vertices), len(p.h_description.inequalities), p.dimension, q_in


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("qs", nargs="*", help="rational q values (default: a small grid)")
    a = ap.parse_args()
    cfg = ScanConfig(qs=a.qs) if a.qs else ScanConfig()
    print(f"{'q':>6}{'cands':>7}{'verts':>7}{'facets':>8}{'dim':>5}{'q-facets':>10}")
    for q, n, v, f, d, k in scan(cfg):
        print(f"{str(q):>6}{n:>7}{v:>7}{f:>8}{d:>5}{k:>8}/4")
