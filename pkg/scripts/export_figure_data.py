"""Write CSV projections of set-q inside definite-global timing (and NBTS).

The default view pairs one novel facet functional with the Alice marginal
difference bounded by the q-dependent inequalities; any affine functionals
accepted by ``nbtspoly figure-data --projection`` can be given instead.
"""
import argparse
from dataclasses import dataclass, field
from pathlib import Path

from nbtspoly import catalog as cat
from nbtspoly import export


@dataclass
class FigureConfig:
    q: str = "1/2"
    projections: list = field(default_factory=lambda: ["0,1,0,1,-1,0,0,-1", "1,-1,0,0,0,0,0,0"])
    output: str = "figure_data.csv"


def main(cfg: FigureConfig) -> None:
    polys = [cat.build(cat.NBTS), cat.build(cat.DEFINITE_GLOBAL), cat.build(cat.SET_Q, cfg.q)]
    fns = [export.parse_functional(s, 8) for s in cfg.projections]
    Path(cfg.output).write_text(export.figure_csv(polys, fns))
    print(f"wrote {sum(len(p.vertices) for p in polys)} rows to {cfg.output}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default=FigureConfig.q)
    ap.add_argument("--projection", action="append")
    ap.add_argument("--output", default=FigureConfig.output)
    a = ap.parse_args()
    cfg = FigureConfig(q=a.q, output=a.output)
    if a.projection:
        cfg.projections = a.projection
    main(cfg)
