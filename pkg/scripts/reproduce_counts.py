"""Build every named polytope and print vertex, facet and dimension counts."""
import argparse
import time
from dataclasses import dataclass

from nbtspoly import catalog as cat


@dataclass
class CountsConfig:
    q: str = "1/2"
    include_marginal: bool = True


def main(cfg: CountsConfig) -> None:
    names = [cat.NBTS, cat.ALICE_FIRST, cat.BOB_FIRST, cat.SIMULTANEOUS, cat.DEFINITE_GLOBAL, cat.SET_Q]
    if cfg.include_marginal:
        names += [cat.ALICE_FIRST_MARGINAL, cat.BOB_FIRST_MARGINAL]
    print(f"{'polytope':<24}{'vertices':>9}{'facets':>8}{'eqs':>5}{'dim':>5}{'cands':>7}{'secs':>7}")
    for name in names:
        t0 = time.perf_counter()
        p = cat.build(name, cfg.q if name == cat.SET_Q else None)
        h = p.h_description
        print(f"{p.title:<24}{len(p.vertices):>9}{len(h.inequalities):>8}{len(h.equalities):>5}"
              f"{p.dimension:>5}{p.candidates or '':>7}{time.perf_counter() - t0:>7.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default=CountsConfig.q)
    ap.add_argument("--no-marginal", action="store_true", help="skip the 28-vertex marginal constructions")
    a = ap.parse_args()
    main(CountsConfig(q=a.q, include_marginal=not a.no_marginal))
