"""Certify every Gamma(i, g) at the given (p, q) and sort them into isomorphism classes."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from scheme_forge.graphs import build_dsrg, predicted_dsrg, verify_dsrg
from scheme_forge.iso import automorphism_order, canonical_form
from scheme_forge.tatra import tatra_omega


@dataclass
class Config:
    p: int = 7
    q: int = 8
    aut: bool = True


def main(cfg: Config) -> dict:
    t0 = time.perf_counter()
    om = tatra_omega(cfg.q, cfg.p)
    classes: dict[str, list] = {}
    for i in (1, 2):
        for g in range(cfg.p):
            G = build_dsrg(om, i, g)
            assert verify_dsrg(G) == predicted_dsrg(cfg.p, cfg.q)
            classes.setdefault(canonical_form(G).hash[:16], []).append([i, g])
    out = {"config": asdict(cfg), "params": predicted_dsrg(cfg.p, cfg.q).as_tuple(), "classes": classes}
    if cfg.aut:
        out["aut_orders"] = {i: automorphism_order(build_dsrg(om, i, 0)).order for i in (1, 2)}
    out["seconds"] = round(time.perf_counter() - t0, 2)
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--q", type=int, default=Config.q)
    ap.add_argument("--no-aut", dest="aut", action="store_false")
    print(json.dumps(main(Config(**vars(ap.parse_args()))), indent=2))
