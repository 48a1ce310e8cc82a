"""Count admissible (p, q) pairs below a sequence of bounds, prime q and prime-power q."""

import argparse
from dataclasses import dataclass

from scheme_forge.search import search_pairs


@dataclass
class Config:
    max_exp: int = 12


def main(cfg: Config) -> None:
    print(f"{'bound':>8} {'prime q':>8} {'prime power q':>14}")
    for e in range(2, cfg.max_exp + 1):
        bound = 10 ** e
        print(f"{'1e' + str(e):>8} {len(search_pairs(bound, prime_q=True)):>8} {len(search_pairs(bound)):>14}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=Config.max_exp)
    main(Config(**vars(ap.parse_args())))
