"""Search for unitary maximal Condorcet domains over a range of n and tabulate the results.

Example: ``python scripts/run_search.py --n 3 4 5 --cutoff 1``
"""

import argparse
import logging

from condorcet import SearchConfig, search_max
from condorcet.fishburn import fishburn_domain


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--cutoff", type=int, default=1)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--split-depth", type=int, default=0)
    parser.add_argument("--literal-prunes", action="store_true")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO)

    print(f"{'n':>2} {'cutoff':>6} {'found':>7} {'max':>4} {'fishburn':>8} {'nodes':>10} {'seconds':>8}")
    for n in args.n:
        config = SearchConfig(
            n=n, cutoff=args.cutoff, jobs=args.jobs, split_depth=args.split_depth, literal=args.literal_prunes
        )
        r = search_max(config)
        print(
            f"{n:>2} {args.cutoff:>6} {len(r.domains):>7} {r.max_size:>4} {len(fishburn_domain(n)):>8} "
            f"{r.stats.nodes_expanded:>10} {r.stats.wall_seconds:>8.1f}"
        )


if __name__ == "__main__":
    main()
