"""Run the finite-model sandwich on random equivalent pairs and countermodel
search on random inequivalent ones; report sizes and timings.

    python scripts/fmp_benchmark.py --pairs 200 --seed 0 [--json out.json]
"""
import argparse
import json
import random
import statistics
import time
from dataclasses import asdict, dataclass

from kafmp.automata import expr_equiv
from kafmp.errors import BudgetExceeded
from kafmp.fmp import MAX_STATES, fmp_sandwich
from kafmp.generate import equivalent_variant, random_expr
from kafmp.models import countermodel_search


@dataclass
class BenchConfig:
    pairs: int = 200
    seed: int = 0
    max_size: int = 8
    rewrite_steps: int = 3
    max_states: int = MAX_STATES


def summarise(values):
    if not values:
        return {}
    return {"min": min(values), "median": statistics.median(values), "max": max(values)}


def run(cfg: BenchConfig) -> dict:
    rng = random.Random(cfg.seed)
    certified, skipped, monoids, middles, seconds = 0, 0, [], [], []
    done = 0
    while done < cfg.pairs:
        e = random_expr(rng, rng.randint(1, cfg.max_size))
        f = equivalent_variant(rng, e, cfg.rewrite_steps)
        try:
            r = fmp_sandwich(e, f, max_states=cfg.max_states)
        except BudgetExceeded:
            skipped += 1
            continue
        done += 1
        certified += r.certified
        monoids.append(max(r.metrics["monoid_e"], r.metrics["monoid_f"]))
        middles.append(max(r.metrics.get("middle_size_e", 0), r.metrics.get("middle_size_f", 0)))
        seconds.append(r.metrics["seconds"])

    separated, witness_lengths, done = 0, [], 0
    start = time.perf_counter()
    while done < cfg.pairs:
        e = random_expr(rng, rng.randint(1, cfg.max_size))
        f = random_expr(rng, rng.randint(1, cfg.max_size))
        if expr_equiv(e, f):
            continue
        c = countermodel_search(e, f)
        done += 1
        if c is not None and (c.point in c.h(e)) != (c.point in c.h(f)):
            separated += 1
            witness_lengths.append(c.n)
    return {
        "config": asdict(cfg),
        "equivalent": {"certified": certified, "pairs": cfg.pairs, "over_budget": skipped,
                       "monoid_size": summarise(monoids), "middle_size": summarise(middles),
                       "seconds": summarise(seconds)},
        "inequivalent": {"separated": separated, "pairs": cfg.pairs,
                         "witness_length": summarise(witness_lengths),
                         "seconds_total": time.perf_counter() - start},
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(BenchConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    ap.add_argument("--json", help="write the result here")
    args = vars(ap.parse_args())
    out = args.pop("json")
    result = run(BenchConfig(**args))
    eq, neq = result["equivalent"], result["inequivalent"]
    print(f"equivalent pairs:   {eq['certified']}/{eq['pairs']} certified "
          f"({eq['over_budget']} over budget, redrawn)")
    print(f"  monoid size  {eq['monoid_size']}")
    print(f"  middle size  {eq['middle_size']}")
    print(f"  seconds      {eq['seconds']}")
    print(f"inequivalent pairs: {neq['separated']}/{neq['pairs']} separated by a word model")
    print(f"  witness length {neq['witness_length']}")
    if out:
        with open(out, "w") as fh:
            json.dump(result, fh, indent=2)


if __name__ == "__main__":
    main()
