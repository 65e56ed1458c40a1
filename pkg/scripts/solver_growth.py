"""How large do least-solution expressions get?  Compares plain elimination
with unit rewriting on random automata, grouped by number of states.

    python scripts/solver_growth.py --automata 100 --max-states 6
"""
import argparse
import random
import statistics
from dataclasses import asdict, dataclass

from kafmp.automata import antimirov_automaton, language_equiv
from kafmp.generate import random_nfa
from kafmp.solver import solve_automaton


@dataclass
class GrowthConfig:
    automata: int = 100
    max_states: int = 6
    density: float = 0.3
    seed: int = 0
    verify: bool = True


def run(cfg: GrowthConfig) -> dict[int, dict[str, list[int]]]:
    rng = random.Random(cfg.seed)
    table: dict[int, dict[str, list[int]]] = {}
    for _ in range(cfg.automata):
        A = random_nfa(rng, cfg.max_states, density=cfg.density)
        row = table.setdefault(A.size, {"plain": [], "simplified": []})
        for key, flag in (("plain", False), ("simplified", True)):
            s = solve_automaton(A, simplify=flag)
            row[key].append(max((x.size for x in s), default=0))
            if cfg.verify:
                for q in range(A.size):
                    assert language_equiv(antimirov_automaton(s[q], "ab"), A.from_state(q))
    return table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--automata", type=int, default=GrowthConfig.automata)
    ap.add_argument("--max-states", type=int, default=GrowthConfig.max_states)
    ap.add_argument("--density", type=float, default=GrowthConfig.density)
    ap.add_argument("--seed", type=int, default=GrowthConfig.seed)
    ap.add_argument("--no-verify", dest="verify", action="store_false")
    cfg = GrowthConfig(**vars(ap.parse_args()))
    print(f"config: {asdict(cfg)}")
    print(f"{'states':>6} {'count':>5} {'plain median':>13} {'plain max':>10} "
          f"{'simpl median':>13} {'simpl max':>10}")
    for n, row in sorted(run(cfg).items()):
        p, s = row["plain"], row["simplified"]
        print(f"{n:>6} {len(p):>5} {statistics.median(p):>13} {max(p):>10} "
              f"{statistics.median(s):>13} {max(s):>10}")


if __name__ == "__main__":
    main()
