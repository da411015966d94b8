"""Smoke run: every command on the builtin systems, printed as one line each."""

from ergomax.core.config import resolve_tolerances
from ergomax.dispatcher import default_dispatcher

RUNS = [
    ("alpha", {"system": "three-point"}),
    ("three-point", {"a": 0.25, "horizon": 12}),
    ("horizons", {"system": "golden", "horizon": 20}),
    ("point", {"system": "three-point", "point": "a|1,0"}),
    ("subaction", {"system": "three-point"}),
    ("pressure", {"system": "golden", "kind": "spectral"}),
    ("entropy", {"system": "full2", "measure": "bernoulli", "probs": "0.3,0.7"}),
    ("axioms", {"system": "golden", "kind": "sup_norm"}),
    ("fenchel", {"instance": "data/matching_pennies.json"}),
]


def main():
    dispatcher = default_dispatcher()
    tol = resolve_tolerances()
    for command, inputs in RUNS:
        outcome = dispatcher.dispatch(command, inputs, tol)
        print(f" {'✅' if outcome.exit_code == 0 else '❌'} {command}: exit {outcome.exit_code}")


if __name__ == "__main__":
    main()
