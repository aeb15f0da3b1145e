#!/usr/bin/env python3
"""Writes the ground/Datalog corpus used by the mini prover oracle test.

Axioms are function-free and universal; conjectures are ground or purely
existential, so Herbrand models over the problem constants decide entailment.
"""
import pathlib
import random

UNARY = ["p", "q", "s"]
BINARY = ["r"]


def atom(rng, consts, vars_=()):
    pool = list(consts) + list(vars_)
    if rng.random() < 0.35:
        return f"r({rng.choice(pool)},{rng.choice(pool)})"
    return f"{rng.choice(UNARY)}({rng.choice(pool)})"


def rule(rng, consts):
    kind = rng.randrange(5)
    if kind == 0:
        return f"! [X] : ({atom(rng, [], 'X')} => {atom(rng, [], 'X')})"
    if kind == 1:
        return f"! [X,Y] : (({atom(rng, [], 'XY')} & {atom(rng, [], 'XY')}) => {atom(rng, [], 'XY')})"
    if kind == 2:
        return f"! [X] : ({atom(rng, [], 'X')} => ({atom(rng, [], 'X')} | {atom(rng, [], 'X')}))"
    if kind == 3:
        return f"! [X] : ~ ({atom(rng, [], 'X')} & {atom(rng, [], 'X')})"
    return f"({atom(rng, consts)} | {atom(rng, consts)})"


def conjecture(rng, consts):
    kind = rng.randrange(4)
    if kind == 0:
        return atom(rng, consts)
    if kind == 1:
        return f"~ {atom(rng, consts)}"
    if kind == 2:
        return f"? [X] : ({atom(rng, [], 'X')} & {atom(rng, [], 'X')})"
    return f"({atom(rng, consts)} | {atom(rng, consts)})"


def main():
    out = pathlib.Path(__file__).parent / "corpus"
    out.mkdir(exist_ok=True)
    rng = random.Random(20241)
    for i in range(30):
        consts = ["a", "b"] if i % 3 else ["a", "b", "c"]
        lines = [f"% corpus problem {i:02d}"]
        n = 0
        for _ in range(rng.randint(2, 4)):
            n += 1
            lines.append(f"fof(f{n}, axiom, {atom(rng, consts)}).")
        for _ in range(rng.randint(2, 5)):
            n += 1
            lines.append(f"fof(f{n}, axiom, {rule(rng, consts)}).")
        lines.append(f"fof(goal, conjecture, {conjecture(rng, consts)}).")
        (out / f"p{i:02d}.p").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
