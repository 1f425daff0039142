#!/usr/bin/env python3
"""Random two-variable strict QF_NRA instances with status from an independent CAD-sample oracle.

Strict atoms make the solution set open, so it is nonempty iff it meets a sector-over-sector
cell of the decomposition induced by the projection polynomials below. The oracle samples
every such cell at rational points and evaluates exactly; a coarse grid is tried first.
"""

import argparse
import itertools
import random
from fractions import Fraction
from pathlib import Path

import sympy as sp

X, Y = sp.symbols("x y")


def random_poly(rng):
    monomials = [(i, k) for i in range(3) for k in range(3) if i + k <= 2]
    monomials += [(3, 0), (0, 3), (2, 1), (1, 2)]
    chosen = rng.sample(monomials, rng.randint(2, 4))
    p = sum(rng.choice([-3, -2, -1, 1, 2, 3]) * X**i * Y**k for i, k in chosen)
    return sp.expand(p + rng.randint(-3, 3))


def random_formula(rng):
    atoms = [(random_poly(rng), rng.choice(["<", ">"])) for _ in range(rng.randint(2, 3))]
    formula = ("and", [("atom", a) for a in atoms])
    if rng.random() < 0.4:
        extra = [("atom", (random_poly(rng), rng.choice(["<", ">"]))) for _ in range(2)]
        formula[1].append(("or", extra))
    return formula


def atoms_of(f):
    if f[0] == "atom":
        return [f[1]]
    return [a for g in f[1] for a in atoms_of(g)]


def holds(f, point):
    if f[0] == "atom":
        p, rel = f[1]
        v = p.subs({X: point[0], Y: point[1]})
        return v < 0 if rel == "<" else v > 0
    results = (holds(g, point) for g in f[1])
    return all(results) if f[0] == "and" else any(results)


def real_root_values(poly, var):
    poly = sp.Poly(poly, var)
    if poly.degree() <= 0:
        return []
    return sorted({sp.Rational(str(r.evalf(60))) for r in sp.real_roots(poly)})


def cell_samples(values):
    values = sorted(set(values))
    if not values:
        return [sp.Integer(0)]
    out = [values[0] - 1, values[-1] + 1]
    out += [(a + b) / 2 for a, b in zip(values, values[1:])]
    return out


def critical_x(polys):
    crit = []
    for p in polys:
        py = sp.Poly(p, Y)
        if py.degree() <= 0:
            crit += real_root_values(p, X)
            continue
        crit += real_root_values(py.LC(), X)
        if py.degree() >= 2:
            crit += real_root_values(sp.discriminant(p, Y), X)
    for p, q in itertools.combinations(polys, 2):
        if sp.Poly(p, Y).degree() >= 1 and sp.Poly(q, Y).degree() >= 1:
            r = sp.resultant(p, q, Y)
            if r != 0:
                crit += real_root_values(r, X)
    return crit


def oracle(f):
    grid = [sp.Rational(k, 4) for k in range(-16, 17)]
    for x, y in itertools.product(grid, grid):
        if holds(f, (x, y)):
            return "sat"
    polys = [p for p, _ in atoms_of(f)]
    for x in cell_samples(critical_x(polys)):
        ys = []
        for p in polys:
            ys += real_root_values(p.subs(X, x), Y)
        for y in cell_samples(ys):
            if holds(f, (x, y)):
                return "sat"
    return "unsat"


def smt_term(expr):
    expr = sp.expand(expr)
    terms = []
    for (i, k), c in sp.Poly(expr, X, Y).terms():
        factors = ["x"] * i + ["y"] * k
        c = int(c)
        if not factors:
            terms.append(str(c) if c >= 0 else "(- %d)" % -c)
            continue
        if c != 1:
            factors.insert(0, str(c) if c > 0 else "(- %d)" % -c)
        terms.append(factors[0] if len(factors) == 1 else "(* %s)" % " ".join(factors))
    if not terms:
        return "0"
    return terms[0] if len(terms) == 1 else "(+ %s)" % " ".join(terms)


def smt_formula(f):
    if f[0] == "atom":
        p, rel = f[1]
        return "(%s %s 0)" % (rel, smt_term(p))
    return "(%s %s)" % (f[0], " ".join(smt_formula(g) for g in f[1]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "instances"))
    ap.add_argument("--count", type=int, default=16)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    want = {"sat": args.count // 2, "unsat": args.count - args.count // 2}
    made = {"sat": 0, "unsat": 0}
    n = 0
    while made != want:
        f = random_formula(rng)
        status = oracle(f)
        if made[status] == want[status]:
            continue
        made[status] += 1
        n += 1
        text = "(set-info :status %s)\n(set-logic QF_NRA)\n" % status
        text += "(declare-fun x () Real)\n(declare-fun y () Real)\n"
        for g in f[1]:
            text += "(assert %s)\n" % smt_formula(g)
        text += "(check-sat)\n(exit)\n"
        Path(args.out, "random_%02d.smt2" % n).write_text(text)


if __name__ == "__main__":
    main()
