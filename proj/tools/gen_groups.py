#!/usr/bin/env python3
"""Generate groups/*.json: generators, class words and character tables."""

import json
import os
import sys
from fractions import Fraction
from itertools import product
from math import gcd

from sympy import cyclotomic_poly, symbols, Poly, totient

X = symbols("x")


class Field:
    def __init__(self, n):
        self.n = n
        self.phi = int(totient(n))
        self.poly = [int(c) for c in reversed(Poly(cyclotomic_poly(n, X), X).all_coeffs())]

    def reduce(self, c):
        c = list(c)
        for k in range(len(c) - 1, self.phi - 1, -1):
            a = c[k]
            if a:
                for i in range(self.phi + 1):
                    c[k - self.phi + i] -= a * self.poly[i]
        c = c[: self.phi] + [Fraction(0)] * max(0, self.phi - len(c))
        return tuple(Fraction(v) for v in c)

    def const(self, v):
        return self.reduce([Fraction(v)])

    def root(self, k):
        k %= self.n
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return self.reduce(c)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        c = [Fraction(0)] * (2 * self.phi)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        return self.reduce(c)

    def scale(self, a, q):
        return tuple(x * q for x in a)

    def galois(self, a, k):
        c = [Fraction(0)] * max(self.n, self.phi)
        for i, x in enumerate(a):
            c[(i * k) % self.n] += x
        return self.reduce(c)

    def conj(self, a):
        return self.galois(a, -1)

    def is_zero(self, a):
        return all(x == 0 for x in a)


def mat_mul(F, A, B):
    n = len(A)
    return tuple(
        tuple(
            sum_f(F, [F.mul(A[i][k], B[k][j]) for k in range(n)])
            for j in range(n)
        )
        for i in range(n)
    )


def sum_f(F, xs):
    r = F.const(0)
    for x in xs:
        r = F.add(r, x)
    return r


def trace(F, A):
    return sum_f(F, [A[i][i] for i in range(len(A))])


def det(F, A):
    if len(A) == 1:
        return A[0][0]
    if len(A) == 2:
        return F.add(F.mul(A[0][0], A[1][1]), F.neg(F.mul(A[0][1], A[1][0])))
    raise ValueError("rank > 2")


def closure(F, gens):
    n = len(gens[0])
    one = tuple(tuple(F.const(1 if i == j else 0) for j in range(n)) for i in range(n))
    elems = [one]
    words = {one: []}
    queue = [one]
    while queue:
        nxt = []
        for g in queue:
            for i, s in enumerate(gens):
                h = mat_mul(F, g, s)
                if h not in words:
                    words[h] = words[g] + [i]
                    elems.append(h)
                    nxt.append(h)
        queue = nxt
    return elems, words


def classes_of(F, elems):
    index = {g: i for i, g in enumerate(elems)}
    inv = {}
    for g in elems:
        for h in elems:
            if mat_mul(F, g, h) == elems[0]:
                inv[g] = h
                break
    seen = set()
    classes = []
    for g in elems:
        if g in seen:
            continue
        cl = []
        for h in elems:
            c = mat_mul(F, mat_mul(F, h, g), inv[h])
            if c not in seen:
                seen.add(c)
                cl.append(c)
        classes.append(sorted(cl, key=lambda x: index[x]))
    return classes


class Table:
    def __init__(self, F, elems, classes):
        self.F = F
        self.elems = elems
        self.classes = classes
        self.order = len(elems)
        self.sizes = [len(c) for c in classes]
        self.reps = [c[0] for c in classes]
        self.inv_class = []
        for c in classes:
            rep = c[0]
            for h in elems:
                if mat_mul(F, rep, h) == elems[0]:
                    self.inv_class.append(next(i for i, d in enumerate(classes) if h in d))
                    break
        self.power_class = {}
        for k in range(2, self.order + 1):
            row = []
            for c in classes:
                g = c[0]
                for _ in range(k - 1):
                    g = mat_mul(F, g, c[0])
                row.append(next(i for i, d in enumerate(classes) if g in d))
            self.power_class[k] = row
        self.sq_class = self.power_class[2]

    def adams(self, a, k):
        return tuple(a[j] for j in self.power_class[k])

    def inner(self, a, b):
        F = self.F
        s = F.const(0)
        for k, size in enumerate(self.sizes):
            s = F.add(s, F.scale(F.mul(a[k], F.conj(b[k])), Fraction(size)))
        return F.scale(s, Fraction(1, self.order))

    def is_irreducible(self, a):
        return self.inner(a, a) == self.F.const(1)

    def times(self, a, b):
        return tuple(self.F.mul(x, y) for x, y in zip(a, b))

    def sym2(self, a):
        F = self.F
        return tuple(
            F.scale(F.add(F.mul(a[k], a[k]), a[self.sq_class[k]]), Fraction(1, 2))
            for k in range(len(a))
        )


def linear_characters(F, gens, elems, words):
    cands = [F.root(k) for k in range(F.n)] + [F.neg(F.root(k)) for k in range(F.n)]
    cands = list(dict.fromkeys(cands))
    out = []
    for vals in product(cands, repeat=len(gens)):
        val = {}
        for g in elems:
            v = F.const(1)
            for i in words[g]:
                v = F.mul(v, vals[i])
            val[g] = v
        ok = all(val[mat_mul(F, g, h)] == F.mul(val[g], val[h]) for g in elems for h in elems)
        if ok:
            out.append(val)
    return out


def character_table(F, gens, elems, words, classes):
    T = Table(F, elems, classes)
    chars = []

    def add(c):
        for x in chars:
            m = T.inner(c, x)
            c = tuple(F.add(a, F.neg(F.mul(m, b))) for a, b in zip(c, x))
        if c[0][0] < 0:
            c = tuple(F.neg(a) for a in c)
        if c not in chars and T.is_irreducible(c):
            chars.append(c)

    for lin in linear_characters(F, gens, elems, words):
        add(tuple(lin[r] for r in T.reps))
    defining = tuple(trace(F, r) for r in T.reps)
    pool = [defining, tuple(F.conj(x) for x in defining), T.sym2(defining)]
    pool += [T.adams(defining, k) for k in range(2, len(elems) + 1)]
    changed = True
    while changed and len(chars) < len(classes):
        changed = False
        base = list(chars) + pool
        new = []
        for a in base:
            for k in range(1, F.n):
                if gcd(k, F.n) == 1:
                    new.append(tuple(F.galois(x, k) for x in a))
            for b in chars:
                if b[0] == F.const(1):
                    new.append(T.times(a, b))
        for c in new:
            before = len(chars)
            add(c)
            if len(chars) > before:
                changed = True
    assert len(chars) == len(classes), (len(chars), len(classes))
    total = sum(c[0][0] ** 2 for c in chars)
    assert total == len(elems)
    return chars


def fstr(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode(a):
    return [fstr(x) for x in a]


def build(name, n, gens, params=None, extra=None):
    F = Field(n)
    elems, words = closure(F, gens)
    classes = classes_of(F, elems)
    chars = character_table(F, gens, elems, words, classes)
    doc = {
        "name": name,
        "dim": len(gens[0]),
        "conductor": n,
        "order": len(elems),
        "generators": [[[encode(x) for x in row] for row in g] for g in gens],
        "classes": [words[c[0]] for c in classes],
        "characters": [[encode(x) for x in c] for c in chars],
    }
    if params:
        doc["parameters"] = params
    if extra:
        doc.update(extra)
    return doc


def dihedral(d):
    F = Field(d)
    z = F.root(1)
    zi = F.root(-1)
    s = ((F.const(0), F.const(1)), (F.const(1), F.const(0)))
    t = ((F.const(0), z), (zi, F.const(0)))
    return F, [s, t]


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    docs = []
    for n in range(2, 13):
        F = Field(n)
        docs.append(build(f"mu{n}", n, [((F.root(1),),)],
                          {"c": "C1"} if n == 2 else None))
    for d in range(3, 9):
        F, gens = dihedral(d)
        params = {"a": "C1", "b": "C2"} if d % 2 == 0 else {"c": "C1"}
        docs.append(build(f"dih{2 * d}", d, gens, params))
        if d == 6:
            docs.append(build("G2", d, gens, params))
    F = Field(1)
    one, zero = F.const(1), F.const(0)
    docs.append(build("B2", 1, [((zero, one), (one, zero)), ((F.const(-1), zero), (zero, one))],
                      {"k1": "K1_1", "k2": "K2_1"}))
    F = Field(3)
    z = F.root(1)
    one, zero = F.const(1), F.const(0)
    third = Fraction(1, 3)
    s = ((one, zero), (zero, z))
    t = (
        (F.scale(F.add(F.scale(z, 2), one), third), F.scale(F.add(F.scale(z, 2), F.const(-2)), third)),
        (F.scale(F.add(z, F.const(-1)), third), F.scale(F.add(z, F.const(2)), third)),
    )
    docs.append(build("G4", 3, [s, t], {"k1": "K1_1", "k2": "K1_2"}))
    for doc in docs:
        with open(os.path.join(outdir, doc["name"] + ".json"), "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
        print(doc["name"], doc["order"], len(doc["characters"]))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "groups"))
