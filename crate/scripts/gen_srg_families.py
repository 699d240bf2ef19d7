#!/usr/bin/env python3
"""Regenerate the vendored strongly regular graph families.

Builds every srg(25,12,5,6) and srg(26,10,3,4) graph up to isomorphism from
the regular two-graphs on 26 vertices. Seed graphs (Paley(25), Latin square
graphs of order 5, block-graph complements of Steiner triple systems on 13
points) are lifted to their switching classes; the srg(25,12,5,6) graphs are
the descendants of those classes and the srg(26,10,3,4) graphs are their
degree-10 regular members. Duplicates are removed with an exact isomorphism
test.

Usage: python3 scripts/gen_srg_families.py crates/core/fixtures
Writes srg_25_12_5_6.g6, srg_26_10_3_4.g6, rook_shrikhande.g6 and SHA256SUMS.
"""

import hashlib
import itertools
import os
import random
import sys

import networkx as nx
import numpy as np


def to_graph6(adj):
    n = len(adj)
    assert n <= 62
    out = [chr(63 + n)]
    bits = [adj[i][j] for j in range(1, n) for i in range(j)]
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | int(b)
        out.append(chr(63 + v))
    return "".join(out)


def srg_params(a):
    n = a.shape[0]
    deg = a.sum(axis=1)
    if not np.all(deg == deg[0]):
        return None
    a2 = a @ a
    lam = {int(a2[i, j]) for i in range(n) for j in range(n) if i != j and a[i, j]}
    mu = {int(a2[i, j]) for i in range(n) for j in range(n) if i != j and not a[i, j]}
    if len(lam) != 1 or len(mu) != 1:
        return None
    return (n, int(deg[0]), lam.pop(), mu.pop())


def paley25():
    # GF(25) = GF(5)[w] / (w^2 - 2)
    elems = [(a, b) for a in range(5) for b in range(5)]
    squares = set()
    for a, b in elems:
        if (a, b) != (0, 0):
            squares.add(((a * a + 2 * b * b) % 5, (2 * a * b) % 5))
    n = len(elems)
    adj = np.zeros((n, n), dtype=int)
    for i, (a, b) in enumerate(elems):
        for j, (c, d) in enumerate(elems):
            if i != j and (((a - c) % 5, (b - d) % 5) in squares):
                adj[i, j] = 1
    return adj


def latin_squares5():
    out = []
    rows = list(itertools.permutations(range(5)))

    def rec(sq):
        if len(sq) == 5:
            out.append([list(r) for r in sq])
            return
        for r in rows:
            if len(sq) == 0 and list(r) != list(range(5)):
                continue
            if r[0] != len(sq):
                continue
            if all(all(r[c] != s[c] for c in range(5)) for s in sq):
                rec(sq + [r])

    rec([])
    return out


def latin_square_graph(sq):
    cells = [(i, j) for i in range(5) for j in range(5)]
    adj = np.zeros((25, 25), dtype=int)
    for x, (i, j) in enumerate(cells):
        for y, (k, l) in enumerate(cells):
            if x != y and (i == k or j == l or sq[i][j] == sq[k][l]):
                adj[x, y] = 1
    return adj


def random_sts13(rng):
    # Stinson hill-climbing for STS(13).
    v = 13
    target = v * (v - 1) // 6
    blocks = set()
    pair_block = {}
    live = {x: set(y for y in range(v) if y != x) for x in range(v)}
    while len(blocks) < target:
        x = rng.choice([p for p in range(v) if live[p]])
        y, z = rng.sample(sorted(live[x]), 2)
        yz = (min(y, z), max(y, z))
        if yz in pair_block:
            old = pair_block.pop(yz)
            blocks.discard(old)
            for p, q in itertools.combinations(old, 2):
                pair_block.pop((p, q), None)
                live[p].add(q)
                live[q].add(p)
        b = tuple(sorted((x, y, z)))
        blocks.add(b)
        for p, q in itertools.combinations(b, 2):
            pair_block[(p, q)] = b
            live[p].discard(q)
            live[q].discard(p)
    return sorted(blocks)


def sts_block_complement(blocks):
    n = len(blocks)
    adj = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            if i != j and not set(blocks[i]) & set(blocks[j]):
                adj[i, j] = 1
    return adj


def seidel(adj):
    n = adj.shape[0]
    return np.ones((n, n), dtype=int) - np.eye(n, dtype=int) - 2 * adj


def from_seidel(s):
    n = s.shape[0]
    return ((np.ones((n, n), dtype=int) - np.eye(n, dtype=int) - s) // 2).astype(int)


def lift26(adj25):
    adj = np.zeros((26, 26), dtype=int)
    adj[:25, :25] = adj25
    return adj


def descendants(adj26):
    s = seidel(adj26)
    out = []
    for v in range(26):
        d = s[v].copy()
        d[v] = 1  # switching on N(v) isolates v
        sw = (d[:, None] * s) * d[None, :]
        a = from_seidel(sw)
        assert a[v].sum() == 0
        keep = [i for i in range(26) if i != v]
        out.append(a[np.ix_(keep, keep)])
    return out


def regular_members(adj26, degree):
    # D S D 1 = (n - 1 - 2k) 1  <=>  S d = (n - 1 - 2k) d with d in {+-1}^n.
    s = seidel(adj26).astype(float)
    n = s.shape[0]
    ev = n - 1 - 2 * degree
    w, q = np.linalg.eigh(s)
    basis = q[:, np.abs(w - ev) < 1e-6]
    dim = basis.shape[1]
    if dim == 0:
        return []
    rows = []
    for r in range(n):
        cand = rows + [r]
        if np.linalg.matrix_rank(basis[cand]) == len(cand):
            rows = cand
        if len(rows) == dim:
            break
    inv = np.linalg.inv(basis[rows])
    found = []
    for signs in itertools.product((1.0, -1.0), repeat=dim - 1):
        x = np.array((1.0,) + signs)
        d = basis @ (inv @ x)
        if np.all(np.abs(np.abs(d) - 1) < 1e-6):
            di = np.rint(d).astype(int)
            sw = (di[:, None] * seidel(adj26)) * di[None, :]
            found.append(from_seidel(sw))
    return found


def invariant(a):
    """Isomorphism invariant: per-vertex clique and common-neighbour edge counts."""
    n = a.shape[0]
    a2 = a @ a
    tri = np.diag(a @ a2) // 2
    per_vertex = []
    for v in range(n):
        nb = np.flatnonzero(a[v])
        sub = a[np.ix_(nb, nb)]
        per_vertex.append((int(tri[v]), tuple(sorted(sub.sum(axis=1).tolist()))))
    pair = []
    for u in range(n):
        for v in range(u + 1, n):
            common = np.flatnonzero(a[u] & a[v])
            pair.append((int(a[u, v]), int(a[np.ix_(common, common)].sum()) // 2))
    return (tuple(sorted(per_vertex)), tuple(sorted(pair)))


class Family:
    def __init__(self):
        self.groups = {}
        self.reps = []

    def add(self, a):
        key = invariant(a)
        g = nx.from_numpy_array(a)
        bucket = self.groups.setdefault(key, [])
        if any(nx.vf2pp_is_isomorphic(g, r) for r in bucket):
            return False
        bucket.append(g)
        self.reps.append(a)
        return True


def canonical_key(a):
    return to_graph6(a.tolist())


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "crates/core/fixtures"
    os.makedirs(outdir, exist_ok=True)
    rng = random.Random(20240517)

    seeds26 = [lift26(paley25())]
    for sq in latin_squares5():
        seeds26.append(lift26(latin_square_graph(sq)))
    for _ in range(40):
        seeds26.append(sts_block_complement(random_sts13(rng)))

    f25 = Family()
    f26 = Family()
    todo25 = []
    todo26 = []
    for a in seeds26:
        for d in descendants(a):
            if srg_params(d) == (25, 12, 5, 6) and f25.add(d):
                todo25.append(d)
    # closure: descendants of regular members and regular members of lifted descendants
    while todo25 or todo26:
        while todo25:
            d = todo25.pop()
            for r in regular_members(lift26(d), 10):
                if srg_params(r) == (26, 10, 3, 4) and f26.add(r):
                    todo26.append(r)
        while todo26:
            r = todo26.pop()
            for d in descendants(r):
                if srg_params(d) == (25, 12, 5, 6) and f25.add(d):
                    todo25.append(d)

    fam25 = f25.reps
    fam26 = f26.reps
    print(f"srg(25,12,5,6): {len(fam25)} graphs; srg(26,10,3,4): {len(fam26)} graphs")

    fam25.sort(key=canonical_key)
    fam26.sort(key=canonical_key)

    rook = np.zeros((16, 16), dtype=int)
    shri = np.zeros((16, 16), dtype=int)
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    for x in range(16):
        for y in range(16):
            (a, b), (c, d) = divmod(x, 4), divmod(y, 4)
            if x != y and (a == c or b == d):
                rook[x, y] = 1
            if ((a - c) % 4, (b - d) % 4) in conn:
                shri[x, y] = 1
    assert srg_params(rook) == (16, 6, 2, 2) and srg_params(shri) == (16, 6, 2, 2)

    files = {
        "srg_25_12_5_6.g6": fam25,
        "srg_26_10_3_4.g6": fam26,
        "rook_shrikhande.g6": [rook, shri],
    }
    sums = []
    for name, fam in files.items():
        text = "".join(to_graph6(a.tolist()) + "\n" for a in fam)
        with open(os.path.join(outdir, name), "w") as f:
            f.write(text)
        sums.append(f"{hashlib.sha256(text.encode()).hexdigest()}  {name}\n")
    with open(os.path.join(outdir, "SHA256SUMS"), "w") as f:
        f.write("".join(sums))


if __name__ == "__main__":
    main()
