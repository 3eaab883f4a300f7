"""Regenerates tests/fixtures/golden_mean_parry.json.

Golden-mean Parry cylinder masses in exact form a + b*sqrt(5) with rational
a, b, from the closed-form eigenvectors of [[1,1],[1,0]].
"""
import itertools
import json
import sys

import sympy as sp

phi = (1 + sp.sqrt(5)) / 2
A = [[1, 1], [1, 0]]
v = [phi, 1]  # right eigenvector
u = [phi, 1]  # left eigenvector (A is symmetric)
norm = sum(u[i] * v[i] for i in range(2))
pi = [sp.nsimplify(sp.simplify(u[i] * v[i] / norm), [sp.sqrt(5)]) for i in range(2)]


def p(i, j):
    return sp.simplify(A[i][j] * v[j] / (phi * v[i]))


def split(x):
    x = sp.radsimp(sp.expand(x))
    b = sp.Rational(x.coeff(sp.sqrt(5)))
    a = sp.Rational(sp.simplify(x - b * sp.sqrt(5)))
    return a, b


rows = []
for length in range(1, 7):
    for w in itertools.product([0, 1], repeat=length):
        if any(A[w[k]][w[k + 1]] == 0 for k in range(length - 1)):
            continue
        m = pi[w[0]]
        for k in range(length - 1):
            m *= p(w[k], w[k + 1])
        a, b = split(m)
        rows.append({"word": "".join(map(str, w)), "a": [int(a.p), int(a.q)], "b": [int(b.p), int(b.q)]})

out = sys.stdout
out.write('{"matrix": [[1, 1], [1, 0]], "form": "a + b*sqrt(5)", "masses": [\n')
out.write(",\n".join("  " + json.dumps(r) for r in rows))
out.write("\n]}\n")
