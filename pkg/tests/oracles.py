"""Independent reference implementations used only by the tests."""

from itertools import permutations


def letters_of(text):
    """'aB' style strings: lowercase = generator, uppercase = inverse."""
    return [(c.lower(), 1 if c.islower() else -1) for c in text]


def arc_graph(r1, r2):
    """Ends are (disc, strand); disc is (generator, +1 for g / -1 for g^-1)."""
    strands = []
    for c, word in enumerate((r1, r2)):
        for k, (g, e) in enumerate(letters_of(word)):
            strands.append((c, k, g, e))
    ends_by_curve = {}
    arcs = []
    for c, word in enumerate((r1, r2)):
        lets = letters_of(word)
        n = len(lets)
        for k in range(n):
            g, e = lets[k]
            h, f = lets[(k + 1) % n]
            out_end = ((g, -e), (c, k))      # leaves through the exit disc of letter k
            in_end = ((h, f), (c, (k + 1) % n))  # arrives at the entry disc of letter k+1
            arcs.append((out_end, in_end))
    return strands, arcs


def sphere_embeddable(r1, r2, orders):
    """orders[g] = list of strand keys (c, k) around disc (g, +1); disc (g, -1) uses the reverse."""
    strands, arcs = arc_graph(r1, r2)
    rot = {}
    for g, order in orders.items():
        rot[(g, 1)] = list(order)
        rot[(g, -1)] = list(reversed(order))
    other = {}
    for u, v in arcs:
        other[u] = v
        other[v] = u
    succ = {}
    for disc, order in rot.items():
        here = [(disc, s) for s in order if (disc, s) in other]
        for i, end in enumerate(here):
            succ[end] = here[(i - 1) % len(here)]  # clockwise on purpose
    seen, faces = set(), {}
    discs = list(rot)
    comp = {d: d for d in discs}

    def find(d):
        while comp[d] != d:
            d = comp[d]
        return d

    for u, v in arcs:
        comp[find(u[0])] = find(v[0])
    for start in other:
        if start in seen:
            continue
        faces[find(start[0])] = faces.get(find(start[0]), 0) + 1
        e = start
        while e not in seen:
            seen.add(e)
            e = succ[other[e]]
    for root in {find(d) for d in discs}:
        V = sum(1 for d in discs if find(d) == root)
        E = sum(1 for u, _ in arcs if find(u[0]) == root)
        F = faces.get(root, 1 if E == 0 else 0)
        if V - E + F != 2:
            return False
    return True


def brute_force_realizable(r1, r2):
    strands, _ = arc_graph(r1, r2)
    by_gen = {}
    for c, k, g, _ in strands:
        by_gen.setdefault(g, []).append((c, k))
    gens = sorted(by_gen)
    first = {g: by_gen[g][0] for g in gens}
    rests = [list(permutations(by_gen[g][1:])) for g in gens]

    def rec(i, orders):
        if i == len(gens):
            return sphere_embeddable(r1, r2, orders)
        g = gens[i]
        for rest in rests[i]:
            orders[g] = [first[g], *rest]
            if rec(i + 1, orders):
                return True
        return False

    return rec(0, {})


# -- Smith normal form through determinantal divisors --------------------------

from itertools import combinations
from math import gcd


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def invariant_factors(m):
    """d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors; stops at the rank."""
    rows, cols = len(m), len(m[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# -- a concrete finite image: matrices over Z/p ------------------------------------


def sl2(p):
    return [((a, b), (c, d)) for a in range(p) for b in range(p) for c in range(p) for d in range(p)
            if (a * d - b * c) % p == 1]


def mat_mul(x, y, p):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) % p for j in range(2)) for i in range(2))


def mat_inv(x, p):
    (a, b), (c, d) = x
    return ((d % p, -b % p), (-c % p, a % p))


def mat_eval(word, images, p):
    """``word`` as (generator index, sign) pairs."""
    out = ((1, 0), (0, 1))
    for g, e in word:
        out = mat_mul(out, images[g] if e > 0 else mat_inv(images[g], p), p)
    return out


def generated(gens, p):
    seen = {((1, 0), (0, 1))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen
