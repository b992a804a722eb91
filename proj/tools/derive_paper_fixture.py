#!/usr/bin/env python3
"""Derive the Galois automorphisms of the degree-32 wreath-product field.

Independent of the C++ code base: uses python-flint only.

  1. Find a prime p at which f splits into distinct linear factors.
  2. Hensel-lift all 32 roots to p^N (N ~ 4000 bits).
  3. For each root r_j, recover g_j in Q[x] of degree < 32 with
     g_j(r_0) = r_j by LLL on the p-adic relation lattice.
  4. Verify f(g_j(x)) == 0 mod f(x) exactly over Q.
  5. Compute the composition law and an explicit isomorphism onto
     G+ = <(12)(34), (5678), (15)(27)(36)(48)> acting on 8 points.

Writes the field-data JSON consumed by `chebias field validate`.
"""

import argparse
import hashlib
import json
import sys

import flint

POLY = {32: 1, 30: -128, 28: 5680, 26: -120576, 24: 1386352, 22: -9267712,
        20: 38233408, 18: -101305344, 16: 176213088, 14: -202610688,
        12: 152933632, 10: -74141696, 8: 22181632, 6: -3858432, 4: 363520,
        2: -16384, 0: 256}

DEGREE = 32


def poly_coeffs():
    c = [0] * (DEGREE + 1)
    for k, v in POLY.items():
        c[k] = v
    return c


def horner(coeffs, x, mod):
    r = 0
    for a in reversed(coeffs):
        r = (r * x + a) % mod
    return r


def split_prime(c):
    p = 3
    while True:
        if flint.fmpz(p).is_prime():
            fac = flint.nmod_poly(c, p).factor()[1]
            if len(fac) == DEGREE and all(e == 1 and q.degree() == 1 for q, e in fac):
                return p, sorted((-int(q[0])) % p for q, _ in fac)
        p += 2


def lift_roots(c, p, roots, bits):
    dc = [k * c[k] for k in range(1, len(c))]
    mod = p
    while mod.bit_length() < bits:
        mod = mod * mod
        roots = [(r - horner(c, r, mod) * pow(horner(dc, r, mod), -1, mod)) % mod
                 for r in roots]
    return mod, roots


def recover(a, b, mod):
    n = DEGREE + 1
    weight = 2 ** 600
    rows = []
    row = [0] * (n + 1)
    row[0], row[n] = 1, b * weight
    rows.append(row)
    for k in range(DEGREE):
        row = [0] * (n + 1)
        row[k + 1] = 1
        row[n] = ((-pow(a, k, mod)) % mod) * weight
        rows.append(row)
    row = [0] * (n + 1)
    row[n] = mod * weight
    rows.append(row)
    red = flint.fmpz_mat(rows).lll()
    for i in range(red.nrows()):
        v = [int(red[i, k]) for k in range(n + 1)]
        if v[n] == 0 and v[0] != 0:
            den = v[0]
            return flint.fmpq_poly([flint.fmpq(x, den) for x in v[1:n]])
    raise RuntimeError("no relation found")


def perm_compose(a, b):
    return tuple(a[x] for x in b)


def perm_from_cycles(s, n):
    img = list(range(n))
    for cyc in s.strip("()").split(")("):
        pts = [int(t) - 1 for t in cyc.split()]
        for i, x in enumerate(pts):
            img[x] = pts[(i + 1) % len(pts)]
    return tuple(img)


def cycles(p):
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--bits", type=int, default=4000)
    args = ap.parse_args()

    c = poly_coeffs()
    f = flint.fmpz_poly(c)
    fq = flint.fmpq_poly(c)
    assert len(f.factor()[1]) == 1, "f must be irreducible"

    p, roots = split_prime(c)
    mod, roots = lift_roots(c, p, roots, args.bits)
    print(f"split prime {p}, precision {mod.bit_length()} bits", file=sys.stderr)

    auts = []
    for j, b in enumerate(roots):
        g = recover(roots[0], b, mod)
        assert fq(g) % fq == 0, f"automorphism {j} failed exact check"
        auts.append(g)
    assert len({str(g) for g in auts}) == DEGREE

    # Composition law: sigma_i o sigma_j  <->  g_j(g_i(x)) mod f.
    q = 1000003
    def red(g):
        return flint.nmod_poly([int(x.p) * pow(int(x.q), -1, q) % q for x in g.coeffs()], q)
    fmod = flint.nmod_poly(c, q)
    gm = [red(g) for g in auts]
    index = {str(g): i for i, g in enumerate(gm)}
    def compose_mod(outer, inner):
        acc = flint.nmod_poly([0], q)
        for coef in reversed([int(t) for t in outer.coeffs()]):
            acc = (acc * inner + coef) % fmod
        return acc
    table = [[index[str(compose_mod(gm[j], gm[i]))] for j in range(DEGREE)]
             for i in range(DEGREE)]

    # Target group on 8 points.
    sigma = perm_from_cycles("(5 6 7 8)", 8)
    gamma = perm_from_cycles("(1 5)(2 7)(3 6)(4 8)", 8)
    gens = [sigma, gamma]
    ident = tuple(range(8))

    def orders():
        out = []
        for i in range(DEGREE):
            k, x = 1, i
            while x != identity:
                x = table[x][i]
                k += 1
            out.append(k)
        return out
    identity = next(i for i in range(DEGREE) if all(table[i][j] == j for j in range(DEGREE)))
    ords = orders()

    iso = None
    for a in range(DEGREE):
        if ords[a] != 4 or iso:
            continue
        for b in range(DEGREE):
            if ords[b] != 2:
                continue
            images = [a, b]
            m = {ident: identity}
            frontier = [ident]
            ok = True
            while frontier and ok:
                nxt = []
                for e in frontier:
                    for g, gi in zip(gens, images):
                        ne = perm_compose(e, g)
                        ng = table[m[e]][gi]
                        if ne in m:
                            if m[ne] != ng:
                                ok = False
                                break
                        else:
                            m[ne] = ng
                            nxt.append(ne)
                    if not ok:
                        break
                frontier = nxt
            if ok and len(m) == DEGREE and len(set(m.values())) == DEGREE:
                iso = m
                break
    assert iso is not None, "no isomorphism onto the wreath product"
    perm_of = {v: k for k, v in iso.items()}

    order = sorted(range(DEGREE), key=lambda i: perm_of[i])
    def qstr(x):
        return f"{int(x.p)}/{int(x.q)}"
    automorphisms = []
    for i in order:
        coeffs = [qstr(x) for x in auts[i].coeffs()]
        coeffs += ["0/1"] * (DEGREE - len(coeffs))
        automorphisms.append({"coeffs": coeffs, "perm": cycles(perm_of[i])})

    poly = [str(x) for x in c]
    dens = set()
    for g in auts:
        for x in g.coeffs():
            for pr, _ in flint.fmpz(int(x.q)).factor():
                dens.add(int(pr))
    disc = set()
    for pr in range(2, 100000):
        if flint.fmpz(pr).is_prime():
            fp = flint.nmod_poly(c, pr)
            if fp.gcd(fp.derivative()).degree() > 0:
                disc.add(pr)
    doc = {
        "name": "wreath32",
        "degree": DEGREE,
        "poly": poly,
        "automorphisms": automorphisms,
        "group": {"degree": 8,
                  "generators": ["(1 2)(3 4)", "(5 6 7 8)", "(1 5)(2 7)(3 6)(4 8)"]},
        "subgroup_generators": ["(1 2)(3 4)", "(5 6 7 8)"],
        "class1_rep": "(1 2)(3 4)",
        "class2_rep": "(5 7)(6 8)",
        "excluded_primes": sorted(dens | disc | {2}),
        "poly_checksum": hashlib.sha256(",".join(poly).encode()).hexdigest(),
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print(f"wrote {args.out}; excluded {doc['excluded_primes']}", file=sys.stderr)


if __name__ == "__main__":
    main()
