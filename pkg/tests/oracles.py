"""Independent reference computations used to freeze expected values.

Nothing here goes through the package's table-based field arithmetic or its
numpy elimination: extension-field products are schoolbook polynomial
products reduced by the modulus, ranks use plain Python lists, and
Hilbert-Kunz values and zero-scheme lengths come from sympy Groebner bases.
"""

from __future__ import annotations

from itertools import product

from sympy import Poly, groebner, symbols

X, Y, Z = symbols("X Y Z")


# -- F_p[x]/(modulus) by hand ---------------------------------------------

def poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists (little-endian) modulo a monic modulus."""
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * modulus[i]) % p
    out = (prod + [0] * d)[:d]
    return out


def poly_powmod(a, n, modulus, p):
    result = [1] + [0] * (len(modulus) - 2)
    base = list(a)
    while n:
        if n & 1:
            result = poly_mulmod(result, base, modulus, p)
        base = poly_mulmod(base, base, modulus, p)
        n >>= 1
    return result


def has_root_in_subfield(modulus, p, e):
    """Does x^(p^e) = x hold in F_p[x]/(modulus)?"""
    d = len(modulus) - 1
    x = [0, 1] + [0] * (d - 2) if d > 1 else [0]
    return poly_powmod(x, p**e, modulus, p) == x


# -- ranks over F_p with Python ints ----------------------------------------

def rank_mod_p(rows, p):
    m = [list(map(int, r)) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


# -- Groebner-basis oracles -------------------------------------------------

def _leading_exponents(gens, p):
    gb = groebner(gens, X, Y, Z, modulus=p, order="grevlex")
    return [Poly(g, X, Y, Z).monoms(order="grevlex")[0] for g in gb.exprs]


def hk_oracle(G, q, p, gens=(X, Y, Z)):
    """length of k[X,Y,Z]/(G, f_1^q, ...) by counting standard monomials."""
    lts = _leading_exponents([G] + [g**q for g in gens], p)
    bound = max(max(lt) for lt in lts) + 1
    return sum(
        1
        for e in product(range(bound), repeat=3)
        if not any(all(x >= y for x, y in zip(e, lt)) for lt in lts)
    )


def colength_oracle(G, gens, p, n):
    """dim (k[X,Y,Z]/(G, gens))_n."""
    lts = _leading_exponents([G] + list(gens), p)
    return sum(
        1
        for i in range(n + 1)
        for j in range(n + 1 - i)
        if not any(i >= a and j >= b and n - i - j >= c for a, b, c in lts)
    )


def scheme_length_oracle(G, gens, p, n=40):
    """Degree of V(G, gens): the Hilbert function in a large degree."""
    return colength_oracle(G, gens, p, n)


# -- Hasse-Witt matrix from coefficients of f^(p-1) -------------------------

def hasse_witt_oracle(f, p, delta, gens=(X, Y, Z)):
    """Entries coeff of x^(p u - v) in f^(p-1), u, v interior points of the degree-delta triangle.

    Prime fields only.  Up to transpose and a reordering of the basis this is
    the matrix of Frobenius on H^1(O_C), so its iterates have the same ranks.
    """
    interior = [(i, j, delta - i - j) for i in range(1, delta) for j in range(1, delta - i)]
    poly = Poly(f ** (p - 1), *gens, modulus=p)
    coeffs = dict(poly.terms())
    mat = []
    for u in interior:
        row = []
        for v in interior:
            mono = tuple(p * a - b for a, b in zip(u, v))
            row.append(int(coeffs.get(mono, 0)) % p)
        mat.append(row)
    return mat


def mat_power_mod(a, n, p):
    g = len(a)
    out = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(n):
        out = [[sum(out[i][k] * a[k][j] for k in range(g)) % p for j in range(g)] for i in range(g)]
    return out
