"""Modular arithmetic helpers: primes, dense polynomials over Z_n, and
echelon forms for subgroups of (Z_n)^m.

Polynomials are coefficient lists [c0, c1, ...] with trailing zeros trimmed;
[] is the zero polynomial.  Matrix routines over a prime modulus are plain
reduced row echelon; over a prime power q^t they compute the Howell form,
which is a canonical generating set for a Z_{q^t}-submodule (so submodule
equality is syntactic equality of forms).
"""

from __future__ import annotations

import math
from functools import lru_cache


# ---------------------------------------------------------------------------
# primes and unit groups


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def multiplicative_order(a: int, m: int) -> int:
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    a %= m
    x, k = a, 1
    while x != 1:
        x = x * a % m
        k += 1
    return k


@lru_cache(maxsize=None)
def primitive_root(m: int) -> int:
    """Smallest primitive root mod m (m = p or p^2, p odd prime)."""
    phi = m - 1 if is_prime(m) else None
    if phi is None:
        fac = factorize(m)
        if len(fac) != 1:
            raise ValueError(f"no primitive root guaranteed mod {m}")
        p, e = next(iter(fac.items()))
        phi = (p - 1) * p ** (e - 1)
    for g in range(2, m):
        if math.gcd(g, m) == 1 and multiplicative_order(g, m) == phi:
            return g
    raise ValueError(f"no primitive root mod {m}")


def unit_of_order(m: int, d: int) -> int:
    """A unit of exact multiplicative order d mod m, from the smallest
    primitive root (deterministic)."""
    g = primitive_root(m)
    phi = multiplicative_order(g, m)
    if phi % d != 0:
        raise ValueError(f"no unit of order {d} mod {m}")
    return pow(g, phi // d, m)


def subgroup_of_units(p: int, gens) -> frozenset[int]:
    """Subgroup of Z_p^* generated by the given units."""
    cur = {1}
    frontier = [1]
    gens = [g % p for g in gens]
    for g in gens:
        if math.gcd(g, p) != 1:
            raise ValueError(f"{g} is not a unit mod {p}")
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % p
            if y not in cur:
                cur.add(y)
                frontier.append(y)
    return frozenset(cur)


# ---------------------------------------------------------------------------
# dense polynomials over Z_n


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, n):
    m = max(len(a), len(b))
    out = [0] * m
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % n
    return poly_trim(out)


def poly_sub(a, b, n):
    return poly_add(a, [(-c) % n for c in b], n)


def poly_mul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] = (out[i + j] + c * d) % n
    return poly_trim(out)


def poly_scale(a, s, n):
    return poly_trim([c * s % n for c in a])


def poly_divmod(a, b, n):
    """Quotient and remainder of a by b over Z_n; lead(b) must be a unit."""
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    if math.gcd(lead, n) != 1:
        raise ValueError("leading coefficient is not a unit")
    inv = pow(lead, -1, n)
    a = [c % n for c in a]
    poly_trim(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv % n
        q[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % n
        poly_trim(a)
    return poly_trim(q), a


def poly_mod(a, b, n):
    return poly_divmod(a, b, n)[1]


def poly_gcd_monic(a, b, p):
    """Monic gcd over the prime field F_p."""
    a = poly_trim([c % p for c in a])
    b = poly_trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        a = poly_scale(a, pow(a[-1], -1, p), p)
    return a


def poly_pow_mod(a, e, mod, n):
    out = [1]
    base = poly_mod(a, mod, n)
    while e:
        if e & 1:
            out = poly_mod(poly_mul(out, base, n), mod, n)
        base = poly_mod(poly_mul(base, base, n), mod, n)
        e >>= 1
    return out


def poly_eval(a, x, n):
    out = 0
    for c in reversed(a):
        out = (out * x + c) % n
    return out


def x_pow_minus_one(m: int, n: int) -> list[int]:
    out = [0] * (m + 1)
    out[0] = (-1) % n
    out[m] = 1
    return out


def monic_polys(degree: int, q: int):
    """All monic polynomials of the given degree over F_q, in lexicographic
    order of their low-degree coefficients."""
    if degree == 0:
        yield [1]
        return
    coeffs = [0] * degree
    while True:
        yield coeffs + [1]
        i = 0
        while i < degree:
            coeffs[i] += 1
            if coeffs[i] < q:
                break
            coeffs[i] = 0
            i += 1
        else:
            return
        if i == degree:
            return


def factor_monic(f, q):
    """Factor a monic polynomial over F_q (q prime) into monic irreducibles
    by trial division of increasing degree.  Returns a sorted list; fine for
    the tiny degrees used here."""
    if not is_prime(q):
        raise ValueError("factor_monic requires a prime modulus")
    f = poly_trim([c % q for c in f])
    if len(f) < 2:
        return []
    factors = []
    d = 1
    while len(f) - 1 >= 2 * d:
        reducible = False
        for g in monic_polys(d, q):
            while True:
                quo, rem = poly_divmod(f, g, q)
                if rem:
                    break
                factors.append(list(g))
                f = quo
                reducible = True
                if len(f) == 1:
                    break
            if len(f) == 1:
                break
        if len(f) == 1:
            break
        d += 1
        if not reducible and d > (len(f) - 1) // 2:
            break
    if len(f) > 1:
        factors.append(f)
    return sorted(factors, key=lambda g: (len(g), g))


def poly_to_text(a, n) -> str:
    """Render "c0 + c1*x + c2*x^2" with coefficients reduced to 0..n-1."""
    if not a:
        return "0"
    terms = []
    for i, c in enumerate(a):
        c %= n
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*x" if c != 1 else "x")
        else:
            terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
    return " + ".join(terms) if terms else "0"


def poly_from_text(text: str, n: int) -> list[int]:
    """Parse the poly_to_text format (whitespace-insensitive)."""
    text = text.replace(" ", "").replace("-", "+-")
    if text in ("", "0"):
        return []
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "x" not in term:
            deg, coef = 0, int(term)
        else:
            head, _, tail = term.partition("x")
            coef = int(head.rstrip("*")) if head.rstrip("*") else 1
            deg = int(tail[1:]) if tail.startswith("^") else 1
        if neg:
            coef = -coef
        coeffs[deg] = (coeffs.get(deg, 0) + coef) % n
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return poly_trim(out)


# ---------------------------------------------------------------------------
# row reduction over F_p and Howell form over Z_{q^t}


def rref(rows, p):
    """Reduced row echelon form over F_p.  Returns (rows, pivot_cols) with
    zero rows dropped; canonical for a subspace."""
    rows = [list(map(lambda x: x % p, r)) for r in rows]
    if not rows:
        return [], []
    m = len(rows[0])
    out = []
    pivots = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(vi - f * vr) % p for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(rows, p) -> int:
    return len(rref(rows, p)[0])


def _val(x: int, q: int, t: int) -> int:
    """q-adic valuation of a residue in [0, q^t); the zero residue gets t."""
    if x == 0:
        return t
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v


def howell_form(rows, q: int, t: int):
    """Canonical Howell form of the Z_{q^t}-submodule spanned by rows.

    Returns a list of pivot rows as tuples; two generating sets span the same
    submodule iff their forms are equal.
    """
    N = q ** t
    work = [list(map(lambda x: x % N, r)) for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return []
    m = len(work[0])
    result = []   # (pivot_col, pivot_val, row)
    for col in range(m):
        cand = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not cand:
            work = rest
            continue
        v0 = min(_val(r[col], q, t) for r in cand)
        r0 = next(r for r in cand if _val(r[col], q, t) == v0)
        cand.remove(r0)
        unit = r0[col] // q ** v0
        inv = pow(unit, -1, N)
        r0 = [x * inv % N for x in r0]
        for r in cand:
            f = r[col] // q ** v0
            for i in range(m):
                r[i] = (r[i] - f * r0[i]) % N
        result.append((col, v0, r0))
        work = rest + [r for r in cand if any(r)]
        if v0 > 0:
            aux = [x * q ** (t - v0) % N for x in r0]
            if any(aux):
                work.append(aux)
    # canonical reduction of entries above each pivot
    for idx, (col, v, row) in enumerate(result):
        for jdx in range(idx):
            upper = result[jdx][2]
            f = upper[col] // q ** v
            if f:
                for i in range(len(upper)):
                    upper[i] = (upper[i] - f * row[i]) % N
    return [tuple(row) for (_, _, row) in result]


def howell_order(form, q: int, t: int) -> int:
    """Number of elements of the submodule with the given Howell form."""
    out = 1
    for row in form:
        col = next(i for i, x in enumerate(row) if x)
        out *= q ** (t - _val(row[col], q, t))
    return out


def howell_member(form, vec, q: int, t: int) -> bool:
    N = q ** t
    vec = [x % N for x in vec]
    for row in form:
        col = next(i for i, x in enumerate(row) if x)
        v = _val(row[col], q, t)
        if vec[col] % q ** v:
            return False
        f = vec[col] // q ** v
        for i in range(len(vec)):
            vec[i] = (vec[i] - f * row[i]) % N
    return not any(vec)


def module_intersection(rows_a, rows_b, q: int, t: int):
    """Generators of the intersection of two Z_{q^t}-submodules (Zassenhaus
    trick on the doubled matrix, valid with Howell reduction)."""
    if not rows_a or not rows_b:
        return []
    m = len(rows_a[0])
    stacked = [list(r) + list(r) for r in rows_a]
    stacked += [list(r) + [0] * m for r in rows_b]
    form = howell_form(stacked, q, t)
    out = [row[m:] for row in form if not any(row[:m])]
    return [tuple(r) for r in out if any(r)]


def crt_idempotents(parts: list[int], n: int) -> list[int]:
    """e_i = 1 mod parts[i], 0 mod n/parts[i], for pairwise coprime parts."""
    out = []
    for ni in parts:
        rest = n // ni
        out.append(rest * pow(rest, -1, ni) % n)
    return out
