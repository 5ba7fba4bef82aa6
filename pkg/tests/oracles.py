"""Independent brute-force oracles for the test suite.

Everything here works on plain lists of numbers (Fractions or floats) via
Laplace expansion and exhaustive enumeration, deliberately sharing no code
with the package's elimination/compound machinery.
"""

from fractions import Fraction
from itertools import combinations, product


def naive_matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def naive_matpow(a, k):
    n = len(a)
    out = [[Fraction(int(i == j)) if isinstance(a[0][0], Fraction) else float(i == j)
            for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = naive_matmul(out, a)
    return out


def naive_det(m):
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * naive_det(sub)
    return total


def naive_minor(m, rows, cols):
    """rows/cols are 1-based index tuples."""
    return naive_det([[m[r - 1][c - 1] for c in cols] for r in rows])


def naive_compound(m, j):
    n = len(m)
    subs = list(combinations(range(1, n + 1), j))
    return [[naive_minor(m, rs, cs) for cs in subs] for rs in subs]


def all_minors(m):
    """(order, rows, cols, value) for every square minor."""
    n = len(m)
    out = []
    for j in range(1, n + 1):
        for rs in combinations(range(1, n + 1), j):
            for cs in combinations(range(1, n + 1), j):
                out.append((j, rs, cs, naive_minor(m, rs, cs)))
    return out


def naive_is_tp(m):
    return all(v >= 0 for _, _, _, v in all_minors(m))


def naive_is_stp(m):
    return all(v > 0 for _, _, _, v in all_minors(m))


def naive_is_p(m):
    n = len(m)
    for j in range(1, n + 1):
        for s in combinations(range(1, n + 1), j):
            if not naive_minor(m, s, s) > 0:
                return False
    return True


def naive_sjs_partitions(m):
    """All +1 sides J (with 1 in J) making m strictly J-sign-symmetric."""
    n = len(m)
    found = []
    for bits in product((1, -1), repeat=n - 1):
        s = (1,) + bits
        if all(s[i] * s[j] * m[i][j] > 0 for i in range(n) for j in range(n)):
            found.append(frozenset(i + 1 for i in range(n) if s[i] == 1))
    return found


def exhaustive_s_plus(coords):
    """Maximum sign changes over every +/-1 assignment to zero coordinates."""
    slots = [(1, -1) if c == 0 else ((1,) if c > 0 else (-1,)) for c in coords]
    best = 0
    for assignment in product(*slots):
        changes = sum(1 for u, v in zip(assignment, assignment[1:]) if u != v)
        best = max(best, changes)
    return best


def char_poly_coeffs_3x3(m):
    """p(x) = x^3 - c2 x^2 + c1 x - c0 for a 3x3 matrix."""
    c2 = m[0][0] + m[1][1] + m[2][2]
    c1 = (
        naive_minor(m, (1, 2), (1, 2))
        + naive_minor(m, (1, 3), (1, 3))
        + naive_minor(m, (2, 3), (2, 3))
    )
    c0 = naive_det(m)
    return c2, c1, c0


def largest_root_3x3(m, iterations=200):
    """Largest real root of the characteristic polynomial by bisection."""
    c2, c1, c0 = (float(c) for c in char_poly_coeffs_3x3(m))

    def p(x):
        return x ** 3 - c2 * x ** 2 + c1 * x - c0

    hi = 1.0 + max(sum(abs(float(v)) for v in row) for row in m)
    lo = -hi
    # p -> +inf, so walk down from hi to bracket the last sign change.
    assert p(hi) > 0
    step = (hi - lo) / 4096.0
    x = hi
    while p(x) > 0 and x > lo:
        x -= step
    lo = x
    hi = x + step
    for _ in range(iterations):
        mid = (lo + hi) / 2.0
        if p(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0
