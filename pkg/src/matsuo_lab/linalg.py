"""Exact linear algebra over Q and Q(a).

Matrices are handled as sparse rows: a list of ``{column: value}`` dicts with
no explicit zeros.  Elimination is Gauss-Jordan with a cheap pivot heuristic
(short rows first, simplest entry within a row), which keeps rational-function
entries small on the structured matrices this package produces.

Characteristic polynomials of integer matrices are computed modulo a handful
of word-size primes (Hessenberg reduction) and lifted by the Chinese remainder
theorem, using a coefficient bound derived from row sums.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .scalars import RationalFunction

SparseRow = dict
SparseMatrix = list  # list[SparseRow]


class IrrationalSpectrum(ArithmeticError):
    """The characteristic polynomial does not split over Q."""

    def __init__(self, message: str, found: dict | None = None, charpoly=None):
        super().__init__(message)
        self.found = found or {}
        self.charpoly = charpoly


class SingularMatrix(ArithmeticError):
    pass


def weight(x) -> int:
    """Rough size of a scalar, used to prefer simple pivots."""
    if isinstance(x, RationalFunction):
        return 64 * (len(x.num) + len(x.den)) + max(abs(c) for c in x.num + x.den).bit_length()
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return int(x).bit_length()


def dense_to_rows(matrix: Sequence[Sequence]) -> SparseMatrix:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def rows_to_dense(rows: SparseMatrix, ncols: int, zero) -> list[list]:
    out = []
    for r in rows:
        dense = [zero] * ncols
        for j, v in r.items():
            dense[j] = v
        out.append(dense)
    return out


def transpose(rows: SparseMatrix, ncols: int) -> SparseMatrix:
    out: SparseMatrix = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            out[j][i] = v
    return out


def matvec(rows: SparseMatrix, vec: dict) -> dict:
    """Sparse matrix times sparse vector (both as dicts)."""
    out = {}
    for i, r in enumerate(rows):
        acc = None
        if len(r) < len(vec):
            for j, a in r.items():
                b = vec.get(j)
                if b is not None:
                    acc = a * b if acc is None else acc + a * b
        else:
            for j, b in vec.items():
                a = r.get(j)
                if a is not None:
                    acc = a * b if acc is None else acc + a * b
        if acc:
            out[i] = acc
    return out


class Echelon:
    """Incremental reduced row echelon form.

    Rows are added one at a time; each stored pivot row is normalised to have
    a 1 in its pivot column and zeros in every other pivot column.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        for c in [c for c in row if c in self.pivots]:
            f = row.pop(c)
            for j, v in self.pivots[c].items():
                if j == c:
                    continue
                w = row.get(j)
                nv = -f * v if w is None else w - f * v
                if nv:
                    row[j] = nv
                elif w is not None:
                    del row[j]
        return row

    def add(self, row: dict, limit: int | None = None) -> int | None:
        """Insert ``row``; return the new pivot column, or None if dependent.

        With ``limit`` set, only columns below it may become pivots (used for
        augmented systems whose tag columns must stay free).
        """
        row = self.reduce(row)
        cols = [j for j in row if limit is None or j < limit]
        if not cols:
            return None
        c = min(cols, key=lambda j: (weight(row[j]), j))
        inv = Fraction(1, row[c]) if isinstance(row[c], int) else 1 / row[c]
        row = {j: v * inv for j, v in row.items()}
        for pr in self.pivots.values():
            f = pr.get(c)
            if f is None:
                continue
            del pr[c]
            for j, v in row.items():
                if j == c:
                    continue
                w = pr.get(j)
                nv = -f * v if w is None else w - f * v
                if nv:
                    pr[j] = nv
                elif w is not None:
                    del pr[j]
        self.pivots[c] = row
        return c

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def kernel(self, ncols: int, one) -> list[dict]:
        """Basis of the null space, one vector per free column (ascending)."""
        basis = []
        for f in range(ncols):
            if f in self.pivots:
                continue
            v = {f: one}
            for c, r in self.pivots.items():
                x = r.get(f)
                if x is not None:
                    v[c] = -x
            basis.append(v)
        return basis


def _echelon(rows: Iterable[dict]) -> Echelon:
    ech = Echelon()
    for r in sorted((r for r in rows if r), key=len):
        ech.add(r)
    return ech


def kernel(rows: SparseMatrix, ncols: int, one) -> list[dict]:
    """Exact null space basis of the matrix given by sparse ``rows``."""
    return _echelon(rows).kernel(ncols, one)


def rank(rows: SparseMatrix) -> int:
    return _echelon(rows).rank


def span_rank(vectors: Iterable[dict]) -> int:
    return _echelon(vectors).rank


def in_span(vectors: Iterable[dict], v: dict) -> bool:
    return _echelon(vectors).contains(v)


class BasisSolver:
    """Coordinates with respect to a fixed basis of the ambient space.

    The inverse of the basis matrix is computed once by reducing the augmented
    system ``[B^T | I]``; afterwards each coordinate vector costs one sparse
    product.
    """

    def __init__(self, basis: Sequence[dict], dimension: int, one):
        if len(basis) != dimension:
            raise SingularMatrix(f"{len(basis)} vectors cannot span dimension {dimension}")
        ech = Echelon()
        for k, b in enumerate(basis):
            row = dict(b)
            row[dimension + k] = one
            if ech.add(row, limit=dimension) is None:
                raise SingularMatrix("basis vectors are linearly dependent")
        # pivot row for ambient column c reads e_c = sum_k m[c][k] * basis[k]
        self.left: dict[int, dict] = {
            c: {j - dimension: v for j, v in r.items() if j >= dimension}
            for c, r in ech.pivots.items()
        }
        self.dimension = dimension

    def coordinates(self, t: dict) -> dict:
        coords: dict = {}
        for c, v in t.items():
            for k, w in self.left[c].items():
                x = coords.get(k)
                nv = w * v if x is None else x + w * v
                if nv:
                    coords[k] = nv
                elif x is not None:
                    del coords[k]
        return coords


# ---------------------------------------------------------------------------
# integer characteristic polynomials


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic below 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(start: int):
    p = start - 1 if start % 2 == 0 else start - 2
    while p > 2:
        if _is_probable_prime(p):
            yield p
        p -= 2


def charpoly_mod(matrix: Sequence[Sequence[int]], p: int) -> list[int]:
    """Coefficients (low first, monic) of det(tI - M) modulo prime ``p``."""
    n = len(matrix)
    a = [[x % p for x in row] for row in matrix]
    # reduce to upper Hessenberg form by similarity
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if a[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            a[piv], a[m] = a[m], a[piv]
            for row in a:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(a[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = a[i][m - 1] * inv % p
            if not u:
                continue
            ri, rm = a[i], a[m]
            for j in range(n):
                ri[j] = (ri[j] - u * rm[j]) % p
            for row in a:
                row[m] = (row[m] + u * row[i]) % p
    # Hessenberg recurrence for the characteristic polynomial
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        # p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik * prod_{j=i+1}^{k} h_{j,j-1} * p_{i-1}
        prev = polys[k - 1]
        cur = [0] + prev  # t * p_{k-1}
        hkk = a[k - 1][k - 1]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hkk * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * a[i][i - 1] % p
            if not prod:
                break
            f = a[i - 1][k - 1] * prod % p
            if f:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = (cur[j] - f * c) % p
        polys.append(cur)
    return polys[n]


def charpoly_integer(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Exact characteristic polynomial det(tI - M) of an integer matrix."""
    n = len(matrix)
    if n == 0:
        return [1]
    r = max(sum(abs(x) for x in row) for row in matrix)
    bound = max(comb(n, k) * r**k for k in range(n + 1))
    modulus = 1
    result = [0] * (n + 1)
    for p in _primes_below(1 << 61):
        cp = charpoly_mod(matrix, p)
        if modulus == 1:
            result = cp
        else:
            # CRT combine
            inv = pow(modulus, -1, p)
            result = [
                x + modulus * (((y - x) * inv) % p) for x, y in zip(result, cp)
            ]
        modulus *= p
        if modulus > 2 * bound:
            break
    half = modulus // 2
    return [x - modulus if x > half else x for x in result]


def _synthetic_div(poly: list[int], r: int) -> tuple[list[int], int]:
    """Divide ``poly`` (low first) by (t - r); return quotient and remainder."""
    n = len(poly) - 1
    q = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = acc * r + poly[k]
        q[k - 1] = acc
    return q, acc * r + poly[0]


def integer_roots(poly: list[int], radius: int) -> dict[int, int]:
    """Integer roots with multiplicities of a monic integer polynomial."""
    roots: dict[int, int] = {}
    poly = list(poly)
    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
        roots[0] = roots.get(0, 0) + 1
    if len(poly) == 1:
        return roots
    c0 = poly[0]
    for r in range(-radius, radius + 1):
        if r == 0 or c0 % r:
            continue
        while len(poly) > 1:
            q, rem = _synthetic_div(poly, r)
            if rem:
                break
            poly = q
            roots[r] = roots.get(r, 0) + 1
        if len(poly) == 1:
            break
        c0 = poly[0]
    return roots


def rational_spectrum(matrix: Sequence[Sequence]) -> dict[Fraction, int]:
    """Eigenvalues with algebraic multiplicities of a rational square matrix.

    Raises :class:`IrrationalSpectrum` if the characteristic polynomial does not
    split into rational linear factors.
    """
    n = len(matrix)
    if n == 0:
        return {}
    d = 1
    for row in matrix:
        for x in row:
            den = Fraction(x).denominator
            d = d * den // gcd(d, den)
    scaled = [[int(Fraction(x) * d) for x in row] for row in matrix]
    cp = charpoly_integer(scaled)
    radius = max(sum(abs(x) for x in row) for row in scaled)
    roots = integer_roots(cp, radius)
    spec = {Fraction(r, d): m for r, m in sorted(roots.items())}
    if sum(spec.values()) != n:
        raise IrrationalSpectrum(
            f"characteristic polynomial has only {sum(spec.values())} of {n} roots in Q",
            found=spec,
            charpoly=cp,
        )
    return spec


def random_rational(rng: random.Random, height: int = 20) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))
