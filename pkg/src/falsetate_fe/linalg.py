"""Dense linear algebra over Q_p(zeta_{p^m}).

Matrices are lists of rows of CycElem.  Elimination always pivots on an
entry of minimal valuation, so the only precision lost is the valuation of
the pivots.
"""

from __future__ import annotations

from .errors import PrecisionExhausted
from .padic import DEFAULT_PRECISION, CycElem, PadicScalar

Matrix = list[list[CycElem]]


def as_cyc(x, p: int, level: int = 0, precision: int = DEFAULT_PRECISION) -> CycElem:
    if isinstance(x, CycElem):
        return x
    if isinstance(x, PadicScalar):
        return CycElem.from_scalar(x, level)
    return CycElem.from_rational(x, p, level, precision)


def identity(d: int, p: int, level: int = 0, precision: int = DEFAULT_PRECISION) -> Matrix:
    one = CycElem.one(p, level, precision)
    zero = CycElem.zero(p, level, precision)
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def zeros(rows: int, cols: int, p: int, level: int = 0,
          precision: int = DEFAULT_PRECISION) -> Matrix:
    zero = CycElem.zero(p, level, precision)
    return [[zero] * cols for _ in range(rows)]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = transpose(B)
    out = []
    for row in A:
        new_row = []
        for col in cols:
            acc = None
            for a, b in zip(row, col):
                if a.is_zero() or b.is_zero():
                    continue
                acc = a * b if acc is None else acc + a * b
            new_row.append(acc if acc is not None else row[0] * 0)
        out.append(new_row)
    return out


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; entry ((i, k), (j, l)) is A[i][j] * B[k][l]."""
    rb, cb = len(B), len(B[0])
    out = []
    for i in range(len(A)):
        for k in range(rb):
            out.append([A[i][j] * B[k][l] for j in range(len(A[0])) for l in range(cb)])
    return out


def trace(A: Matrix) -> CycElem:
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _pick_pivot(A: Matrix, col: int, start: int):
    best, best_v = None, None
    for i in range(start, len(A)):
        x = A[i][col]
        if x.is_zero():
            continue
        v = x.pi_adic_valuation()
        if best_v is None or v < best_v:
            best, best_v = i, v
            if v <= 0:
                break
    return best, best_v


def _check_pivot(x: CycElem, v):
    # a pivot whose valuation eats most of its precision cannot be told from 0
    if v >= x.abs_precision / 2:
        raise PrecisionExhausted(
            f"pivot of valuation {v} known only to O(p^{x.abs_precision})")


def components(A: Matrix) -> list[list[int]]:
    """Index sets of the diagonal blocks of A up to a simultaneous permutation."""
    n = len(A)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if i != j and not A[i][j].is_zero():
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _submatrix(A: Matrix, idx: list[int]) -> Matrix:
    return [[A[i][j] for j in idx] for i in idx]


def det(A: Matrix) -> CycElem:
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    blocks = components(A)
    if len(blocks) > 1:
        result = None
        for idx in blocks:
            d = _det_dense(_submatrix(A, idx))
            result = d if result is None else result * d
        return result
    return _det_dense(A)


def _det_dense(A: Matrix) -> CycElem:
    n = len(A)
    M = [list(row) for row in A]
    sign = 1
    result = None
    for k in range(n):
        i, v = _pick_pivot(M, k, k)
        if i is None:
            zero = M[k][k]
            return zero - zero
        _check_pivot(M[i][k], v)
        if i != k:
            M[k], M[i] = M[i], M[k]
            sign = -sign
        piv = M[k][k]
        result = piv if result is None else result * piv
        if k == n - 1:
            break
        inv = piv.inverse()
        row_k = M[k]
        for r in range(k + 1, n):
            x = M[r][k]
            if x.is_zero():
                continue
            f = x * inv
            row_r = M[r]
            for c in range(k + 1, n):
                y = row_k[c]
                if not y.is_zero():
                    row_r[c] = row_r[c] - f * y
    return result if sign > 0 else -result


def rank(A: Matrix) -> int:
    if not A:
        return 0
    M = [list(row) for row in A]
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        i, v = _pick_pivot(M, c, r)
        if i is None:
            continue
        _check_pivot(M[i][c], v)
        M[r], M[i] = M[i], M[r]
        inv = M[r][c].inverse()
        for j in range(r + 1, rows):
            x = M[j][c]
            if x.is_zero():
                continue
            f = x * inv
            for k in range(c + 1, cols):
                M[j][k] = M[j][k] - f * M[r][k]
        r += 1
        if r == rows:
            break
    return r


def kernel_dim(A: Matrix) -> int:
    return len(A[0]) - rank(A)


# polynomials in one variable: coefficient lists, lowest degree first

def poly_mul(a: list[CycElem], b: list[CycElem]) -> list[CycElem]:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def poly_eval(a: list[CycElem], x) -> CycElem:
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def poly_divide_linear(a: list[CycElem], root) -> list[CycElem]:
    """Quotient of a(y) by (y - root); the remainder is discarded."""
    n = len(a) - 1
    q = [None] * n
    carry = a[n]
    for i in range(n - 1, -1, -1):
        q[i] = carry
        carry = a[i] + carry * root
    return q


def charpoly(A: Matrix) -> list[CycElem]:
    """det(y I - A), lowest degree first."""
    blocks = components(A)
    if len(blocks) > 1:
        result = None
        for idx in blocks:
            c = _charpoly_dense(_submatrix(A, idx))
            result = c if result is None else poly_mul(result, c)
        return result
    return _charpoly_dense(A)


def _charpoly_dense(A: Matrix) -> list[CycElem]:
    # Hessenberg reduction, then the usual three-term recurrence
    n = len(A)
    H = [list(row) for row in A]
    for m in range(1, n - 1):
        i, v = _pick_pivot(H, m - 1, m)
        if i is None:
            continue
        _check_pivot(H[i][m - 1], v)
        if i != m:
            H[m], H[i] = H[i], H[m]
            for row in H:
                row[m], row[i] = row[i], row[m]
        inv = H[m][m - 1].inverse()
        for j in range(m + 1, n):
            x = H[j][m - 1]
            if x.is_zero():
                continue
            u = x * inv
            for c in range(n):
                if not H[m][c].is_zero():
                    H[j][c] = H[j][c] - u * H[m][c]
            for r in range(n):
                if not H[r][j].is_zero():
                    H[r][m] = H[r][m] + u * H[r][j]
    one = H[0][0] ** 0
    polys = [[one]]
    for k in range(n):
        # p_{k+1} = (y - h_kk) p_k - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_i
        prev = polys[-1]
        nxt = [-(H[k][k] * c) for c in prev] + [one * 0]
        for idx, c in enumerate(prev):
            nxt[idx + 1] = nxt[idx + 1] + c
        t = one
        for i in range(k - 1, -1, -1):
            t = t * H[i + 1][i]
            if t.is_zero():
                break
            f = H[i][k] * t
            if f.is_zero():
                continue
            for idx, c in enumerate(polys[i]):
                nxt[idx] = nxt[idx] - f * c
        polys.append(nxt)
    return polys[-1]
