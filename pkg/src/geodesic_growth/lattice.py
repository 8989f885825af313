"""Integer lattice helpers: row reduction, rank and index of sublattices of Z^r."""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def lattice_basis(vectors: Iterable[Sequence[int]], rank: int) -> list[tuple[int, ...]]:
    """Echelon basis of the lattice spanned by ``vectors``.

    Plain Euclidean row reduction over the integers.  The result is upper
    triangular with positive pivots; every pivot column is strictly to the
    right of the previous one.
    """
    rows = [list(v) for v in vectors if any(v)]
    for v in rows:
        if len(v) != rank:
            raise ValueError(f"vector {v} does not have length {rank}")
    basis: list[tuple[int, ...]] = []
    col = 0
    while rows and col < rank:
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[col] // pivot[col]
                r = [a - q * b for a, b in zip(r, pivot)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(tuple(pivot))
        rows = rest
        col += 1
    return basis


def lattice_rank(vectors: Iterable[Sequence[int]], rank: int) -> int:
    return len(lattice_basis(vectors, rank))


def lattice_index(vectors: Iterable[Sequence[int]], rank: int) -> int | None:
    """Index of the spanned sublattice in Z^rank, or None when it is infinite."""
    basis = lattice_basis(vectors, rank)
    if len(basis) < rank:
        return None
    index = 1
    for i, row in enumerate(basis):
        index *= row[i]
    return index


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(r) for r in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]) if b else 0))
        for i in range(len(a))
    )


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def identity_matrix(r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
