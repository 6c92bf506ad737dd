"""Small exact linear algebra over a tower field (Gaussian elimination)."""

from __future__ import annotations

from .fields import Tower, TowerElement

Matrix = tuple[tuple[TowerElement, ...], ...]


def identity(tower: Tower, n: int) -> Matrix:
    return tuple(
        tuple(tower.one if i == j else tower.zero for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for arow in a:
        row = []
        for j in range(len(b[0])):
            acc = arow[0] * b[0][j]
            for k in range(1, len(b)):
                acc = acc + arow[k] * b[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def rank(rows: list[list[TowerElement]]) -> int:
    """Row rank, destructive on a copied matrix."""
    if not rows:
        return 0
    m = [list(r) for r in rows]
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def inverse(tower: Tower, mat: Matrix) -> Matrix | None:
    """Inverse via Gauss-Jordan, or None when singular."""
    n = len(mat)
    aug = [list(row) + list(idrow) for row, idrow in zip(mat, identity(tower, n))]
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if aug[i][col]), None)
        if pivot is None:
            return None
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in aug)


def determinant_nonzero(tower: Tower, mat: Matrix) -> bool:
    return inverse(tower, mat) is not None
