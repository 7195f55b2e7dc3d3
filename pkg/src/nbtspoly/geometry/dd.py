"""Double description method for pointed polyhedral cones.

Works on integer data: the cone ``{y : A y >= 0}`` is given by integer rows
and its extreme rays come back as primitive integer vectors.  Zero sets are
kept as a boolean matrix so the combinatorial adjacency test vectorises.
Arithmetic is int64 while magnitudes provably fit, Python ints otherwise.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import primitive, rref

_INT64_SAFE = 2 ** 62
_PAIR_CHUNK = 4096


def _inverse_columns(rows: list[list[int]]) -> list[list[int]]:
    """Columns of ``rows^-1`` scaled to primitive integer vectors."""
    d = len(rows)
    aug = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(d)]
           for i, r in enumerate(rows)]
    red, _ = rref(aug)
    cols = []
    for j in range(d):
        col = [red[i][d + j] for i in range(d)]
        den = 1
        for v in col:
            den = den * v.denominator // math.gcd(den, v.denominator)
        cols.append(primitive([int(v * den) for v in col]))
    return cols


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def _narrow(a: np.ndarray) -> np.ndarray:
    """Back to int64 when every entry fits comfortably."""
    if a.dtype == object and _absmax(a) < 2 ** 31:
        return a.astype(np.int64)
    return a


def _matmul(rows: np.ndarray, rays: np.ndarray) -> np.ndarray:
    d = rows.shape[1]
    if rows.dtype != object and rays.dtype != object and _absmax(rows) * _absmax(rays) * d < _INT64_SAFE:
        return rows @ rays.T
    return rows.astype(object) @ rays.astype(object).T


def _primitive_rows(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return np.array([primitive([int(v) for v in r]) for r in a], dtype=object).reshape(a.shape)
    g = np.gcd.reduce(a, axis=1)
    g[g == 0] = 1
    return a // g[:, None]


def _combine(rp: np.ndarray, vp: np.ndarray, rn: np.ndarray, vn: np.ndarray) -> np.ndarray:
    """``vp * rn - vn * rp`` row by row, then made primitive."""
    big = max(_absmax(rp), _absmax(rn)) * max(_absmax(vp), _absmax(vn)) * 2
    if rp.dtype != object and rn.dtype != object and big < _INT64_SAFE:
        out = vp[:, None] * rn - vn[:, None] * rp
    else:
        out = (vp.astype(object)[:, None] * rn.astype(object)
               - vn.astype(object)[:, None] * rp.astype(object))
    return _narrow(_primitive_rows(out))


def extreme_rays(rows: Sequence[Sequence[int]], order: str = "maxcutoff") -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : rows @ y >= 0}``.

    ``order`` chooses which constraint is added next: ``"mincutoff"`` picks
    the remaining row that cuts off the fewest current rays, ``"maxcutoff"``
    the most, ``"index"`` takes rows in the order given.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        raise ValueError("cone needs at least one constraint")
    d = len(rows[0])
    _, pivots = rref([[Fraction(v) for v in r] for r in map(list, zip(*rows))])
    # pivots of the transpose are indices of independent rows
    if len(pivots) != d:
        raise ValueError("constraint rows do not have full column rank; cone is not pointed")
    nrows = len(rows)
    A = _narrow(np.array(rows, dtype=object))

    inv_cols = _inverse_columns([rows[i] for i in pivots])
    R = _narrow(np.array(inv_cols, dtype=object).reshape(d, d))
    Z = np.zeros((d, nrows), dtype=bool)
    for k in range(d):
        for i in pivots:
            if i != pivots[k]:
                Z[k, i] = True

    remaining = [i for i in range(nrows) if i not in set(pivots)]
    while remaining:
        if order in ("mincutoff", "maxcutoff"):
            vals = _matmul(A[remaining], R)
            cut = (vals < 0).sum(axis=1)
            pick = int(np.argmin(cut) if order == "mincutoff" else np.argmax(cut))
            idx = remaining.pop(pick)
            row_vals = vals[pick]
        elif order == "index":
            idx = remaining.pop(0)
            row_vals = _matmul(A[idx:idx + 1], R)[0]
        else:
            raise ValueError(f"unknown ordering {order!r}")
        plus = np.flatnonzero(row_vals > 0)
        minus = np.flatnonzero(row_vals < 0)
        zero = np.flatnonzero(row_vals == 0)
        Z[zero, idx] = True
        if minus.size == 0:
            continue

        Zi = Z.astype(np.int32)
        counts = Zi[plus] @ Zi[minus].T
        pi, ni = np.nonzero(counts >= d - 2)
        keep_p: list[np.ndarray] = []
        keep_n: list[np.ndarray] = []
        for start in range(0, pi.size, _PAIR_CHUNK):
            cp = plus[pi[start:start + _PAIR_CHUNK]]
            cn = minus[ni[start:start + _PAIR_CHUNK]]
            common = Z[cp] & Z[cn]
            size = common.sum(axis=1)
            covering = (Zi @ common.T.astype(np.int32)) == size[None, :]
            # p and n themselves always cover; any third ray means not adjacent
            adjacent = covering.sum(axis=0) == 2
            keep_p.append(cp[adjacent])
            keep_n.append(cn[adjacent])
        ap = np.concatenate(keep_p) if keep_p else np.zeros(0, dtype=np.int64)
        an = np.concatenate(keep_n) if keep_n else np.zeros(0, dtype=np.int64)

        survivors = np.concatenate([plus, zero])
        if ap.size:
            new_R = _combine(R[ap], row_vals[ap], R[an], row_vals[an])
            new_Z = Z[ap] & Z[an]
            new_Z[:, idx] = True
            if new_R.dtype != R.dtype:
                R = R.astype(object)
                new_R = new_R.astype(object)
            R = np.concatenate([R[survivors], new_R])
            Z = np.concatenate([Z[survivors], new_Z])
        else:
            R = R[survivors]
            Z = Z[survivors]
        R = _narrow(R)
    return [tuple(int(v) for v in r) for r in R]
