"""Independent reference computations used by the tests.

None of these touch the engine's linear algebra: they enumerate, count or
evaluate closed formulas on plain integers.
"""

from __future__ import annotations

import itertools


def _raw(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m.rows]


def _matmul(a, b, nrows, inner, ncols, p):
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) % p for j in range(ncols)] for i in range(nrows)]


def hom_dim_by_enumeration(M, N, p: int) -> int:
    """log_p of the number of tuples of matrices commuting with every arrow.

    Only feasible for tiny modules over a small prime field.
    """
    A = M.algebra
    shapes = [(N.dims[v], M.dims[v]) for v in range(A.num_vertices)]
    sizes = [r * c for r, c in shapes]
    total = sum(sizes)
    arrows = [(A.vertex(a.source), A.vertex(a.target), _raw(M.maps[k]), _raw(N.maps[k]))
              for k, a in enumerate(A.quiver.arrows)]
    count = 0
    for entries in itertools.product(range(p), repeat=total):
        mats, pos = [], 0
        for (r, c), n in zip(shapes, sizes):
            flat = entries[pos:pos + n]
            pos += n
            mats.append([list(flat[i * c:(i + 1) * c]) for i in range(r)])
        ok = True
        for s, t, ma, na in arrows:
            # f_t M(a) = N(a) f_s
            lhs = _matmul(mats[t], ma, N.dims[t], M.dims[t], M.dims[s], p)
            rhs = _matmul(na, mats[s], N.dims[t], N.dims[s], M.dims[s], p)
            if lhs != rhs:
                ok = False
                break
        count += ok
    d = 0
    while count > 1:
        assert count % p == 0
        count //= p
        d += 1
    return d


def euler_form(dims_m, dims_n, arrows) -> int:
    """``<m, n> = sum_v m_v n_v - sum_{a: s->t} m_s n_t`` with vertices as 0-based indices."""
    return sum(a * b for a, b in zip(dims_m, dims_n)) - sum(dims_m[s] * dims_n[t] for s, t in arrows)


def count_paths(num_vertices: int, arrows, max_len: int, zero_paths=()) -> int:
    """Nonzero paths of length < max_len, where a path containing a listed subpath is zero.

    ``arrows`` are ``(name, s, t)`` with 0-based vertices; paths are written
    as tuples of names in traversal order.
    """
    zero = [tuple(z) for z in zero_paths]
    total = num_vertices
    frontier = [((a,), t) for a, s, t in arrows]
    length = 1
    while frontier and length < max_len:
        keep = [(p, t) for p, t in frontier
                if not any(p[i:i + len(z)] == z for z in zero for i in range(len(p) - len(z) + 1))]
        total += len(keep)
        frontier = [(p + (a,), t2) for p, t in keep for a, s, t2 in arrows if s == t]
        length += 1
    return total


def kernel_size_by_enumeration(rows: list[list[int]], ncols: int, p: int) -> int:
    count = 0
    for v in itertools.product(range(p), repeat=ncols):
        if all(sum(r[j] * v[j] for j in range(ncols)) % p == 0 for r in rows):
            count += 1
    return count
