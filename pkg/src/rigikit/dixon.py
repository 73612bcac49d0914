"""Dixon-Schneider computation of exact character tables.

Works entirely from a fully enumerated group: class multiplication
constants are counted directly, common eigenspaces of the class matrices
are split over a prime l = 1 (mod exponent) chosen larger than twice the
square root of the group order, and values lift to exact cyclotomics via
root-of-unity multiplicities recovered by a discrete Fourier inversion
mod l. Output is in canonical table layout, so independently produced
tables of the same group compare equal.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Dict, List, Tuple

from .chartable import CharacterTable, build_table_mapped
from .cyclo import from_terms, prime_factors
from .smallgrp import ConjugacyClass, FiniteGroup, conjugacy_classes

PRIME_SEARCH_BOUND = 1_000_000


class DixonError(RuntimeError):
    pass


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def dixon_parameters(order: int, exponent: int) -> Tuple[int, int]:
    """Smallest prime l = 1 (mod exponent), l > 2*ceil(sqrt(order)), and an
    element of multiplicative order = exponent mod l."""
    floor_bound = 2 * isqrt(order - 1) + 2 if order > 1 else 3
    ell = exponent + 1
    while ell <= floor_bound or not _is_prime(ell):
        ell += exponent
        if ell > PRIME_SEARCH_BOUND:
            raise DixonError(
                "no prime l = 1 mod %d below %d" % (exponent, PRIME_SEARCH_BOUND))
    omega = None
    factors = prime_factors(exponent)
    for a in range(2, ell):
        w = pow(a, (ell - 1) // exponent, ell)
        if w != 1 and all(pow(w, exponent // q, ell) != 1 for q in factors):
            omega = w
            break
    if omega is None:  # pragma: no cover
        raise DixonError("no element of order %d mod %d" % (exponent, ell))
    return ell, omega


def _ordered_classes(group: FiniteGroup):
    classes = conjugacy_classes(group)
    order = sorted(range(len(classes)),
                   key=lambda i: (classes[i].order != 1, classes[i].order,
                                  classes[i].size, classes[i].rep.key))
    return [classes[i] for i in order]


def class_constants(group: FiniteGroup) -> Dict[Tuple[int, int, int], int]:
    """Tensor a[i,j,k] = #{(x,y) in C_i x C_j : x*y = z_k} for fixed reps z_k,
    by direct counting."""
    if not group.elements:
        raise ValueError("group is not enumerated")
    classes = _ordered_classes(group)
    k = len(classes)
    pos_to_class = [0] * len(group.elements)
    for cno, c in enumerate(classes):
        for pos in c.indices:
            pos_to_class[pos] = cno
    inv_pos = [group.index[x.inverse().key] for x in group.elements]
    tensor: Dict[Tuple[int, int, int], int] = {}
    for kk, ck in enumerate(classes):
        zk = ck.rep
        for pos, x in enumerate(group.elements):
            i = pos_to_class[pos]
            y = group.elements[inv_pos[pos]] * zk
            j = pos_to_class[group.index[y.key]]
            key = (i, j, kk)
            tensor[key] = tensor.get(key, 0) + 1
    return tensor


def _charpoly_mod(a: List[List[int]], ell: int) -> List[int]:
    """Characteristic polynomial of a (mod ell) via determinant interpolation."""
    d = len(a)
    xs = list(range(d + 1))
    ys = []
    for x in xs:
        m = [[(x if i == j else 0) - a[i][j] for j in range(d)] for i in range(d)]
        ys.append(_det_mod(m, ell))
    # Lagrange interpolation to coefficient form
    coeffs = [0] * (d + 1)
    for i, xi in enumerate(xs):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        num = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = _polmul(num, [(-xj) % ell, 1], ell)
            denom = denom * (xi - xj) % ell
        scale = ys[i] * pow(denom, -1, ell) % ell
        for t, c in enumerate(num):
            coeffs[t] = (coeffs[t] + scale * c) % ell
    return coeffs


def _det_mod(m: List[List[int]], ell: int) -> int:
    d = len(m)
    a = [[v % ell for v in row] for row in m]
    det = 1
    for col in range(d):
        sel = None
        for r in range(col, d):
            if a[r][col]:
                sel = r
                break
        if sel is None:
            return 0
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            det = -det
        det = det * a[col][col] % ell
        inv = pow(a[col][col], -1, ell)
        for r in range(col + 1, d):
            if a[r][col]:
                f = a[r][col] * inv % ell
                a[r] = [(x - f * y) % ell for x, y in zip(a[r], a[col])]
    return det % ell


def _polmul(a, b, ell):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % ell
    return out


def _poldivmod(a, b, ell):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = pow(lb, -1, ell)
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % ell
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % ell
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _polgcd(a, b, ell):
    a, b = list(a), list(b)
    while len(b) > 1 or (len(b) == 1 and b[0]):
        _, r = _poldivmod(a, b, ell)
        a, b = b, r
    inv = pow(a[-1], -1, ell)
    return [c * inv % ell for c in a]


def _polpow_mod(base, e, f, ell):
    result = [1]
    b = list(base)
    _, b = _poldivmod(b, f, ell)
    while e:
        if e & 1:
            result = _poldivmod(_polmul(result, b, ell), f, ell)[1]
        e >>= 1
        if e:
            b = _poldivmod(_polmul(b, b, ell), f, ell)[1]
    return result


def _roots_mod(f: List[int], ell: int) -> List[int]:
    """Roots in F_ell of a nonzero polynomial, deterministically."""
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    inv = pow(f[-1], -1, ell)
    f = [c * inv % ell for c in f]
    xq = _polpow_mod([0, 1], ell, f, ell)  # x^ell mod f
    sub = list(xq) + [0] * max(0, 2 - len(xq))
    sub[1] = (sub[1] - 1) % ell
    while len(sub) > 1 and sub[-1] == 0:
        sub.pop()
    if len(sub) == 1 and sub[0] == 0:
        g = f  # f divides x^ell - x: it splits into distinct linear factors
    else:
        g = _polgcd(f, sub, ell)
    roots: List[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        deg = len(h) - 1
        if deg == 0:
            continue
        if deg == 1:
            roots.append((-h[0]) * pow(h[1], -1, ell) % ell)
            continue
        for shift in range(ell):
            # gcd with (x + shift)^((ell-1)/2) - 1 splits the linear factors
            t = _polpow_mod([shift, 1], (ell - 1) // 2, h, ell)
            t0 = list(t)
            t0[0] = (t0[0] - 1) % ell
            d = _polgcd(h, t0, ell) if any(t0) else [1]
            if 0 < len(d) - 1 < deg:
                stack.append(d)
                stack.append(_poldivmod(h, d, ell)[0])
                break
        else:  # pragma: no cover
            raise DixonError("failed to split polynomial of degree %d" % deg)
    return sorted(roots)


def _nullspace_mod(a: List[List[int]], ell: int) -> List[List[int]]:
    rows = len(a)
    cols = len(a[0])
    m = [[v % ell for v in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for rr in range(r, rows):
            if m[rr][c]:
                sel = rr
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], -1, ell)
        m[r] = [v * inv % ell for v in m[r]]
        for rr in range(rows):
            if rr != r and m[rr][c]:
                f = m[rr][c]
                m[rr] = [(x - f * y) % ell for x, y in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-m[r][fc]) % ell
        basis.append(v)
    return basis


def _tonelli_sqrt(a: int, ell: int) -> int:
    a %= ell
    if a == 0:
        return 0
    if pow(a, (ell - 1) // 2, ell) != 1:
        raise DixonError("no square root of %d mod %d" % (a, ell))
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (ell - 1) // 2, ell) != ell - 1:
        z += 1
    m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        m, c = i, b * b % ell
        t, r = t * c % ell, r * b % ell
    return r


def character_table_dixon(group: FiniteGroup) -> CharacterTable:
    """Exact character table of a fully enumerated group."""
    return character_table_dixon_mapped(group)[0]


def character_table_dixon_mapped(group: FiniteGroup):
    """(table, class map): class map sends each table class index to the
    corresponding enumerated conjugacy class of the group."""
    if not group.elements:
        raise ValueError("group is not enumerated")
    classes = _ordered_classes(group)
    k = len(classes)
    order = group.order
    exponent = 1
    for c in classes:
        exponent = exponent // gcd(exponent, c.order) * c.order
    ell, omega = dixon_parameters(order, exponent)

    pos_to_class = [0] * len(group.elements)
    for cno, c in enumerate(classes):
        for pos in c.indices:
            pos_to_class[pos] = cno
    inv_pos = [group.index[x.inverse().key] for x in group.elements]

    # class matrices acting on central-character vectors u (u_j = omega(C_j)):
    # sum_t a[i,j,t] u_t = omega_i * u_j, so (M_i)[j][t] = a[i, j, t]
    mats = [[[0] * k for _ in range(k)] for _ in range(k)]
    for t in range(k):
        zt = classes[t].rep
        for pos, x in enumerate(group.elements):
            i = pos_to_class[pos]
            y = group.elements[inv_pos[pos]] * zt
            j = pos_to_class[group.index[y.key]]
            mats[i][j][t] += 1

    inverse_class = [pos_to_class[inv_pos[group.index[c.rep.key]]] for c in classes]

    # split common eigenspaces, walking class matrices in class order
    subspaces: List[List[List[int]]] = [
        [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    ]
    for i in range(1, k):
        if all(len(s) == 1 for s in subspaces):
            break
        mat = mats[i]
        new_spaces: List[List[List[int]]] = []
        for basis in subspaces:
            d = len(basis)
            if d == 1:
                new_spaces.append(basis)
                continue
            # restriction A of M_i to the invariant subspace: M b_j = sum A[t][j] b_t
            images = [
                [sum(mat[r][c] * vec[c] for c in range(k)) % ell for r in range(k)]
                for vec in basis
            ]
            a_restr = _solve_in_basis(basis, images, ell)
            eigs = _roots_mod(_charpoly_mod(a_restr, ell), ell)
            if len(eigs) == 1:
                new_spaces.append(basis)
                continue
            found = 0
            for lam in eigs:
                shifted = [[(a_restr[r][c] - (lam if r == c else 0)) % ell
                            for c in range(d)] for r in range(d)]
                eig_basis = []
                for nv in _nullspace_mod(shifted, ell):
                    vec = [sum(nv[j] * basis[j][r] for j in range(d)) % ell
                           for r in range(k)]
                    eig_basis.append(vec)
                found += len(eig_basis)
                new_spaces.append(eig_basis)
            if found != d:
                raise DixonError("class matrix %d is not semisimple mod %d" % (i, ell))
        subspaces = new_spaces
    if sum(len(s) for s in subspaces) != k or any(len(s) != 1 for s in subspaces):
        raise DixonError("class matrices failed to split eigenspaces")

    # normalize eigenvectors at the identity class (index 0)
    thetas = []
    for basis in subspaces:
        v = basis[0]
        if v[0] % ell == 0:
            raise DixonError("eigenvector vanishes at the identity class")
        inv0 = pow(v[0], -1, ell)
        thetas.append([x * inv0 % ell for x in v])

    sizes = [c.size for c in classes]
    size_inv = [pow(s, -1, ell) for s in sizes]
    degrees = []
    for v in thetas:
        t = sum(v[j] * v[inverse_class[j]] % ell * size_inv[j] for j in range(k)) % ell
        if t == 0:
            raise DixonError("degenerate norm in degree recovery")
        dsq = order % ell * pow(t, -1, ell) % ell
        root = _tonelli_sqrt(dsq, ell)
        deg = min(root, ell - root)
        if deg == 0 or order % deg != 0:
            raise DixonError("recovered degree %d is not plausible" % deg)
        degrees.append(deg)

    # character values mod ell, then exact lifting via DFT multiplicities
    power_class = []
    for c in classes:
        row = [0] * exponent
        x = group.elements[group.index[c.rep.key]]
        acc = None
        for e in range(exponent):
            if e == 0:
                row[e] = 0  # identity class is index 0 by construction
                acc = None
            else:
                acc = x if acc is None else acc * x
                row[e] = pos_to_class[group.index[acc.key]]
        power_class.append(row)

    omega_pows = [1] * exponent
    for e in range(1, exponent):
        omega_pows[e] = omega_pows[e - 1] * omega % ell
    inv_exp = pow(exponent, -1, ell)

    rows = []
    for chi_no, v in enumerate(thetas):
        deg = degrees[chi_no]
        val_mod = [v[j] * deg % ell * size_inv[j] % ell for j in range(k)]
        row = []
        for j in range(k):
            if j == 0:
                row.append(from_terms(1, {0: deg}))
                continue
            m_ord = classes[j].order
            terms = {}
            for e in range(exponent):
                acc = 0
                for t in range(exponent):
                    cls = power_class[j][t]
                    acc += val_mod[cls] * omega_pows[(-t * e) % exponent]
                m_e = acc % ell * inv_exp % ell
                if m_e:
                    if m_e > deg:
                        raise DixonError("multiplicity %d exceeds degree %d" % (m_e, deg))
                    terms[e] = m_e
            row.append(from_terms(exponent, terms))
        rows.append(tuple(row))

    exp_primes = prime_factors(exponent)
    class_infos = []
    for j, c in enumerate(classes):
        pm = {p: power_class[j][p % exponent] for p in exp_primes}
        class_infos.append((c.size, c.order, pm))

    table, class_order, _row_order = build_table_mapped(
        name=_group_label(group),
        order=order,
        exponent=exponent,
        class_infos=class_infos,
        rows=rows,
    )
    class_map = {new: classes[old] for new, old in enumerate(class_order)}
    return table, class_map


def _solve_in_basis(basis, images, ell):
    """Coordinates of each image in the span of basis (basis independent)."""
    k = len(basis[0])
    d = len(basis)
    # row-reduce [basis columns | images columns]
    cols = d + len(images)
    m = [[0] * cols for _ in range(k)]
    for j, vec in enumerate(basis):
        for r in range(k):
            m[r][j] = vec[r] % ell
    for j, vec in enumerate(images):
        for r in range(k):
            m[r][d + j] = vec[r] % ell
    r = 0
    pivots = []
    for c in range(d):
        sel = None
        for rr in range(r, k):
            if m[rr][c]:
                sel = rr
                break
        if sel is None:
            raise DixonError("basis is dependent")
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], -1, ell)
        m[r] = [v * inv % ell for v in m[r]]
        for rr in range(k):
            if rr != r and m[rr][c]:
                f = m[rr][c]
                m[rr] = [(x - f * y) % ell for x, y in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
    # A[t][j]: coordinate of image j on basis vector t
    a = [[m[t][d + j] for j in range(len(images))] for t in range(d)]
    # consistency: rows beyond rank must be zero on image columns
    for rr in range(r, k):
        if any(m[rr][d:]):
            raise DixonError("subspace is not invariant")
    return a


def _group_label(group: FiniteGroup) -> str:
    return "%s(%d,%d)" % (group.kind, group.n, group.p)
