"""Concrete finite matrix groups over prime fields.

Elements are immutable matrices over GF(p), optionally taken modulo scalars
(projective groups scale so the first nonzero entry is 1, which makes the
byte encoding a canonical identity). Closure and conjugation orbits run as
breadth-first searches with deterministic enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple


class GroupTooLargeError(RuntimeError):
    def __init__(self, what: str, cap: int):
        super().__init__("%s exceeded the cap of %d elements" % (what, cap))
        self.cap = cap


DEFAULT_CLOSURE_CAP = 2_000_000
DEFAULT_ORBIT_CAP = 1_000_000


class GroupElement:
    """An n x n matrix over GF(p); canonical under scalars when projective."""

    __slots__ = ("n", "p", "entries", "projective", "key")

    def __init__(self, entries: Tuple[Tuple[int, ...], ...], p: int,
                 projective: bool = False, _canonical: bool = False):
        n = len(entries)
        if not _canonical:
            entries = tuple(tuple(v % p for v in row) for row in entries)
            if projective:
                entries = _projective_scale(entries, p)
        self.n = n
        self.p = p
        self.entries = entries
        self.projective = projective
        self.key = bytes(v for row in entries for v in row) if p < 256 else \
            tuple(v for row in entries for v in row)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        p = self.p
        bt = tuple(zip(*other.entries))
        prod = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt)
            for row in self.entries
        )
        if self.projective:
            prod = _projective_scale(prod, p)
        return GroupElement(prod, p, self.projective, _canonical=True)

    def inverse(self) -> "GroupElement":
        inv = _mat_inv(self.entries, self.p)
        if self.projective:
            inv = _projective_scale(inv, self.p)
        return GroupElement(inv, self.p, self.projective, _canonical=True)

    def is_identity(self) -> bool:
        return self == identity(self.n, self.p, self.projective)

    def order(self) -> int:
        e = identity(self.n, self.p, self.projective)
        x = self
        k = 1
        while x != e:
            x = x * self
            k += 1
        return k

    def det(self) -> int:
        return _mat_det(self.entries, self.p)

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and self.key == other.key
                and self.p == other.p and self.projective == other.projective)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return "GroupElement[%s | GF(%d)%s]" % (
            rows, self.p, " mod scalars" if self.projective else "")


def _projective_scale(entries, p):
    for row in entries:
        for v in row:
            if v:
                if v == 1:
                    return entries
                inv = pow(v, -1, p)
                return tuple(tuple(x * inv % p for x in row2) for row2 in entries)
    return entries


def identity(n: int, p: int, projective: bool = False) -> GroupElement:
    ent = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return GroupElement(ent, p, projective, _canonical=True)


def make_element(rows: Sequence[Sequence[int]], p: int,
                 projective: bool = False) -> GroupElement:
    return GroupElement(tuple(tuple(r) for r in rows), p, projective)


def _mat_inv(entries, p):
    n = len(entries)
    a = [list(row) for row in entries]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        sel = None
        for r in range(col, n):
            if a[r][col] % p:
                sel = r
                break
        if sel is None:
            raise ZeroDivisionError("matrix is singular mod %d" % p)
        a[col], a[sel] = a[sel], a[col]
        inv[col], inv[sel] = inv[sel], inv[col]
        f = pow(a[col][col], -1, p)
        a[col] = [v * f % p for v in a[col]]
        inv[col] = [v * f % p for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
                inv[r] = [(x - f * y) % p for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def _mat_det(entries, p):
    n = len(entries)
    a = [list(row) for row in entries]
    det = 1
    for col in range(n):
        sel = None
        for r in range(col, n):
            if a[r][col] % p:
                sel = r
                break
        if sel is None:
            return 0
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            det = -det
        det = det * a[col][col] % p
        f = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            if a[r][col]:
                g = a[r][col] * f % p
                a[r] = [(x - g * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def rank_mod_p(entries, p) -> int:
    a = [list(row) for row in entries]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    rank = 0
    for col in range(n_cols):
        sel = None
        for r in range(rank, n_rows):
            if a[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        a[rank], a[sel] = a[sel], a[rank]
        f = pow(a[rank][col], -1, p)
        a[rank] = [v * f % p for v in a[rank]]
        for r in range(n_rows):
            if r != rank and a[r][col]:
                g = a[r][col]
                a[r] = [(x - g * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# groups


@dataclass
class ConjugacyClass:
    rep: GroupElement
    size: int
    order: int
    indices: Tuple[int, ...]  # element indices, ascending


@dataclass
class FiniteGroup:
    kind: str  # SL | GL | SO | PSL | PGL
    n: int
    p: int
    generators: Tuple[GroupElement, ...]
    elements: List[GroupElement] = field(default_factory=list)
    index: Dict = field(default_factory=dict)  # canonical key -> position
    classes: Optional[List[ConjugacyClass]] = None
    class_of: Optional[List[int]] = None  # element position -> class number

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_class(self, x: GroupElement) -> int:
        if self.class_of is None:
            raise ValueError("conjugacy classes not computed")
        return self.class_of[self.index[x.key]]

    def exponent(self) -> int:
        if self.classes is None:
            conjugacy_classes(self)
        e = 1
        for c in self.classes:
            e = e // gcd(e, c.order) * c.order
        return e


def closure(generators: Sequence[GroupElement], cap: int = DEFAULT_CLOSURE_CAP,
            kind: str = "GL") -> FiniteGroup:
    """Breadth-first product closure of the generators."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n, p, projective = gens[0].n, gens[0].p, gens[0].projective
    for g in gens:
        if (g.n, g.p, g.projective) != (n, p, projective):
            raise ValueError("generators live in different matrix groups")
    e = identity(n, p, projective)
    elements = [e]
    index = {e.key: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.key not in index:
                    index[y.key] = len(elements)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupTooLargeError("group closure", cap)
        frontier = nxt
    return FiniteGroup(kind=kind, n=n, p=p, generators=tuple(gens),
                       elements=elements, index=index)


def conjugacy_classes(group: FiniteGroup) -> List[ConjugacyClass]:
    """Partition the enumerated group; representatives are enumeration-least."""
    if group.classes is not None:
        return group.classes
    if not group.elements:
        raise ValueError("group has no enumerated elements")
    gens = [(g, g.inverse()) for g in group.generators]
    n_el = len(group.elements)
    class_of = [-1] * n_el
    classes: List[ConjugacyClass] = []
    for start in range(n_el):
        if class_of[start] >= 0:
            continue
        cls_no = len(classes)
        rep = group.elements[start]
        member_idx = [start]
        class_of[start] = cls_no
        frontier = [rep]
        while frontier:
            x = frontier.pop()
            for g, ginv in gens:
                y = g * x * ginv
                pos = group.index[y.key]
                if class_of[pos] < 0:
                    class_of[pos] = cls_no
                    member_idx.append(pos)
                    frontier.append(group.elements[pos])
        member_idx.sort()
        classes.append(ConjugacyClass(
            rep=rep, size=len(member_idx), order=rep.order(),
            indices=tuple(member_idx)))
    group.classes = classes
    group.class_of = class_of
    return classes


def class_orbit(rep: GroupElement, generators: Sequence[GroupElement],
                cap: int = DEFAULT_ORBIT_CAP) -> List[GroupElement]:
    """Conjugation orbit of rep under the group the generators generate,
    without enumerating that group."""
    gens = [(g, g.inverse()) for g in generators]
    orbit = [rep]
    seen = {rep.key}
    frontier = [rep]
    while frontier:
        nxt = []
        for x in frontier:
            for g, ginv in gens:
                y = g * x * ginv
                if y.key not in seen:
                    seen.add(y.key)
                    orbit.append(y)
                    nxt.append(y)
                    if len(orbit) > cap:
                        raise GroupTooLargeError("conjugation orbit", cap)
        frontier = nxt
    return orbit


# ---------------------------------------------------------------------------
# Jordan structure


@dataclass(frozen=True)
class JordanType:
    """Block partitions per eigenvalue (eigenvalues restricted to 1 and -1)."""

    partitions: Tuple[Tuple[int, Tuple[int, ...]], ...]  # (eigenvalue, blocks desc)

    def partition(self, eigenvalue: int) -> Tuple[int, ...]:
        for ev, part in self.partitions:
            if ev == eigenvalue:
                return part
        return ()

    @property
    def eigenvalue_spectrum(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((ev, sum(part)) for ev, part in self.partitions)

    def is_unipotent(self) -> bool:
        return all(ev == 1 for ev, _ in self.partitions)


class UnsupportedSpectrumError(ValueError):
    pass


def _mat_add_scalar(entries, scalar, p):
    n = len(entries)
    return tuple(
        tuple((entries[i][j] + (scalar if i == j else 0)) % p for j in range(n))
        for i in range(n)
    )


def _mat_mul_entries(a, b, p):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
        for row in a
    )


def jordan_type(m: GroupElement) -> JordanType:
    """Jordan block partition; the spectrum must lie in {1, -1} over GF(p)."""
    n, p = m.n, m.p
    eigenvalues = [1] if p == 2 else [1, -1]
    # spectrum check: (m - 1)^n (m + 1)^n must vanish
    a = _mat_add_scalar(m.entries, -1, p)
    power = identity(n, p).entries
    for _ in range(n):
        power = _mat_mul_entries(power, a, p)
    if p != 2:
        b = _mat_add_scalar(m.entries, 1, p)
        for _ in range(n):
            power = _mat_mul_entries(power, b, p)
    if any(v for row in power for v in row):
        raise UnsupportedSpectrumError(
            "matrix has eigenvalues outside {1, -1} over GF(%d)" % p)
    parts = []
    for ev in eigenvalues:
        a = _mat_add_scalar(m.entries, -ev % p, p)
        ranks = [n]
        cur = identity(n, p).entries
        for _ in range(n):
            cur = _mat_mul_entries(cur, a, p)
            ranks.append(rank_mod_p(cur, p))
        blocks = []
        for k in range(1, n + 1):
            count = (ranks[k - 1] - ranks[k]) - (ranks[k] - ranks[k + 1] if k < n else 0)
            blocks.extend([k] * count)
        if blocks:
            parts.append((ev if ev == 1 else -1, tuple(sorted(blocks, reverse=True))))
    return JordanType(partitions=tuple(parts))


def is_quadratic_unipotent(m: GroupElement) -> bool:
    """Nontrivial unipotent with (m - 1)^2 = 0."""
    if m.is_identity():
        return False
    a = _mat_add_scalar(m.entries, -1, m.p)
    sq = _mat_mul_entries(a, a, m.p)
    return not any(v for row in sq for v in row)


# ---------------------------------------------------------------------------
# triple counting


def direct_triple_count(
    c1_orbit: Iterable[GroupElement],
    c2_predicate: Callable[[GroupElement], bool],
    z: GroupElement,
    c3_size: int,
) -> int:
    """Number of triples (x, y, z') in C1 x C2 x C3 with x*y*z' = 1.

    For the fixed representative z the triples with third entry z are the
    x in C1 with x^-1 * z^-1 in C2; the class of z contributes this count
    once per member, hence the c3_size factor.
    """
    zinv = z.inverse()
    hits = 0
    for x in c1_orbit:
        y = x.inverse() * zinv
        if c2_predicate(y):
            hits += 1
    return c3_size * hits


def class_membership_predicate(members: Set[GroupElement]) -> Callable[[GroupElement], bool]:
    keys = {m.key for m in members}
    return lambda x: x.key in keys


# ---------------------------------------------------------------------------
# standard generators and order formulas


def sl_generators(n: int, p: int, projective: bool = False) -> List[GroupElement]:
    """Transvection plus a Weyl-style cycle; generates SL_n(p) for prime p."""
    if n < 2:
        raise ValueError("SL needs n >= 2")
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    t[0][1] = 1
    w = [[0] * n for _ in range(n)]
    sign = 1 if n % 2 == 1 else -1
    w[0][n - 1] = sign  # so that det = 1
    for i in range(1, n):
        w[i][i - 1] = 1
    return [make_element(t, p, projective), make_element(w, p, projective)]


def gl_generators(n: int, p: int, projective: bool = False) -> List[GroupElement]:
    gens = sl_generators(n, p, projective) if n >= 2 else []
    g = primitive_root(p)
    d = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    d[0][0] = g
    gens.append(make_element(d, p, projective))
    return gens


def so_generators(m: int, p: int) -> List[GroupElement]:
    """Split SO_{2m}(p), p odd, preserving the antidiagonal Gram form."""
    if p == 2:
        raise ValueError("characteristic 2 orthogonal groups are out of scope")
    if m < 2:
        raise ValueError("SO_{2m} needs m >= 2")
    dim = 2 * m

    def unit(i, j, t):
        e = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
        e[i][j] = t % p
        return e

    def dual(i):  # 0-based pairing i <-> dim-1-i
        return dim - 1 - i

    gens = []
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            # root e_i - e_j
            e = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
            e[i][j] = 1
            e[dual(j)][dual(i)] = -1 % p
            gens.append(make_element(e, p))
    for i in range(m):
        for j in range(i + 1, m):
            # roots e_i + e_j and -(e_i + e_j)
            e = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
            e[i][dual(j)] = 1
            e[j][dual(i)] = -1 % p
            gens.append(make_element(e, p))
            f = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
            f[dual(j)][i] = 1
            f[dual(i)][j] = -1 % p
            gens.append(make_element(f, p))
    g = primitive_root(p)
    for i in range(m):
        d = [[1 if a == b else 0 for b in range(dim)] for a in range(dim)]
        d[i][i] = g
        d[dual(i)][dual(i)] = pow(g, -1, p)
        gens.append(make_element(d, p))
    if m >= 2:
        # even permutation swapping two hyperbolic pairs; in SO minus Omega
        perm = list(range(dim))
        perm[0], perm[dim - 1] = perm[dim - 1], perm[0]
        perm[1], perm[dim - 2] = perm[dim - 2], perm[1]
        w = [[1 if perm[a] == b else 0 for b in range(dim)] for a in range(dim)]
        gens.append(make_element(w, p))
    return gens


def gram_antidiagonal(dim: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(1 if i + j == dim - 1 else 0 for j in range(dim)) for i in range(dim)
    )


def preserves_form(x: GroupElement, gram) -> bool:
    p = x.p
    xt = tuple(zip(*x.entries))
    left = _mat_mul_entries(_mat_mul_entries(xt, gram, p), x.entries, p)
    return left == gram


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = set()
    m = p - 1
    q = 2
    while q * q <= m:
        if m % q == 0:
            factors.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise ArithmeticError("no primitive root mod %d" % p)


def order_gl(n: int, q: int) -> int:
    total = 1
    for i in range(n):
        total *= q ** n - q ** i
    return total


def order_sl(n: int, q: int) -> int:
    return order_gl(n, q) // (q - 1)


def order_psl(n: int, q: int) -> int:
    return order_sl(n, q) // gcd(n, q - 1)


def order_pgl(n: int, q: int) -> int:
    return order_gl(n, q) // (q - 1)


def order_so_even_plus(m: int, q: int) -> int:
    total = q ** (m * (m - 1)) * (q ** m - 1)
    for i in range(1, m):
        total *= q ** (2 * i) - 1
    return total


def group_from_spec(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Build a group from a spec string: SL(n,p), GL(n,p), SO(2m,p), PSL(2,p),
    PGL(2,p)."""
    text = spec.strip().upper().replace(" ", "")
    for kind in ("PSL", "PGL", "SL", "GL", "SO"):
        if text.startswith(kind + "(") and text.endswith(")"):
            args = text[len(kind) + 1:-1].split(",")
            if len(args) != 2:
                raise ValueError("group spec needs two arguments: %r" % spec)
            n, p = int(args[0]), int(args[1])
            if not _is_prime_int(p):
                raise ValueError("group spec needs a prime field: %r" % spec)
            if kind == "SL":
                gens = sl_generators(n, p)
            elif kind == "GL":
                gens = gl_generators(n, p)
            elif kind == "PSL":
                gens = sl_generators(n, p, projective=True)
            elif kind == "PGL":
                gens = gl_generators(n, p, projective=True)
            else:
                if n % 2 != 0:
                    raise ValueError("SO needs even dimension: %r" % spec)
                gens = so_generators(n // 2, p)
            return closure(gens, cap=cap, kind=kind)
    raise ValueError("unrecognized group spec %r" % spec)


def _is_prime_int(m: int) -> bool:
    if m < 2:
        return False
    q = 2
    while q * q <= m:
        if m % q == 0:
            return False
        q += 1
    return True


def parse_generator_file(text: str, projective: bool = False) -> List[GroupElement]:
    """Generator file format: blocks of 'matrix <n> <p>' followed by n rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    gens: List[GroupElement] = []
    i = 0
    while i < len(lines):
        line = lines[i]
        i += 1
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] != "matrix" or len(fields) != 3:
            raise ValueError("expected 'matrix <n> <p>' at line %d" % i)
        n, p = int(fields[1]), int(fields[2])
        rows = []
        while len(rows) < n:
            if i >= len(lines):
                raise ValueError("matrix block truncated at line %d" % i)
            row_line = lines[i]
            i += 1
            if not row_line or row_line.startswith("#"):
                continue
            row = [int(v) for v in row_line.split()]
            if len(row) != n:
                raise ValueError("expected %d entries at line %d" % (n, i))
            rows.append(row)
        gens.append(make_element(rows, p, projective))
    if not gens:
        raise ValueError("generator file contains no matrices")
    return gens


# ---------------------------------------------------------------------------
# nonexistence drivers (brute force on special linear / even orthogonal groups)


def regular_unipotent_sl(n: int, p: int) -> GroupElement:
    """Single Jordan block J_n(1)."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    return make_element(rows, p)


def sl_regular_unipotent_class_size(n: int, q: int) -> int:
    # centralizer of J_n in SL_n(q): invertible polynomials in J_n of det 1,
    # det(a0*I + nilpotent part) = a0^n, so gcd(n, q-1) choices of a0
    return order_sl(n, q) // (gcd(n, q - 1) * q ** (n - 1))


def lemma_sl_triple_count(n: int, p: int,
                          orbit_cap: int = DEFAULT_ORBIT_CAP) -> Dict[str, int]:
    """Exact count of (involution, quadratic unipotent, regular unipotent)
    triples with product 1 in SL_n(p), p odd, summed over all involution
    classes. Runs on conjugation orbits; the full group is never enumerated."""
    if p == 2:
        raise ValueError("p must be odd")
    gens = sl_generators(n, p)
    z = regular_unipotent_sl(n, p)
    c3_size = sl_regular_unipotent_class_size(n, p)
    counts: Dict[str, int] = {}
    reps = []
    for k in range(2, n, 2):  # -1 eigenvalue multiplicity, det stays 1
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = p - 1 if i < k else 1
        reps.append((k, make_element(rows, p)))
    if n % 2 == 0:
        rows = [[p - 1 if i == j else 0 for j in range(n)] for i in range(n)]
        reps.append((n, make_element(rows, p)))
    total = 0
    for k, rep in reps:
        if k == n:
            orbit = [rep]  # central involution
        else:
            orbit = class_orbit(rep, gens, cap=orbit_cap)
        cnt = direct_triple_count(orbit, is_quadratic_unipotent, z, c3_size)
        counts["involution(-1^%d)" % k] = cnt
        total += cnt
    counts["total"] = total
    return counts


def lemma_so_triple_count(m: int, p: int,
                          cap: int = DEFAULT_CLOSURE_CAP) -> Dict[str, int]:
    """Exact count of (involution, quadratic unipotent, regular unipotent)
    triples with product 1 in SO_{2m}(p), p odd, over all involution classes
    and all regular-unipotent (partition (2m-1,1)) classes."""
    if p == 2:
        raise ValueError("p must be odd")
    group = closure(so_generators(m, p), cap=cap, kind="SO")
    classes = conjugacy_classes(group)
    dim = 2 * m
    target = tuple([dim - 1, 1])
    regs = []
    invs = []
    for c in classes:
        if c.order == p:
            jt = jordan_type(c.rep)
            if jt.is_unipotent() and jt.partition(1) == target:
                regs.append(c)
        elif c.order == 2:
            invs.append(c)
    if not regs:
        raise ValueError("no regular unipotent class found in SO_%d(%d)" % (dim, p))
    counts: Dict[str, int] = {}
    total = 0
    for rno, reg in enumerate(regs):
        for ino, inv in enumerate(invs):
            orbit = [group.elements[i] for i in inv.indices]
            cnt = direct_triple_count(orbit, is_quadratic_unipotent, reg.rep, reg.size)
            counts["involution%d x regular%d" % (ino, rno)] = cnt
            total += cnt
    counts["total"] = total
    return counts
