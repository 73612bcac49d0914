"""Character tables: data model, CTB v1 text format, validation.

Tables are immutable after construction. Layout is canonical: the identity
class comes first, then classes sort by ascending element order, size and a
value-based tie-break; the trivial character comes first, then rows sort by
ascending degree and lexicographic value sequence. Canonicalizing makes
independently produced tables of the same group compare equal structurally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import (
    Cyclotomic,
    cyc,
    format_value,
    lcm,
    parse_value,
    prime_factors,
    raw_conjugate,
    raw_embed,
    raw_equals_rational,
    raw_mul,
    raw_to_cyclotomic,
)


class CTBSyntaxError(ValueError):
    """CTB parse failure; carries the 1-based line (and column when known)."""

    def __init__(self, message: str, line: int, column: Optional[int] = None):
        loc = "line %d" % line if column is None else "line %d, col %d" % (line, column)
        super().__init__("%s (%s)" % (message, loc))
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ClassRecord:
    name: str
    size: int
    order: int
    power_maps: Tuple[Tuple[int, int], ...]  # sorted (prime, class index)

    def power(self, p: int) -> int:
        for q, idx in self.power_maps:
            if q == p:
                return idx
        raise KeyError("no power map for prime %d on class %s" % (p, self.name))

    @property
    def power_map(self) -> Dict[int, int]:
        return dict(self.power_maps)


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: int
    exponent: int
    classes: Tuple[ClassRecord, ...]
    rows: Tuple[Tuple[Cyclotomic, ...], ...]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> Tuple[Cyclotomic, ...]:
        return tuple(row[0] for row in self.rows)

    def degree_int(self, r: int) -> int:
        return self.rows[r][0].to_integer()

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError("no class named %r in table %s" % (name, self.name))

    def column(self, j: int) -> Tuple[Cyclotomic, ...]:
        return tuple(row[j] for row in self.rows)

    def trivial_row_index(self) -> int:
        one = cyc(1)
        for r, row in enumerate(self.rows):
            if all(v == one for v in row):
                return r
        raise ValueError("table %s has no trivial character row" % self.name)

    def centralizer_order(self, j: int) -> int:
        return self.order // self.classes[j].size

    def inverse_class(self, j: int) -> int:
        """Index of the class of inverses, located via complex conjugation."""
        target = tuple(v.conjugate() for v in self.column(j))
        for i in range(self.n_classes):
            if self.column(i) == target:
                return i
        raise ValueError(
            "table %s has no conjugate column for class %s"
            % (self.name, self.classes[j].name))


# ---------------------------------------------------------------------------
# canonical layout


def _dense_ranks(keys: List) -> List[int]:
    order = sorted(set(keys))
    rank = {k: i for i, k in enumerate(order)}
    return [rank[k] for k in keys]


def canonical_layout(
    class_keys: List[tuple],
    row_keys: List[tuple],
    value_keys: List[List[tuple]],
    search_bound: int = 40320,
) -> Tuple[List[int], List[int]]:
    """Return (class index order, row index order) for the canonical layout.

    `value_keys[r][i]` is a total-order key for the value of row r at class i.
    Refines the initial keys Weisfeiler-Leman style with value multisets and
    settles residual ties by a bounded search minimizing the value matrix.
    """
    k = len(class_keys)
    nr = len(row_keys)
    c_rank = _dense_ranks(class_keys)
    r_rank = _dense_ranks(row_keys)
    while True:
        new_c = [
            (c_rank[i], tuple(sorted((r_rank[r], value_keys[r][i]) for r in range(nr))))
            for i in range(k)
        ]
        new_r = [
            (r_rank[r], tuple(sorted((c_rank[i], value_keys[r][i]) for i in range(k))))
            for r in range(nr)
        ]
        nc_rank = _dense_ranks(new_c)
        nr_rank = _dense_ranks(new_r)
        if nc_rank == c_rank and nr_rank == r_rank:
            break
        c_rank, r_rank = nc_rank, nr_rank

    def tie_groups(rank: List[int]) -> List[List[int]]:
        groups: Dict[int, List[int]] = {}
        for i, rk in enumerate(rank):
            groups.setdefault(rk, []).append(i)
        return [groups[rk] for rk in sorted(groups)]

    c_groups = tie_groups(c_rank)
    combos = 1
    for g in c_groups:
        for m in range(2, len(g) + 1):
            combos *= m
        if combos > search_bound:
            break

    def row_order_for(class_order: List[int]) -> Tuple[List[int], tuple]:
        decorated = sorted(
            range(nr),
            key=lambda r: (r_rank[r], tuple(value_keys[r][i] for i in class_order), r),
        )
        matrix = tuple(
            tuple(value_keys[r][i] for i in class_order) for r in decorated
        )
        return decorated, matrix

    if combos <= search_bound:
        best = None
        for perm_parts in itertools.product(
            *[itertools.permutations(g) for g in c_groups]
        ):
            class_order = [i for part in perm_parts for i in part]
            row_order, matrix = row_order_for(class_order)
            cand = (matrix, tuple(class_order))
            if best is None or cand < best[0]:
                best = (cand, class_order, row_order)
        return best[1], best[2]
    # fallback: deterministic for a fixed presentation, not cross-canonical
    class_order = [i for g in c_groups for i in g]
    row_order, _ = row_order_for(class_order)
    return class_order, row_order


_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _class_letter(i: int) -> str:
    out = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, 26)
        out = _LETTERS[r] + out
    return out


def build_table_mapped(
    name: str,
    order: int,
    exponent: int,
    class_infos: Sequence[Tuple[int, int, Dict[int, int]]],
    rows: Sequence[Sequence[Cyclotomic]],
) -> Tuple[CharacterTable, List[int], List[int]]:
    """Assemble a canonical table, also returning the layout permutations
    (class_order[new] = old index, row_order[new] = old index).

    `class_infos` holds (size, element_order, {prime: class index}) in any
    order; `rows` are indexed the same way. Classes and rows are permuted to
    the canonical layout and classes are named `<order><letter>`.
    """
    k = len(class_infos)
    value_keys = [[v.sort_key() for v in row] for row in rows]
    class_keys = [(co, cs) for (cs, co, _pm) in class_infos]
    one = cyc(1)
    row_keys = []
    for r, row in enumerate(rows):
        trivial = all(v == one for v in row)
        row_keys.append((0 if trivial else 1, rows[r][0].to_integer()))
    class_order, row_order = canonical_layout(class_keys, row_keys, value_keys)
    old_to_new = {old: new for new, old in enumerate(class_order)}

    by_order: Dict[int, int] = {}
    records = []
    for new_i, old_i in enumerate(class_order):
        size, corder, pm = class_infos[old_i]
        serial = by_order.get(corder, 0)
        by_order[corder] = serial + 1
        records.append(
            ClassRecord(
                name="%d%s" % (corder, _class_letter(serial)),
                size=size,
                order=corder,
                power_maps=tuple(
                    sorted((p, old_to_new[idx]) for p, idx in pm.items())
                ),
            )
        )
    new_rows = tuple(
        tuple(rows[r][i] for i in class_order) for r in row_order
    )
    table = CharacterTable(
        name=name,
        order=order,
        exponent=exponent,
        classes=tuple(records),
        rows=new_rows,
    )
    return table, list(class_order), list(row_order)


def build_table(
    name: str,
    order: int,
    exponent: int,
    class_infos: Sequence[Tuple[int, int, Dict[int, int]]],
    rows: Sequence[Sequence[Cyclotomic]],
) -> CharacterTable:
    """Assemble a canonical table (see build_table_mapped)."""
    return build_table_mapped(name, order, exponent, class_infos, rows)[0]


def same_character_data(a: CharacterTable, b: CharacterTable) -> bool:
    """Value identity of two tables, ignoring the group name string."""
    return (
        a.order == b.order
        and a.exponent == b.exponent
        and a.classes == b.classes
        and a.rows == b.rows
    )


# ---------------------------------------------------------------------------
# CTB v1 text format


def emit_ctb(table: CharacterTable) -> str:
    lines = ["CTB 1"]
    lines.append("name %s" % table.name)
    lines.append("order %d" % table.order)
    lines.append("exponent %d" % table.exponent)
    lines.append("classes %d" % table.n_classes)
    for c in table.classes:
        pows = " ".join(
            "pow%d=%s" % (p, table.classes[idx].name) for p, idx in c.power_maps
        )
        lines.append(
            "class %s size=%d order=%d%s" % (c.name, c.size, c.order,
                                             (" " + pows) if pows else "")
        )
    for r, row in enumerate(table.rows):
        lines.append(
            "char X%d %s" % (r + 1, " ; ".join(format_value(v) for v in row))
        )
    return "\n".join(lines) + "\n"


def parse_ctb(text) -> CharacterTable:
    """Parse CTB v1 text (str or bytes). Structural checks only; run
    `validate` for the orthogonality suite."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.splitlines()
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines):
            raw = lines[pos]
            pos += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return stripped, pos
        return None, pos

    line, ln = next_line()
    if line is None or line.split() != ["CTB", "1"]:
        raise CTBSyntaxError("expected header 'CTB 1'", ln)

    header: Dict[str, str] = {}
    for key in ("name", "order", "exponent", "classes"):
        line, ln = next_line()
        if line is None or not line.startswith(key + " "):
            raise CTBSyntaxError("expected '%s <value>' line" % key, ln)
        header[key] = line[len(key) + 1:].strip()
    try:
        order = int(header["order"])
        exponent = int(header["exponent"])
        n_classes = int(header["classes"])
    except ValueError as exc:
        raise CTBSyntaxError("bad integer in header: %s" % exc, ln) from None
    if order < 1 or exponent < 1 or n_classes < 1:
        raise CTBSyntaxError("header integers must be positive", ln)

    class_names: List[str] = []
    class_sizes: List[int] = []
    class_orders: List[int] = []
    class_pows: List[Dict[int, str]] = []
    for _ in range(n_classes):
        line, ln = next_line()
        if line is None or not line.startswith("class "):
            raise CTBSyntaxError(
                "expected %d class lines, got %d" % (n_classes, len(class_names)), ln)
        fields = line.split()
        if len(fields) < 2:
            raise CTBSyntaxError("class line needs a name", ln)
        cname = fields[1]
        if cname in class_names:
            raise CTBSyntaxError("duplicate class name %r" % cname, ln)
        size = corder = None
        pows: Dict[int, str] = {}
        for f in fields[2:]:
            if "=" not in f:
                raise CTBSyntaxError("bad class attribute %r" % f, ln)
            key, _, val = f.partition("=")
            if key == "size":
                size = _parse_pos_int(val, "size", ln)
            elif key == "order":
                corder = _parse_pos_int(val, "order", ln)
            elif key.startswith("pow"):
                p = _parse_pos_int(key[3:], "power-map prime", ln)
                pows[p] = val
            else:
                raise CTBSyntaxError("unknown class attribute %r" % key, ln)
        if size is None or corder is None:
            raise CTBSyntaxError("class %s needs size= and order=" % cname, ln)
        class_names.append(cname)
        class_sizes.append(size)
        class_orders.append(corder)
        class_pows.append(pows)

    name_to_index = {n: i for i, n in enumerate(class_names)}
    power_maps: List[Tuple[Tuple[int, int], ...]] = []
    for i, pows in enumerate(class_pows):
        resolved = {}
        for p, target in pows.items():
            if target not in name_to_index:
                raise CTBSyntaxError(
                    "unknown class name %r in power map of %s" % (target, class_names[i]),
                    0)
            resolved[p] = name_to_index[target]
        power_maps.append(tuple(sorted(resolved.items())))

    rows: List[Tuple[Cyclotomic, ...]] = []
    char_names: List[str] = []
    while True:
        line, ln = next_line()
        if line is None:
            break
        if not line.startswith("char "):
            raise CTBSyntaxError("expected 'char' line, got %r" % line[:20], ln)
        body = line[5:]
        parts = body.split(None, 1)
        if len(parts) != 2:
            raise CTBSyntaxError("char line needs a name and values", ln)
        cname, values_text = parts
        pieces = values_text.split(";")
        if len(pieces) != n_classes:
            raise CTBSyntaxError(
                "char %s has %d values, expected %d" % (cname, len(pieces), n_classes),
                ln)
        try:
            row = tuple(parse_value(p) for p in pieces)
        except ValueError as exc:
            raise CTBSyntaxError("bad value in char %s: %s" % (cname, exc), ln) from None
        rows.append(row)
        char_names.append(cname)
    if not rows:
        raise CTBSyntaxError("table has no character rows", pos)

    records = tuple(
        ClassRecord(
            name=class_names[i],
            size=class_sizes[i],
            order=class_orders[i],
            power_maps=power_maps[i],
        )
        for i in range(n_classes)
    )
    return CharacterTable(
        name=header["name"],
        order=order,
        exponent=exponent,
        classes=records,
        rows=tuple(rows),
    )


def _parse_pos_int(text: str, what: str, line: int) -> int:
    try:
        v = int(text)
    except ValueError:
        raise CTBSyntaxError("bad %s %r" % (what, text), line) from None
    if v < 1:
        raise CTBSyntaxError("%s must be positive, got %d" % (what, v), line)
    return v


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> Tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def __str__(self):
        lines = []
        for c in self.checks:
            mark = "pass" if c.ok else "FAIL"
            suffix = (": " + c.detail) if c.detail else ""
            lines.append("%-24s %s%s" % (c.name, mark, suffix))
        return "\n".join(lines)


def _row_raw(table: CharacterTable, r: int, m: int) -> List[dict]:
    return [raw_embed(v, m) for v in table.rows[r]]


def row_inner_product(table: CharacterTable, r1: int, r2: int) -> Cyclotomic:
    """Sum over classes of size * chi_r1 * conj(chi_r2), exactly."""
    m = 1
    for v in table.rows[r1]:
        m = lcm(m, v.conductor)
    for v in table.rows[r2]:
        m = lcm(m, v.conductor)
    acc: dict = {}
    for j, c in enumerate(table.classes):
        a = raw_embed(table.rows[r1][j], m)
        b = raw_conjugate(raw_embed(table.rows[r2][j], m), m)
        for e, v in raw_mul(a, b, m).items():
            acc[e] = acc.get(e, 0) + c.size * v
    return raw_to_cyclotomic(m, acc)


def validate(table: CharacterTable, orthogonality: bool = True) -> ValidationReport:
    """Run the table invariants; failures are report entries, not errors."""
    checks: List[CheckResult] = []
    k = table.n_classes

    idc = table.classes[0]
    checks.append(CheckResult(
        "identity_first", idc.order == 1 and idc.size == 1,
        "" if idc.order == 1 and idc.size == 1 else
        "first class is %s (size %d, order %d)" % (idc.name, idc.size, idc.order)))

    total = sum(c.size for c in table.classes)
    checks.append(CheckResult(
        "class_sizes_sum", total == table.order,
        "" if total == table.order else "sizes sum to %d, order is %d" % (total, table.order)))

    bad = [c.name for c in table.classes if table.order % c.size != 0]
    checks.append(CheckResult(
        "class_size_divides_order", not bad, ", ".join(bad)))

    bad = [c.name for c in table.classes if table.exponent % c.order != 0]
    checks.append(CheckResult(
        "element_order_divides_exponent", not bad, ", ".join(bad)))

    exp_primes = prime_factors(table.exponent)
    missing = []
    badpow = []
    for c in table.classes:
        pm = c.power_map
        for p in exp_primes:
            if p not in pm:
                missing.append("%s:pow%d" % (c.name, p))
            else:
                idx = pm[p]
                if not (0 <= idx < k):
                    badpow.append("%s:pow%d" % (c.name, p))
                else:
                    expected = c.order // gcd(c.order, p)
                    if table.classes[idx].order != expected:
                        badpow.append(
                            "%s:pow%d->%s (order %d, expected %d)"
                            % (c.name, p, table.classes[idx].name,
                               table.classes[idx].order, expected))
    checks.append(CheckResult("power_maps_complete", not missing, ", ".join(missing)))
    checks.append(CheckResult("power_map_orders", not badpow, ", ".join(badpow)))

    one = cyc(1)
    trivial_rows = [r for r, row in enumerate(table.rows)
                    if all(v == one for v in row)]
    ok = trivial_rows == [0]
    checks.append(CheckResult(
        "trivial_character_first", ok,
        "" if ok else "trivial rows at %s" % (trivial_rows,)))

    deg_ok = True
    detail = ""
    total_sq = 0
    for r, row in enumerate(table.rows):
        v = row[0]
        if not v.is_integer() or v.to_integer() < 1:
            deg_ok = False
            detail = "row %d has degree %s" % (r, v)
            break
        total_sq += v.to_integer() ** 2
    if deg_ok and total_sq != table.order:
        deg_ok = False
        detail = "degree squares sum to %d, order is %d" % (total_sq, table.order)
    checks.append(CheckResult("degree_squares_sum", deg_ok, detail))

    cols = {}
    dup = ""
    for j in range(k):
        key = table.column(j)
        if key in cols:
            dup = "%s and %s" % (table.classes[cols[key]].name, table.classes[j].name)
            break
        cols[key] = j
    checks.append(CheckResult("columns_distinct", not dup, dup))

    if orthogonality:
        checks.append(_check_row_orthogonality(table))
        checks.append(_check_column_orthogonality(table))

    return ValidationReport(tuple(checks))


def _check_row_orthogonality(table: CharacterTable) -> CheckResult:
    nr = len(table.rows)
    conductors = [
        max((v.conductor for v in row), default=1) for row in table.rows
    ]
    row_ms = []
    for row in table.rows:
        m = 1
        for v in row:
            m = lcm(m, v.conductor)
        row_ms.append(m)
    sizes = [c.size for c in table.classes]
    embeds: Dict[Tuple[int, int], list] = {}

    def embedded(r: int, m: int) -> list:
        key = (r, m)
        got = embeds.get(key)
        if got is None:
            got = [raw_embed(v, m) for v in table.rows[r]]
            embeds[key] = got
        return got

    for r1 in range(nr):
        for r2 in range(r1, nr):
            m = lcm(row_ms[r1], row_ms[r2])
            a_row = embedded(r1, m)
            b_row = embedded(r2, m)
            acc: dict = {}
            for j, size in enumerate(sizes):
                b = raw_conjugate(b_row[j], m)
                for e, v in raw_mul(a_row[j], b, m).items():
                    acc[e] = acc.get(e, 0) + size * v
            target = table.order if r1 == r2 else 0
            if not raw_equals_rational(m, acc, target):
                return CheckResult(
                    "row_orthogonality", False,
                    "fails for rows %d and %d" % (r1, r2))
    return CheckResult("row_orthogonality", True)


def _check_column_orthogonality(table: CharacterTable) -> CheckResult:
    k = table.n_classes
    col_ms = []
    for j in range(k):
        m = 1
        for row in table.rows:
            m = lcm(m, row[j].conductor)
        col_ms.append(m)
    embeds: Dict[Tuple[int, int], list] = {}

    def embedded(j: int, m: int) -> list:
        key = (j, m)
        got = embeds.get(key)
        if got is None:
            got = [raw_embed(row[j], m) for row in table.rows]
            embeds[key] = got
        return got

    for j1 in range(k):
        for j2 in range(j1, k):
            m = lcm(col_ms[j1], col_ms[j2])
            a_col = embedded(j1, m)
            b_col = embedded(j2, m)
            acc: dict = {}
            for r in range(len(table.rows)):
                b = raw_conjugate(b_col[r], m)
                for e, v in raw_mul(a_col[r], b, m).items():
                    acc[e] = acc.get(e, 0) + v
            target = table.order // table.classes[j1].size if j1 == j2 else 0
            if not raw_equals_rational(m, acc, target):
                return CheckResult(
                    "column_orthogonality", False,
                    "fails for classes %s and %s"
                    % (table.classes[j1].name, table.classes[j2].name))
    return CheckResult("column_orthogonality", True)


# ---------------------------------------------------------------------------
# class rationality


def class_is_rational(table: CharacterTable, j: int) -> bool:
    """True iff every character value on class j is rational."""
    return all(v.is_rational() for v in table.column(j))


def class_rational_by_power_maps(table: CharacterTable, j: int) -> Optional[bool]:
    """Power-map rationality verdict, or None when the stored prime maps do
    not generate all units modulo the element order."""
    m = table.classes[j].order
    if m <= 2:
        return True
    units = [k for k in range(1, m) if gcd(k, m) == 1]
    gens = [p for p in prime_factors(table.exponent) if m % p != 0]
    reached = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for p in gens:
            y = (x * p) % m
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    if len(reached) != len(units):
        return None
    return all(table.classes[j].power(p) == j for p in gens)


def class_rational_by_galois(table: CharacterTable, j: int) -> bool:
    """True iff the column is fixed by every Galois map of the exponent field."""
    col = table.column(j)
    n = table.exponent
    for k in range(2, n + 1):
        if gcd(k, n) != 1:
            continue
        for v in col:
            if v.galois(k) != v:
                return False
    return True
