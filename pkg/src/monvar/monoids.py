"""Finite monoids as multiplication tables, with brute-force identity
evaluation and the structural predicates (aperiodicity, commuting
idempotents) used throughout the catalog.

Identity satisfaction enumerates every assignment of elements to the
letters of the identity, with two escape hatches: a hard budget cap
(``size ** nletters`` above 10**9 is refused, reported as a distinct
"budget" outcome rather than a boolean) and zero-pruning (subtrees in
which both sides have already absorbed into a two-sided zero are
skipped), which is what makes the zero-heavy Rees quotients tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

from . import kernels
from .systems import Identity
from .words import Word, letter_name

SATISFIES_CAP = 10**9


class BudgetExceeded(Exception):
    """Search space exceeds the configured cap; outcome is 'unknown'."""


@dataclass(frozen=True)
class FiniteMonoid:
    """Multiplication table with a two-sided identity element."""

    table: tuple  # tuple of tuple of element ids
    one: int
    labels: tuple = ()  # optional display names per element
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def label(self, a: int) -> str:
        if self.labels and a < len(self.labels):
            return self.labels[a]
        return str(a)

    def flat(self) -> list:
        return [v for row in self.table for v in row]

    def __repr__(self) -> str:
        tag = self.name or f"{self.size} elements"
        return f"FiniteMonoid({tag})"


def make_monoid(rows: Sequence[Sequence[int]], one: int, labels=(), name="") -> FiniteMonoid:
    table = tuple(tuple(r) for r in rows)
    return FiniteMonoid(table=table, one=one, labels=tuple(labels), name=name)


def validate(m: FiniteMonoid):
    """(ok, detail): associativity plus a two-sided identity element."""
    n = m.size
    for row in m.table:
        if len(row) != n or any(not 0 <= v < n for v in row):
            return False, "table is not a square matrix of element ids"
    if not 0 <= m.one < n:
        return False, f"identity id {m.one} out of range"
    for x in range(n):
        if m.table[m.one][x] != x or m.table[x][m.one] != x:
            return False, f"element {m.label(m.one)} is not a two-sided identity at {m.label(x)}"
    bad = kernels.find_assoc_violation(m.flat(), n)
    if bad is not None:
        a, b, c = bad
        return False, (
            f"associativity fails at ({m.label(a)}, {m.label(b)}, {m.label(c)})"
        )
    return True, None


def evaluate(m: FiniteMonoid, w: Word, assignment: Dict[int, int]) -> int:
    """Fold the table product over w; the empty word maps to the identity."""
    val = m.one
    for x in w:
        if x not in assignment:
            raise KeyError(f"letter {letter_name(x)} is unassigned")
        val = m.table[val][assignment[x]]
    return val


def zero_element(m: FiniteMonoid) -> int:
    """Two-sided zero id or -1."""
    return kernels.find_zero(m.flat(), m.size)


def satisfies(m: FiniteMonoid, ident: Identity, cap: int = SATISFIES_CAP):
    """(holds, counterexample): exhaustive check with early exit.

    The counterexample is a letter -> element-id dict, or None.  Raises
    BudgetExceeded when size**letters would exceed the cap.
    """
    # order letters by first occurrence in lhs.rhs so prefix pruning bites
    seq = ident.lhs + ident.rhs
    letters = sorted(frozenset(seq), key=seq.index)
    n = m.size
    if len(letters) > 0 and n ** len(letters) > cap:
        raise BudgetExceeded(
            f"{n}^{len(letters)} assignments exceed cap {cap}; "
            "shrink the identity's alphabet first"
        )
    slot = {x: k for k, x in enumerate(letters)}
    res = kernels.check_identity(
        m.flat(),
        n,
        m.one,
        [slot[x] for x in ident.lhs],
        [slot[x] for x in ident.rhs],
        len(letters),
        zero_element(m),
    )
    if res < 0:
        return True, None
    counter = {}
    a = res
    for x in letters:
        counter[x] = a % n
        a //= n
    return False, counter


def is_aperiodic(m: FiniteMonoid) -> bool:
    """Some n <= size has a**n = a**(n+1) for every element a."""
    n = m.size
    for a in range(n):
        power = a
        seen = {a: 1}
        k = 1
        stable = False
        while k <= n + 1:
            nxt = m.table[power][a]
            if nxt == power:
                stable = True
                break
            power = nxt
            k += 1
            if power in seen:
                return False  # entered a nontrivial cycle
            seen[power] = k
        if not stable:
            return False
    return True


def idempotents(m: FiniteMonoid) -> list:
    return [e for e in range(m.size) if m.table[e][e] == e]


def idempotents_commute(m: FiniteMonoid) -> bool:
    es = idempotents(m)
    return all(m.table[e][f] == m.table[f][e] for e in es for f in es)


def dual_monoid(m: FiniteMonoid) -> FiniteMonoid:
    n = m.size
    rows = [[m.table[b][a] for b in range(n)] for a in range(n)]
    return make_monoid(rows, m.one, m.labels, name=f"dual({m.name})" if m.name else "")


def direct_product(m: FiniteMonoid, k: FiniteMonoid, size_cap: int = 4096) -> FiniteMonoid:
    if m.size * k.size > size_cap:
        raise BudgetExceeded(f"product size {m.size * k.size} exceeds cap {size_cap}")
    pairs = [(a, b) for a in range(m.size) for b in range(k.size)]
    index = {p: i for i, p in enumerate(pairs)}
    rows = [
        [index[(m.table[a][c], k.table[b][d])] for (c, d) in pairs]
        for (a, b) in pairs
    ]
    labels = tuple(f"({m.label(a)},{k.label(b)})" for (a, b) in pairs)
    name = f"{m.name}x{k.name}" if m.name and k.name else ""
    return make_monoid(rows, index[(m.one, k.one)], labels, name=name)


def format_table(m: FiniteMonoid) -> str:
    """Table file format: ``n <size> <identity-index>`` then the rows,
    then optional ``# label <i> <name>`` lines."""
    lines = [f"n {m.size} {m.one}"]
    for row in m.table:
        lines.append(" ".join(str(v) for v in row))
    for i, lab in enumerate(m.labels):
        lines.append(f"# label {i} {lab}")
    return "\n".join(lines) + "\n"


def parse_table(text: str, name: str = "") -> FiniteMonoid:
    size = None
    one = None
    rows = []
    labels: Dict[int, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["label"] and len(parts) >= 3:
                labels[int(parts[1])] = " ".join(parts[2:])
            continue
        if line.startswith("n "):
            _, s, o = line.split()
            size, one = int(s), int(o)
            continue
        rows.append([int(v) for v in line.split()])
    if size is None or len(rows) != size:
        raise ValueError("table header/row count mismatch")
    label_tuple = tuple(labels.get(i, str(i)) for i in range(size)) if labels else ()
    m = make_monoid(rows, one, label_tuple, name=name)
    ok, detail = validate(m)
    if not ok:
        raise ValueError(f"invalid table: {detail}")
    return m


TRIVIAL = make_monoid([[0]], 0, labels=("1",), name="trivial")
