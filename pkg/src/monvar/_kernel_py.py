"""Pure-Python fallback for the hot multiplication-table kernels.

The compiled twin in ``_kernel.pyx`` implements the same three entry
points over flat C arrays; ``kernels.py`` picks whichever is available
at import time.  Keep the two implementations behaviourally identical:
same search order, same encodings, same return conventions.

Conventions:
  * a table is flattened row-major into a list of ints;
  * ``check_identity`` returns -1 when the identity holds, otherwise
    an encoding of the first violating assignment found: letter k
    (in the caller's ordering) is mapped to ``(a // size**k) % size``;
  * assignments are searched depth-first in the caller's letter order,
    pruning a subtree once both sides' prefix products hit a two-sided
    zero or are otherwise fully determined.
"""

from __future__ import annotations


def find_assoc_violation(table, size):
    """Return (a, b, c) with (ab)c != a(bc), or None."""
    for a in range(size):
        for b in range(size):
            ab = table[a * size + b]
            for c in range(size):
                if table[ab * size + c] != table[a * size + table[b * size + c]]:
                    return (a, b, c)
    return None


def find_zero(table, size):
    """Id of a two-sided zero element, or -1."""
    for z in range(size):
        if all(
            table[z * size + x] == z and table[x * size + z] == z
            for x in range(size)
        ):
            return z
    return -1


def check_identity(table, size, one, lhs, rhs, nletters, zero):
    """-1 if the identity holds under every assignment, else an encoding
    of the first violating assignment found (unassigned letters as 0).

    ``lhs``/``rhs`` are sequences of letter slots 0..nletters-1.  A
    subtree is skipped as soon as both sides' values are fully
    determined by the letters assigned so far; with a two-sided zero
    present that happens as soon as both prefixes absorb into it.
    """
    assign = [-1] * nletters
    lhs = list(lhs)
    rhs = list(rhs)

    def prefix(word):
        # (value, fully_determined)
        val = one
        for x in word:
            img = assign[x]
            if img < 0:
                return val, False
            val = table[val * size + img]
            if val == zero:
                return val, True
        return val, True

    def encode():
        a = 0
        for k in range(nletters - 1, -1, -1):
            a = a * size + (assign[k] if assign[k] >= 0 else 0)
        return a

    def rec(k):
        lval, ldone = prefix(lhs)
        rval, rdone = prefix(rhs)
        if ldone and rdone:
            return encode() if lval != rval else -1
        if k == nletters:
            raise AssertionError("all letters assigned but sides undetermined")
        for v in range(size):
            assign[k] = v
            res = rec(k + 1)
            if res >= 0:
                return res
        assign[k] = -1
        return -1

    return rec(0)
