"""Identities, identity systems, and parametric identity families.

An identity is an ordered pair of words.  An identity system is a
finite set of identities together with family descriptors; a family
descriptor names one of the parametric shapes below plus the parameter
ranges at which it may be instantiated.

Families (letters x, y; markers t0, t1, ...; e_i is x for odd i and y
for even i):

    alpha(n):        xy t1·e1 ... t(n+1)·e(n+1)  ~  yx (same tail)
    beta(n):         yx^2 t2·e2 ... t(n+1)·e(n+1)  ~  xyx (same tail)
    gamma(n):        x^2y t1·e1 ... t(n+1)·e(n+1)  ~  xyx (same tail)
    gamma_prime(n):  x^2y t2·e2 ... t(n+1)·e(n+1)  ~  xyx (same tail)
    delta(k, n):     xy t1·e1^n ... t(k+1)·e(k+1)^n  ~  yx (same tail)
    kappa(n, j):     t0x t1x ... tnx  ~  same with tjx^2 at slot j
    perm(n, pi):     x z_pi(1)..z_pi(n) x t1z1..tnzn  ~
                     x^2 z_pi(1)..z_pi(n) t1z1..tnzn

Both sides of beta carry the tail from index 2.  (The printed source
for that family shows mismatched tail ranges on the two sides; the
consistent reading is forced by the surrounding containment facts and
is what every cross-check in the test suite pins down.)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Optional

from .words import (
    Word,
    letter,
    parse_word,
    reverse_word,
    t_letter,
    word_str,
)

X = letter("x")
Y = letter("y")
Z = letter("z")


@dataclass(frozen=True, order=True)
class Identity:
    lhs: Word
    rhs: Word

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self) -> str:
        return f"{word_str(self.lhs)} = {word_str(self.rhs)}"

    def reversed(self) -> "Identity":
        return Identity(reverse_word(self.lhs), reverse_word(self.rhs))

    def swapped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    def letters(self) -> frozenset:
        return frozenset(self.lhs) | frozenset(self.rhs)


class IdentitySyntaxError(ValueError):
    pass


def parse_identity(text: str) -> Identity:
    parts = text.split("=")
    if len(parts) != 2:
        raise IdentitySyntaxError(f"expected exactly one '=' in {text!r}")
    return Identity(parse_word(parts[0].strip()), parse_word(parts[1].strip()))


def ident(text: str) -> Identity:
    return parse_identity(text)


def dual_identity(ident: Identity) -> Identity:
    return ident.reversed()


def e_letter(i: int):
    return X if i % 2 == 1 else Y


def _tail(lo: int, hi: int, power: int = 1) -> list:
    out = []
    for i in range(lo, hi + 1):
        out.append(t_letter(i))
        out.extend([e_letter(i)] * power)
    return out


FAMILY_NAMES = ("alpha", "beta", "gamma", "gamma_prime", "delta", "kappa", "perm")


def family(name: str, *params) -> Identity:
    """Instantiate a parametric family at concrete parameters."""
    if name == "alpha":
        (n,) = params
        if n < 1:
            raise ValueError("alpha needs n >= 1")
        tail = _tail(1, n + 1)
        return Identity(tuple([X, Y] + tail), tuple([Y, X] + tail))
    if name == "beta":
        (n,) = params
        if n < 1:
            raise ValueError("beta needs n >= 1")
        tail = _tail(2, n + 1)
        return Identity(tuple([Y, X, X] + tail), tuple([X, Y, X] + tail))
    if name == "gamma":
        (n,) = params
        if n < 1:
            raise ValueError("gamma needs n >= 1")
        tail = _tail(1, n + 1)
        return Identity(tuple([X, X, Y] + tail), tuple([X, Y, X] + tail))
    if name == "gamma_prime":
        (n,) = params
        if n < 1:
            raise ValueError("gamma_prime needs n >= 1")
        tail = _tail(2, n + 1)
        return Identity(tuple([X, X, Y] + tail), tuple([X, Y, X] + tail))
    if name == "delta":
        k, n = params
        if k < 1 or n < 1:
            raise ValueError("delta needs k >= 1 and n >= 1")
        tail = _tail(1, k + 1, power=n)
        return Identity(tuple([X, Y] + tail), tuple([Y, X] + tail))
    if name == "kappa":
        n, j = params
        if n < 1 or not 0 <= j <= n:
            raise ValueError("kappa needs n >= 1 and 0 <= j <= n")
        lhs = []
        rhs = []
        for i in range(n + 1):
            lhs.extend([t_letter(i), X])
            rhs.extend([t_letter(i), X, X] if i == j else [t_letter(i), X])
        return Identity(tuple(lhs), tuple(rhs))
    if name == "perm":
        n, pi = params
        if n < 1:
            raise ValueError("perm needs n >= 1")
        pi = tuple(pi)
        if sorted(pi) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {pi}")
        zs = [i - 1 for i in range(1, n + 1)]  # z_i as letters a, b, c, ...
        permuted = [zs[p - 1] for p in pi]
        tail = []
        for i in range(1, n + 1):
            tail.extend([t_letter(i), zs[i - 1]])
        return Identity(
            tuple([X] + permuted + [X] + tail),
            tuple([X, X] + permuted + tail),
        )
    raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus the parameter ranges declared for instantiation."""

    name: str
    n_range: tuple  # inclusive (lo, hi)
    # kappa: j ranges over 0..n; delta: second parameter range; perm: all of S_n
    second_range: Optional[tuple] = None

    def instances(self) -> Iterator[tuple]:
        lo, hi = self.n_range
        for n in range(lo, hi + 1):
            if self.name == "kappa":
                for j in range(0, n + 1):
                    yield ("kappa", n, j)
            elif self.name == "delta":
                slo, shi = self.second_range or self.n_range
                for m in range(slo, shi + 1):
                    yield ("delta", n, m)
            elif self.name == "perm":
                for pi in permutations(range(1, n + 1)):
                    yield ("perm", n, pi)
            else:
                yield (self.name, n)

    def identities(self) -> Iterator[Identity]:
        for inst in self.instances():
            yield family(inst[0], *inst[1:])


@dataclass(frozen=True)
class IdentitySystem:
    """A finite set of identities plus bounded parametric families."""

    fixed: tuple = ()
    families: tuple = ()  # FamilySpec, ...
    dual_flag: bool = False

    def identities(self) -> list:
        out = list(self.fixed)
        for fam in self.families:
            for i in fam.identities():
                out.append(i.reversed() if self.dual_flag else i)
        return out

    def labelled_identities(self) -> list:
        out = [(str(i), i) for i in self.fixed]
        for fam in self.families:
            for inst in fam.instances():
                ident = family(inst[0], *inst[1:])
                if self.dual_flag:
                    ident = ident.reversed()
                label = f"{inst[0]}({', '.join(map(str, inst[1:]))})"
                out.append((label, ident))
        return out

    def contains(self, ident: Identity) -> bool:
        """Membership up to orientation (u = v counts for v = u too)."""
        for _, known in self.labelled_identities():
            if ident == known or ident == known.swapped():
                return True
        return False

    def letters(self) -> frozenset:
        out = frozenset()
        for i in self.identities():
            out |= i.letters()
        return out


def system(*idents, families: tuple = ()) -> IdentitySystem:
    fixed = tuple(parse_identity(i) if isinstance(i, str) else i for i in idents)
    return IdentitySystem(fixed=fixed, families=tuple(families))


def dual_system(sys: IdentitySystem) -> IdentitySystem:
    return IdentitySystem(
        fixed=tuple(i.reversed() for i in sys.fixed),
        families=sys.families,
        dual_flag=not sys.dual_flag,
    )


def parse_system(text: str) -> IdentitySystem:
    """Parse a system file: one identity per line, or a family line.

    Family lines look like ``family kappa n=1..2`` or
    ``family delta k=1..2 n=1..2``; ``#`` starts a comment.
    """
    fixed = []
    fams = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("family "):
            fams.append(_parse_family_line(line))
        else:
            fixed.append(parse_identity(line))
    return IdentitySystem(fixed=tuple(fixed), families=tuple(fams))


def _parse_range(token: str) -> tuple:
    _, _, spec = token.partition("=")
    if ".." in spec:
        lo, hi = spec.split("..")
        return (int(lo), int(hi))
    v = int(spec)
    return (v, v)


def _parse_family_line(line: str) -> FamilySpec:
    parts = line.split()
    name = parts[1]
    if name not in FAMILY_NAMES:
        raise IdentitySyntaxError(f"unknown family {name!r}")
    ranges = {}
    for token in parts[2:]:
        key = token.split("=", 1)[0]
        ranges[key] = _parse_range(token)
    if name == "delta":
        return FamilySpec(name, ranges.get("k", (1, 1)), ranges.get("n", (1, 1)))
    return FamilySpec(name, ranges.get("n", (1, 1)))
