"""The variety catalog: every variety the workbench knows about, with
satisfaction, containment, and exclusion tests.

A variety is specified by a basis (an identity system), optionally an
exact satisfaction procedure (for the solved word problems), optionally
a set of generator monoids (exact semantics: the variety they
generate), and optionally a pool of verified finite members used for
refutation only.

Verdicts are three-valued and always carry evidence.  Route priority
for ``satisfies_variety``: exact procedure, then generators, then
member refutation, then derivation from the basis, then the bounded
congruence oracle; "false" can only come from an exact procedure or a
finite monoid (generator or verified member), "true" from a procedure,
generators, a verified trace, or the oracle.

The member pools are built on demand: Rees quotients whose membership
is brute-checked against the basis, and quotient monoids proposed by
the bounded congruence closure and then fully re-verified (see
``closure.quotient_monoid``).  Family-based bases are instantiated at
their declared desk-scale ranges throughout.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Tuple

from . import criteria
from .closure import BoundedCongruence, quotient_monoid, saturate
from .monoids import (
    BudgetExceeded,
    FiniteMonoid,
    dual_monoid,
    satisfies,
)
from .rees import build_rees
from .rewrite import Explorer, derive
from .systems import (
    FamilySpec,
    Identity,
    IdentitySystem,
    dual_system,
    family,
    parse_identity,
)
from .words import canonical_renaming, parse_word, rename, word_str

NINE = ("J", "dual-J", "K", "dual-K", "L", "M", "N", "P", "dual-P")


@dataclass(frozen=True)
class Budget:
    len_cap: int = 12
    max_states: int = 200_000
    oracle_len: int = 8
    oracle_letters: int = 2
    family_bound: int = 4
    satisfies_cap: int = 10**9


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Verdict:
    value: str  # "true" | "false" | "unknown"
    route: str
    evidence: dict = field(default_factory=dict)

    @property
    def is_true(self):
        return self.value == "true"

    @property
    def is_false(self):
        return self.value == "false"

    @property
    def definite(self):
        return self.value != "unknown"

    def negated(self) -> "Verdict":
        flip = {"true": "false", "false": "true", "unknown": "unknown"}
        return Verdict(flip[self.value], self.route, self.evidence)

    def to_json(self) -> dict:
        return {"value": self.value, "route": self.route, "evidence": self.evidence}


def true_v(route, **ev):
    return Verdict("true", route, ev)


def false_v(route, **ev):
    return Verdict("false", route, ev)


def unknown_v(route, **ev):
    return Verdict("unknown", route, ev)


@dataclass
class VarietySpec:
    name: str
    basis: Optional[IdentitySystem] = None
    exact: Optional[str] = None  # "trivial"|"SL"|"commutative-aperiodic"|"F"|"Q"
    exact_n: int = 0
    generator_words: tuple = ()  # tuple of word-tuples of words: one S(W) each
    dual_of: Optional[str] = None
    completely_regular: bool = False
    commutative: bool = False

    def basis_identities(self, family_bound: int) -> list:
        """(label, identity) for fixed identities and family instances,
        family parameters clipped to the declared ranges and the bound."""
        if self.basis is None:
            return []
        out = [(str(i), i) for i in self.basis.fixed]
        for fam in self.basis.families:
            lo, hi = fam.n_range
            clipped = FamilySpec(fam.name, (lo, min(hi, family_bound)), fam.second_range)
            for inst in clipped.instances():
                ident = family(inst[0], *inst[1:])
                if self.basis.dual_flag:
                    ident = ident.reversed()
                label = f"{inst[0]}({', '.join(map(str, inst[1:]))})"
                out.append((label, ident))
        return out


class Catalog:
    def __init__(self, specs: List[VarietySpec]):
        self.specs: Dict[str, VarietySpec] = {s.name: s for s in specs}
        self._generators: Dict[str, tuple] = {}
        self._members: Dict[str, tuple] = {}
        self._member_builders: Dict[str, Callable[["Catalog"], tuple]] = {}
        self._oracles: Dict[tuple, BoundedCongruence] = {}
        self._explorers: Dict[tuple, Explorer] = {}

    def __contains__(self, name):
        return name in self.specs

    def names(self):
        return sorted(self.specs)

    def spec(self, name: str) -> VarietySpec:
        if name not in self.specs:
            raise KeyError(f"unknown variety {name!r}")
        return self.specs[name]

    def register_members(self, name: str, builder):
        """builder(catalog) -> tuple of verified FiniteMonoid members."""
        self._member_builders[name] = builder

    def generators(self, name: str) -> tuple:
        if name not in self._generators:
            spec = self.spec(name)
            gens = []
            for words in spec.generator_words:
                gens.append(build_rees([parse_word(w) for w in words]).base)
            self._generators[name] = tuple(gens)
        return self._generators[name]

    def members(self, name: str) -> tuple:
        """Verified finite members used for refutation (may be empty)."""
        if name not in self._members:
            builder = self._member_builders.get(name)
            built = builder(self) if builder else ()
            self._members[name] = tuple(m for m in built if m is not None)
        return self._members[name]

    def oracle(self, name: str, k: int, L: int) -> BoundedCongruence:
        key = (name, k, L)
        if key not in self._oracles:
            self._oracles[key] = saturate(self.spec(name).basis, k, L)
        return self._oracles[key]

    def explorer(self, name: str, budget: Budget) -> Explorer:
        key = (name, budget.len_cap)
        if key not in self._explorers:
            self._explorers[key] = Explorer(self.spec(name).basis, budget.len_cap)
        return self._explorers[key]


# ---------------------------------------------------------------------------
# satisfaction and containment


def satisfies_variety(
    cat: Catalog, name: str, ident: Identity, budget: Budget = DEFAULT_BUDGET
) -> Verdict:
    spec = cat.spec(name)
    if ident.is_trivial:
        return true_v("trivial-identity")
    if spec.exact == "trivial":
        return true_v("criterion:trivial")
    if spec.exact == "SL":
        ok = criteria.holds_in_SL(ident)
        return (true_v if ok else false_v)("criterion:SL")
    if spec.exact == "commutative-aperiodic":
        ok = criteria.holds_in_commutative_aperiodic(ident, spec.exact_n)
        return (true_v if ok else false_v)(
            f"criterion:commutative-aperiodic(n={spec.exact_n})"
        )
    if spec.exact == "F":
        ok = criteria.holds_in_F(ident)
        return (true_v if ok else false_v)("criterion:F")
    if spec.exact == "Q":
        ok = criteria.holds_in_Q(ident)
        return (true_v if ok else false_v)("criterion:Q")

    gens = cat.generators(name)
    if gens:
        for g in gens:
            try:
                holds, counter = satisfies(g, ident, cap=budget.satisfies_cap)
            except BudgetExceeded as e:
                return unknown_v("generators:budget", detail=str(e))
            if not holds:
                readable = {
                    word_str((x,)): g.label(v) for x, v in sorted(counter.items())
                }
                return false_v(
                    "generators", monoid=g.name or name, assignment=readable
                )
        return true_v("generators", monoids=[g.name or name for g in gens])

    if spec.basis is None:
        return unknown_v("no-basis")

    for m in cat.members(name):
        try:
            holds, counter = satisfies(m, ident, cap=budget.satisfies_cap)
        except BudgetExceeded:
            continue
        if not holds:
            readable = {word_str((x,)): m.label(v) for x, v in sorted(counter.items())}
            return false_v("member-witness", monoid=m.name, assignment=readable)

    if (
        len(ident.lhs) <= budget.len_cap
        and len(ident.rhs) <= budget.len_cap
    ):
        trace, stats = derive(
            ident.lhs,
            ident.rhs,
            spec.basis,
            len_cap=budget.len_cap,
            max_states=budget.max_states,
            explorer=cat.explorer(name, budget),
        )
        if trace is not None:
            return true_v("derivation", steps=len(trace), states=stats.states)

    mapping = canonical_renaming([ident.lhs, ident.rhs])
    k = len(mapping)
    if (
        k <= budget.oracle_letters
        and len(ident.lhs) <= budget.oracle_len
        and len(ident.rhs) <= budget.oracle_len
    ):
        bc = cat.oracle(name, k, budget.oracle_len)
        if bc.same_class(rename(ident.lhs, mapping), rename(ident.rhs, mapping)):
            return true_v("oracle", bound=budget.oracle_len)

    return unknown_v("budget", detail="no route reached a definite verdict")


def includes(
    cat: Catalog, v_name: str, w_name: str, budget: Budget = DEFAULT_BUDGET
) -> Verdict:
    """Verdict on V <= W: V satisfies every identity in W's basis."""
    if v_name == w_name:
        return true_v("same-variety")
    w = cat.spec(w_name)
    idents = w.basis_identities(budget.family_bound)
    if not idents:
        return unknown_v("no-basis", detail=f"{w_name} is generator-defined")
    sub_results = {}
    for label, ident in idents:
        r = satisfies_variety(cat, v_name, ident, budget)
        sub_results[label] = r.value
        if r.is_false:
            return false_v(
                "basis-identity-fails",
                identity=label,
                sub_route=r.route,
                sub_evidence=r.evidence,
            )
    if any(v == "unknown" for v in sub_results.values()):
        return unknown_v("basis-identity-unknown", checks=sub_results)
    note = {}
    if w.basis.families:
        note["family_bound"] = budget.family_bound
    return true_v("basis-satisfaction", checks=sub_results, **note)


def _eq4(n: int) -> Identity:
    return parse_identity(f"x^{n} = x^{n + 1}")


def _eq9(n: int) -> Identity:
    return parse_identity(f"xyx^{n} = x^{n}yx^{n}")


def _eq10(n: int) -> Identity:
    return parse_identity(f"x^{n}yzx^{n} = x^{n}yxzx^{n}")


def _hypothesis_check(cat, name, n, budget) -> Optional[Verdict]:
    spec = cat.spec(name)
    if spec.completely_regular:
        return unknown_v(
            "hypothesis-unmet", detail=f"{name} is completely regular"
        )
    r4 = satisfies_variety(cat, name, _eq4(n), budget)
    if not r4.is_true:
        return unknown_v(
            "hypothesis-unmet",
            detail=f"{name} not confirmed to satisfy x^{n} = x^{n + 1}",
            sub=r4.to_json(),
        )
    return None


def contains_F(cat, name, n, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Verdict on F <= V, via: F <= V iff V does not satisfy
    xyx^n = x^n y x^n (valid for non-completely-regular V with
    x^n = x^(n+1)); requires n >= 2."""
    if n < 2:
        return unknown_v("hypothesis-unmet", detail="needs n >= 2")
    bad = _hypothesis_check(cat, name, n, budget)
    if bad:
        return bad
    return satisfies_variety(cat, name, _eq9(n), budget).negated()


def contains_Q(cat, name, n, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Verdict on Q <= V, via the companion criterion with
    x^n y z x^n = x^n y x z x^n."""
    bad = _hypothesis_check(cat, name, n, budget)
    if bad:
        return bad
    return satisfies_variety(cat, name, _eq10(n), budget).negated()


def contains_P(cat, name, k, n, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Verdict on P_(k+1) <= V; hypotheses: F and Q both contained and
    x^n = x^(n+1) holds."""
    bad = _hypothesis_check(cat, name, max(n, 2), budget)
    if bad:
        return bad
    cf = contains_F(cat, name, max(n, 2), budget)
    cq = contains_Q(cat, name, max(n, 2), budget)
    if not (cf.is_true and cq.is_true):
        return unknown_v(
            "hypothesis-unmet",
            detail="F v Q <= V not confirmed",
            contains_F=cf.to_json(),
            contains_Q=cq.to_json(),
        )
    return satisfies_variety(cat, name, family("delta", k, n), budget).negated()


def excludes_nine(cat, name, n, budget: Budget = DEFAULT_BUDGET):
    """Per almost-Cross variety W, a verdict on W <= V; the overall
    prediction is Cross exactly when all nine are excluded."""
    per = {}
    for w in NINE:
        contained = includes(cat, w, name, budget)
        per[w] = contained.negated()  # verdict on "W excluded from V"
    values = {w: v.value for w, v in per.items()}
    if all(v == "true" for v in values.values()):
        overall = "cross"
    elif any(v == "false" for v in values.values()):
        overall = "non-cross"
    else:
        overall = "unknown"
    return per, overall


FIG1_BOTTOM = (
    # (V, W, expected relation: V <= W?)
    ("T", "SL", True),
    ("SL", "T", False),
    ("SL", "C", True),
    ("C", "SL", False),
    ("C", "D", True),
    ("D", "C", False),
    ("D", "E", True),
    ("E", "D", False),
    ("E", "F", True),
    ("F", "E", False),
    ("D", "dual-E", True),
    ("dual-E", "D", False),
    ("F", "P1", True),
    ("Q", "P1", True),
    ("Q", "F", False),
    ("F", "Q", False),
)


def verify_fig1_bottom(cat: Catalog, budget: Budget = DEFAULT_BUDGET):
    """Check the bottom inclusions and non-inclusions of the subvariety
    picture; every verdict must be definite and match."""
    out = []
    for v, w, expected in FIG1_BOTTOM:
        verdict = includes(cat, v, w, budget)
        ok = verdict.definite and verdict.is_true == expected
        out.append(
            {
                "check": f"{v} <= {w}",
                "expected": expected,
                "verdict": verdict.value,
                "route": verdict.route,
                "ok": ok,
                "evidence": verdict.evidence,
            }
        )
    return out


# ---------------------------------------------------------------------------
# catalog definition text and parsing

CATALOG_TEXT = """
variety T
  completely-regular
  commutative
  exact trivial
  identity x =

variety SL
  completely-regular
  commutative
  exact SL
  identity x = x^2
  identity xy = yx

variety A1
  commutative
  identity x = x^2
  identity xy = yx

variety A2
  identity x^2 = x^3
  identity x^2y^2 = y^2x^2

variety A3
  identity x^3 = x^4
  identity x^3y^3 = y^3x^3

variety A4
  identity x^4 = x^5
  identity x^4y^4 = y^4x^4

variety C
  commutative
  exact commutative-aperiodic 2
  identity x^2 = x^3
  identity xy = yx

variety D
  identity x^2 = x^3
  identity x^2y = xyx
  identity xyx = yx^2

variety E
  identity x^2 = x^3
  identity x^2y = xyx
  identity x^2y^2 = y^2x^2

variety dual-E
  dual-of E

variety F
  exact F
  identity xyx = xyx^2
  identity x^2y = x^2yx
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy

variety Q
  exact Q
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyx^2 = x^2yx^2

variety R
  identity x^2y^2 = y^2x^2
  identity xzxyxty = xzyxty

variety O
  identity xtyzxy = xtyzyx
  identity xtxyzy = xtyxzy

variety P
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y

variety H
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y
  identity xyxztx = xyxzxtx

variety P1
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y
  identity xyt1xt2y = yxt1xt2y

variety P2
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y
  family alpha n=2

variety P3
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y
  family alpha n=3

variety P4
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity yx^2t2y = xyxt2y
  identity x^2yt2y = xyxt2y
  family alpha n=4

variety dual-P
  dual-of P

variety K
  identity xyx = xyx^2
  identity x^2y = x^2yx
  identity x^2y^2 = y^2x^2

variety dual-K
  dual-of K

variety J
  identity xyx = xyx^2
  identity x^2y^2 = y^2x^2
  identity xyzxy = yxzxy
  identity xyxztx = xyxzxtx
  family perm n=1..3

variety dual-J
  dual-of J

variety L
  identity xtyzxy = xtyzyx
  identity xtxyzy = xtyxzy
  identity x^2 = x^3
  identity x^2y = yx^2
  identity xyt1xt2y = yxt1xt2y

variety M
  generators xzxyty

variety N
  generators xyzxty xtyzxy
"""


def parse_catalog(text: str) -> Catalog:
    specs: List[VarietySpec] = []
    cur: Optional[dict] = None

    def flush():
        nonlocal cur
        if cur is None:
            return
        basis = None
        if cur["identities"] or cur["families"]:
            basis = IdentitySystem(
                fixed=tuple(cur["identities"]), families=tuple(cur["families"])
            )
        specs.append(
            VarietySpec(
                name=cur["name"],
                basis=basis,
                exact=cur["exact"],
                exact_n=cur["exact_n"],
                generator_words=cur["generators"],
                dual_of=cur["dual_of"],
                completely_regular=cur["cr"],
                commutative=cur["comm"],
            )
        )
        cur = None

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("variety "):
            flush()
            cur = {
                "name": stripped.split(None, 1)[1],
                "identities": [],
                "families": [],
                "exact": None,
                "exact_n": 0,
                "generators": (),
                "dual_of": None,
                "cr": False,
                "comm": False,
            }
            continue
        if cur is None:
            raise ValueError(f"directive outside a variety block: {line!r}")
        if stripped.startswith("identity "):
            cur["identities"].append(parse_identity(stripped[len("identity ") :]))
        elif stripped.startswith("family "):
            from .systems import _parse_family_line

            cur["families"].append(_parse_family_line(stripped))
        elif stripped.startswith("exact "):
            parts = stripped.split()
            cur["exact"] = parts[1]
            if len(parts) > 2:
                cur["exact_n"] = int(parts[2])
        elif stripped.startswith("generators "):
            words = stripped.split()[1:]
            cur["generators"] = (tuple(words),)
        elif stripped.startswith("dual-of "):
            cur["dual_of"] = stripped.split(None, 1)[1]
        elif stripped == "completely-regular":
            cur["cr"] = True
        elif stripped == "commutative":
            cur["comm"] = True
        else:
            raise ValueError(f"unknown catalog directive: {line!r}")
    flush()

    by_name = {s.name: s for s in specs}
    resolved: List[VarietySpec] = []
    for s in specs:
        if s.dual_of:
            base = by_name[s.dual_of]
            if base.basis is None:
                raise ValueError(f"dual-of target {base.name} has no basis")
            s = replace(
                s,
                basis=dual_system(base.basis),
                completely_regular=base.completely_regular,
                commutative=base.commutative,
            )
        resolved.append(s)
    return Catalog(resolved)


def format_catalog(cat: Catalog) -> str:
    lines = []
    for name in cat.names():
        s = cat.spec(name)
        lines.append(f"variety {name}")
        if s.completely_regular:
            lines.append("  completely-regular")
        if s.commutative:
            lines.append("  commutative")
        if s.exact:
            suffix = f" {s.exact_n}" if s.exact == "commutative-aperiodic" else ""
            lines.append(f"  exact {s.exact}{suffix}")
        if s.dual_of:
            lines.append(f"  dual-of {s.dual_of}")
        elif s.basis is not None:
            for i in s.basis.fixed:
                lines.append(f"  identity {i}")
            for f in s.basis.families:
                rng = f"n={f.n_range[0]}..{f.n_range[1]}"
                if f.second_range:
                    rng = f"k={f.n_range[0]}..{f.n_range[1]} n={f.second_range[0]}..{f.second_range[1]}"
                lines.append(f"  family {f.name} {rng}")
        if s.generator_words:
            for words in s.generator_words:
                lines.append("  generators " + " ".join(words))
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# member pools (verified witnesses for refutation)


def _verified_rees(cat: Catalog, variety: str, words, budget=DEFAULT_BUDGET):
    """S(W) if it satisfies the variety's declared basis, else None."""
    spec = cat.spec(variety)
    m = build_rees([parse_word(w) for w in words]).base
    for label, ident in spec.basis_identities(budget.family_bound):
        try:
            holds, _ = satisfies(m, ident)
        except BudgetExceeded:
            return None
        if not holds:
            return None
    return m


def _closure_member(
    cat: Catalog,
    variety: str,
    k: int = 2,
    tries=(8, 9, 10),
    saturate_with: Optional[IdentitySystem] = None,
):
    """Quotient-monoid member proposed by the bounded closure and
    re-verified against the variety's declared basis."""
    spec = cat.spec(variety)
    verify = IdentitySystem(
        fixed=tuple(i for _, i in spec.basis_identities(DEFAULT_BUDGET.family_bound))
    )
    base_sys = saturate_with or spec.basis
    for L in tries:
        bc = saturate(base_sys, k, L)
        rep = quotient_monoid(bc, name=f"free{variety}({k})", verify_against=verify)
        if rep.monoid is not None:
            return rep.monoid
    return None


def _dual_members(cat: Catalog, of: str):
    return tuple(dual_monoid(m) for m in cat.members(of))


def _register_builtin_members(cat: Catalog) -> None:
    cat.register_members("D", lambda c: (_verified_rees(c, "D", ["xy"]),))
    cat.register_members("L", lambda c: (_verified_rees(c, "L", ["xyx"]),))
    cat.register_members("E", lambda c: (_closure_member(c, "E"),))
    cat.register_members("K", lambda c: (_closure_member(c, "K"),))
    cat.register_members("P", lambda c: (_closure_member(c, "P"),))
    cat.register_members("H", lambda c: (_closure_member(c, "H"),))
    cat.register_members("O", lambda c: (_verified_rees(c, "O", ["xyx"]),))
    cat.register_members("R", lambda c: (_closure_member(c, "R"),))

    def j_members(c):
        spec = c.spec("J")
        reduced = IdentitySystem(
            fixed=spec.basis.fixed, families=(FamilySpec("perm", (1, 1)),)
        )
        return (_closure_member(c, "J", saturate_with=reduced),)

    cat.register_members("J", j_members)
    cat.register_members("dual-E", lambda c: _dual_members(c, "E"))
    cat.register_members("dual-K", lambda c: _dual_members(c, "K"))
    cat.register_members("dual-J", lambda c: _dual_members(c, "J"))
    cat.register_members("dual-P", lambda c: _dual_members(c, "P"))


@functools.lru_cache(maxsize=None)
def builtin_catalog() -> Catalog:
    cat = parse_catalog(CATALOG_TEXT)
    _register_builtin_members(cat)
    return cat


def load_catalog(path) -> Catalog:
    with open(path) as fh:
        cat = parse_catalog(fh.read())
    _register_builtin_members_safe(cat)
    return cat


def _register_builtin_members_safe(cat: Catalog) -> None:
    """Attach the builtin member pools to names the file also defines."""
    ref = parse_catalog(CATALOG_TEXT)
    _register_builtin_members(ref)
    for name, builder in ref._member_builders.items():
        if name in cat:
            cat.register_members(name, builder)
