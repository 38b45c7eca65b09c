"""Elementary deductions and bounded proof search.

A rewrite step applies one identity of a system inside a context under
an endomorphism: the source word is ``a . xi(s) . b`` and the target is
``a . xi(t) . b`` where s = t (or its reversal, for backward steps) is
an identity of the system.  A derivation trace is a chain of such
steps; replay is mechanical and ``verify_trace`` re-checks everything.

Matching an identity side against a factor is a backtracking pattern
match in which every letter of the side binds a (possibly empty) word.
Letters that occur only on the written side are completed from a small
ambient alphabet, one letter or the empty word per fresh letter.

``derive`` is breadth-first on step count, expanding words of each
frontier in (length, lexicographic) order, so the traces it returns
are reproducible across runs.  Absence of a trace is always reported
as inconclusive, never as refutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .systems import Identity, IdentitySystem, parse_identity
from .words import Word, parse_word, substitute, word_str

Binding = Dict[int, Word]


def match_at(pattern: Word, target: Word, start: int) -> Iterator[Tuple[Binding, int]]:
    """Yield (binding, end) for every way pattern matches a factor of
    target beginning at ``start``.  Bindings may be empty words; the
    enumeration is deterministic (shorter bindings first)."""

    n = len(target)

    def rec(pi: int, ti: int, binding: Binding):
        if pi == len(pattern):
            yield dict(binding), ti
            return
        x = pattern[pi]
        bound = binding.get(x)
        if bound is not None:
            end = ti + len(bound)
            if end <= n and target[ti:end] == bound:
                yield from rec(pi + 1, end, binding)
            return
        rest = pattern[pi + 1 :]
        fixed_cost = sum(len(binding[y]) for y in rest if y in binding)
        copies = 1 + sum(1 for y in rest if y == x)
        max_len = (n - ti - fixed_cost) // copies
        for length in range(0, max_len + 1):
            binding[x] = target[ti : ti + length]
            yield from rec(pi + 1, ti + length, binding)
        del binding[x]

    yield from rec(0, start, {})


@dataclass(frozen=True)
class RewriteStep:
    label: str
    identity: Identity
    forward: bool
    left: Word
    right: Word
    subst: tuple  # sorted ((letter, word), ...)

    @property
    def matched_side(self) -> Word:
        return self.identity.lhs if self.forward else self.identity.rhs

    @property
    def written_side(self) -> Word:
        return self.identity.rhs if self.forward else self.identity.lhs

    def binding(self) -> Binding:
        return {x: w for x, w in self.subst}

    def source(self) -> Word:
        return self.left + substitute(self.matched_side, self.binding()) + self.right

    def target(self) -> Word:
        return self.left + substitute(self.written_side, self.binding()) + self.right

    def inverted(self) -> "RewriteStep":
        return RewriteStep(
            self.label, self.identity, not self.forward, self.left, self.right, self.subst
        )

    def __str__(self) -> str:
        direction = "fwd" if self.forward else "bwd"
        xi = ",".join(f"{word_str((x,))}:{word_str(w)}" for x, w in self.subst)
        return (
            f"{direction} {self.identity} a={word_str(self.left)} "
            f"b={word_str(self.right)} xi={{{xi}}}"
        )


class StepError(ValueError):
    pass


def make_step(
    identity: Identity,
    forward: bool,
    left: Word,
    right: Word,
    binding: Binding,
    label: str = "",
    expect_source: Optional[Word] = None,
) -> RewriteStep:
    step = RewriteStep(
        label or str(identity),
        identity,
        forward,
        tuple(left),
        tuple(right),
        tuple(sorted((x, tuple(w)) for x, w in binding.items())),
    )
    if expect_source is not None and step.source() != tuple(expect_source):
        raise StepError(
            f"context/substitution mismatch: expected {word_str(expect_source)}, "
            f"step rebuilds {word_str(step.source())}"
        )
    return step


def apply_step(step: RewriteStep) -> Word:
    return step.target()


@dataclass(frozen=True)
class DerivationTrace:
    start: Word
    steps: tuple

    def end(self) -> Word:
        return self.steps[-1].target() if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "DerivationTrace":
        steps = tuple(s.inverted() for s in reversed(self.steps))
        return DerivationTrace(self.end(), steps)

    def then(self, other: "DerivationTrace") -> "DerivationTrace":
        if self.end() != other.start:
            raise StepError("traces do not chain")
        return DerivationTrace(self.start, self.steps + other.steps)

    def render(self) -> str:
        return "\n".join(str(s) for s in self.steps)


def verify_trace(trace: DerivationTrace, sys: IdentitySystem):
    """(ok, failing_index, reason): replay every step, check chaining
    and membership of each step's identity in the system (orientation
    insensitive, family instances included)."""
    current = trace.start
    for i, step in enumerate(trace.steps):
        if step.source() != current:
            return False, i, (
                f"chain break: step source {word_str(step.source())} != "
                f"current {word_str(current)}"
            )
        if not sys.contains(step.identity):
            return False, i, f"identity not in system: {step.identity}"
        current = step.target()
    return True, None, None


def parse_trace(text: str, start: Word) -> DerivationTrace:
    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        steps.append(_parse_step_line(line))
    return DerivationTrace(tuple(start), tuple(steps))


def _parse_step_line(line: str) -> RewriteStep:
    tokens = line.split()
    if len(tokens) < 4:
        raise StepError(f"malformed step line: {line!r}")
    direction = tokens[0]
    xi_tok = tokens[-1]
    b_tok = tokens[-2]
    a_tok = tokens[-3]
    ident_text = " ".join(tokens[1:-3])
    if not (a_tok.startswith("a=") and b_tok.startswith("b=") and xi_tok.startswith("xi={")):
        raise StepError(f"malformed step line: {line!r}")
    identity = parse_identity(ident_text)
    left = parse_word(a_tok[2:])
    right = parse_word(b_tok[2:])
    binding = {}
    body = xi_tok[4:].rstrip("}")
    if body:
        for part in body.split(","):
            name, _, image = part.partition(":")
            binding[parse_word(name)[0]] = parse_word(image)
    return make_step(identity, direction == "fwd", left, right, binding)


def compile_system(sys: IdentitySystem, len_cap: int) -> list:
    """(label, identity) pairs: fixed identities plus family instances
    whose sides fit within len_cap."""
    out = []
    for label, ident in sys.labelled_identities():
        if len(ident.lhs) <= len_cap and len(ident.rhs) <= len_cap:
            out.append((label, ident))
    return out


class _Rule:
    """One direction of one identity, precompiled for fast matching.

    Letters of the matched side get dense slots 0..npat-1 (in first-
    occurrence order); letters occurring only on the written side get
    the following slots and are completed from the ambient alphabet.
    """

    __slots__ = (
        "label",
        "identity",
        "forward",
        "pat",
        "out",
        "slot_letters",
        "npat",
        "nfresh",
        "rest_cost",
        "copies",
    )

    def __init__(self, label: str, identity: Identity, forward: bool):
        self.label = label
        self.identity = identity
        self.forward = forward
        matched = identity.lhs if forward else identity.rhs
        written = identity.rhs if forward else identity.lhs
        slots: Dict[int, int] = {}
        for x in matched:
            if x not in slots:
                slots[x] = len(slots)
        self.npat = len(slots)
        for x in written:
            if x not in slots:
                slots[x] = len(slots)
        self.nfresh = len(slots) - self.npat
        self.slot_letters = tuple(
            sorted(slots, key=slots.get)
        )
        self.pat = tuple(slots[x] for x in matched)
        self.out = tuple(slots[x] for x in written)
        # per pattern position: the cost of already-bound later slots is
        # dynamic, so store (copies of this slot in the rest, rest slots)
        self.copies = tuple(
            1 + self.pat[i + 1 :].count(self.pat[i]) for i in range(len(self.pat))
        )
        self.rest_cost = tuple(self.pat[i + 1 :] for i in range(len(self.pat)))

    def matches(self, w: Word, start: int) -> list:
        """All (end, bind) with w[start:end] = image of the matched side.

        ``bind`` is a tuple of npat words in slot order; enumeration is
        deterministic with shorter bindings first.
        """
        n = len(w)
        pat = self.pat
        npos = len(pat)
        results: list = []
        bind: list = [None] * self.npat

        def rec(pi: int, ti: int):
            if pi == npos:
                results.append((ti, tuple(bind)))
                return
            s = pat[pi]
            bound = bind[s]
            if bound is not None:
                end = ti + len(bound)
                if end <= n and w[ti:end] == bound:
                    rec(pi + 1, end)
                return
            fixed = 0
            for t in self.rest_cost[pi]:
                if bind[t] is not None:
                    fixed += len(bind[t])
            max_len = (n - ti - fixed) // self.copies[pi]
            for length in range(0, max_len + 1):
                bind[s] = w[ti : ti + length]
                rec(pi + 1, ti + length)
            bind[s] = None

        rec(0, start)
        return results

    def image_len(self, bind) -> int:
        return sum(len(bind[s]) for s in self.out)

    def image(self, bind) -> Word:
        out: list = []
        for s in self.out:
            out.extend(bind[s])
        return tuple(out)


class Explorer:
    """Caches one-step neighbourhoods for a fixed system and budget."""

    def __init__(
        self,
        sys: IdentitySystem,
        len_cap: int,
        ambient: Sequence[int] = (),
        fresh_cap: int = 1,
    ):
        self.sys = sys
        self.len_cap = len_cap
        self.fresh_cap = fresh_cap
        self.ambient = tuple(sorted(set(ambient)))
        self.compiled = compile_system(sys, len_cap)
        self.rules = []
        for label, ident in self.compiled:
            self.rules.append(_Rule(label, ident, True))
            self.rules.append(_Rule(label, ident, False))
        self._step_cache: Dict[Word, list] = {}
        self._target_cache: Dict[Word, list] = {}

    def _fresh_words(self, ambient) -> list:
        candidates: list = [()]
        layer: list = [()]
        for _ in range(self.fresh_cap):
            layer = [w + (x,) for w in layer for x in ambient]
            candidates.extend(layer)
        return candidates

    def _expansions(self, w: Word):
        """Yield (rule, start, end, full_bind) in deterministic order."""
        ambient = tuple(sorted(set(self.ambient) | set(w)))
        fresh_words = self._fresh_words(ambient)
        n = len(w)
        for rule in self.rules:
            nslots = rule.npat + rule.nfresh
            for start in range(n + 1):
                for end, bind in rule.matches(w, start):
                    if rule.nfresh == 0:
                        yield rule, start, end, bind
                        continue
                    completions = [bind]
                    for _ in range(rule.nfresh):
                        completions = [
                            c + (fw,) for c in completions for fw in fresh_words
                        ]
                    for full in completions:
                        yield rule, start, end, full

    def targets_from(self, w: Word) -> list:
        """Sorted distinct one-step results within the length cap."""
        cached = self._target_cache.get(w)
        if cached is not None:
            return cached
        n = len(w)
        cap = self.len_cap
        seen = set()
        for rule, start, end, bind in self._expansions(w):
            new_len = n - (end - start) + rule.image_len(bind)
            if new_len > cap:
                continue
            tgt = w[:start] + rule.image(bind) + w[end:]
            if tgt != w:
                seen.add(tgt)
        out = sorted(seen, key=lambda v: (len(v), v))
        self._target_cache[w] = out
        return out

    def steps_from(self, w: Word) -> list:
        """One RewriteStep per distinct target, deterministic order."""
        cached = self._step_cache.get(w)
        if cached is not None:
            return cached
        out = []
        seen = set()
        n = len(w)
        cap = self.len_cap
        for rule, start, end, bind in self._expansions(w):
            new_len = n - (end - start) + rule.image_len(bind)
            if new_len > cap:
                continue
            tgt = w[:start] + rule.image(bind) + w[end:]
            if tgt == w or tgt in seen:
                continue
            seen.add(tgt)
            subst = tuple(
                sorted((x, bind[s]) for s, x in enumerate(rule.slot_letters))
            )
            out.append(
                RewriteStep(rule.label, rule.identity, rule.forward, w[:start], w[end:], subst)
            )
        self._step_cache[w] = out
        return out

    def neighbors(self, w: Word) -> list:
        return self.targets_from(w)


def neighbors(w: Word, sys: IdentitySystem, len_cap: int, ambient=()) -> list:
    """All words reachable from w by one step, within the length cap."""
    if len_cap < len(w):
        raise ValueError("len_cap must be at least len(w)")
    return Explorer(sys, len_cap, ambient=ambient).neighbors(w)


@dataclass
class SearchStats:
    states: int
    found: bool
    status: str  # "found" | "exhausted:max_states" | "exhausted:component"


def derive(
    u: Word,
    v: Word,
    sys: IdentitySystem,
    len_cap: int = 12,
    max_states: int = 10**6,
    explorer: Optional[Explorer] = None,
    fresh_cap: int = 1,
):
    """Bounded search for a derivation of u = v from the system.

    Returns (trace_or_None, stats); a missing trace is inconclusive.
    """
    u, v = tuple(u), tuple(v)
    if explorer is None:
        explorer = Explorer(
            sys, len_cap, ambient=sorted(set(u) | set(v)), fresh_cap=fresh_cap
        )
    if u == v:
        return DerivationTrace(u, ()), SearchStats(1, True, "found")
    if len(u) > len_cap or len(v) > len_cap:
        raise ValueError("endpoints exceed len_cap")
    parents: Dict[Word, Tuple[Word, RewriteStep]] = {u: None}
    frontier = [u]
    states = 1

    def rebuild(end: Word) -> DerivationTrace:
        chain = []
        cur = end
        while parents[cur] is not None:
            prev, step = parents[cur]
            chain.append(step)
            cur = prev
        chain.reverse()
        return DerivationTrace(u, tuple(chain))

    while frontier:
        frontier.sort(key=lambda w: (len(w), w))
        nxt = []
        for w in frontier:
            for step in explorer.steps_from(w):
                tgt = step.target()
                if tgt in parents:
                    continue
                parents[tgt] = (w, step)
                states += 1
                if tgt == v:
                    return rebuild(v), SearchStats(states, True, "found")
                if states >= max_states:
                    return None, SearchStats(states, False, "exhausted:max_states")
                nxt.append(tgt)
        frontier = nxt
    return None, SearchStats(states, False, "exhausted:component")
