"""Machine-checked replay of the supporting derivation chains.

Each item replays one deduction used by the containment arguments:
either a stored step-by-step chain (kept literal where the route
matters) or a bounded search, in both cases re-verified by
``verify_trace`` against the exact hypothesis system the deduction is
allowed to use.  ``run_replay_library`` runs everything and reports
one pass/fail entry per item.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

from . import criteria
from .normalize import limit_system, limit_word, insertion_identity, power_identity
from .rewrite import DerivationTrace, derive, make_step, verify_trace
from .systems import Identity, IdentitySystem, family, parse_identity
from .words import is_n_limited, letter, parse_word, word_str

X, Y = letter("x"), letter("y")


@dataclass
class ReplayResult:
    name: str
    passed: bool
    detail: str
    steps: int = 0

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "steps": self.steps,
            "detail": self.detail,
        }


def _searched(name, u, v, sys, len_cap, max_states=200_000) -> ReplayResult:
    trace, stats = derive(u, v, sys, len_cap=len_cap, max_states=max_states)
    if trace is None:
        return ReplayResult(name, False, f"no trace within budget ({stats.status})")
    ok, i, why = verify_trace(trace, sys)
    if not ok:
        return ReplayResult(name, False, f"step {i}: {why}")
    return ReplayResult(name, True, "derived and verified", len(trace))


def _verified(name, trace, sys, expect_end=None) -> ReplayResult:
    ok, i, why = verify_trace(trace, sys)
    if not ok:
        return ReplayResult(name, False, f"step {i}: {why}")
    if expect_end is not None and trace.end() != tuple(expect_end):
        return ReplayResult(
            name, False, f"trace ends at {word_str(trace.end())}, wanted {word_str(expect_end)}"
        )
    return ReplayResult(name, True, "stored chain verified", len(trace))


def observation_forward() -> ReplayResult:
    # the single-marker identity extends to the two-marker one by a
    # composite-marker substitution (k = 2, n = 2)
    sigma = parse_identity("yt1x^2 = y^2t1x^2")
    tau = parse_identity("yt1x^2t2x^2 = y^2t1x^2t2x^2")
    sys = IdentitySystem(fixed=(sigma, power_identity(2)))
    return _searched("observation-equivalence-forward", tau.lhs, tau.rhs, sys, len_cap=12)


def observation_backward() -> ReplayResult:
    sigma = parse_identity("yt1x^2 = y^2t1x^2")
    tau = parse_identity("yt1x^2t2x^2 = y^2t1x^2t2x^2")
    sys = IdentitySystem(fixed=(tau, power_identity(2)))
    return _searched("observation-equivalence-backward", sigma.lhs, sigma.rhs, sys, len_cap=12)


def companion_F_chain() -> ReplayResult:
    # from  xyx^2 = x^q y x^2  (q = 2) and x^2 = x^3, reach x^2yx^2
    # through the displayed intermediate x^(1+n(q-1)) y x^n = x^3yx^2
    premise = parse_identity("xyx^2 = x^2yx^2")
    pow2 = power_identity(2)
    sys = IdentitySystem(fixed=(premise, pow2))
    w0 = parse_word("xyx^2")
    s1 = make_step(premise, True, (), (), {X: (X,), Y: (Y,)}, expect_source=w0)
    s2 = make_step(premise, True, (X,), (), {X: (X,), Y: (Y,)}, expect_source=s1.target())
    s3 = make_step(pow2, False, (), parse_word("yx^2"), {X: (X,)}, expect_source=s2.target())
    trace = DerivationTrace(w0, (s1, s2, s3))
    return _verified("companion-F-final-chain", trace, sys, expect_end=parse_word("x^2yx^2"))


def companion_Q_collapse() -> ReplayResult:
    # x^2yx^2zx^2 = x^2yzx^2 from the two-marker bridge xyxzx = xyzx
    # (exponents p..t all 1) under the squared substitution
    bridge = parse_identity("xyxzx = xyzx")
    sys = IdentitySystem(fixed=(bridge, power_identity(2)))
    u = parse_word("x^2yx^2zx^2")
    st = make_step(
        bridge,
        True,
        (),
        (),
        {X: parse_word("x^2"), Y: (Y,), letter("z"): (letter("z"),)},
        expect_source=u,
    )
    trace = DerivationTrace(u, (st,))
    return _verified("companion-Q-collapse", trace, sys, expect_end=parse_word("x^2yzx^2"))


def companion_Q_insert() -> ReplayResult:
    collapse = parse_identity("x^2yx^2zx^2 = x^2yzx^2")
    sys = IdentitySystem(fixed=(collapse, power_identity(2)))
    return _searched(
        "companion-Q-insert",
        parse_word("x^2yzx^2"),
        parse_word("x^2yxzx^2"),
        sys,
        len_cap=10,
    )


def occurrence_deletion() -> ReplayResult:
    w = parse_word("axbxcxdxex")
    limited, trace = limit_word(w, 1, 0)
    if not is_n_limited(limited, 4):
        return ReplayResult("occurrence-deletion", False, "result not 4-limited")
    return _verified("occurrence-deletion", trace, limit_system(1, 0), expect_end=limited)


def kappa_lift() -> ReplayResult:
    k1, k2 = family("kappa", 1, 0), family("kappa", 2, 0)
    sys = IdentitySystem(fixed=(k1,))
    return _searched("kappa-lift", k2.lhs, k2.rhs, sys, len_cap=8)


def alpha_step() -> ReplayResult:
    a1, a2 = family("alpha", 1), family("alpha", 2)
    sys = IdentitySystem(fixed=(a1,))
    return _searched("alpha-step", a2.lhs, a2.rhs, sys, len_cap=10)


def delta_from_alpha() -> ReplayResult:
    d12, a1 = family("delta", 1, 2), family("alpha", 1)
    sys = IdentitySystem(fixed=(a1, parse_identity("xyx = xyx^2")))
    return _searched("delta-from-alpha", d12.lhs, d12.rhs, sys, len_cap=10)


def alpha_from_delta() -> ReplayResult:
    d12, a1 = family("delta", 1, 2), family("alpha", 1)
    sys = IdentitySystem(fixed=(d12, parse_identity("xyx = xyx^2")))
    return _searched("alpha-from-delta", a1.lhs, a1.rhs, sys, len_cap=10)


def delta_monotone_tail() -> ReplayResult:
    d11, d21 = family("delta", 1, 1), family("delta", 2, 1)
    sys = IdentitySystem(fixed=(d11,))
    return _searched("delta-monotone-tail", d21.lhs, d21.rhs, sys, len_cap=10)


def delta_monotone_power() -> ReplayResult:
    d11, d12 = family("delta", 1, 1), family("delta", 1, 2)
    sys = IdentitySystem(fixed=(d11,))
    return _searched("delta-monotone-power", d12.lhs, d12.rhs, sys, len_cap=10)


def h_swap_chain() -> ReplayResult:
    sys = IdentitySystem(
        fixed=(parse_identity("xyzxy = yxzxy"), parse_identity("xyxztx = xyxzxtx"))
    )
    return _searched(
        "h-swap-chain", parse_word("xyhxsytx"), parse_word("yxhxsytx"), sys, len_cap=9
    )


def insertion_from_pair() -> ReplayResult:
    sys = IdentitySystem(
        fixed=(parse_identity("xyx = xyx^2"), insertion_identity(2))
    )
    return _searched(
        "insertion-from-pair",
        parse_word("xyxztx"),
        parse_word("xyxzxtx"),
        sys,
        len_cap=10,
    )


def join_P1_support() -> ReplayResult:
    # both solved-word-problem varieties satisfy the whole basis above
    # them, checked by their exact criteria
    basis = (
        parse_identity("xyx = xyx^2"),
        parse_identity("x^2y^2 = y^2x^2"),
        parse_identity("xyzxy = yxzxy"),
        family("beta", 1),
        family("gamma_prime", 1),
        family("alpha", 1),
    )
    bad = []
    for ident in basis:
        if not criteria.holds_in_F(ident):
            bad.append(f"F fails {ident}")
        if not criteria.holds_in_Q(ident):
            bad.append(f"Q fails {ident}")
    if bad:
        return ReplayResult("join-P1-support", False, "; ".join(bad))
    return ReplayResult(
        "join-P1-support", True, "criteria confirm every basis identity", len(basis) * 2
    )


LIBRARY: List[Callable[[], ReplayResult]] = [
    observation_forward,
    observation_backward,
    companion_F_chain,
    companion_Q_collapse,
    companion_Q_insert,
    occurrence_deletion,
    kappa_lift,
    alpha_step,
    delta_from_alpha,
    alpha_from_delta,
    delta_monotone_tail,
    delta_monotone_power,
    h_swap_chain,
    insertion_from_pair,
    join_P1_support,
]


def run_replay_library() -> List[ReplayResult]:
    return [item() for item in LIBRARY]
