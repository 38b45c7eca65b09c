"""Word limiting and rigid-identity shortening, with verifiable traces.

``limit_word`` removes surplus letter occurrences: whenever a letter
occurs more than 2n+2 times, its (n+2)-th occurrence can be deleted by
a short chain of rewrites -- pump the j-th slot of the two flanking
occurrence windows up to a run of n via the kappa identity, delete the
middle occurrence with  x^n y x z x^n -> x^n y z x^n,  then unpump.
Iterating yields a (2n+2)-limited word and a trace certifying the
whole transformation.

``normalize_rigid`` shortens identities of the rigid shape

    x^(e0) t1 x^(e1) ... tm x^(em)  =  x^(f0) t1 x^(f1) ... tm x^(fm)

(t1..tm marker letters, all exponents between 1 and n, both sides
(n+1)-free).  For m > 2n the middle slots n..m-n are pumped to x^n on
both sides via kappa and the equal middles collapse to a single
t x^n block, giving an equivalent identity whose sides have length at
most n + (n^2 - 1) + (n + 1) + n(n + 1).  The collapse is an
axiom-level equivalence; both directions are returned as verifiable
derivations (the collapsed identity derives from the pumped one by an
empty-marker substitution plus power pumping, and conversely by one
composite-marker substitution).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .rewrite import DerivationTrace, RewriteStep, make_step
from .systems import FamilySpec, Identity, IdentitySystem, family, parse_identity
from .words import T_BASE, Word, letter, occurrence_positions, word_str

X = letter("x")


class ShapeError(ValueError):
    pass


def power_identity(n: int) -> Identity:
    return parse_identity(f"x^{n} = x^{n + 1}")


def insertion_identity(n: int) -> Identity:
    return parse_identity(f"x^{n}yzx^{n} = x^{n}yxzx^{n}")


def limit_system(n: int, j: int) -> IdentitySystem:
    """Context for limiting traces: x^n = x^(n+1), kappa(n, j), and the
    occurrence-insertion identity."""
    return IdentitySystem(
        fixed=(power_identity(n), family("kappa", n, j), insertion_identity(n))
    )


def _kappa_window_step(
    w: Word, c: int, n: int, j: int, window_start_occ: int, insert: bool
) -> RewriteStep:
    """Kappa step pumping (insert=True) or unpumping the occurrence at
    window slot j, where the window covers n+1 (resp. n+2) consecutive
    occurrences of c starting at the given occurrence index."""
    kap = family("kappa", n, j)
    positions = occurrence_positions(w, c)
    need = n + 1 if insert else n + 2
    window = positions[window_start_occ : window_start_occ + need]
    if len(window) != need:
        raise ShapeError(f"not enough occurrences for a kappa window at {window_start_occ}")
    binding = {X: (c,)}
    if insert:
        # lhs = t0 x t1 x ... tn x; slot i's marker binds the gap before
        # the i-th matched occurrence
        prev = window[0]
        binding[T_BASE + 0] = ()
        for i in range(1, n + 1):
            binding[T_BASE + i] = w[window[i - 1] + 1 : window[i]]
        left, right = w[: window[0]], w[window[n] + 1 :]
        return make_step(
            kap, True, left, right, binding, label=f"kappa({n}, {j})", expect_source=w
        )
    # matching the doubled side: slot j covers two adjacent occurrences
    if window[j] + 1 != window[j + 1]:
        raise ShapeError("kappa unpump needs an adjacent occurrence pair at slot j")
    binding[T_BASE + 0] = ()
    gaps = []
    for i in range(1, need):
        gaps.append(w[window[i - 1] + 1 : window[i]])
    # gaps[i-1] sits before matched occurrence i; skip the doubled slot
    idx = 0
    for i in range(1, n + 1):
        if i == j + 1:
            idx += 1  # the pair is consumed by the x^2 at slot j
        binding[T_BASE + i] = gaps[idx]
        idx += 1
    left, right = w[: window[0]], w[window[need - 1] + 1 :]
    return make_step(
        kap, False, left, right, binding, label=f"kappa({n}, {j})", expect_source=w
    )


def _delete_middle_step(w: Word, c: int, n: int, j: int) -> RewriteStep:
    """Backward insertion step removing the current occurrence 2n (0-based)
    of c, flanked by the two pumped runs at slots j and 2n+1+j."""
    ident = insertion_identity(n)
    positions = occurrence_positions(w, c)
    run1 = positions[j : j + n]
    mid = positions[2 * n]
    run2 = positions[2 * n + 1 + j : 2 * n + 1 + j + n]
    if len(run1) != n or len(run2) != n:
        raise ShapeError("pumped runs not in place")
    if any(b - a != 1 for a, b in zip(run1, run1[1:])) or any(
        b - a != 1 for a, b in zip(run2, run2[1:])
    ):
        raise ShapeError("pumped occurrences are not contiguous runs")
    y, z = letter("y"), letter("z")
    binding = {
        X: (c,),
        y: w[run1[-1] + 1 : mid],
        z: w[mid + 1 : run2[0]],
    }
    left, right = w[: run1[0]], w[run2[-1] + 1 :]
    return make_step(
        ident, False, left, right, binding, label=str(ident), expect_source=w
    )


def _delete_occurrence(w: Word, c: int, n: int, j: int) -> List[RewriteStep]:
    """Chain deleting the (n+2)-th occurrence of c (which must occur
    more than 2n+2 times)."""
    steps: List[RewriteStep] = []
    cur = w
    for _ in range(n - 1):  # pump first window: run of n at occurrence j
        st = _kappa_window_step(cur, c, n, j, window_start_occ=0, insert=True)
        steps.append(st)
        cur = st.target()
    for _ in range(n - 1):  # pump second window (shifted by the first)
        st = _kappa_window_step(cur, c, n, j, window_start_occ=2 * n + 1, insert=True)
        steps.append(st)
        cur = st.target()
    st = _delete_middle_step(cur, c, n, j)
    steps.append(st)
    cur = st.target()
    for _ in range(n - 1):  # unpump second run first (higher indices)
        st = _kappa_window_step(cur, c, n, j, window_start_occ=2 * n, insert=False)
        steps.append(st)
        cur = st.target()
    for _ in range(n - 1):
        st = _kappa_window_step(cur, c, n, j, window_start_occ=0, insert=False)
        steps.append(st)
        cur = st.target()
    return steps


def limit_word(w: Word, n: int, j: int) -> Tuple[Word, DerivationTrace]:
    """A (2n+2)-limited word equivalent to w, with a certifying trace
    over ``limit_system(n, j)``.  Already-limited words return (w,
    empty trace)."""
    if n < 1 or not 0 <= j <= n:
        raise ValueError("need n >= 1 and 0 <= j <= n")
    w = tuple(w)
    steps: List[RewriteStep] = []
    cur = w
    cap = 2 * n + 2
    while True:
        over = sorted(c for c in set(cur) if cur.count(c) > cap)
        if not over:
            break
        for st in _delete_occurrence(cur, over[0], n, j):
            steps.append(st)
            cur = st.target()
    return cur, DerivationTrace(w, tuple(steps))


# ---------------------------------------------------------------------------
# rigid identities


@dataclass(frozen=True)
class RigidShape:
    markers: tuple  # t-band letters in order
    exponents: tuple  # e0..em

    @property
    def m(self) -> int:
        return len(self.markers)

    def word(self) -> Word:
        out = [X] * self.exponents[0]
        for t, e in zip(self.markers, self.exponents[1:]):
            out.append(t)
            out.extend([X] * e)
        return tuple(out)


def parse_rigid_side(w: Word) -> RigidShape:
    markers = []
    exps = [0]
    for a in w:
        if a == X:
            exps[-1] += 1
        elif a >= T_BASE:
            markers.append(a)
            exps.append(0)
        else:
            raise ShapeError(f"rigid sides use only x and markers, got {word_str((a,))}")
    if len(set(markers)) != len(markers):
        raise ShapeError("markers must be pairwise distinct")
    return RigidShape(tuple(markers), tuple(exps))


def parse_rigid(ident: Identity) -> Tuple[RigidShape, RigidShape]:
    lu, rv = parse_rigid_side(ident.lhs), parse_rigid_side(ident.rhs)
    if lu.markers != rv.markers:
        raise ShapeError("the two sides' marker sequences differ")
    return lu, rv


def is_efficient(ident: Identity) -> bool:
    """No aligned pair of empty blocks between shared markers.

    Blocks are the maximal marker-free segments of each side; the two
    sides must carry the same markers, each exactly once, in the same
    order (shape error otherwise).
    """

    def split(w: Word):
        markers = []
        blocks = [()]
        for a in w:
            if a >= T_BASE:
                markers.append(a)
                blocks.append(())
            else:
                blocks[-1] = blocks[-1] + (a,)
        return tuple(markers), tuple(blocks)

    mu, bu = split(ident.lhs)
    mv, bv = split(ident.rhs)
    if mu != mv:
        raise ShapeError("the two sides' marker sequences differ")
    if len(set(mu)) != len(mu):
        raise ShapeError("markers must be pairwise distinct")
    return all(u or v for u, v in zip(bu, bv))


def _pump_side_to_n(shape: RigidShape, n: int, j: int) -> Tuple[Word, list]:
    """Kappa steps raising every middle slot (n..m-n) of the side to x^n."""
    m = shape.m
    steps = []
    cur = shape.word()
    exps = list(shape.exponents)
    for i in range(n, m - n + 1):
        if exps[i] < 1:
            raise ShapeError(f"middle slot {i} has no occurrence to pump")
        while exps[i] < n:
            positions = occurrence_positions(cur, X)
            run_start_occ = sum(exps[:i])
            window_start = run_start_occ - j
            st = _kappa_window_step(cur, X, n, j, window_start, insert=True)
            steps.append(st)
            cur = st.target()
            exps[i] += 1
    return cur, steps


@dataclass(frozen=True)
class NormalizedRigid:
    identity: Identity  # the shortened identity u' = v'
    pump_u: DerivationTrace  # u  ->  pumped u1   (kappa steps)
    pump_v: DerivationTrace  # v  ->  pumped v1
    collapse_fwd: DerivationTrace  # u' -> v'   from {u1 = v1, x^n = x^(n+1)}
    collapse_bwd: DerivationTrace  # u1 -> v1   from {u' = v'}
    pumped: Identity  # u1 = v1

    def systems(self, n: int, j: int):
        """(pump system, forward collapse system, backward collapse system)."""
        pump = IdentitySystem(fixed=(family("kappa", n, j), power_identity(n)))
        fwd = IdentitySystem(fixed=(self.pumped, power_identity(n)))
        bwd = IdentitySystem(fixed=(self.identity, power_identity(n)))
        return pump, fwd, bwd


def _collapse_shape(shape: RigidShape, n: int) -> RigidShape:
    m = shape.m
    markers = shape.markers[: n - 1] + (shape.markers[n - 1],) + shape.markers[m - n :]
    exps = (
        shape.exponents[:n]
        + (n,)
        + shape.exponents[m - n + 1 :]
    )
    return RigidShape(markers, exps)


def _pumped_shape(shape: RigidShape, n: int) -> RigidShape:
    m = shape.m
    exps = list(shape.exponents)
    for i in range(n, m - n + 1):
        exps[i] = n
    return RigidShape(shape.markers, tuple(exps))


def _collapse_fwd_trace(
    shorter: Identity, pumped: Identity, shape_u: RigidShape, shape_v: RigidShape, n: int
) -> DerivationTrace:
    """Derive u' = v' from {u1 = v1, x^n = x^(n+1)}: pump the collapsed
    run, rewrite with the pumped identity under empty-marker bindings,
    unpump."""
    m = shape_u.m
    dropped = shape_u.markers[n : m - n]  # markers erased by the collapse
    big = n * (m - 2 * n + 1)
    pow_id = power_identity(n)

    def run_pos(shape):
        # position right after marker t_n in the collapsed word
        return shape.exponents[0] + sum(1 + e for e in shape.exponents[1:n]) + 1

    steps = []
    cur = shorter.lhs
    base = run_pos(_collapse_shape(shape_u, n))
    for k in range(n, big):  # x^k -> x^(k+1) at the collapsed run
        st = make_step(
            pow_id,
            True,
            cur[: base + k - n],
            cur[base + k :],
            {X: (X,)},
            expect_source=cur,
        )
        steps.append(st)
        cur = st.target()
    binding = {X: (X,)}
    for t in dropped:
        binding[t] = ()
    for t in shape_u.markers:
        if t not in binding:
            binding[t] = (t,)
    st = make_step(pumped, True, (), (), binding, expect_source=cur)
    steps.append(st)
    cur = st.target()
    base_v = run_pos(_collapse_shape(shape_v, n))
    for k in range(big, n, -1):  # unpump on the target side
        st = make_step(
            pow_id,
            False,
            cur[: base_v + k - n - 1],
            cur[base_v + k :],
            {X: (X,)},
            expect_source=cur,
        )
        steps.append(st)
        cur = st.target()
    if cur != shorter.rhs:
        raise ShapeError("collapse derivation did not reach the shortened side")
    return DerivationTrace(shorter.lhs, tuple(steps))


def _collapse_bwd_trace(
    shorter: Identity, pumped: Identity, shape_u: RigidShape, n: int
) -> DerivationTrace:
    """Derive u1 = v1 from {u' = v'} by one composite-marker binding."""
    m = shape_u.m
    t_n = shape_u.markers[n - 1]
    image = [t_n]
    for i in range(n + 1, m - n + 1):
        image.extend([X] * n)
        image.append(shape_u.markers[i - 1])
    binding = {X: (X,), t_n: tuple(image)}
    for t in shape_u.markers:
        if t not in binding:
            binding[t] = (t,)
    st = make_step(shorter, True, (), (), binding, expect_source=pumped.lhs)
    if st.target() != pumped.rhs:
        raise ShapeError("composite-marker binding did not rebuild the pumped side")
    return DerivationTrace(pumped.lhs, (st,))


def _self_application(ident: Identity) -> DerivationTrace:
    """One-step derivation of an identity from itself."""
    binding = {x: (x,) for x in ident.letters()}
    st = make_step(ident, True, (), (), binding, expect_source=ident.lhs)
    return DerivationTrace(ident.lhs, (st,))


def normalize_rigid(ident: Identity, n: int, j: int) -> NormalizedRigid:
    """Shorten a rigid efficient (n+1)-free identity to sides of length
    at most n + (n^2 - 1) + (n + 1) + n(n + 1), with traces."""
    if n < 1 or not 0 <= j <= n:
        raise ValueError("need n >= 1 and 0 <= j <= n")
    if ident.is_trivial:
        empty = DerivationTrace(ident.lhs, ())
        return NormalizedRigid(ident, empty, empty, empty, empty, ident)
    shape_u, shape_v = parse_rigid(ident)
    if not is_efficient(ident):
        raise ShapeError("identity is not efficient")
    if max(shape_u.exponents + shape_v.exponents) > n:
        raise ShapeError(f"sides are not {n + 1}-free")
    m = shape_u.m
    if m <= 2 * n:
        empty_u = DerivationTrace(ident.lhs, ())
        empty_v = DerivationTrace(ident.rhs, ())
        one = _self_application(ident)
        return NormalizedRigid(ident, empty_u, empty_v, one, one, ident)
    if min(shape_u.exponents + shape_v.exponents) < 1:
        raise ShapeError(
            "middle collapse requires every slot positive (the companion-"
            "contained branch); zero slots belong to the limiting route"
        )
    u1, steps_u = _pump_side_to_n(shape_u, n, j)
    v1, steps_v = _pump_side_to_n(shape_v, n, j)
    pumped = Identity(u1, v1)
    shorter = Identity(
        _collapse_shape(shape_u, n).word(), _collapse_shape(shape_v, n).word()
    )
    fwd = _collapse_fwd_trace(shorter, pumped, shape_u, shape_v, n)
    bwd = _collapse_bwd_trace(shorter, pumped, shape_u, n)
    return NormalizedRigid(
        shorter,
        DerivationTrace(ident.lhs, tuple(steps_u)),
        DerivationTrace(ident.rhs, tuple(steps_v)),
        fwd,
        bwd,
        pumped,
    )
