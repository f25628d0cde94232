"""Sweep-style verifiers for the positivity and parity properties.

Every check enumerates its tuple space in canonical order, records each
violation instead of aborting, and returns a `SweepReport` that serializes
to JSON with stable key order.  For universal systems all theorem-backed
checks must come back empty; a nonempty report therefore signals an
implementation bug, and the witness list is the debugging artifact.

Polynomial inputs to the positivity and parity sweeps are taken from the
bar-triangular oracles, keeping the sweeps independent of the recurrence
engines that ``oracle-equivalence`` holds against those same oracles.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .hecke import (
    KLTable,
    kl_product,
    kl_product_direct,
    triple_product,
)
from .laurent import (
    LaurentPoly,
    ONE,
    ParityError,
    Q,
    ZERO,
    halve_sum,
    parity_equal,
    substitute_q_squared,
    v_power,
)
from .twisted import (
    TwistedKLTable,
    cs_action_closed,
    twisted_product,
    twisted_product_direct,
)
from .words import (
    CoxeterSpec,
    DEFAULT_CAP,
    Word,
    bruhat_leq,
    bruhat_leq_twisted,
    ell_star,
    enumerate_twisted_involutions,
    enumerate_words,
    format_word,
    inverse,
    is_twisted_involution,
    lower_twisted,
    lower_words,
    multiply,
    rho,
    star_word,
    twist,
    word_key,
)

_QP1 = Q + ONE
_Q2 = v_power(4)

CHECK_NAMES = (
    "a-prime",
    "b-prime",
    "c-prime",
    "a",
    "b",
    "c",
    "parity-p",
    "parity-h",
    "oracle-equivalence",
    "rho-grading",
    "bruhat-agreement",
    "regular-embedding",
    "msigma-closed-form",
    "mult-formula",
)


@dataclass(frozen=True)
class Bounds:
    """Sweep bounds: rank bound for twisted indices, length bound for free ones."""

    max_rho: int = 4
    max_ell: int = 4

    def to_dict(self) -> dict:
        return {"max_rho": self.max_rho, "max_ell": self.max_ell}


@dataclass(frozen=True)
class PlusMinusPair:
    """Half-sum and half-difference of an untwisted/twisted quantity pair."""

    plus: LaurentPoly
    minus: LaurentPoly


@dataclass
class SweepReport:
    spec: CoxeterSpec
    bounds: Bounds
    check: str
    tuples_checked: int
    violations: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "bounds": self.bounds.to_dict(),
            "check": self.check,
            "tuples_checked": self.tuples_checked,
            "violations": self.violations,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def kl_halves(
    table: KLTable, ttable: TwistedKLTable, y: Word, w: Word, oracle: bool = True
) -> PlusMinusPair:
    """Halves of ``P[y, w] +/- Psigma[y, w]`` for twisted involutions.

    The parity congruence must hold first; its failure raises `ParityError`
    (which the sweeps record as a counterexample).
    """
    p = (table.p_oracle if oracle else table.p)(y, w)
    ps = (ttable.p_oracle if oracle else ttable.p)(y, w)
    return PlusMinusPair(halve_sum(p, ps, 1), halve_sum(p, ps, -1))


def product_halves(spec: CoxeterSpec, x: Word, y: Word) -> dict[Word, PlusMinusPair]:
    """Halves of the triple-product and module-product structure constants,
    indexed by the twisted involutions in either support."""
    ht = triple_product(spec, x, y)
    hs = twisted_product(spec, x, y)
    zs = {z for z in ht if is_twisted_involution(spec, z)} | set(hs)
    out: dict[Word, PlusMinusPair] = {}
    for z in sorted(zs, key=word_key):
        a = ht.get(z, ZERO)
        b = hs.get(z, ZERO)
        out[z] = PlusMinusPair(halve_sum(a, b, 1), halve_sum(a, b, -1))
    return out


def _violation(tup: tuple[str, ...], detail: str) -> dict:
    return {"tuple": list(tup), "detail": detail}


# Each check builder returns (tuples, state_factory, evaluate) where
# evaluate(state, t) yields violation dicts.  Sweeps may partition the tuple
# list across workers; each worker gets a private state so the memo tables
# stay single-writer.


def _check_a_prime(spec, bounds, cap):
    tuples = [
        (w, y)
        for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap)
        for y in lower_twisted(spec, w)
    ]

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        w, y = t
        tup = (format_word(y), format_word(w))
        out = []
        ps = ttable.p_oracle(y, w)
        if not ps.is_nonnegative():
            out.append(_violation(tup, f"Psigma = {ps} has a negative coefficient"))
        try:
            pm = kl_halves(table, ttable, y, w)
        except ParityError as exc:
            out.append(_violation(tup, f"parity violation: {exc}"))
            return out
        if not pm.plus.is_nonnegative():
            out.append(_violation(tup, f"plus half = {pm.plus} has a negative coefficient"))
        if not pm.minus.is_nonnegative():
            out.append(_violation(tup, f"minus half = {pm.minus} has a negative coefficient"))
        return out

    return tuples, make, evaluate


def _check_b_prime(spec, bounds, cap):
    tuples = []
    for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap):
        below = lower_twisted(spec, w)
        tuples.extend(
            (w, y, z)
            for y in below
            for z in below
            if y != z and bruhat_leq_twisted(spec, y, z)
        )

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        w, y, z = t
        tup = (format_word(y), format_word(z), format_word(w))
        out = []
        ds = ttable.p_oracle(y, w) - ttable.p_oracle(z, w)
        if not ds.is_nonnegative():
            out.append(_violation(tup, f"Psigma difference = {ds} has a negative coefficient"))
        try:
            py = kl_halves(table, ttable, y, w)
            pz = kl_halves(table, ttable, z, w)
        except ParityError as exc:
            out.append(_violation(tup, f"parity violation: {exc}"))
            return out
        dplus = py.plus - pz.plus
        dminus = py.minus - pz.minus
        if not dplus.is_nonnegative():
            out.append(_violation(tup, f"plus difference = {dplus} has a negative coefficient"))
        if not dminus.is_nonnegative():
            out.append(_violation(tup, f"minus difference = {dminus} has a negative coefficient"))
        return out

    return tuples, make, evaluate


def _check_c_prime(spec, bounds, cap):
    words = enumerate_words(spec.gen_count, bounds.max_ell, cap)
    invs = enumerate_twisted_involutions(spec, bounds.max_rho, cap)
    tuples = [(x, y) for x in words for y in invs]

    def make():
        return None

    def evaluate(state, t):
        x, y = t
        tup = (format_word(x), format_word(y))
        out = []
        try:
            halves = product_halves(spec, x, y)
        except ParityError as exc:
            return [_violation(tup, f"parity violation: {exc}")]
        for z, pm in halves.items():
            if not pm.plus.is_nonnegative():
                out.append(
                    _violation(tup + (format_word(z),), f"plus half = {pm.plus} negative")
                )
            if not pm.minus.is_nonnegative():
                out.append(
                    _violation(tup + (format_word(z),), f"minus half = {pm.minus} negative")
                )
        return out

    return tuples, make, evaluate


def _check_a(spec, bounds, cap):
    tuples = [
        (w, y)
        for w in enumerate_words(spec.gen_count, bounds.max_ell, cap)
        for y in lower_words(w)
    ]

    def make():
        return KLTable()

    def evaluate(table, t):
        w, y = t
        p = table.p_oracle(y, w)
        if not p.is_nonnegative():
            return [_violation((format_word(y), format_word(w)), f"P = {p} negative")]
        return []

    return tuples, make, evaluate


def _check_b(spec, bounds, cap):
    tuples = []
    for w in enumerate_words(spec.gen_count, bounds.max_ell, cap):
        below = lower_words(w)
        tuples.extend(
            (w, y, z)
            for y in below
            for z in below
            if y != z and bruhat_leq(y, z)
        )

    def make():
        return KLTable()

    def evaluate(table, t):
        w, y, z = t
        d = table.p_oracle(y, w) - table.p_oracle(z, w)
        if not d.is_nonnegative():
            return [
                _violation(
                    (format_word(y), format_word(z), format_word(w)),
                    f"P difference = {d} negative",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_c(spec, bounds, cap):
    words = enumerate_words(spec.gen_count, bounds.max_ell, cap)
    tuples = [(x, y) for x in words for y in words]

    def make():
        return None

    def evaluate(state, t):
        x, y = t
        out = []
        for z, h in kl_product(x, y).items():
            if not h.is_nonnegative():
                out.append(
                    _violation(
                        (format_word(x), format_word(y), format_word(z)),
                        f"h = {h} negative",
                    )
                )
        return out

    return tuples, make, evaluate


def _check_parity_p(spec, bounds, cap):
    tuples = [
        (w, y)
        for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap)
        for y in lower_twisted(spec, w)
    ]

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        w, y = t
        p = table.p_oracle(y, w)
        ps = ttable.p_oracle(y, w)
        if not parity_equal(p, ps):
            return [
                _violation(
                    (format_word(y), format_word(w)),
                    f"P = {p} and Psigma = {ps} differ mod 2",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_parity_h(spec, bounds, cap):
    words = enumerate_words(spec.gen_count, bounds.max_ell, cap)
    invs = enumerate_twisted_involutions(spec, bounds.max_rho, cap)
    tuples = [(x, y) for x in words for y in invs]

    def make():
        return None

    def evaluate(state, t):
        x, y = t
        ht = triple_product(spec, x, y)
        hs = twisted_product(spec, x, y)
        zs = {z for z in ht if is_twisted_involution(spec, z)} | set(hs)
        out = []
        for z in sorted(zs, key=word_key):
            a = ht.get(z, ZERO)
            b = hs.get(z, ZERO)
            if not parity_equal(a, b):
                out.append(
                    _violation(
                        (format_word(x), format_word(y), format_word(z)),
                        f"h-tilde = {a} and h-sigma = {b} differ mod 2",
                    )
                )
        return out

    return tuples, make, evaluate


def _check_oracle_equivalence(spec, bounds, cap):
    tuples = [
        ("w", w, y)
        for w in enumerate_words(spec.gen_count, bounds.max_ell, cap)
        for y in lower_words(w)
    ]
    tuples += [
        ("i", w, y)
        for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap)
        for y in lower_twisted(spec, w)
    ]

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        kind, w, y = t
        if kind == "w":
            fast, slow, name = table.p(y, w), table.p_oracle(y, w), "P"
        else:
            fast, slow, name = ttable.p(y, w), ttable.p_oracle(y, w), "Psigma"
        if fast != slow:
            return [
                _violation(
                    (format_word(y), format_word(w)),
                    f"{name} recurrence gives {fast}, oracle gives {slow}",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_rho_grading(spec, bounds, cap):
    tuples = [(w,) for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap)]

    def make():
        return None

    def evaluate(state, t):
        (w,) = t
        out = []
        r = rho(spec, w)
        ls = ell_star(spec, w)
        if 2 * r != len(w) + ls:
            out.append(
                _violation(
                    (format_word(w),),
                    f"2*rho = {2 * r} but ell + ell_star = {len(w) + ls}",
                )
            )
        for s in range(spec.gen_count):
            down = rho(spec, twist(spec, s, w)) == r - 1
            shorter = len(multiply((s,), w)) == len(w) - 1
            if down != shorter:
                out.append(
                    _violation(
                        (format_word(w), format_word((s,))),
                        "rank step disagrees with length step under twist",
                    )
                )
        return out

    return tuples, make, evaluate


def _check_bruhat_agreement(spec, bounds, cap):
    elements = enumerate_twisted_involutions(spec, bounds.max_rho, cap)
    tuples = [(y, w) for y in elements for w in elements]

    def make():
        return None

    def evaluate(state, t):
        y, w = t
        if bruhat_leq_twisted(spec, y, w) != bruhat_leq(y, w):
            return [
                _violation(
                    (format_word(y), format_word(w)),
                    "twisted subword order disagrees with Bruhat order",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_regular_embedding(spec, bounds, cap):
    # Meaningful only for a fixed-point-free star; otherwise vacuous.
    if spec.star_is_fixed_point_free:
        tuples = [
            (w, y)
            for w in enumerate_words(spec.gen_count, bounds.max_ell, cap)
            for y in lower_words(w)
        ]
    else:
        tuples = []

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        w, y = t
        yy = multiply(star_word(spec, y), inverse(y))
        ww = multiply(star_word(spec, w), inverse(w))
        lhs = ttable.p(yy, ww)
        rhs = substitute_q_squared(table.p(y, w))
        if lhs != rhs:
            return [
                _violation(
                    (format_word(y), format_word(w)),
                    f"Psigma[{format_word(yy)}, {format_word(ww)}] = {lhs} "
                    f"but P(q^2) = {rhs}",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_msigma_closed_form(spec, bounds, cap):
    tuples = []
    for w in enumerate_twisted_involutions(spec, bounds.max_rho, cap):
        if not w:
            continue
        tuples.extend(
            (y, w) for y in lower_twisted(spec, w) if y and y[0] != w[0]
        )

    def make():
        return TwistedKLTable(spec)

    def evaluate(ttable, t):
        y, w = t
        s, r = y[0], w[0]
        rwr = multiply(multiply((r,), w), (spec.star[r],))
        expected = ONE if (y == rwr or (y, w) == ((s,), (r,))) else ZERO
        got = ttable.cs_coefficient(y, w, s)
        if got != expected:
            return [
                _violation(
                    (format_word(y), format_word(w), format_word((s,))),
                    f"coefficient formula gives {got}, closed form gives {expected}",
                )
            ]
        return []

    return tuples, make, evaluate


def _check_mult_formula(spec, bounds, cap):
    invs = enumerate_twisted_involutions(spec, bounds.max_rho, cap)
    tuples = [("act", s, w) for s in range(spec.gen_count) for w in invs]
    tuples += [("rec", w[0], w) for w in invs if w]

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        kind, s, w = t
        if kind == "act":
            return _eval_cs_action(spec, table, ttable, s, w)
        return _eval_cs_recurrence(spec, ttable, s, w)

    return tuples, make, evaluate


def _eval_cs_action(spec, table, ttable, s, w):
    tup = (format_word((s,)), format_word(w))
    out = []
    got = ttable.cs_action(s, w)
    closed = cs_action_closed(spec, s, w)
    if got != closed:
        out.append(_violation(tup, "coefficient expansion disagrees with closed form"))
    direct = twisted_product_direct(spec, table, ttable, (s,), w)
    if got != direct:
        out.append(_violation(tup, "coefficient expansion disagrees with direct action"))
    return out


def _eval_cs_recurrence(spec, ttable, s, w):
    """Check the generic coefficient recurrence with all values from the oracle.

    For ``s`` a descent of both ``y`` and ``w`` and ``w1 = s # w``:

        (q+1)^c Psigma[y, w] = (q+1)^d Psigma[s#y, w1] + q(q-d) Psigma[y, w1]
            - sum_z v^(len(w)-len(z)+c) cs_coefficient(z, w1, s) Psigma[y, z]

    over twisted involutions ``z`` with descent ``s`` and ``y <= z < w``;
    ``c`` and ``d`` flag whether the twist on ``w`` and ``y`` is a one-letter
    step.  This identity is circular as a computation scheme, so it is only
    ever evaluated as a check.
    """
    out = []
    pf = ttable.p_oracle
    w1 = twist(spec, s, w)
    c = 1 if multiply((s,), w) == multiply(w, (spec.star[s],)) else 0
    for y in lower_twisted(spec, w):
        if not (y and y[0] == s):
            continue
        d = 1 if multiply((s,), y) == multiply(y, (spec.star[s],)) else 0
        lhs = (_QP1 if c else ONE) * pf(y, w)
        rhs = (_QP1 if d else ONE) * pf(twist(spec, s, y), w1)
        rhs = rhs + (_Q2 - (Q if d else ZERO)) * pf(y, w1)
        for z in lower_twisted(spec, w):
            if z == w or not (z and z[0] == s):
                continue
            if not bruhat_leq_twisted(spec, y, z):
                continue
            m = ttable.cs_coefficient(z, w1, s, pfun=pf)
            if m:
                rhs = rhs - v_power(len(w) - len(z) + c) * m * pf(y, z)
        if lhs != rhs:
            out.append(
                _violation(
                    (format_word(y), format_word(w), format_word((s,))),
                    f"coefficient recurrence: lhs {lhs} != rhs {rhs}",
                )
            )
    return out


def _check_structure_theorems(spec, bounds, cap):
    """Cross-check both product closed forms against the standard-basis routes.

    Not in the public check list; the acceptance suite drives it directly.
    """
    words = enumerate_words(spec.gen_count, bounds.max_ell, cap)
    invs = enumerate_twisted_involutions(spec, bounds.max_rho, cap)
    right = sorted(set(words) | set(invs), key=word_key)
    tuples = [("kl", x, y) for x in words for y in right]
    tuples += [("tw", x, y) for x in words for y in invs]

    def make():
        return KLTable(), TwistedKLTable(spec)

    def evaluate(state, t):
        table, ttable = state
        kind, x, y = t
        tup = (format_word(x), format_word(y))
        if kind == "kl":
            if kl_product(x, y) != kl_product_direct(table, x, y):
                return [_violation(tup, "KL product closed form disagrees with direct route")]
        else:
            if twisted_product(spec, x, y) != twisted_product_direct(
                spec, table, ttable, x, y
            ):
                return [_violation(tup, "module product closed form disagrees with direct route")]
        return []

    return tuples, make, evaluate


_CHECKS = {
    "a-prime": _check_a_prime,
    "b-prime": _check_b_prime,
    "c-prime": _check_c_prime,
    "a": _check_a,
    "b": _check_b,
    "c": _check_c,
    "parity-p": _check_parity_p,
    "parity-h": _check_parity_h,
    "oracle-equivalence": _check_oracle_equivalence,
    "rho-grading": _check_rho_grading,
    "bruhat-agreement": _check_bruhat_agreement,
    "regular-embedding": _check_regular_embedding,
    "msigma-closed-form": _check_msigma_closed_form,
    "mult-formula": _check_mult_formula,
    "structure-theorems": _check_structure_theorems,
}


def verify(
    check: str,
    spec: CoxeterSpec,
    bounds: Bounds = Bounds(),
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> SweepReport:
    """Run one named check over its tuple space and report every violation.

    With ``jobs > 1`` the tuple list is split into contiguous chunks, each
    evaluated by a worker with private memo tables; results are concatenated
    in chunk order, so the report does not depend on the thread count.
    """
    name = check.lower()
    if name not in _CHECKS:
        raise ValueError(f"unknown check {check!r}; expected one of {', '.join(CHECK_NAMES)}")
    start = time.monotonic()
    tuples, make, evaluate = _CHECKS[name](spec, bounds, cap)

    def run_chunk(chunk):
        state = make()
        found = []
        for t in chunk:
            found.extend(evaluate(state, t))
        return found

    if jobs <= 1 or len(tuples) < 2:
        violations = run_chunk(tuples)
    else:
        size = (len(tuples) + jobs - 1) // jobs
        chunks = [tuples[i : i + size] for i in range(0, len(tuples), size)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run_chunk, chunks))
        violations = [v for part in parts for v in part]
    elapsed = int((time.monotonic() - start) * 1000)
    return SweepReport(spec, bounds, name, len(tuples), violations, elapsed)
