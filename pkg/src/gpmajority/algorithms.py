"""(1+1) GP, the bounded local search, and Concatenation Crossover GP.

Internally a run advances a count-vector chain rather than literal trees:
every Majority variant is a function of the per-variable literal counts, and
every HVL-Prime draw is uniform over leaves or literals, so leaf positions
never influence fitness, sampling, or acceptance.  The chain keeps the leaf
multiset in a plain list (delete = swap-with-last + pop, insert = append,
substitute = index assignment), which makes one mutation-evaluate-accept
step O(1).  SuperMajority acceptance compares exact dyadic deltas by
exponent arithmetic; the exact total value is materialized only when a
score is reported.

With bloat control the counting variants can reach states from which no
accepted step can ever change the individual again (for +c-Majority these
are exactly the states behind the "never reaches the optimum" result).
When such a state is detected the remaining evaluations are charged to the
budget without simulating them; the observable outcome is identical because
by construction no future step could alter the state or trigger a stop.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .fitness import PLUS_C, SUPER, TWO_THIRDS, Problem, Score, accept
from .individual import Individual, Literal, random_individual

ONE_PLUS_ONE = "one_plus_one"
CONCAT_CROSSOVER = "concat_crossover"

STOP_ALL_EXPRESSED = "all_expressed"
STOP_ALL_EXPRESSED_MINIMAL = "all_expressed_minimal"
STOP_BUDGET_ONLY = "budget_only"

_KIND_CODE = {"majority": 0, PLUS_C: 1, TWO_THIRDS: 2, SUPER: 3}


@dataclass(frozen=True)
class RunConfig:
    problem: Problem
    n: int
    s_init: int
    algorithm: str
    bloat_control: bool
    eval_budget: int
    seed: int
    allow_substitution: bool = True
    lambda_: int | None = None          # crossover population size
    stop: str = STOP_ALL_EXPRESSED
    stop_scope: str = "auto"            # crossover: any | all | auto
    trace_stride: int | None = None

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.s_init < 1:
            raise ValueError("s_init must be >= 1")
        if self.eval_budget < 1:
            raise ValueError("eval_budget must be >= 1")
        if self.algorithm not in (ONE_PLUS_ONE, CONCAT_CROSSOVER):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.stop not in (STOP_ALL_EXPRESSED, STOP_ALL_EXPRESSED_MINIMAL,
                             STOP_BUDGET_ONLY):
            raise ValueError(f"unknown stop condition {self.stop!r}")
        if self.stop == STOP_ALL_EXPRESSED_MINIMAL and self.problem.kind == SUPER:
            raise ValueError("all_expressed_minimal is defined for the "
                             "counting variants only")
        if self.stop_scope not in ("auto", "any", "all"):
            raise ValueError(f"unknown stop scope {self.stop_scope!r}")
        if self.algorithm == CONCAT_CROSSOVER:
            if self.lambda_ is not None and self.lambda_ < 2:
                raise ValueError("lambda must be >= 2 for concat_crossover")
        if self.trace_stride is not None and self.trace_stride < 1:
            raise ValueError("trace_stride must be >= 1")


def resolved_lambda(cfg: RunConfig) -> int | None:
    """Population size actually used; default ceil(4 ln n), at least 2."""
    if cfg.algorithm != CONCAT_CROSSOVER:
        return None
    if cfg.lambda_ is not None:
        return cfg.lambda_
    return max(2, math.ceil(4 * math.log(cfg.n)))


def resolved_stop_scope(cfg: RunConfig) -> str:
    if cfg.stop_scope != "auto":
        return cfg.stop_scope
    return "all" if cfg.problem.kind == SUPER else "any"


@dataclass(frozen=True)
class TracePoint:
    evaluations: int
    value: "int | Fraction"
    size: int
    expressed: int


@dataclass
class RunRecord:
    evaluations_used: int
    success: bool
    final_value: "int | Fraction"
    final_size: int
    unexpressed_count: int
    trace: list[TracePoint] | None = None


def local_search_budget(size: int) -> int:
    """ceil(90 s ln s) steps, 0 for a single leaf."""
    if size <= 1:
        return 0
    return math.ceil(90.0 * size * math.log(size))


def _child_seed(run_seed: int, generation: int, slot: int) -> int:
    digest = hashlib.blake2b(f"{run_seed}:{generation}:{slot}".encode(),
                             digest_size=8).digest()
    return int.from_bytes(digest, "big")


class _Chain:
    """Mutable count-vector state of one individual inside a run."""

    __slots__ = ("n", "kind", "c", "leaves", "p", "m", "expr", "neg")

    def __init__(self, n: int, kind: int, c: int):
        self.n = n
        self.kind = kind
        self.c = c
        self.leaves: list[int] = []     # +v for x_v, -v for ~x_v
        self.p = [0] * (n + 1)
        self.m = [0] * (n + 1)
        self.expr = 0
        self.neg = 0

    @classmethod
    def from_individual(cls, ind: Individual, problem: Problem) -> "_Chain":
        ch = cls(ind.n, _KIND_CODE[problem.kind], problem.c)
        ch.leaves = [leaf.var if leaf.positive else -leaf.var
                     for leaf in ind.leaves]
        for var, (p, m) in ind.counts.items():
            ch.p[var] = p
            ch.m[var] = m
            ch.neg += m
        ch.expr = ch._count_expressed()
        return ch

    @classmethod
    def join(cls, a: "_Chain", b: "_Chain") -> "_Chain":
        ch = cls(a.n, a.kind, a.c)
        ch.leaves = a.leaves + b.leaves
        ch.p = [x + y for x, y in zip(a.p, b.p)]
        ch.m = [x + y for x, y in zip(a.m, b.m)]
        ch.neg = a.neg + b.neg
        ch.expr = ch._count_expressed()
        return ch

    def _expressed_var(self, p: int, m: int) -> bool:
        kind = self.kind
        if kind == 1:
            return p >= m + self.c
        if kind == 0:
            return p >= 1 and p >= m
        return p >= 1 and p >= 2 * m

    def _count_expressed(self) -> int:
        p, m = self.p, self.m
        return sum(1 for i in range(1, self.n + 1)
                   if self._expressed_var(p[i], m[i]))

    @property
    def size(self) -> int:
        return len(self.leaves)

    def value(self) -> "int | Fraction":
        if self.kind != 3:
            return self.expr
        p, m = self.p, self.m
        ds = [p[i] - m[i] for i in range(1, self.n + 1)
              if p[i] >= 1 and p[i] >= 2 * m[i]]
        if not ds:
            return Fraction(0)
        dmax = max(ds)
        num = sum((2 << dmax) - (1 << (dmax - d)) for d in ds)
        return Fraction(num, 1 << dmax)

    def score(self) -> Score:
        return Score(self.value(), self.size)

    def to_individual(self) -> Individual:
        return Individual(self.n, [Literal(v, True) if v > 0 else Literal(-v, False)
                                   for v in self.leaves])


class _Tally:
    """Shared evaluation counter plus optional trace sampling."""

    __slots__ = ("evals", "budget", "stride", "next_at", "trace")

    def __init__(self, budget: int, stride: int | None):
        self.evals = 0
        self.budget = budget
        self.stride = stride
        self.next_at = stride if stride else 0   # 0 never matches (evals >= 1)
        self.trace = [] if stride else None

    def sample(self, ch: _Chain) -> None:
        self.trace.append(TracePoint(self.next_at, ch.value(), ch.size, ch.expr))
        self.next_at += self.stride


# loop exit reasons
_STEPS = "steps"
_BUDGET = "budget"
_STOP = "stop"


def _advance(ch: _Chain, rng: Random, tally: _Tally, max_steps: int,
             bloat: bool, subs: bool, stop_mode: int, minimal_size: int) -> str:
    """Run up to max_steps mutation-evaluate-accept steps on the chain.

    stop_mode: 0 none, 1 all_expressed, 2 all_expressed_minimal; checked
    after every evaluation.  Exits early when the chain reaches a state from
    which no accepted step can change it and the stop can no longer trigger
    (bloat-control counting variants only); the skipped steps are charged.
    """
    if ch.kind == 3:
        return _advance_super(ch, rng, tally, max_steps, bloat, subs,
                              stop_mode)
    n = ch.n
    kind = ch.kind
    c = ch.c
    A = 2 if kind == 2 else 1
    B = c if kind == 1 else 0
    leaves = ch.leaves
    p_ = ch.p
    m_ = ch.m
    expr = ch.expr
    neg = ch.neg
    size = len(leaves)
    two_n = 2 * n
    r = rng.random
    evals = tally.evals
    budget = tally.budget
    stride = tally.stride
    next_at = tally.next_at
    steps = 0
    reason = _STEPS
    sub_cut = 1.0 / 3.0 if subs else -1.0
    ins_cut = 2.0 / 3.0 if subs else 0.5

    # a re-entered chain may already be frozen (bloat control, counting)
    absorbed = False
    if bloat:
        if kind == 1:
            absorbed = neg == 0 and size == c * expr and (c > 1 or expr == n)
        else:
            absorbed = neg == 0 and expr == n and size == n

    while True:
        if absorbed and not (stop_mode and expr == n):
            remaining = max_steps - steps
            if budget - evals <= remaining:
                remaining = budget - evals
                reason = _BUDGET
            evals += remaining
            steps += remaining
            if stride:
                ch.expr = expr
                ch.neg = neg
                while next_at <= evals:
                    tally.sample(ch)
                    next_at = tally.next_at
            break
        if steps >= max_steps:
            break
        if evals >= budget:
            reason = _BUDGET
            break
        evals += 1
        steps += 1
        changed = False
        u = r()
        if u < sub_cut:
            idx = int(r() * size)
            if idx == size:
                idx -= 1
            old = leaves[idx]
            k = int(r() * two_n)
            if k == two_n:
                k -= 1
            nv = (k >> 1) + 1
            new = -nv if (k & 1) else nv
            if new != old:
                ov = old if old > 0 else -old
                po, mo = p_[ov], m_[ov]
                e_old_src = po >= A * mo + B and po >= 1
                if old > 0:
                    po -= 1
                else:
                    mo -= 1
                if nv == ov:
                    if new > 0:
                        po += 1
                    else:
                        mo += 1
                    dv = (po >= A * mo + B and po >= 1) - e_old_src
                else:
                    pn, mn = p_[nv], m_[nv]
                    e_old_dst = pn >= A * mn + B and pn >= 1
                    if new > 0:
                        pn += 1
                    else:
                        mn += 1
                    dv = ((po >= A * mo + B and po >= 1) - e_old_src
                          + (pn >= A * mn + B and pn >= 1) - e_old_dst)
                if dv >= 0:
                    if old > 0:
                        p_[ov] -= 1
                    else:
                        m_[ov] -= 1
                        neg -= 1
                    if new > 0:
                        p_[nv] += 1
                    else:
                        m_[nv] += 1
                        neg += 1
                    leaves[idx] = new
                    expr += dv
                    changed = True
        elif u < ins_cut:
            k = int(r() * two_n)
            if k == two_n:
                k -= 1
            nv = (k >> 1) + 1
            pn, mn = p_[nv], m_[nv]
            e_old = pn >= A * mn + B and pn >= 1
            if k & 1:
                mn += 1
            else:
                pn += 1
            dv = (pn >= A * mn + B and pn >= 1) - e_old
            if dv > 0 or (dv == 0 and not bloat):
                if k & 1:
                    m_[nv] += 1
                    neg += 1
                    leaves.append(-nv)
                else:
                    p_[nv] += 1
                    leaves.append(nv)
                size += 1
                expr += dv
                changed = True
        else:
            if size > 1:
                idx = int(r() * size)
                if idx == size:
                    idx -= 1
                old = leaves[idx]
                ov = old if old > 0 else -old
                po, mo = p_[ov], m_[ov]
                e_old = po >= A * mo + B and po >= 1
                if old > 0:
                    po -= 1
                else:
                    mo -= 1
                dv = (po >= A * mo + B and po >= 1) - e_old
                if dv >= 0:  # size shrinks, both modes accept value ties
                    if old > 0:
                        p_[ov] -= 1
                    else:
                        m_[ov] -= 1
                        neg -= 1
                    leaves[idx] = leaves[size - 1]
                    leaves.pop()
                    size -= 1
                    expr += dv
                    changed = True
            # single-leaf delete: no-op offspring, evaluation already charged

        if evals == next_at:
            ch.expr = expr
            ch.neg = neg
            tally.sample(ch)
            next_at = tally.next_at
        if stop_mode and expr == n and (stop_mode == 1 or size == minimal_size):
            reason = _STOP
            break
        if changed and bloat:
            if kind == 1:
                absorbed = neg == 0 and size == c * expr and (c > 1 or expr == n)
            else:
                absorbed = neg == 0 and expr == n and size == n

    ch.expr = expr
    ch.neg = neg
    tally.evals = evals
    tally.next_at = next_at
    return reason


def _sm_remove_class(p: int, m: int, positive: bool) -> tuple[int, int, int, int]:
    """Sign and exact magnitude class of the f_i change when one literal of a
    variable at counts (p, m) is removed, for SuperMajority.

    Returns (sign, big, a, b): big magnitudes are 2 - 2^-a (an expressed-flag
    flip), small ones are 2^-a - 2^-b with a < b (surplus shift of an
    expressed variable).  sign != 0 with big == 1 implies the expressed count
    changes by sign.
    """
    e1 = p >= 1 and p >= 2 * m
    if positive:
        p2 = p - 1
        if not e1:
            return 0, 0, 0, 0
        if p2 >= 1 and p2 >= 2 * m:
            return -1, 0, p2 - m, p - m
        return -1, 1, p - m, 0
    m2 = m - 1
    e2 = p >= 1 and p >= 2 * m2
    if e1:
        return 1, 0, p - m, p - m2
    if e2:
        return 1, 1, p - m2, 0
    return 0, 0, 0, 0


def _sm_insert_class(p: int, m: int, positive: bool) -> tuple[int, int, int, int]:
    """Like _sm_remove_class for adding one literal at counts (p, m)."""
    e1 = p >= 1 and p >= 2 * m
    if positive:
        p2 = p + 1
        if p2 >= 2 * m:  # p2 >= 1 always
            if e1:
                return 1, 0, p - m, p2 - m
            return 1, 1, p2 - m, 0
        return 0, 0, 0, 0
    m2 = m + 1
    if e1:
        if p >= 2 * m2:
            return -1, 0, p - m2, p - m
        return -1, 1, p - m, 0
    return 0, 0, 0, 0


def _sm_combined_sign(c_out: tuple[int, int, int, int],
                      c_in: tuple[int, int, int, int]) -> int:
    s1 = c_out[0]
    s2 = c_in[0]
    if s1 == 0:
        return s2
    if s2 == 0 or s1 == s2:
        return s1
    # opposite signs: compare exact magnitudes
    big1, a1, b1 = c_out[1], c_out[2], c_out[3]
    big2, a2, b2 = c_in[1], c_in[2], c_in[3]
    if big1 and big2:
        cmp = (a1 > a2) - (a1 < a2)     # larger d means larger 2 - 2^-d
    elif big1:
        cmp = 1
    elif big2:
        cmp = -1
    elif a1 != a2:
        cmp = (a2 > a1) - (a2 < a1)     # smaller leading exponent is larger
    else:
        cmp = (b1 > b2) - (b1 < b2)
    if cmp > 0:
        return s1
    if cmp < 0:
        return s2
    return 0


def _advance_super(ch: _Chain, rng: Random, tally: _Tally, max_steps: int,
                   bloat: bool, subs: bool, stop_mode: int) -> str:
    n = ch.n
    leaves = ch.leaves
    p_ = ch.p
    m_ = ch.m
    expr = ch.expr
    neg = ch.neg
    size = len(leaves)
    two_n = 2 * n
    r = rng.random
    evals = tally.evals
    budget = tally.budget
    stride = tally.stride
    next_at = tally.next_at
    steps = 0
    reason = _STEPS
    sub_cut = 1.0 / 3.0 if subs else -1.0
    ins_cut = 2.0 / 3.0 if subs else 0.5

    while True:
        if steps >= max_steps:
            break
        if evals >= budget:
            reason = _BUDGET
            break
        evals += 1
        steps += 1
        u = r()
        if u < sub_cut:
            idx = int(r() * size)
            if idx == size:
                idx -= 1
            old = leaves[idx]
            k = int(r() * two_n)
            if k == two_n:
                k -= 1
            nv = (k >> 1) + 1
            new = -nv if (k & 1) else nv
            if new != old:
                ov = old if old > 0 else -old
                if nv == ov:
                    # one variable, both counts move (x_i <-> ~x_i)
                    po, mo = p_[ov], m_[ov]
                    e1 = po >= 1 and po >= 2 * mo
                    d1 = po - mo
                    if old > 0:
                        po -= 1
                    else:
                        mo -= 1
                    if new > 0:
                        po += 1
                    else:
                        mo += 1
                    e2 = po >= 1 and po >= 2 * mo
                    d2 = po - mo
                    if e1:
                        sign = ((d2 > d1) - (d2 < d1)) if e2 else -1
                    else:
                        sign = 1 if e2 else 0
                    if sign >= 0:
                        p_[ov], m_[ov] = po, mo
                        leaves[idx] = new
                        expr += e2 - e1
                        if old < 0:
                            neg -= 1
                        if new < 0:
                            neg += 1
                else:
                    c_out = _sm_remove_class(p_[ov], m_[ov], old > 0)
                    c_in = _sm_insert_class(p_[nv], m_[nv], new > 0)
                    if _sm_combined_sign(c_out, c_in) >= 0:
                        if old > 0:
                            p_[ov] -= 1
                        else:
                            m_[ov] -= 1
                            neg -= 1
                        if new > 0:
                            p_[nv] += 1
                        else:
                            m_[nv] += 1
                            neg += 1
                        leaves[idx] = new
                        if c_out[1]:
                            expr += c_out[0]
                        if c_in[1]:
                            expr += c_in[0]
        elif u < ins_cut:
            k = int(r() * two_n)
            if k == two_n:
                k -= 1
            nv = (k >> 1) + 1
            pn, mn = p_[nv], m_[nv]
            if k & 1:
                # adding ~x_i: hurts an expressed variable, neutral otherwise
                e1 = pn >= 1 and pn >= 2 * mn
                if not e1 and not bloat:
                    m_[nv] = mn + 1
                    neg += 1
                    leaves.append(-nv)
                    size += 1
            else:
                e2 = pn + 1 >= 2 * mn
                if e2:
                    p_[nv] = pn + 1
                    leaves.append(nv)
                    size += 1
                    if not (pn >= 1 and pn >= 2 * mn):
                        expr += 1
                elif not bloat:
                    p_[nv] = pn + 1
                    leaves.append(nv)
                    size += 1
        else:
            if size > 1:
                idx = int(r() * size)
                if idx == size:
                    idx -= 1
                old = leaves[idx]
                if old > 0:
                    ov = old
                    pn, mn = p_[ov], m_[ov]
                    if not (pn >= 1 and pn >= 2 * mn):
                        # unexpressed stays unexpressed: neutral, shrinks
                        p_[ov] = pn - 1
                        leaves[idx] = leaves[size - 1]
                        leaves.pop()
                        size -= 1
                else:
                    # removing ~x_i never lowers f_i: always accepted
                    ov = -old
                    pn, mn = p_[ov], m_[ov]
                    if not (pn >= 1 and pn >= 2 * mn) and (pn >= 1 and pn >= 2 * (mn - 1)):
                        expr += 1
                    m_[ov] = mn - 1
                    neg -= 1
                    leaves[idx] = leaves[size - 1]
                    leaves.pop()
                    size -= 1

        if evals == next_at:
            ch.expr = expr
            ch.neg = neg
            tally.sample(ch)
            next_at = tally.next_at
        if stop_mode and expr == n:
            reason = _STOP
            break

    ch.expr = expr
    ch.neg = neg
    tally.evals = evals
    tally.next_at = next_at
    return reason


def _stop_mode(cfg: RunConfig) -> int:
    if cfg.stop == STOP_ALL_EXPRESSED:
        return 1
    if cfg.stop == STOP_ALL_EXPRESSED_MINIMAL:
        return 2
    return 0


def _minimal_size(cfg: RunConfig) -> int:
    return cfg.problem.c * cfg.n if cfg.problem.kind == PLUS_C else cfg.n


def _member_satisfies(ch: _Chain, stop_mode: int, minimal: int) -> bool:
    if stop_mode == 0 or ch.expr != ch.n:
        return False
    return stop_mode == 1 or ch.size == minimal


def _record(tally: _Tally, success: bool, ch: _Chain) -> RunRecord:
    return RunRecord(
        evaluations_used=tally.evals,
        success=success,
        final_value=ch.value(),
        final_size=ch.size,
        unexpressed_count=ch.n - ch.expr,
        trace=tally.trace,
    )


def one_plus_one_gp(cfg: RunConfig, rng: Random | None = None) -> RunRecord:
    """Algorithm: init with a random tree, then mutate-evaluate-accept until
    the stop condition holds or the budget runs out.

    All randomness derives from cfg.seed unless an explicit generator is
    passed (which then owns the whole run).
    """
    cfg.validate()
    if cfg.algorithm != ONE_PLUS_ONE:
        raise ValueError("config requests a different algorithm")
    rng = rng if rng is not None else Random(cfg.seed)
    tally = _Tally(cfg.eval_budget, cfg.trace_stride)
    ind = random_individual(cfg.n, cfg.s_init, rng)
    ch = _Chain.from_individual(ind, cfg.problem)
    tally.evals = 1
    if tally.stride and tally.next_at <= 1:
        tally.sample(ch)
    stop_mode = _stop_mode(cfg)
    minimal = _minimal_size(cfg)
    if _member_satisfies(ch, stop_mode, minimal):
        return _record(tally, True, ch)
    reason = _advance(ch, rng, tally, cfg.eval_budget, cfg.bloat_control,
                      cfg.allow_substitution, stop_mode, minimal)
    return _record(tally, reason == _STOP, ch)


def local_search(ind: Individual, problem: Problem, rng: Random,
                 allow_substitution: bool = True) -> tuple[Individual, int]:
    """Bloat-control (1+1) GP on ind for exactly ceil(90 s ln s) steps,
    where s is the size at entry.  Returns the result and the step count."""
    budget = local_search_budget(ind.size)
    if budget == 0:
        return ind, 0
    ch = _Chain.from_individual(ind, problem)
    tally = _Tally(budget, None)
    _advance(ch, rng, tally, budget, True, allow_substitution, 0, 0)
    return ch.to_individual(), budget


def concatenation_crossover_gp(cfg: RunConfig, rng: Random | None = None) -> RunRecord:
    """Generational crossover GP (Algorithm: join + bounded local search).

    Each generation is computed from an immutable snapshot of the previous
    population; slot i joins with a uniformly chosen other member, local
    search runs on the joined tree, and the result replaces t_i only if
    accepted.  All per-slot randomness comes from a child generator derived
    from (run seed, generation, slot), so results are independent of any
    host parallelism.
    """
    cfg.validate()
    if cfg.algorithm != CONCAT_CROSSOVER:
        raise ValueError("config requests a different algorithm")
    run_seed = rng.getrandbits(64) if rng is not None else cfg.seed
    lam = resolved_lambda(cfg)
    scope = resolved_stop_scope(cfg)
    stop_mode = _stop_mode(cfg)
    minimal = _minimal_size(cfg)
    tally = _Tally(cfg.eval_budget, cfg.trace_stride)
    population: list[_Chain] = []
    partial: _Chain | None = None

    def best_chain() -> _Chain:
        pool = population if population else [partial]
        best = pool[0]
        best_score = best.score()
        for ch in pool[1:]:
            s = ch.score()
            if s.value > best_score.value or (s.value == best_score.value
                                              and s.size < best_score.size):
                best, best_score = ch, s
        return best

    # generation 0: independent random trees, each locally searched
    for slot in range(lam):
        if tally.evals >= cfg.eval_budget:
            break
        crng = Random(_child_seed(run_seed, 0, slot))
        ind = random_individual(cfg.n, cfg.s_init, crng)
        ch = _Chain.from_individual(ind, cfg.problem)
        partial = ch
        tally.evals += 1
        if tally.stride and tally.next_at <= tally.evals:
            tally.sample(ch)
        budget_ls = local_search_budget(ch.size)
        start = tally.evals
        _advance(ch, crng, tally, budget_ls, True, cfg.allow_substitution, 0, 0)
        if tally.evals - start < budget_ls:
            return _record(tally, False, best_chain())  # budget died mid-search
        population.append(ch)
        partial = None
        if scope == "any" and _member_satisfies(ch, stop_mode, minimal):
            return _record(tally, True, ch)
    if len(population) < lam:
        return _record(tally, False, best_chain())
    if scope == "all" and all(_member_satisfies(ch, stop_mode, minimal)
                              for ch in population):
        return _record(tally, True, best_chain())

    generation = 0
    while tally.evals < cfg.eval_budget:
        generation += 1
        snapshot = list(population)
        scores = [ch.score() for ch in snapshot]
        for slot in range(lam):
            if tally.evals >= cfg.eval_budget:
                break
            crng = Random(_child_seed(run_seed, generation, slot))
            roll = crng.randrange(lam - 1)
            mate = roll if roll < slot else roll + 1
            child = _Chain.join(snapshot[slot], snapshot[mate])
            budget_ls = local_search_budget(child.size)
            start = tally.evals
            _advance(child, crng, tally, budget_ls, True,
                     cfg.allow_substitution, 0, 0)
            if tally.evals - start < budget_ls:
                return _record(tally, False, best_chain())
            if accept(cfg.problem, cfg.bloat_control, child.score(), scores[slot]):
                population[slot] = child
            if scope == "any" and _member_satisfies(population[slot],
                                                    stop_mode, minimal):
                return _record(tally, True, population[slot])
        if scope == "all" and all(_member_satisfies(ch, stop_mode, minimal)
                                  for ch in population):
            return _record(tally, True, best_chain())
    return _record(tally, False, best_chain())
