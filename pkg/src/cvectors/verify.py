"""
Executable theorem checkers and a randomized counterexample harness.

Every checker returns a :class:`VerificationReport`; failures are report
content, not exceptions, so a campaign can keep going and still hand back
a replayable counterexample (initial matrix, sequence and trial seed).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Iterable, Sequence

from .coxeter import (
    coxeter_product_check,
    initial_reflections,
    l_matrix_from_words,
    l_matrix_step,
    LMatrix,
    mutate_reflections,
)
from .fork import (
    ForkCertificate,
    ForkViolation,
    certify_point_of_return,
    fork_linear_ordering,
    is_fork_preserving,
    random_fork,
    random_fork_preserving_sequence,
    require_fork,
    reweight_fork,
)
from .gim import Gim, gim_from_ordering, is_admissible, mutate_gim
from .quiver import (
    ExchangeMatrix,
    FramedSeed,
    SignCoherenceError,
    mutate_extended,
    mutate_matrix,
    sign_vector,
    structural_predicates,
    walk,
)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    """Outcome of one or more checks on a single instance or campaign."""

    instance: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    counterexample: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def fail(self, name: str, detail: str, **provenance) -> None:
        self.add(name, False, detail)
        if self.counterexample is None:
            self.counterexample = {"check": name, "detail": detail, **provenance}

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "counterexample": self.counterexample,
        }


# ---------------------------------------------------------------------------
# quadratic form


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def quadratic_value(c: Sequence[int], q: Sequence[int], sigma: Sequence[int]) -> int:
    """``sum c_i^2 + sum_{i<j} sigma_ij q_ij c_i c_j`` with pairs in lexicographic order."""
    total = sum(x * x for x in c)
    for s, w, (i, j) in zip(sigma, q, _pairs(len(c))):
        total += s * w * c[i] * c[j]
    return total


def _check_weights(c: Sequence[int], q: Sequence[int]) -> None:
    n = len(c)
    if len(q) != n * (n - 1) // 2:
        raise ValueError(f"expected {n * (n - 1) // 2} weights for {n} coordinates, got {len(q)}")


def quadratic_signs(c: Sequence[int], q: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """All sign assignments ``sigma`` with ``quadratic_value(c, q, sigma) == 1``.

    Exhaustive over the ``2^(n(n-1)/2)`` patterns. An empty result is a
    finding, not an error.
    """
    _check_weights(c, q)
    c = [int(x) for x in c]
    base = sum(x * x for x in c)
    terms = [w * c[i] * c[j] for w, (i, j) in zip(q, _pairs(len(c)))]
    found = set()
    for sigma in product((1, -1), repeat=len(terms)):
        if base + sum(s * t for s, t in zip(sigma, terms)) == 1:
            found.add(sigma)
    return frozenset(found)


def has_quadratic_solution(c: Sequence[int], q: Sequence[int]) -> bool:
    """Whether ``quadratic_signs(c, q)`` is non-empty, by meet-in-the-middle."""
    _check_weights(c, q)
    c = [int(x) for x in c]
    target = 1 - sum(x * x for x in c)
    terms = [w * c[i] * c[j] for w, (i, j) in zip(q, _pairs(len(c)))]
    half = len(terms) // 2
    left = {sum(s * t for s, t in zip(sig, terms[:half])) for sig in product((1, -1), repeat=half)}
    right = terms[half:]
    return any(
        target - sum(s * t for s, t in zip(sig, right)) in left
        for sig in product((1, -1), repeat=len(right))
    )


# ---------------------------------------------------------------------------
# epsilon / tau


@dataclass(frozen=True)
class EpsilonTau:
    epsilon: tuple[int, ...]
    tau: tuple[int, ...]


def epsilon_tau(b0: ExchangeMatrix, cert: ForkCertificate, w: Sequence[int]) -> EpsilonTau:
    """Sign tuples relating raw l-vectors to c-vectors along a fork-preserving walk."""
    if not w:
        raise ValueError("epsilon/tau need a non-trivial sequence")
    r = cert.point_of_return
    k = w[0]
    if k == r:
        raise ValueError(f"sequence starts at the point of return {r}")
    n = b0.n
    labels = range(1, n + 1)
    if k in cert.inbound:
        eps = [-1 if i == k else 1 for i in labels]
        tau = [1] * n
    elif k in cert.outbound:
        eps = [1 if i in (k, r) else -1 for i in labels]
        tau = [1 if j == r else -1 for j in labels]
    else:
        raise ValueError(f"vertex {k} is not adjacent to the point of return")
    for k in w[1:]:
        eps[k - 1] = -eps[k - 1]
    return EpsilonTau(tuple(eps), tuple(tau))


def predicted_gim_entry(seed: FramedSeed, et: EpsilonTau, i: int, j: int) -> int:
    """GIM entry ``a_ij`` after a fork-preserving walk, from signs of ``b`` and ``c`` alone."""
    if i == j:
        return 2
    b = seed.b[i, j]
    e = et.epsilon[i - 1] * et.epsilon[j - 1]
    ci, cj = seed.row_sign(i), seed.row_sign(j)
    if b * cj >= 0:
        return -e * abs(b)
    return -e * ci * cj * abs(b)


def _eps_tau_mismatch(l_raw, seed: FramedSeed, g: Gim, et: EpsilonTau) -> str | None:
    n = seed.n
    for i in range(n):
        for j in range(n):
            want = et.epsilon[i] * et.tau[j] * seed.c[i][j]
            if l_raw[i][j] != want:
                return f"l[{i + 1}][{j + 1}] = {l_raw[i][j]}, expected {want}"
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            want = predicted_gim_entry(seed, et, i, j)
            if g[i, j] != want:
                return f"a[{i}][{j}] = {g[i, j]}, expected {want}"
    return None


def verify_l_c_relation(
    b0: ExchangeMatrix,
    cert: ForkCertificate,
    order: Sequence[int],
    w: Sequence[int],
) -> VerificationReport:
    """Check ``l_ij = eps_i tau_j c_ij`` and the sign formula for ``a_ij`` after ``w``."""
    order = tuple(order)
    report = VerificationReport({"b": b0.tolist(), "ordering": list(order), "w": list(w)})
    expected = fork_linear_ordering(cert, b0)
    if order != expected:
        raise ValueError(f"ordering {list(order)} is not the fork ordering {list(expected)}")
    ok, why = is_fork_preserving(b0, w)
    if not ok or not w:
        raise ValueError(f"sequence is not a non-trivial fork-preserving sequence: {why}")
    et = epsilon_tau(b0, cert, w)
    g = gim_from_ordering(b0, order)
    seed = FramedSeed.initial(b0)
    rows = seed.c
    for k in w:
        rows = l_matrix_step(rows, g, seed, k)
        g = mutate_gim(g, seed, k)
        seed = mutate_extended(seed, k)
    bad = _eps_tau_mismatch(rows, seed, g, et)
    if bad is None:
        report.add("eps_tau", True, f"epsilon={et.epsilon} tau={et.tau}")
    else:
        report.fail("eps_tau", bad, b=b0.tolist(), w=list(w))
    return report


# ---------------------------------------------------------------------------
# sign invariance


def verify_sign_invariance(
    b1: ExchangeMatrix,
    b2: ExchangeMatrix,
    w: Sequence[int],
    *,
    strict: bool = True,
) -> VerificationReport:
    """Compare sign vectors of two sign-matched quivers at every prefix of ``w``.

    With ``strict`` both quivers must be forks and ``w`` fork-preserving for
    both. ``strict=False`` drops that requirement (the comparison is then
    outside the theorem's hypotheses and flagged as such).
    """
    if b1.sign_pattern() != b2.sign_pattern():
        raise ValueError("quivers differ in sign pattern")
    within = all(_preserves_fork(b, w) for b in (b1, b2))
    if strict and not within:
        raise ValueError("sign invariance needs forks and a fork-preserving sequence")
    report = VerificationReport(
        {"b1": b1.tolist(), "b2": b2.tolist(), "w": list(w), "within_hypotheses": within}
    )
    s1, s2 = walk(b1, w), walk(b2, w)
    for step, (x, y) in enumerate(zip(s1, s2)):
        v1, v2 = sign_vector(x), sign_vector(y)
        if v1 != v2:
            report.fail("sign_invariance", f"step {step}: {v1} != {v2}", w=list(w[:step]))
            return report
    report.add("sign_invariance", True, f"final sign vector {sign_vector(s1[-1])}")
    return report


def _preserves_fork(b: ExchangeMatrix, w: Sequence[int]) -> bool:
    try:
        return is_fork_preserving(b, w)[0]
    except (ValueError, ForkViolation):
        return False


# ---------------------------------------------------------------------------
# rank 3


class CyclicityDisagreement(RuntimeError):
    """Weight descent and breadth-first search classified a quiver differently."""


def _is_cyclic3(b: ExchangeMatrix) -> bool:
    s = structural_predicates(b)
    return s.complete and not s.acyclic


def _descent(b: ExchangeMatrix) -> tuple[bool, int]:
    """Greedy weight descent; returns (mutation-cyclic, steps taken)."""
    steps = 0
    while True:
        if not _is_cyclic3(b):
            return False, steps
        key = sorted(b.weights(), reverse=True)
        best = None
        for k in (1, 2, 3):
            nb = mutate_matrix(b, k)
            nkey = sorted(nb.weights(), reverse=True)
            if not _is_cyclic3(nb):
                return False, steps + 1
            if nkey < key and (best is None or nkey < best[0]):
                best = (nkey, nb)
        if best is None:
            return min(b.weights()) >= 2, steps
        b = best[1]
        steps += 1


def _bfs_reaches_acyclic(b: ExchangeMatrix, depth: int) -> bool:
    frontier = deque([(b, 0, None)])
    while frontier:
        cur, d, last = frontier.popleft()
        if not _is_cyclic3(cur):
            return True
        if d == depth:
            continue
        for k in (1, 2, 3):
            if k != last:
                frontier.append((mutate_matrix(cur, k), d + 1, k))
    return False


def is_mutation_cyclic_rank3(b: ExchangeMatrix, bfs_depth: int = 6) -> bool:
    """Decide mutation-cyclicity of a rank-3 quiver.

    Weight descent gives the answer; a breadth-first search to depth
    ``max(bfs_depth, descent length)`` must agree or
    ``CyclicityDisagreement`` is raised.
    """
    if b.n != 3:
        raise ValueError("only rank 3 is supported")
    cyclic, steps = _descent(b)
    reaches = _bfs_reaches_acyclic(b, max(bfs_depth, steps))
    if reaches == cyclic:
        raise CyclicityDisagreement(
            f"descent says {'cyclic' if cyclic else 'acyclic'} but search "
            f"{'found' if reaches else 'did not find'} an acyclic quiver for {b.tolist()}"
        )
    return cyclic


def reduced_sequences(n: int, depth: int) -> Iterable[tuple[int, ...]]:
    """All reduced sequences of length <= depth, in depth-first lexicographic order."""
    stack: list[tuple[int, ...]] = [()]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < depth:
            for k in range(n, 0, -1):
                if not w or w[-1] != k:
                    stack.append(w + (k,))


def enumerate_c_vectors(b: ExchangeMatrix, depth: int) -> Iterable[tuple[tuple[int, ...], FramedSeed]]:
    """``(w, seed)`` for every reduced ``w`` of length <= depth, sharing prefixes."""
    stack: list[tuple[tuple[int, ...], FramedSeed]] = [((), FramedSeed.initial(b))]
    while stack:
        w, seed = stack.pop()
        yield w, seed
        if len(w) < depth:
            for k in range(b.n, 0, -1):
                if not w or w[-1] != k:
                    stack.append((w + (k,), mutate_extended(seed, k)))


def verify_rank3_theorem(b: ExchangeMatrix, max_depth: int) -> VerificationReport:
    """Every c-vector reachable within ``max_depth`` solves the quadratic equation."""
    if b.n != 3:
        raise ValueError("only rank 3 is supported")
    if not is_mutation_cyclic_rank3(b):
        raise ValueError("quiver is mutation-acyclic")
    q = b.weights()
    report = VerificationReport({"b": b.tolist(), "max_depth": max_depth, "weights": list(q)})
    count = 0
    for w, seed in enumerate_c_vectors(b, max_depth):
        for i, row in enumerate(seed.c, 1):
            count += 1
            if not quadratic_signs(row, q):
                report.fail(
                    "quadratic", f"c_{i} = {row} has no realizing sign pattern",
                    b=b.tolist(), w=list(w), index=i,
                )
                return report
    report.add("quadratic", True, f"{count} c-vectors checked")
    return report


def verify_quadratic(b: ExchangeMatrix, w: Sequence[int]) -> VerificationReport:
    """Quadratic membership of the c-vectors at every prefix of ``w``."""
    q = b.weights()
    report = VerificationReport({"b": b.tolist(), "w": list(w), "weights": list(q)})
    for step, seed in enumerate(walk(b, w)):
        for i, row in enumerate(seed.c, 1):
            if not has_quadratic_solution(row, q):
                report.fail("quadratic", f"c_{i} = {row} after {list(w[:step])}",
                            b=b.tolist(), w=list(w[:step]), index=i)
                return report
    report.add("quadratic", True, f"{len(w) + 1} steps")
    return report


# ---------------------------------------------------------------------------
# campaign

ALL_CHECKS = frozenset(
    {"fork", "admissible", "gram", "eps_tau", "l_paths", "coxeter", "sign_invariance", "quadratic"}
)


@dataclass(frozen=True)
class CampaignConfig:
    """Parameters of a randomized campaign.

    ``n`` may be a single rank or a tuple of ranks drawn per trial; walk
    lengths are drawn uniformly from ``1..walk_length``.
    """

    n: int | tuple[int, ...] = 4
    max_weight: int = 6
    walk_length: int = 8
    trials: int = 100
    rng_seed: int = 0
    checks: frozenset[str] = ALL_CHECKS

    def __post_init__(self):
        ns = (self.n,) if isinstance(self.n, int) else tuple(self.n)
        object.__setattr__(self, "n", ns if len(ns) > 1 else ns[0])
        object.__setattr__(self, "checks", frozenset(self.checks))
        unknown = self.checks - ALL_CHECKS
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}")
        if any(k < 3 for k in ns):
            raise ValueError("forks need at least 3 vertices")
        if self.max_weight < 3:
            raise ValueError("max_weight must be at least 3")
        if self.walk_length < 1 or self.trials < 0:
            raise ValueError("walk_length must be >= 1 and trials >= 0")

    @property
    def ranks(self) -> tuple[int, ...]:
        return (self.n,) if isinstance(self.n, int) else self.n

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": list(self.ranks),
            "max_weight": self.max_weight,
            "walk_length": self.walk_length,
            "trials": self.trials,
            "rng_seed": self.rng_seed,
            "checks": sorted(self.checks),
        }


def _matmul_row(v: Sequence[int], a: Gim) -> list[int]:
    n = len(v)
    return [sum(v[i] * a.a[i][j] for i in range(n)) for j in range(n)]


def _gram_mismatch(l_raw, a0: Gim, g: Gim) -> str | None:
    n = a0.n
    for i in range(n):
        la = _matmul_row(l_raw[i], a0)
        for j in range(n):
            val = sum(x * y for x, y in zip(la, l_raw[j]))
            if val != g.a[i][j]:
                return f"l_{i + 1} A l_{j + 1}^T = {val} but a_{i + 1}{j + 1} = {g.a[i][j]}"
    return None


def run_trial(config: CampaignConfig, trial: int) -> tuple[dict[str, Any], list[tuple[str, str | None]]]:
    """One campaign trial; returns its provenance and ``(check, failure or None)`` results."""
    rng = random.Random(f"{config.rng_seed}:{trial}")
    n = rng.choice(config.ranks)
    fork_seed = rng.getrandbits(63)
    b0 = random_fork(n, config.max_weight, fork_seed)
    cert = require_fork(b0)
    length = rng.randint(1, config.walk_length)
    w = random_fork_preserving_sequence(b0, length, rng)
    twin_seed = rng.getrandbits(63)
    prov = {"trial": trial, "n": n, "fork_seed": fork_seed, "b": b0.tolist(), "w": list(w)}
    on = config.checks
    results: list[tuple[str, str | None]] = []

    def record(name: str, failure: str | None) -> None:
        if name in on:
            results.append((name, failure))

    order = fork_linear_ordering(cert, b0)
    a0 = gim_from_ordering(b0, order)
    g = a0
    seed = FramedSeed.initial(b0)
    rows = seed.c
    t = initial_reflections(n)
    fails: dict[str, str] = {}
    q = b0.weights()
    try:
        for step in range(len(w) + 1):
            if step:
                k = w[step - 1]
                rows = l_matrix_step(rows, g, seed, k)
                t = mutate_reflections(t, seed, k)
                g = mutate_gim(g, seed, k)
                seed = mutate_extended(seed, k)
                if "fork" in on and "fork" not in fails and certify_point_of_return(seed.b, k) is None:
                    fails["fork"] = f"step {step}: not a fork with point of return {k}"
            if "admissible" in on and "admissible" not in fails and not is_admissible(g, seed.b):
                fails["admissible"] = f"step {step}: GIM not admissible"
            if "gram" in on and "gram" not in fails:
                bad = _gram_mismatch(rows, a0, g)
                if bad:
                    fails["gram"] = f"step {step}: {bad}"
            if step and "eps_tau" in on and "eps_tau" not in fails:
                bad = _eps_tau_mismatch(rows, seed, g, epsilon_tau(b0, cert, w[:step]))
                if bad:
                    fails["eps_tau"] = f"step {step}: {bad}"
            if "quadratic" in on and "quadratic" not in fails:
                for i, row in enumerate(seed.c, 1):
                    if not has_quadratic_solution(row, q):
                        fails["quadratic"] = f"step {step}: c_{i} = {row}"
                        break
        if "l_paths" in on:
            words = l_matrix_from_words(a0, t)
            if not words.equal_up_to_row_sign(LMatrix(rows)):
                fails["l_paths"] = "word and recurrence L-matrices differ beyond row signs"
        if "coxeter" in on:
            cc = coxeter_product_check(b0, w)
            if not cc.equal:
                fails["coxeter"] = (
                    f"lambda={cc.lambda_order}: {list(cc.lambda_product_word)} "
                    f"!= {list(cc.rho_product_word)}"
                )
        if "sign_invariance" in on:
            twin = reweight_fork(b0, config.max_weight + 3, twin_seed)
            prov["twin"] = twin.tolist()
            rep = verify_sign_invariance(b0, twin, w)
            if not rep.passed:
                fails["sign_invariance"] = rep.counterexample["detail"]
    except (ForkViolation, SignCoherenceError, ValueError) as exc:
        name = "fork" if isinstance(exc, ForkViolation) else "exception"
        fails.setdefault(name, f"{type(exc).__name__}: {exc}")
        if name not in on:
            results.append((name, fails[name]))
    for name in sorted(on):
        record(name, fails.get(name))
    return prov, results


def random_walk_campaign(config: CampaignConfig) -> VerificationReport:
    """Run ``config.trials`` independent trials and aggregate pass counts.

    Trials are keyed by ``"{rng_seed}:{trial}"`` so the report does not
    depend on execution order; the counterexample is the one from the
    lowest-numbered failing trial.
    """
    report = VerificationReport({"campaign": config.to_dict()})
    passes: dict[str, int] = {}
    runs: dict[str, int] = {}
    first: dict[str, str] = {}
    for trial in range(config.trials):
        prov, results = run_trial(config, trial)
        for name, failure in results:
            runs[name] = runs.get(name, 0) + 1
            if failure is None:
                passes[name] = passes.get(name, 0) + 1
            else:
                first.setdefault(name, failure)
                if report.counterexample is None:
                    report.counterexample = {
                        "check": name, "detail": failure,
                        "rng_seed": config.rng_seed, **prov,
                    }
    for name in sorted(runs):
        ok = passes.get(name, 0)
        detail = f"{ok}/{runs[name]} trials"
        if name in first:
            detail += f"; first failure: {first[name]}"
        report.add(name, ok == runs[name], detail)
    return report
