"""The invariant suite behind ``lpa verify``.

Every check is independent and returns a :class:`CheckResult`; the suite can
run checks on a thread pool and always reports them in a fixed order.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import algebra as alg
from .corpus import DEFAULT_SEED, brute_force_closure, hereditary_subsets
from .fields import GF, QQ
from .graph import (
    Graph,
    is_acyclic,
    is_hereditary,
    is_saturated,
    quotient,
    restriction,
    saturated_closure,
    sink_source_free_core,
    sinks,
)
from .simples import matrix_decomposition, simple_census
from .structure import (
    cycle_preorder,
    enumerate_cycles,
    kuhn_count_check,
    minimal_cycles,
    one_cycle_condition,
    recollement_triple,
    stratify,
)

MAX_SUBSET_VERTICES = 12


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: str | None = None

    def as_dict(self):
        d = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.failures:
            d["failures"] = [str(f) for f in self.failures[:5]]
        if self.skipped:
            d["skipped"] = self.skipped
        return d


def _result(name, failures, cases):
    return CheckResult(name, not failures, cases, failures)


def check_relations(g: Graph, seed: int, samples: int) -> CheckResult:
    failures, cases = [], 0
    for k in (GF(2), QQ):
        rep = alg.verify_relations(g, k, samples=samples, seed=seed)
        cases += len(rep.families)
        failures += [f"{k}:{fam}" for fam, ok in rep.families.items() if not ok]
    return _result("relations", failures, cases)


def check_normal_form(g: Graph, seed: int, samples: int) -> CheckResult:
    """Idempotence, order independence and multiplicativity of the normal form."""
    failures, cases = [], 0
    for k in (GF(2), QQ):
        rng = random.Random(seed)
        for i in range(samples):
            a = alg.random_element(g, k, rng)
            b = alg.random_element(g, k, rng)
            na = alg.normal_form(a)
            if alg.normal_form(na) != na:
                failures.append(f"{k} idempotence #{i}: {a}")
            if alg.normal_form(a, strategy="worklist", seed=seed + i) != na:
                failures.append(f"{k} confluence #{i}: {a}")
            nb = alg.normal_form(b)
            if alg.normal_form(a * b) != alg.normal_form(na * nb):
                failures.append(f"{k} multiplicativity #{i}: {a} ; {b}")
            cases += 3
    return _result("normal_form", failures, cases)


def check_closure(g: Graph) -> CheckResult:
    if len(g.vertices) > MAX_SUBSET_VERTICES:
        return CheckResult("closure", True, skipped=f"more than {MAX_SUBSET_VERTICES} vertices")
    failures, cases = [], 0
    snk = sinks(g)
    for h in hereditary_subsets(g):
        c = saturated_closure(g, h)
        cases += 1
        if c != brute_force_closure(g, h):
            failures.append(f"oracle mismatch at {sorted(h)}")
        if not (h <= c and is_hereditary(g, c) and is_saturated(g, c)):
            failures.append(f"closure not closed at {sorted(h)}")
        if saturated_closure(g, c) != c:
            failures.append(f"not idempotent at {sorted(h)}")
        if (c - h) & snk:
            failures.append(f"closure added sinks at {sorted(h)}")
        left, right = quotient(g, c), restriction(g, h)
        if sinks(right) != h & snk or sinks(left) != snk - c:
            failures.append(f"sink bookkeeping at {sorted(h)}")
    core = quotient(g, saturated_closure(g, snk))
    if sinks(core):
        failures.append("quotient by closure of sinks still has sinks")
    return _result("closure", failures, cases)


def check_dimensions(g: Graph) -> CheckResult:
    if not is_acyclic(g):
        return CheckResult("dimensions", True, skipped="graph has cycles")
    if len(g.vertices) > MAX_SUBSET_VERTICES:
        return CheckResult("dimensions", True, skipped=f"more than {MAX_SUBSET_VERTICES} vertices")
    failures, cases = [], 0
    dec = matrix_decomposition(g)
    basis = alg.acyclic_basis(g)
    if dec.total_dimension != len(basis) or len(dec.blocks) != len(sinks(g)):
        failures.append("block sizes disagree with the basis")
    if sink_source_free_core(g).vertices:
        failures.append("acyclic graph has a nonempty core")
    for h in hereditary_subsets(g):
        cases += 1
        if not h:
            if alg.corner_dimension(g, h) != 0 or alg.ideal_dimension(g, h) != 0:
                failures.append("empty H gives nonzero corner or ideal")
            continue
        cert = recollement_triple(g, h).certificate
        for key in ("corner_identity", "quotient_identity", "ideal_closure_identity"):
            if not cert[key]:
                failures.append(f"{key} at {sorted(h)}")
        if not kuhn_count_check(g, h).passed:
            failures.append(f"simple count at {sorted(h)}")
    return _result("dimensions", failures, cases)


def check_linear_independence(g: Graph) -> CheckResult:
    """The enumerated basis has full rank under two different special-edge choices."""
    if not is_acyclic(g):
        return CheckResult("basis_rank", True, skipped="graph has cycles")
    basis = alg.acyclic_basis(g)
    if len(basis) > 400:
        return CheckResult("basis_rank", True, skipped="basis too large for exact rank")
    failures = []
    elems = [alg.AlgebraElement(g, QQ, {m: 1}) for m in basis]
    largest = {v: max(e.id for e in out) for v, out in g.out_edges.items() if out}
    for choice in (alg.default_choice(g), largest):
        if alg.rank(elems, choice) != len(basis):
            failures.append(f"rank deficient under {choice}")
    return _result("basis_rank", failures, 2)


def check_structure(g: Graph) -> CheckResult:
    if not one_cycle_condition(g):
        return CheckResult("structure", True, skipped="some vertex lies on two cycles")
    failures = []
    cycles = enumerate_cycles(g)
    if not cycle_preorder(g, cycles).is_antisymmetric():
        failures.append("cycle pre-order is not antisymmetric")
    core = sink_source_free_core(g)
    for c in minimal_cycles(core):
        if c.exits(core):
            failures.append(f"minimal cycle {c} has an exit in the core")
    rep = stratify(g)
    if len(rep.cycle_layers) != len(cycles) or len(rep.chain) != len(cycles) + 1:
        failures.append("layer count differs from cycle count")
    if rep.final_graph.vertices:
        failures.append("stratification does not end empty")
    for layer in rep.cycle_layers:
        if not is_hereditary(layer.graph_before, layer.cycle.vertices):
            failures.append(f"layer {layer.cycle} is not hereditary")
    other = stratify(g, pick="greatest")
    if sorted(l.cycle for l in other.cycle_layers) != sorted(l.cycle for l in rep.cycle_layers):
        failures.append("layer multiset depends on the choice of minimal cycle")
    return _result("structure", failures, 4 + len(rep.cycle_layers))


def check_census(g: Graph) -> CheckResult:
    if not one_cycle_condition(g):
        return CheckResult("census", True, skipped="some vertex lies on two cycles")
    failures = []
    from .fields import count_irreducibles

    cycles = enumerate_cycles(g)
    prev = None
    for d in range(1, 4):
        cen = simple_census(g, GF(2), d)
        if cen.count != len(sinks(g)) + len(cycles) * len(cen.polynomials):
            failures.append(f"count formula at degree {d}")
        if prev is not None:
            step = count_irreducibles(GF(2), d)
            if cen.count - prev != len(cycles) * step:
                failures.append(f"degree {d} increment")
        prev = cen.count
    if is_acyclic(g):
        cen = simple_census(g, QQ)
        if cen.count != len(matrix_decomposition(g).blocks):
            failures.append("census disagrees with matrix blocks")
    return _result("census", failures, 4)


def run_suite(g: Graph, seed: int = DEFAULT_SEED, samples: int = 200, jobs: int = 1) -> dict:
    tasks = [
        lambda: check_relations(g, seed, samples),
        lambda: check_normal_form(g, seed, samples),
        lambda: check_closure(g),
        lambda: check_dimensions(g),
        lambda: check_linear_independence(g),
        lambda: check_structure(g),
        lambda: check_census(g),
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    else:
        results = [t() for t in tasks]
    return {
        "seed": seed,
        "samples": samples,
        "checks": [r.as_dict() for r in results],
        "failures": sum(0 if r.passed else 1 for r in results),
        "passed": all(r.passed for r in results),
    }
