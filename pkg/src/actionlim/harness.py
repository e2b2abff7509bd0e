"""Verification registry and reproducible experiment runner.

Every registered check ties a claimed relation to a measured value and a
pass/fail verdict, emitted as one JSON-lines record per check.  Experiment
configs fully determine their outputs; reruns produce byte-identical files.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import limits, lp_metric, measures, operators, profiles

__all__ = [
    "VerificationRecord",
    "ExperimentConfig",
    "run_verify",
    "run_experiment",
    "parse_operator_spec",
    "load_edge_list",
    "SUITES",
]


# ---------------------------------------------------------------------------
# operator spec parsing (shared with the CLI)
# ---------------------------------------------------------------------------

def load_edge_list(path: str | Path) -> operators.GraphSpec:
    """Edge-list file: one `u v` pair per line, 0-based, `#` comments."""
    edges = []
    max_v = -1
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        max_v = max(max_v, u, v)
    return operators.GraphSpec("edge_list", max_v + 1, edges=tuple(edges))


def parse_operator_spec(spec: str) -> operators.WeightedOperator:
    """Build an operator from a compact spec string.

    Grammar: star:N | empty:N | cycle:N | path:N | complete:N |
    er:N:P[:SEED] | edgelist:PATH | gplus:<graph spec> |
    broadcast:N[:I] | signed:SIGN:I:<graph spec> | a path to operator JSON.
    """
    p = Path(spec)
    if p.suffix == ".json" and p.exists():
        return operators.WeightedOperator.from_dict(json.loads(p.read_text()))
    head, _, rest = spec.partition(":")
    if head == "gplus":
        return operators.gplus(_parse_graph_spec(rest))
    if head == "broadcast":
        parts = rest.split(":")
        n = int(parts[0])
        i_star = int(parts[1]) if len(parts) > 1 else 0
        return limits.broadcast(n, i_star)
    if head == "signed":
        sign_s, i_s, inner = rest.split(":", 2)
        sign = 1 if sign_s in ("+", "+1") else -1 if sign_s in ("-", "-1") else None
        if sign is None:
            raise ValueError(f"bad sign {sign_s!r} in spec {spec!r}")
        return limits.signed_limit(operators.adjacency(_parse_graph_spec(inner)), int(i_s), sign)
    return operators.adjacency(_parse_graph_spec(spec))


def _parse_graph_spec(spec: str) -> operators.GraphSpec:
    head, _, rest = spec.partition(":")
    if head == "edgelist":
        return load_edge_list(rest)
    if head == "er":
        parts = rest.split(":")
        n, prob = int(parts[0]), float(parts[1])
        seed = int(parts[2]) if len(parts) > 2 else 0
        return operators.GraphSpec("erdos_renyi", n, p=prob, seed=seed)
    if head in operators.GRAPH_KINDS:
        return operators.GraphSpec(head, int(rest))
    raise ValueError(f"cannot parse graph spec {spec!r}")


# ---------------------------------------------------------------------------
# verification records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationRecord:
    id: str
    anchor: str
    expected: str
    measured: str
    passed: object  # True, False, or "skip"
    ms: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "expected": self.expected,
            "measured": self.measured,
            "pass": self.passed,
            "ms": round(self.ms, 3),
        }


def _record(check_id: str, anchor: str, expected: str, measured: str, ok: bool, t0: float) -> VerificationRecord:
    return VerificationRecord(check_id, anchor, expected, measured, bool(ok), (time.perf_counter() - t0) * 1000)


# closed registry of claim anchors
ANCHORS = {
    "lp_definition": "d_LP(eta,mu) = inf{eps : eta(U) <= mu(U^eps)+eps and mu(U) <= eta(U^eps)+eps for every Borel U}",
    "lp_bounded": "d_LP(eta,mu) <= 1 for any two probability measures",
    "lp_shift": "d_LP(eta (+) w, nu) = d_LP(eta, nu (+) (-w)) and d_LP(eta, eta (+) w) <= |w|",
    "lp_marginal": "d_LP(mu_x, kappa_x) <= d_LP(mu, kappa) for x-axis marginals",
    "star_norm": "norm_{inf->1}(S_n) = (1*(n-1) + (n-1)*1)/n = 2 - 2/n",
    "star_degree_norm": "q-norm of the star degree sequence = ((n-1)/n + (n-1)^q/n)^(1/q) >= (n-1)/n^(1/q)",
    "uniform_approx": "d_LP(mu, kappa_m) <= 1/k for a grid with 1/k-ball cells; stage-2 rounding adds < m/n",
    "gplus_shift": "d_LP(mu_n^{+v}, mu_n (+) v) <= 1/(|V(G_n)|+1)",
    "star_limit": "d_M(S_n, A) -> 0 for the broadcast-type limit operator A",
    "gplus_limit": "A + phi and A - phi are action limits of the apex-augmented sequence G_n^+",
    "not_self_adjoint": "|(f,1)_A| > 1-eps while |(1,f)_A| <= 2*eps: the star limit is not self-adjoint",
    "regularity_shift": "if A is c-regular then A^+ is (c+1)-regular and A^- is (c-1)-regular",
    "positivity_shift": "A^+ is positivity-preserving when A is; A^- need not be",
    "norm_discontinuity": "lim norm_{inf->1}(S_n) = 2 > 1 = norm of the limit: the (inf,1)-norm is not continuous",
    "norm_readout": "norm_{inf->1}(B) = sup over 1-profile measures of the mean of |x| under the y-marginal",
    "adjoint_norms": "norm_{p->q}(A) = norm_{q'->p'}(A*) for Holder conjugates; (inf,1) is self-conjugate",
}


# ---------------------------------------------------------------------------
# randomized measure generators (dyadic coordinates keep float shifts exact)
# ---------------------------------------------------------------------------

def _random_measure(rng: np.random.Generator, dim: int, max_atoms: int, denom: int = 16) -> measures.DiscreteMeasure:
    m = int(rng.integers(1, max_atoms + 1))
    pts = rng.integers(-2 * 64, 2 * 64 + 1, size=(m, dim)) / 64.0
    raw = rng.integers(1, denom, size=m)
    total = int(raw.sum())
    ws = [Fraction(int(x), total) for x in raw]
    return measures.DiscreteMeasure(dim, zip(map(tuple, pts), ws))


def _random_shift(rng: np.random.Generator, dim: int) -> measures.ShiftVector:
    return measures.ShiftVector(tuple(rng.integers(-64, 65, size=dim) / 64.0))


# ---------------------------------------------------------------------------
# suite implementations (shared with the acceptance tests)
# ---------------------------------------------------------------------------

def lp_oracle_deviation(cases: int = 200, seed: int = 2024) -> float:
    """Max |exact - brute force| over random pairs with small supports."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        dim = int(rng.integers(1, 5))
        a = _random_measure(rng, dim, 4)
        b = _random_measure(rng, dim, 4)
        worst = max(worst, abs(lp_metric.lp_distance(a, b).value - lp_metric.lp_distance_bruteforce(a, b).value))
    return worst


def lp_property_violations(cases: int = 500, seed: int = 77) -> dict[str, float]:
    """Worst violation per metric property over random dyadic measures."""
    rng = np.random.default_rng(seed)
    out = {
        "symmetry": 0.0,
        "identity": 0.0,
        "triangle": 0.0,
        "bounded": 0.0,
        "shift_identity": 0.0,
        "shift_contraction": 0.0,
        "marginal_contraction": 0.0,
    }
    for i in range(cases):
        dim = int(rng.integers(1, 4))
        a = _random_measure(rng, dim, 5)
        b = _random_measure(rng, dim, 5)
        dab = lp_metric.lp_distance(a, b).value
        out["symmetry"] = max(out["symmetry"], abs(dab - lp_metric.lp_distance(b, a).value))
        out["identity"] = max(out["identity"], lp_metric.lp_distance(a, a).value)
        out["bounded"] = max(out["bounded"], dab - 1.0)
        w = _random_shift(rng, dim)
        out["shift_identity"] = max(
            out["shift_identity"],
            abs(
                lp_metric.lp_distance(measures.shift(a, w), b).value
                - lp_metric.lp_distance(a, measures.shift(b, -w)).value
            ),
        )
        out["shift_contraction"] = max(
            out["shift_contraction"],
            lp_metric.lp_distance(a, measures.shift(a, w)).value - w.norm(),
        )
        if i % 3 == 0:
            c = _random_measure(rng, dim, 5)
            dac = lp_metric.lp_distance(a, c).value
            dcb = lp_metric.lp_distance(c, b).value
            out["triangle"] = max(out["triangle"], dab - dac - dcb)
        if dim > 1:
            k = int(rng.integers(1, dim))
            coords = sorted(rng.choice(dim, size=k, replace=False).tolist())
            dm = lp_metric.lp_distance(measures.marginal(a, coords), measures.marginal(b, coords)).value
            out["marginal_contraction"] = max(out["marginal_contraction"], dm - dab)
    return out


def uniform_grid_proxy(atoms: int = 2048, lo: float = -1.0, hi: float = 1.0) -> measures.DiscreteMeasure:
    """Fine-grid stand-in for the uniform distribution on [lo, hi]."""
    pitch = (hi - lo) / atoms
    pts = [(lo + (j + 0.5) * pitch,) for j in range(atoms)]
    return measures.empirical(pts)


def discretization_errors(resolutions: Sequence[int] = (2, 4, 8), atoms: int = 2048) -> dict[int, float]:
    proxy = uniform_grid_proxy(atoms)
    out = {}
    for k in resolutions:
        quant = measures.discretize(proxy, k, box=[(-1.0, 1.0)])
        out[k] = lp_metric.lp_distance(proxy, quant).value
    return out


def gplus_shift_deviation(n: int = 50, graphs: int = 50, k: int = 2, seed: int = 11) -> float:
    """Worst d_LP(apex-augmented measure, shifted base measure) - 1/(n+1)."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for g in range(graphs):
        spec = operators.GraphSpec("erdos_renyi", n, p=float(rng.uniform(0.05, 0.6)), seed=int(rng.integers(1 << 31)))
        base = operators.adjacency(spec)
        aug = operators.gplus(spec)
        fs = rng.uniform(-1.0, 1.0, size=(k, n))
        v = rng.uniform(-1.0, 1.0, size=k)
        fs_plus = np.concatenate([fs, v[:, None]], axis=1)
        mu_plus = profiles.measure_of(aug, fs_plus)
        mu_shift = measures.shift(profiles.measure_of(base, fs), tuple([0.0] * k) + tuple(v))
        d = lp_metric.lp_distance(mu_plus, mu_shift).value
        worst = max(worst, d - 1.0 / (n + 1))
    return worst


def star_convergence_trajectory(
    sizes: Sequence[int] = (8, 32, 128), K: int = 3, count: int = 64, seed: int = 7
) -> list[float]:
    vals = []
    for n in sizes:
        strat = profiles.TestFunctionStrategy("mixed", count=count, seed=seed)
        rep = profiles.action_distance_estimate(
            operators.adjacency(operators.GraphSpec("star", n)), limits.broadcast(n, 0), K, strat
        )
        vals.append(rep.value)
    return vals


def gplus_limit_trajectory(
    sizes: Sequence[int] = (8, 32, 128), K: int = 3, count: int = 64, seed: int = 7
) -> list[float]:
    vals = []
    for n in sizes:
        aug = operators.gplus(operators.GraphSpec("cycle", n))
        signed = limits.signed_limit(operators.adjacency(operators.GraphSpec("cycle", n + 1)), 0, 1)
        strat_a = profiles.TestFunctionStrategy("vertex_probe", count=count, seed=seed, probe_vertex=n)
        strat_b = profiles.TestFunctionStrategy("vertex_probe", count=count, seed=seed, probe_vertex=0)
        rep = profiles.action_distance_estimate(aug, signed, K, strat_a, strat_b)
        vals.append(rep.value)
    return vals


# ---------------------------------------------------------------------------
# suite wrappers producing records
# ---------------------------------------------------------------------------

def _suite_lp_oracle(cases: int = 200) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    if cases == 0:
        return [
            VerificationRecord(
                "lp_oracle", ANCHORS["lp_definition"], "vacuous (0 cases)", "warning: empty suite", True, 0.0
            )
        ]
    dev = lp_oracle_deviation(cases)
    return [
        _record(
            "lp_oracle", ANCHORS["lp_definition"], "|flow - brute| <= 1e-9 over random pairs",
            f"max deviation {dev:.3e} over {cases} cases", dev <= 1e-9, t0,
        )
    ]


def _suite_lp_properties(cases: int = 500) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    viol = lp_property_violations(cases)
    tol = {
        "symmetry": 0.0,
        "identity": 0.0,
        "triangle": 1e-12,
        "bounded": 0.0,
        "shift_identity": 0.0,
        "shift_contraction": 1e-12,
        "marginal_contraction": 1e-12,
    }
    anchor = {
        "symmetry": ANCHORS["lp_definition"],
        "identity": ANCHORS["lp_definition"],
        "triangle": ANCHORS["lp_definition"],
        "bounded": ANCHORS["lp_bounded"],
        "shift_identity": ANCHORS["lp_shift"],
        "shift_contraction": ANCHORS["lp_shift"],
        "marginal_contraction": ANCHORS["lp_marginal"],
    }
    return [
        _record(
            f"lp_properties.{name}", anchor[name], f"violation <= {tol[name]:g}",
            f"worst violation {v:.3e} over {cases} cases", v <= tol[name], t0,
        )
        for name, v in viol.items()
    ]


def _suite_norms() -> list[VerificationRecord]:
    records = []
    for n in (4, 10, 100, 1000):
        t0 = time.perf_counter()
        got = operators.pq_norm(operators.adjacency(operators.GraphSpec("star", n)), math.inf, 1)
        want = float(Fraction(2 * n - 2, n))
        records.append(
            _record(f"norms.star_inf1.n{n}", ANCHORS["star_norm"], f"2 - 2/{n} = {want!r}", repr(got), got == want, t0)
        )
    t0 = time.perf_counter()
    got = operators.pq_norm(operators.adjacency(operators.GraphSpec("star", 10)), math.inf, 2)
    records.append(
        _record("norms.star_degree2.n10", ANCHORS["star_degree_norm"], "3.0 exactly", repr(got), got == 3.0, t0)
    )
    for n in (10, 100, 1000):
        t0 = time.perf_counter()
        got = operators.pq_norm(operators.adjacency(operators.GraphSpec("star", n)), math.inf, 2)
        bound = (n - 1) / math.sqrt(n)
        records.append(
            _record(
                f"norms.star_degree2_lower.n{n}", ANCHORS["star_degree_norm"],
                f">= (n-1)/sqrt(n) = {bound:.6f}", f"{got:.6f}", got >= bound, t0,
            )
        )
    return records


def _suite_discretization(atoms: int = 2048) -> list[VerificationRecord]:
    records = []
    pitch = 2.0 / atoms
    for k, err in discretization_errors(atoms=atoms).items():
        t0 = time.perf_counter()
        bound = 1.0 / k + pitch
        records.append(
            _record(
                f"discretization.k{k}", ANCHORS["uniform_approx"], f"d_LP <= 1/{k} + {pitch:g}",
                f"{err:.6f}", err <= bound, t0,
            )
        )
    return records


def _suite_gplus_shift(graphs: int = 50) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    dev = gplus_shift_deviation(graphs=graphs)
    return [
        _record(
            "gplus_shift", ANCHORS["gplus_shift"], "d_LP - 1/(n+1) <= 1e-12",
            f"worst excess {dev:.3e} over {graphs} graphs", dev <= 1e-12, t0,
        )
    ]


def _suite_star_convergence(count: int = 64) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    vals = star_convergence_trajectory(count=count)
    ok = all(b <= a for a, b in zip(vals, vals[1:])) and vals[-1] <= vals[0] / 2
    return [
        _record(
            "star_convergence", ANCHORS["star_limit"],
            "estimate nonincreasing over n in (8,32,128) and final <= first/2",
            "trajectory " + ", ".join(f"{v:.5f}" for v in vals), ok, t0,
        )
    ]


def _suite_gplus_limit(count: int = 64) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    vals = gplus_limit_trajectory(count=count)
    ok = all(b <= a for a, b in zip(vals, vals[1:]))
    return [
        _record(
            "gplus_limit", ANCHORS["gplus_limit"], "estimate nonincreasing over n in (8,32,128)",
            "trajectory " + ", ".join(f"{v:.5f}" for v in vals), ok, t0,
        )
    ]


def _suite_self_adjoint() -> list[VerificationRecord]:
    records = []
    for n in (8, 64):
        t0 = time.perf_counter()
        got = limits.non_self_adjoint_witness(limits.broadcast(n, 0), 0)
        want = 1.0 - 1.0 / n
        records.append(
            _record(
                f"self_adjoint.witness.n{n}", ANCHORS["not_self_adjoint"], f"1 - 1/{n} = {want!r}",
                repr(got), got == want, t0,
            )
        )
    t0 = time.perf_counter()
    specs = [
        operators.GraphSpec("star", 9),
        operators.GraphSpec("cycle", 12),
        operators.GraphSpec("complete", 7),
        operators.GraphSpec("erdos_renyi", 20, p=0.3, seed=5),
    ]
    defects = [operators.self_adjoint_defect(operators.adjacency(s)) for s in specs]
    records.append(
        _record(
            "self_adjoint.adjacency_zero", ANCHORS["not_self_adjoint"], "defect 0 for adjacency matrices",
            f"defects {defects}", all(d == 0.0 for d in defects), t0,
        )
    )
    return records


def _suite_regularity() -> list[VerificationRecord]:
    records = []
    for n in (8, 64):
        cyc = operators.adjacency(operators.GraphSpec("cycle", n))
        for sign, want in ((1, 3.0), (-1, 1.0)):
            t0 = time.perf_counter()
            got = operators.c_regularity(limits.signed_limit(cyc, 0, sign))
            records.append(
                _record(
                    f"regularity.c.n{n}.sign{sign:+d}", ANCHORS["regularity_shift"], f"{want!r} exactly",
                    repr(got), got == want, t0,
                )
            )
        t0 = time.perf_counter()
        neg = operators.positivity_defect(limits.signed_limit(cyc, 0, -1))
        pos = operators.positivity_defect(limits.signed_limit(cyc, 0, 1))
        records.append(
            _record(
                f"regularity.positivity.n{n}", ANCHORS["positivity_shift"], "defect > 0 for -, = 0 for +",
                f"minus {neg!r}, plus {pos!r}", neg > 0.0 and pos == 0.0, t0,
            )
        )
    return records


def _suite_norm_gap() -> list[VerificationRecord]:
    records = []
    strat = profiles.TestFunctionStrategy("mixed", count=8, seed=3)
    for n in (8, 128):
        t0 = time.perf_counter()
        star_norm = profiles.norm_from_profile(
            profiles.profile_sample(operators.adjacency(operators.GraphSpec("star", n)), 1, strat)
        )
        bcast_norm = profiles.norm_from_profile(profiles.profile_sample(limits.broadcast(n, 0), 1, strat))
        want = float(Fraction(2 * n - 2, n))
        ok = star_norm == want and bcast_norm == 1.0
        records.append(
            _record(
                f"norm_gap.n{n}", ANCHORS["norm_discontinuity"],
                f"star readout {want!r}, broadcast readout 1.0, persistent gap",
                f"star {star_norm!r}, broadcast {bcast_norm!r}, gap {star_norm - bcast_norm!r}", ok, t0,
            )
        )
    return records


def _suite_adjoint_duality(cases: int = 50, seed: int = 42) -> list[VerificationRecord]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    ok = True
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 13))
        m = rng.choice([-1.0, 1.0], size=(n, n))
        A = operators.WeightedOperator(m)
        left = operators.pq_norm(A, math.inf, 1)
        right = operators.pq_norm(operators.adjoint(A), math.inf, 1)
        worst = max(worst, abs(left - right))
        ok = ok and left == right
    return [
        _record(
            "adjoint_duality", ANCHORS["adjoint_norms"], "exact equality over random sign matrices n <= 12",
            f"max |diff| {worst:.3e} over {cases} cases", ok, t0,
        )
    ]


SUITES: dict[str, tuple[Callable[[], list[VerificationRecord]], float]] = {
    # name -> (runner, rough cost estimate in seconds, used by the time guard)
    "lp_oracle": (_suite_lp_oracle, 10.0),
    "lp_properties": (_suite_lp_properties, 30.0),
    "norms": (_suite_norms, 1.0),
    "discretization": (_suite_discretization, 30.0),
    "gplus_shift": (_suite_gplus_shift, 30.0),
    "star_convergence": (_suite_star_convergence, 30.0),
    "gplus_limit": (_suite_gplus_limit, 60.0),
    "self_adjoint": (_suite_self_adjoint, 1.0),
    "regularity": (_suite_regularity, 1.0),
    "norm_gap": (_suite_norm_gap, 2.0),
    "adjoint_duality": (_suite_adjoint_duality, 5.0),
}


def run_verify(
    suite: str = "all",
    out: Optional[str | Path] = None,
    time_guard: float = 120.0,
) -> list[VerificationRecord]:
    """Run one named suite or all of them; returns records sorted by id.

    Suites whose cost estimate exceeds the time guard are reported as skip.
    """
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; known: {', '.join(SUITES)} or 'all'")
    records: list[VerificationRecord] = []
    for name in names:
        runner, estimate = SUITES[name]
        if estimate > time_guard:
            records.append(
                VerificationRecord(name, "", f"estimated {estimate:.0f}s", f"exceeds time guard {time_guard:.0f}s", "skip", 0.0)
            )
            continue
        records.extend(runner())
    records.sort(key=lambda r: r.id)
    if out is not None:
        Path(out).write_text("".join(json.dumps(r.to_dict()) + "\n" for r in records))
    return records


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    """Fully determines an experiment's outputs (replay-stable).

    Operator templates may use the tokens {n} and {n1} (= n + 1); probe
    vertices may be an integer index or "last".
    """

    experiment: str = "star_vs_broadcast"
    graph_a: str = "star:{n}"
    graph_b: str = "broadcast:{n}:0"
    sizes: tuple[int, ...] = (8, 32, 128)
    K: int = 3
    count: int = 64
    seed: int = 7
    strategy: str = "mixed"
    probe_a: Optional[str] = None
    probe_b: Optional[str] = None
    out: str = "experiment_out"

    @classmethod
    def from_file(cls, path: str | Path, overrides: Optional[dict] = None) -> "ExperimentConfig":
        """Flat key=value config file; CLI overrides win."""
        kv: dict = {}
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            kv[key.strip()] = value.strip()
        kv.update(overrides or {})
        return cls.from_mapping(kv)

    @classmethod
    def from_mapping(cls, kv: dict) -> "ExperimentConfig":
        kwargs: dict = {}
        valid = {f.name for f in fields(cls)}
        for key, value in kv.items():
            if key not in valid:
                raise ValueError(f"unknown config key {key!r}")
            if key == "sizes":
                kwargs[key] = tuple(int(x) for x in str(value).replace(",", " ").split())
            elif key in ("K", "count", "seed"):
                kwargs[key] = int(value)
            else:
                kwargs[key] = value
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "graph_a": self.graph_a,
            "graph_b": self.graph_b,
            "sizes": list(self.sizes),
            "K": self.K,
            "count": self.count,
            "seed": self.seed,
            "strategy": self.strategy,
            "probe_a": self.probe_a,
            "probe_b": self.probe_b,
            "out": self.out,
        }


def _strategy_for(cfg: ExperimentConfig, op: operators.WeightedOperator, probe: Optional[str]) -> profiles.TestFunctionStrategy:
    if cfg.strategy == "vertex_probe" or probe is not None:
        vertex = op.n - 1 if probe in (None, "last") else int(probe)
        return profiles.TestFunctionStrategy("vertex_probe", count=cfg.count, seed=cfg.seed, probe_vertex=vertex)
    return profiles.TestFunctionStrategy(cfg.strategy, count=cfg.count, seed=cfg.seed)


def run_experiment(cfg: ExperimentConfig) -> Path:
    """Write manifest, per-size distance reports, and a trajectory CSV."""
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in cfg.sizes:
        op_a = parse_operator_spec(cfg.graph_a.format(n=n, n1=n + 1))
        op_b = parse_operator_spec(cfg.graph_b.format(n=n, n1=n + 1))
        strat_a = _strategy_for(cfg, op_a, cfg.probe_a)
        strat_b = _strategy_for(cfg, op_b, cfg.probe_b)
        report = profiles.action_distance_estimate(op_a, op_b, cfg.K, strat_a, strat_b)
        norm_a = profiles.norm_from_profile(profiles.profile_sample(op_a, 1, strat_a))
        norm_b = profiles.norm_from_profile(profiles.profile_sample(op_b, 1, strat_b))
        (outdir / f"report_n{n}.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        rows.append((n, report.value, norm_a, norm_b))
    manifest = {"config": cfg.to_dict(), "files": [f"report_n{n}.json" for n in cfg.sizes] + ["trajectory.csv"]}
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    csv_lines = ["n,action_distance,norm_a,norm_b"]
    csv_lines += [f"{n},{v!r},{na!r},{nb!r}" for n, v, na, nb in rows]
    (outdir / "trajectory.csv").write_text("\n".join(csv_lines) + "\n")
    return outdir
