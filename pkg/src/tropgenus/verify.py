"""End-to-end genus computation, per-graph verdicts and the exhaustive survey."""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from .errors import (CertificateError, ConventionError, DisconnectedCurveError, NonGenericError,
                     TransversalityError)
from .graph import (Graph, RigidDecomposition, cycle_basis, enumerate_one_dof_graphs,
                    rigid_components, shared_vertex_structure)
from .linear_model import (ConstraintMatrix, ParameterAssignment, assign_parameters,
                           build_constraint_matrix, expected_rank, max_retries)
from .matroid import Matroid, column_matroid, dual
from .tropical import (GenusReport, HFan, TropicalCurve, bergman_fan, genus, reflect_translate,
                       sample_translation, stable_intersection, transversality_certificate)

# genera reported for all 1-dof graphs with at most nine vertices
KNOWN_GENERA = frozenset({0, 1, 5, 7, 17, 21, 23, 25, 27, 33, 49, 55, 57, 65, 69, 73, 129, 145,
                          151, 321})

# the traced curve is compared with exhaustive cell enumeration up to this r
CROSS_CHECK_MAX_R = 6


@dataclass
class PipelineResult:
    graph: Graph
    decomposition: RigidDecomposition
    parameters: ParameterAssignment
    matrix: ConstraintMatrix
    matroid: Matroid            # the dual of the column matroid; X̄ is its Bergman fan
    fan: HFan
    w: tuple
    curve: TropicalCurve
    report: GenusReport
    attempts: int
    lam_seed: int
    w_seed: int
    cross_checked: bool = False
    runtime: float = 0.0

    @property
    def r(self):
        return self.decomposition.r


def _draw_seed(seed, attempt, salt):
    # distinct deterministic streams per attempt; attempt 0 keeps the user's seed
    return seed if attempt == 0 else seed * 1_000_003 + 7919 * attempt + salt


def linear_matroid(g, d, basis, lam_seed):
    """(parameters, matrix, dual matroid) for one λ draw; raises NonGenericError on rank drop."""
    p = assign_parameters(d, lam_seed)
    a = build_constraint_matrix(g, d, p, basis)
    m = column_matroid(a)
    if m.rank != expected_rank(d.r):
        raise NonGenericError(f"column matroid rank {m.rank} != {expected_rank(d.r)}")
    md = dual(m)
    if md.rank != d.r // 2 + 1:
        raise ConventionError(f"dual matroid rank {md.rank} != r/2 + 1 = {d.r // 2 + 1}")
    return p, a, md


def run_pipeline(g: Graph, seed: int = 1, w=None, mu_seed: int | None = None,
                 method: str = "auto", cross_check: bool | None = None) -> PipelineResult:
    """Graph -> rigid pieces -> constraint matroid -> Bergman fans -> curve -> genus.

    `mu_seed` draws the matroid of the reflected fan from an independent set of
    parameters.  With `cross_check` (default: r <= CROSS_CHECK_MAX_R) the traced
    curve is compared with an exhaustive enumeration of all cells, which also
    certifies that the curve is connected.
    """
    t0 = time.perf_counter()
    d = rigid_components(g)
    basis = cycle_basis(g)
    r = d.r
    if cross_check is None:
        cross_check = r <= CROSS_CHECK_MAX_R
    retries = max_retries()
    last = None
    for attempt in range(retries):
        lam_seed = _draw_seed(seed, attempt, 1)
        w_seed = _draw_seed(seed, attempt, 2)
        try:
            p, a, md = linear_matroid(g, d, basis, lam_seed)
            x = bergman_fan(md, expected_dim=r // 2)
            if mu_seed is None:
                y_fan = x
            else:
                y_fan = bergman_fan(linear_matroid(g, d, basis, _draw_seed(mu_seed, attempt, 3))[2],
                                    expected_dim=r // 2)
            if w is None:
                wv = sample_translation(r, w_seed, fan=x).w
            else:
                wv = tuple(w)
            y = reflect_translate(y_fan, wv)
            cert = transversality_certificate(x, y)
            if not cert:
                raise TransversalityError(f"translation is not transversal: {cert.witnesses[:3]}")
            curve = stable_intersection(x, y, method)
            checked = False
            if cross_check and curve.certificates.get("method") == "trace":
                full = stable_intersection(x, y, "cells")
                if not full.same_as(curve):
                    raise CertificateError("traced curve differs from the exhaustive cell list")
                checked = True
                curve.certificates["connected"] = full.certificates["connected"]
                curve.certificates["exhaustive_match"] = True
            report = genus(curve, r)
        except (NonGenericError, TransversalityError, DisconnectedCurveError) as exc:
            last = exc
            if w is not None and isinstance(exc, TransversalityError):
                raise
            continue
        return PipelineResult(g, d, p, a, md, x, wv, curve, report, attempt + 1, lam_seed, w_seed,
                              checked, time.perf_counter() - t0)
    raise NonGenericError(f"pipeline failed after {retries} attempts: {last}")


def seed_invariance(g: Graph, seed: int = 1, seeds: int = 5, base: PipelineResult | None = None):
    """Curves from `seeds` independent λ draws (and reflected-side draws) with w held fixed.

    Returns (all_equal, digests).
    """
    base = base or run_pipeline(g, seed)
    ref = base.curve.canonical()
    digests = [base.curve.digest()]
    same = True
    for k in range(1, seeds + 1):
        lam = seed + 104_729 * k
        res = run_pipeline(g, lam, w=base.w, mu_seed=lam + 1, cross_check=False)
        digests.append(res.curve.digest())
        same &= res.curve.canonical() == ref
    return same, digests


@dataclass
class Verdict:
    graph: str
    n: int
    m: int
    r: int
    genus: int | None
    parity_ok: bool
    zero_case_ok: bool
    smooth_ok: bool
    transversal_ok: bool = False
    multiplicities_ok: bool = False
    balanced_ok: bool = False
    euler_ok: bool = False
    dim_ok: bool = False
    connected_ok: bool = False
    shared_vertex: bool = False
    seed: int = 1
    seeds_used: list = field(default_factory=list)
    seed_invariant: bool | None = None
    curve_hash: str = ""
    vertices: int = 0
    bounded_edges: int = 0
    rays: int = 0
    runtime: float = 0.0
    error: str | None = None

    @property
    def ok(self):
        return self.error is None and all((
            self.parity_ok, self.zero_case_ok, self.smooth_ok, self.transversal_ok,
            self.multiplicities_ok, self.balanced_ok, self.euler_ok, self.dim_ok,
            self.connected_ok, self.r % 2 == 0, self.seed_invariant is not False))

    def to_json(self):
        d = asdict(self)
        d["ok"] = self.ok
        d["version"] = __version__
        return json.dumps(d, separators=(",", ":"), sort_keys=True)


def theorem_verdict(g: Graph, seed: int = 1, invariance_seeds: int = 0,
                    cross_check: bool | None = None) -> Verdict:
    """Run the pipeline and check: genus odd or zero, and genus 0 iff two pieces share one vertex."""
    t0 = time.perf_counter()
    res = run_pipeline(g, seed, cross_check=cross_check)
    rep, cert = res.report, res.curve.certificates
    shared = shared_vertex_structure(res.decomposition)
    inv = None
    seeds_used = [res.lam_seed]
    if invariance_seeds:
        inv, _ = seed_invariance(g, seed, invariance_seeds, res)
        seeds_used += [seed + 104_729 * k for k in range(1, invariance_seeds + 1)]
    return Verdict(
        graph=g.canonical_json(), n=g.vertex_count, m=g.edge_count, r=res.r, genus=rep.genus,
        parity_ok=rep.genus == 0 or rep.genus % 2 == 1,
        zero_case_ok=(rep.genus == 0) == shared,
        smooth_ok=bool(cert.get("smooth")),
        transversal_ok=bool(cert.get("transversal")),
        multiplicities_ok=bool(cert.get("multiplicities_one")),
        balanced_ok=bool(cert.get("balanced")) and bool(cert.get("balancing_lemma")),
        euler_ok=rep.euler_genus == rep.genus,
        dim_ok=res.fan.dim == res.r // 2,
        connected_ok=bool(cert.get("connected")) and (res.r == 2 or bool(cert.get("rays_complete"))),
        shared_vertex=shared, seed=seed, seeds_used=seeds_used, seed_invariant=inv,
        curve_hash=res.curve.digest(), vertices=rep.vertex_count,
        bounded_edges=rep.bounded_edge_count, rays=rep.unbounded_edge_count,
        runtime=time.perf_counter() - t0)


def _failed_verdict(g: Graph, seed, exc):
    return Verdict(graph=g.canonical_json(), n=g.vertex_count, m=g.edge_count, r=0, genus=None,
                   parity_ok=False, zero_case_ok=False, smooth_ok=False, seed=seed,
                   error=f"{type(exc).__name__}: {exc}")


def _survey_job(args):
    gjson, seed, invariance_seeds = args
    g = Graph.from_json(gjson)
    try:
        return theorem_verdict(g, seed, invariance_seeds)
    except Exception as exc:  # recorded, not fatal
        return _failed_verdict(g, seed, exc)


@dataclass
class SurveyReport:
    max_vertices: int
    seed: int
    verdicts: list
    runtime: float
    min_degree: int = 1

    @property
    def histogram(self):
        return dict(sorted(Counter(v.genus for v in self.verdicts if v.genus is not None).items()))

    @property
    def genera(self):
        return set(self.histogram)

    def assertions(self):
        vs = self.verdicts
        return {
            "no_errors": all(v.error is None for v in vs),
            "parity": all(v.parity_ok for v in vs),
            "zero_case": all(v.zero_case_ok for v in vs),
            "r_even": all(v.r % 2 == 0 for v in vs),
            "smooth": all(v.smooth_ok for v in vs),
            "transversal": all(v.transversal_ok for v in vs),
            "multiplicities_one": all(v.multiplicities_ok for v in vs),
            "balanced": all(v.balanced_ok for v in vs),
            "euler": all(v.euler_ok for v in vs),
            "dimension": all(v.dim_ok for v in vs),
            "connected": all(v.connected_ok for v in vs),
            "genera_known": self.genera <= KNOWN_GENERA,
            "seed_invariance": all(v.seed_invariant is not False for v in vs),
        }

    @property
    def ok(self):
        return all(self.assertions().values())

    def summary(self):
        return {
            "version": __version__, "max_vertices": self.max_vertices, "seed": self.seed,
            "min_degree": self.min_degree, "graphs": len(self.verdicts),
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "genus_3_seen": 3 in self.genera, "assertions": self.assertions(), "ok": self.ok,
            "runtime": round(self.runtime, 3),
        }

    def json_lines(self):
        return [v.to_json() for v in self.verdicts] + [json.dumps({"summary": self.summary()},
                                                                  separators=(",", ":"))]

    def table(self):
        lines = [f"{'n':>2} {'m':>2} {'r':>2} {'genus':>5}  ok  graph"]
        for v in self.verdicts:
            edges = json.loads(v.graph)["edges"]
            lines.append(f"{v.n:>2} {v.m:>2} {v.r:>2} {str(v.genus):>5}  "
                         f"{'y' if v.ok else 'N'}   {' '.join(f'{a}-{b}' for a, b in edges)}")
        lines.append("histogram: " + ", ".join(f"{k}:{c}" for k, c in self.histogram.items()))
        return "\n".join(lines)


def survey(max_vertices: int, seed: int = 1, workers: int = 1, min_degree: int = 1,
           invariance_seeds: int = 0) -> SurveyReport:
    """Verdicts for every 1-dof graph on at most `max_vertices` vertices, up to isomorphism."""
    t0 = time.perf_counter()
    graphs = list(enumerate_one_dof_graphs(max_vertices, min_degree=min_degree))
    jobs = [(g.to_json(), seed, invariance_seeds) for g in graphs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_survey_job, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    else:
        verdicts = [_survey_job(j) for j in jobs]
    return SurveyReport(max_vertices, seed, verdicts, time.perf_counter() - t0, min_degree)


def _attachment_cycle(d: RigidDecomposition):
    """True when the pieces and their shared vertices form one cycle (each shared by exactly two)."""
    owners = {}
    for i, c in enumerate(d.components):
        for v in c.vertices:
            owners.setdefault(v, []).append(i)
    hinges = {v: o for v, o in owners.items() if len(o) > 1}
    if any(len(o) != 2 for o in hinges.values()):
        return False
    deg = Counter(i for o in hinges.values() for i in o)
    if len(hinges) != d.r or any(deg[i] != 2 for i in range(d.r)):
        return False
    # connectivity of the component-hinge incidence graph
    seen, todo = {0}, [0]
    while todo:
        i = todo.pop()
        for o in hinges.values():
            if i in o:
                for j in o:
                    if j not in seen:
                        seen.add(j)
                        todo.append(j)
    return len(seen) == d.r


@dataclass
class ProbeFinding:
    graph: str
    r: int
    cyclic: bool

    @property
    def conforms(self):
        return self.r == 4 and self.cyclic


def conjecture_probe(report: SurveyReport):
    """For every genus-1 graph: four rigid pieces attached in a single cycle?

    Returns (findings, counterexamples).
    """
    findings = []
    for v in report.verdicts:
        if v.genus != 1:
            continue
        g = Graph.from_json(json.loads(v.graph))
        d = rigid_components(g)
        findings.append(ProbeFinding(v.graph, d.r, _attachment_cycle(d)))
    return findings, [f for f in findings if not f.conforms]
