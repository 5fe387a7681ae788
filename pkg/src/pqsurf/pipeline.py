"""End-to-end run: triples, families, fundamental groups, report rows.

Triples are found in the orchestrating process.  Each triple is then a
work unit (families plus pi1 of every family) handed to a forked worker
pool; results come back in submission order, so the emitted report does
not depend on the number of workers.
"""
from __future__ import annotations

import gc
import json
import logging
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .catalog import Catalog, build_catalog, builtin_catalog, parse_catalog
from .enumeration import (ORBIT_CAP, Triple, check_sings, existing_nodal_surfaces,
                          find_all_components, list_triples)
from .fpcore.todd_coxeter import DEFAULT_COSET_LIMIT
from .geometry import Signature, group_order_for_pair, hurwitz_genus
from .permcore import CapExceeded
from .pi1 import DEFAULT_INDEX_BOUND, compute_pi1

log = logging.getLogger(__name__)

FORMATS = ("tsv", "json", "md")
COLUMNS = ("K2", "T1", "T2", "g1", "g2", "G", "fams", "H1", "pi1")
THREADS_ENV = "CLASSIFY_THREADS"


class ConfigError(ValueError):
    pass


class InvariantViolation(AssertionError):
    """A report row failed its re-validation."""


@dataclass
class RunConfig:
    k_squared: tuple[int, ...] = (2, 4, 6)
    catalog_paths: tuple[str, ...] = ()
    coset_limit: int = DEFAULT_COSET_LIMIT
    orbit_cap: int = ORBIT_CAP
    index_bound: int = DEFAULT_INDEX_BOUND
    output_format: str = "tsv"
    parallelism: int = 1
    probe_pi1: bool = True

    def validate(self) -> RunConfig:
        if not self.k_squared or any(k not in (2, 4, 6) for k in self.k_squared):
            raise ConfigError(f"K^2 must be among 2, 4, 6: {self.k_squared}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}")
        for name in ("coset_limit", "orbit_cap", "index_bound", "parallelism"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        for p in self.catalog_paths:
            if not os.path.isfile(p):
                raise ConfigError(f"catalog file not found: {p}")
        return self

    def effective_parallelism(self) -> int:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                n = int(env)
            except ValueError:
                raise ConfigError(f"{THREADS_ENV} must be an integer: {env!r}") from None
            if n < 1:
                raise ConfigError(f"{THREADS_ENV} must be positive")
            return n
        return self.parallelism


@dataclass(frozen=True)
class FamilyResult:
    k_squared: int
    T1: str
    T2: str
    group: str
    class_id: int
    S1: tuple[str, ...]
    S2: tuple[str, ...]
    nodes: int
    h1: str | None = None
    pi1: str | None = None
    finite_order: int | None = None
    structure: tuple[int, int] | None = None


@dataclass(frozen=True)
class ReportRow:
    k_squared: int
    T1: str
    T2: str
    g1: int
    g2: int
    group: str
    families: int | None
    h1: str
    pi1: str

    def cells(self) -> list[str]:
        fams = "?" if self.families is None else str(self.families)
        return [str(self.k_squared), self.T1, self.T2, str(self.g1), str(self.g2),
                self.group, fams, self.h1, self.pi1]

    def to_dict(self) -> dict:
        return dict(zip(COLUMNS, [self.k_squared, self.T1, self.T2, self.g1, self.g2,
                                  self.group, self.families, self.h1, self.pi1]))

    @classmethod
    def from_dict(cls, d: dict) -> ReportRow:
        return cls(*(d[c] for c in COLUMNS))


@dataclass
class PipelineResult:
    rows: list[ReportRow]
    families: list[FamilyResult]
    ledger: list[str]
    cap_hits: list[str] = field(default_factory=list)


# -- worker side ---------------------------------------------------------------

# set by the orchestrator before forking; workers only read it
_WORK: dict = {}


def _join(values: Sequence[str]) -> str:
    uniq = list(dict.fromkeys(values))
    return " / ".join(uniq)


def _process_triple(i: int):
    triple: Triple = _WORK["triples"][i]
    cfg: RunConfig = _WORK["config"]
    quotients = _WORK["quotients"]
    notes: list[str] = []
    caps: list[str] = []
    try:
        fams = find_all_components(triple, cap=cfg.orbit_cap)
    except CapExceeded as exc:
        caps.append(f"{triple}: Hurwitz orbit cap exceeded ({exc})")
        return None, [], notes, caps
    results = []
    for f in fams:
        s1, s2 = f.representative
        h1 = pi1 = None
        order = structure = None
        if cfg.probe_pi1:
            rep = compute_pi1(s1, s2, coset_limit=cfg.coset_limit, quotient_catalog=quotients,
                              index_bound=cfg.index_bound)
            h1, pi1, order = str(rep.h1), rep.summary(), rep.finite_order
            if order is None and rep.h1.is_finite:
                notes.append(f"{triple} family {f.class_id}: coset enumeration stopped "
                             f"at {cfg.coset_limit} cosets")
            if rep.structure is not None:
                structure = rep.structure.best
                if not rep.structure.complete:
                    caps.append(f"{triple} family {f.class_id}: epimorphism search node cap")
        results.append(FamilyResult(triple.k_squared, str(triple.T1), str(triple.T2), triple.label,
                                    f.class_id, tuple(map(str, s1.perms())), tuple(map(str, s2.perms())),
                                    int(f.report.node_count), h1, pi1, order, structure))
    row = ReportRow(triple.k_squared, str(triple.T1), str(triple.T2), triple.g1, triple.g2,
                    triple.label, len(results),
                    _join([r.h1 for r in results if r.h1 is not None]),
                    _join([r.pi1 for r in results if r.pi1 is not None]))
    return row, results, notes, caps


# -- orchestration -------------------------------------------------------------

def load_catalog(paths: Sequence[str] = ()) -> Catalog:
    if not paths:
        return builtin_catalog()
    entries = []
    complete: set[int] = set()
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            c = parse_catalog(fh.read())
        entries += c.entries
        complete |= c.asserted_complete
    return Catalog(entries, set(), complete)


def revalidate(row: ReportRow, families: Sequence[FamilyResult], triple: Triple) -> None:
    T1, T2 = Signature.parse(row.T1), Signature.parse(row.T2)
    k2 = row.k_squared
    n = triple.group.order
    if group_order_for_pair(T1, T2, k2) != n:
        raise InvariantViolation(f"{triple}: |G| = {n} but 8 a1 a2 / K^2 = "
                                 f"{group_order_for_pair(T1, T2, k2)}")
    if (hurwitz_genus(n, T1), hurwitz_genus(n, T2)) != (row.g1, row.g2):
        raise InvariantViolation(f"{triple}: genera {row.g1}, {row.g2} disagree with Riemann-Hurwitz")
    G = triple.group
    for f in families:
        s1 = [G.idx(p) for p in _parse_perms(f.S1, G.degree)]
        s2 = [G.idx(p) for p in _parse_perms(f.S2, G.degree)]
        rep = check_sings(G, s1, s2, k2, early_exit=False)
        if rep.node_count != Fraction(8 - k2) or not rep.accepted:
            raise InvariantViolation(f"{triple} family {f.class_id}: {rep.node_count} nodes, "
                                     f"expected {8 - k2}")


def _parse_perms(strings, degree):
    from .permcore import Permutation
    return [Permutation.parse(s, degree) for s in strings]


def run_pipeline(config: RunConfig, catalog: Catalog | None = None) -> PipelineResult:
    config.validate()
    if catalog is None:
        catalog = load_catalog(config.catalog_paths)
    ledger: list[str] = []
    triples: list[Triple] = []
    for k2 in sorted(set(config.k_squared)):
        cands, skipped = list_triples(k2, catalog)
        ledger += [str(e) for e in skipped]
        triples += existing_nodal_surfaces(k2, catalog, cands)
    triples.sort(key=lambda t: t.sort_key)

    _WORK.clear()
    _WORK.update(triples=triples, config=config,
                 quotients=build_catalog(range(1, config.index_bound + 1)) if config.probe_pi1 else None)
    workers = min(config.effective_parallelism(), max(1, len(triples)))
    try:
        if workers == 1:
            outputs = [_process_triple(i) for i in range(len(triples))]
        else:
            # keep the collector from touching (and so copying) inherited pages
            gc.collect()
            gc.freeze()
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(workers, mp_context=ctx) as pool:
                outputs = list(pool.map(_process_triple, range(len(triples))))
    finally:
        _WORK.clear()
        gc.unfreeze()

    result = PipelineResult([], [], ledger)
    for triple, (row, fams, notes, caps) in zip(triples, outputs):
        result.ledger += notes
        result.cap_hits += caps
        result.ledger += caps
        if row is None:
            row = ReportRow(triple.k_squared, str(triple.T1), str(triple.T2), triple.g1, triple.g2,
                            triple.label, None, "", "cap exceeded")
        else:
            revalidate(row, fams, triple)
        result.rows.append(row)
        result.families += fams
    return result


# -- emission ------------------------------------------------------------------

def emit(rows: Sequence[ReportRow], fmt: str = "tsv") -> str:
    if fmt == "tsv":
        lines = ["\t".join(COLUMNS)] + ["\t".join(r.cells()) for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([r.to_dict() for r in rows], indent=2) + "\n"
    if fmt == "md":
        head = ["K^2", "T1", "T2", "g1", "g2", "G", "# fams", "H1", "pi1"]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for r in rows:
            c = r.cells()
            c[1] = Signature.parse(r.T1).compact()
            c[2] = Signature.parse(r.T2).compact()
            lines.append("| " + " | ".join(c) + " |")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown format {fmt!r}")


def parse_report_json(text: str) -> list[ReportRow]:
    return [ReportRow.from_dict(d) for d in json.loads(text)]


def families_json(families: Sequence[FamilyResult]) -> str:
    return json.dumps([asdict(f) for f in families], indent=2) + "\n"
