"""Isomorph-free enumeration and cospectral-mate search for rose graphs."""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .graph import (Graph, RoseSpec, build_rose, canonical_label, parse_graph6,
                    roses_on, write_graph6)
from .invariants import LAPLACIAN, UniversalParams, universal_char_poly
from .linalg import coefficient_bound, primes_for_bound

log = logging.getLogger(__name__)

# Cross-validation reruns unpruned searches only up to this order.
CROSS_VALIDATE_MAX_N = 7
# Partition the search tree at the first level holding this many nodes.
PARTITION_TARGET = 32
DESK_MAX_N = 9


@dataclass(frozen=True)
class PruneConfig:
    """Search-tree cuts. None of them may change the mate set.

    ``use_degree_square_bound``: the final sum of squared degrees must equal
    the target's (fixed by the spectrum whenever alpha != 0).
    ``max_degree_cap``: a non-rose mate of a k-rose has maximum degree at
    most ``2k - 1``; rose mates are isomorphic to the target anyway.
    ``cross_validate``: repeat small searches unpruned and compare.
    """

    use_degree_square_bound: bool = False
    max_degree_cap: int | None = None
    cross_validate: bool = False

    @classmethod
    def for_rose(cls, k: int, params: UniversalParams = LAPLACIAN,
                 cross_validate: bool = False) -> "PruneConfig":
        if params.alpha == 0:
            return cls(cross_validate=cross_validate)
        return cls(True, 2 * k - 1, cross_validate)

    def as_dict(self) -> dict:
        return {"use_degree_square_bound": self.use_degree_square_bound,
                "max_degree_cap": self.max_degree_cap,
                "cross_validate": self.cross_validate}


def rose_degree_square_sum(n: int, m: int) -> int:
    """Sum of squared degrees of a k-rose with n vertices and m = n - 1 + k edges."""
    k = m - n + 1
    return (2 * k - 2) ** 2 + 8 * m - 4 * n


# enumeration ----------------------------------------------------------------

def _feasible(n: int, m: int, connected: bool) -> bool:
    if n <= 0 or m < 0 or m > n * (n - 1) // 2:
        return False
    return not connected or m >= n - 1


def _expand(rows, n, m, connected, s2, cap):
    return kernels.expand_children(rows, n, m, connected, s2, cap)


def _partition_roots(n, m, connected, s2, cap, target=PARTITION_TARGET):
    """Breadth-first until a level holds ``target`` nodes (or the last level).

    Returns the level, its depth, and the number of nodes above it.
    """
    level = [np.zeros(n, np.int64)]
    depth = 0
    above = 0
    while depth < m and 0 < len(level) < target:
        above += len(level)
        nxt = []
        for rows in level:
            nxt.extend(_expand(rows, n, m, connected, s2, cap))
        level = nxt
        depth += 1
    return level, depth, above


def _walk(root, depth, n, m, connected, s2, cap, counter=None):
    """Depth-first below ``root``, yielding the rows of each ``m``-edge leaf.

    ``counter[0]`` (if given) accumulates every node visited, leaves included.
    """
    stack = [(root, depth)]
    while stack:
        rows, e = stack.pop()
        if counter is not None:
            counter[0] += 1
        if e == m:
            yield rows
            continue
        kids = _expand(rows, n, m, connected, s2, cap)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((kids[i], e + 1))


def _tree_limits(n, m, prune, s2_target=None):
    s2 = -1
    if prune.use_degree_square_bound:
        s2 = rose_degree_square_sum(n, m) if s2_target is None else s2_target
    cap = -1 if prune.max_degree_cap is None else prune.max_degree_cap
    return s2, cap


def enumerate_graphs(n: int, m: int, connected: bool = True,
                     prune: PruneConfig | None = None) -> Iterator[Graph]:
    """One graph per isomorphism class with ``n`` vertices and ``m`` edges."""
    prune = prune or PruneConfig()
    if n == 1 and m == 0:
        yield Graph(1)
        return
    if not _feasible(n, m, connected):
        return
    s2, cap = _tree_limits(n, m, prune)
    roots, depth, _ = _partition_roots(n, m, connected, s2, cap)
    for root in roots:
        for rows in _walk(root, depth, n, m, connected, s2, cap):
            yield Graph.from_rows(rows, n)


def enumerate_connected(n: int, m: int, prune: PruneConfig | None = None) -> Iterator[Graph]:
    """Connected graphs by canonical edge augmentation.

    With ``prune.use_degree_square_bound`` the stream is restricted to graphs
    whose sum of squared degrees matches a rose with the same ``n`` and ``m``.
    """
    return enumerate_graphs(n, m, True, prune)


# search ---------------------------------------------------------------------

@dataclass(frozen=True)
class SearchTask:
    n: int
    m: int
    params: UniversalParams
    target: Graph
    pruning: PruneConfig = field(default_factory=PruneConfig)

    @classmethod
    def for_rose(cls, spec: RoseSpec, params: UniversalParams = LAPLACIAN,
                 cross_validate: bool = False) -> "SearchTask":
        if not isinstance(spec, RoseSpec):
            spec = RoseSpec(spec)
        return cls(spec.n, spec.m, params, build_rose(spec),
                   PruneConfig.for_rose(spec.k, params, cross_validate))


@dataclass
class SearchResult:
    n: int
    m: int
    params: UniversalParams
    target: Graph
    pruning: PruneConfig
    mates: list[Graph]
    graphs_enumerated: int
    graphs_after_pruning: int
    elapsed: float
    complete: bool = True
    cross_validated: bool = False

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "n": self.n, "m": self.m,
            "params": str(self.params),
            "target": write_graph6(self.target),
            "pruning": self.pruning.as_dict(),
            "mates": [write_graph6(g) for g in self.mates],
            "graphs_enumerated": str(self.graphs_enumerated),
            "graphs_after_pruning": str(self.graphs_after_pruning),
            "complete": self.complete,
            "cross_validated": self.cross_validated,
        }
        if timing:
            d["elapsed"] = f"{self.elapsed:.3f}"
        return d


class _Spectra:
    """Modular fingerprints of ``alpha*D + beta*A``, exact for this (n, params)."""

    def __init__(self, n: int, params: UniversalParams, max_degree: int):
        self.n = n
        a, b = params.integer_scaled()
        radius = (abs(a) + abs(b)) * max_degree
        self.primes = np.array(primes_for_bound(coefficient_bound(n, radius)), np.int64)
        self.amod = np.array([a % int(p) for p in self.primes], np.int64)
        self.bmod = np.array([b % int(p) for p in self.primes], np.int64)

    def key(self, rows) -> bytes:
        return kernels.universal_residues(rows, self.n, self.amod, self.bmod, self.primes).tobytes()


def _search_partition(job):
    """Worker: walk one subtree, return counts and fingerprint hits."""
    root, depth, n, m, s2, cap, spectra, keys = job
    nodes = [0]
    finals = 0
    hits = []
    for rows in _walk(root, depth, n, m, True, s2, cap, nodes):
        finals += 1
        if spectra.key(rows) in keys:
            hits.append(write_graph6(Graph.from_rows(rows, n)))
    return nodes[0], finals, hits


@dataclass
class _GroupOutcome:
    """``enumerated`` counts every search-tree node; ``candidates`` the
    ``(n, m)`` leaves that survived pruning and were compared spectrally."""

    mates: list[list[Graph]]
    enumerated: int
    candidates: int
    complete: bool


def _checkpoint_header(n, m, params, s2, cap, targets, idx, total):
    return (f"# rosespec-checkpoint v1 n={n} m={m} params={params} s2={s2} cap={cap} "
            f"targets={','.join(write_graph6(t) for t in targets)} partition={idx}/{total}")


def _read_checkpoint(path: Path, header: str):
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if len(lines) < 2 or lines[0] != header or not lines[1].startswith("# counts "):
        return None
    fields = dict(kv.split("=", 1) for kv in lines[1][len("# counts "):].split())
    return (int(fields["nodes"]), int(fields["leaves"]),
            [ln for ln in lines[2:] if ln and not ln.startswith("#")])


def _write_checkpoint(path: Path, header: str, nodes: int, leaves: int, hits):
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join([header, f"# counts nodes={nodes} leaves={leaves}", *hits]) + "\n")
    tmp.replace(path)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ROSESPEC_JOBS", "1")))
    except ValueError:
        return 1


def search_targets(n: int, m: int, params: UniversalParams, targets: Sequence[Graph],
                   prune: PruneConfig, jobs: int = 1, checkpoint_dir=None,
                   deadline: float | None = None) -> _GroupOutcome:
    """Find mates for several targets sharing ``(n, m)`` in one enumeration."""
    if not targets:
        raise ValueError("no targets")
    s2_values = {sum(d * d for d in t.degrees) for t in targets}
    if prune.use_degree_square_bound and len(s2_values) != 1:
        raise ValueError("degree-square pruning needs targets with equal sum of d^2")
    s2, cap = _tree_limits(n, m, prune, s2_values.pop())
    mates: list[list[Graph]] = [[] for _ in targets]
    if not _feasible(n, m, True):
        return _GroupOutcome(mates, 0, 0, True)
    spectra = _Spectra(n, params, n - 1 if cap < 0 else max(cap, *(max(t.degrees) for t in targets)))
    keys = {spectra.key(t.rows) for t in targets}
    exact = [universal_char_poly(t, params) for t in targets]
    labels = [canonical_label(t) for t in targets]

    roots, depth, above = _partition_roots(n, m, True, s2, cap)
    jobs_list = [(r, depth, n, m, s2, cap, spectra, keys) for r in roots]
    ckdir = Path(checkpoint_dir) if checkpoint_dir else None
    if ckdir:
        ckdir.mkdir(parents=True, exist_ok=True)
    results: list = [None] * len(jobs_list)
    todo = []
    for idx in range(len(jobs_list)):
        if ckdir:
            header = _checkpoint_header(n, m, params, s2, cap, targets, idx, len(jobs_list))
            got = _read_checkpoint(ckdir / f"n{n}_m{m}_p{idx:05d}.g6", header)
            if got is not None:
                results[idx] = got
                continue
        todo.append(idx)

    def finish(idx, res):
        results[idx] = res
        if ckdir:
            header = _checkpoint_header(n, m, params, s2, cap, targets, idx, len(jobs_list))
            _write_checkpoint(ckdir / f"n{n}_m{m}_p{idx:05d}.g6", header, *res)

    complete = True
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {idx: pool.submit(_search_partition, jobs_list[idx]) for idx in todo}
            for idx, fut in futures.items():
                if deadline is not None and time.monotonic() > deadline:
                    complete = False
                    for f in futures.values():
                        f.cancel()
                    break
                finish(idx, fut.result())
    else:
        for idx in todo:
            if deadline is not None and time.monotonic() > deadline:
                complete = False
                break
            finish(idx, _search_partition(jobs_list[idx]))

    enumerated, candidates = above, 0
    seen = [set() for _ in targets]
    for res in results:
        if res is None:
            continue
        nodes, finals, hits = res
        enumerated += nodes
        candidates += finals
        for g6 in hits:
            g = parse_graph6(g6)
            poly = universal_char_poly(g, params)
            lab = canonical_label(g)
            for ti, tp in enumerate(exact):
                if poly == tp:
                    if lab != labels[ti] and lab not in seen[ti]:
                        seen[ti].add(lab)
                        mates[ti].append(g)
    for ms in mates:
        ms.sort(key=canonical_label)
    return _GroupOutcome(mates, enumerated, candidates, complete)


def find_cospectral_mates(task: SearchTask, jobs: int = 1, checkpoint_dir=None,
                          deadline: float | None = None) -> SearchResult:
    t = task.target
    if t.n != task.n or t.m != task.m:
        raise ValueError(f"target has (n, m) = ({t.n}, {t.m}), task asks ({task.n}, {task.m})")
    start = time.monotonic()
    out = search_targets(task.n, task.m, task.params, [t], task.pruning, jobs,
                         checkpoint_dir, deadline)
    cross = False
    if task.pruning.cross_validate and task.n <= CROSS_VALIDATE_MAX_N and out.complete:
        plain = search_targets(task.n, task.m, task.params, [t], PruneConfig(), jobs,
                               None, deadline)
        if plain.complete:
            if [canonical_label(g) for g in plain.mates[0]] != [canonical_label(g) for g in out.mates[0]]:
                raise RuntimeError("pruned and unpruned searches disagree")
            cross = True
    return SearchResult(task.n, task.m, task.params, t, task.pruning, out.mates[0],
                        out.enumerated, out.candidates, time.monotonic() - start,
                        out.complete, cross)


# verification suites --------------------------------------------------------

KNOWN_EXCEPTIONS = {(3, 4): 1, (3, 5): 1}


@dataclass
class DeterminationReport:
    n_max: int
    params: UniversalParams
    mates: dict[RoseSpec, list[Graph]]
    searched: list[RoseSpec]
    complete: bool
    elapsed: float
    enumerated: int

    @property
    def nonzero(self) -> dict[RoseSpec, int]:
        return {s: len(g) for s, g in self.mates.items() if g}

    def expected(self) -> dict[RoseSpec, int] | None:
        """Laplacian mate counts known to hold, or None for other matrices."""
        if self.params != LAPLACIAN:
            return None
        return {RoseSpec(k): v for k, v in KNOWN_EXCEPTIONS.items() if RoseSpec(k).n <= self.n_max}

    @property
    def passed(self) -> bool | None:
        exp = self.expected()
        if exp is None or not self.complete:
            return None
        return self.nonzero == exp

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "n_max": self.n_max, "params": str(self.params), "complete": self.complete,
            "roses_searched": len(self.searched),
            "graphs_enumerated": str(self.enumerated),
            "mates": {str(s): [write_graph6(g) for g in self.mates[s]] for s in self.searched},
            "nonzero": {str(s): c for s, c in self.nonzero.items()},
            "passed": self.passed,
        }
        if timing:
            d["elapsed"] = f"{self.elapsed:.3f}"
        return d


def verify_rose_determination(n_max: int, params: UniversalParams = LAPLACIAN, jobs: int = 1,
                              budget: float | None = None, checkpoint_dir=None,
                              n_min: int = 5) -> DeterminationReport:
    """Search mates of every k-rose (k >= 2) with ``n_min <= n <= n_max``."""
    if n_max < 5:
        raise ValueError("n_max must be at least 5")
    start = time.monotonic()
    deadline = None if budget is None else start + budget
    mates: dict[RoseSpec, list[Graph]] = {}
    searched: list[RoseSpec] = []
    complete = True
    enumerated = 0
    for n in range(max(n_min, 5), n_max + 1):
        by_k: dict[int, list[RoseSpec]] = {}
        for spec in roses_on(n, min_k=2):
            by_k.setdefault(spec.k, []).append(spec)
        for k, specs in sorted(by_k.items()):
            if deadline is not None and time.monotonic() > deadline:
                complete = False
                break
            out = search_targets(n, n - 1 + k, params, [build_rose(s) for s in specs],
                                 PruneConfig.for_rose(k, params), jobs, checkpoint_dir, deadline)
            enumerated += out.enumerated
            if not out.complete:
                complete = False
                break
            for s, ms in zip(specs, out.mates):
                mates[s] = ms
                searched.append(s)
            log.info("n=%d k=%d: %d roses, %d nodes, %d leaves", n, k, len(specs), out.enumerated, out.candidates)
        if not complete:
            break
    return DeterminationReport(n_max, params, mates, searched, complete,
                               time.monotonic() - start, enumerated)


@dataclass
class RoseVsRoseReport:
    n_max: int
    params: list[UniversalParams]
    pairs_checked: int
    violations: list[tuple[RoseSpec, RoseSpec, UniversalParams]]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"n_max": self.n_max, "params": [str(p) for p in self.params],
                "pairs_checked": self.pairs_checked,
                "violations": [[str(a), str(b), str(p)] for a, b, p in self.violations],
                "passed": self.passed}


DEFAULT_UNIVERSAL_PARAMS = (UniversalParams(0, 1), UniversalParams(1, -1), UniversalParams(1, 1),
                            UniversalParams(2, 1), UniversalParams(1, 3))


def verify_rose_vs_rose(n_max: int, param_list: Sequence[UniversalParams] = DEFAULT_UNIVERSAL_PARAMS
                        ) -> RoseVsRoseReport:
    """Distinct roses on equal n must have distinct universal char polys."""
    violations = []
    pairs = 0
    for n in range(3, n_max + 1):
        specs = roses_on(n, min_k=1)
        graphs = [build_rose(s) for s in specs]
        for p in param_list:
            polys = [universal_char_poly(g, p) for g in graphs]
            for i in range(len(specs)):
                for j in range(i + 1, len(specs)):
                    pairs += 1
                    if polys[i] == polys[j]:
                        violations.append((specs[i], specs[j], p))
    return RoseVsRoseReport(n_max, list(param_list), pairs, violations)
