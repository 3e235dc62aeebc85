"""Decide every normalized triple of a given size and stream the results to a file."""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Iterator, Optional

from .core import Permutation, Triple, enumerate_normalized_words
from .decider import check_verdict, decide_full
from .mining import SubpatternFilter, forbidden_table
from .records import ResultRecord

log = logging.getLogger(__name__)

FILTER_SIZE = 4


def worker_count() -> int:
    value = os.environ.get("GP_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            log.warning("ignoring GP_THREADS=%r", value)
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


@dataclass
class Summary:
    size: int
    total: int = 0
    realizable: int = 0
    unrealizable: int = 0
    seconds: float = 0.0


def decide_record(words, *, short_circuit: bool = True, prefilter=None,
                  timings: bool = False) -> ResultRecord:
    """Decide one triple and return its record; realizable certificates are re-verified."""
    t = Triple(tuple(Permutation(w) for w in words))
    t0 = time.perf_counter()
    verdict = decide_full(t, short_circuit=short_circuit, prefilter=prefilter, engine="compiled")
    ms = int(round((time.perf_counter() - t0) * 1000)) if timings else 0
    if verdict.realizable and not check_verdict(verdict):
        raise RuntimeError(f"certificate for {t} failed verification")
    return ResultRecord.from_verdict(t, verdict, ms)


_worker_state: dict = {}


def _init_worker(table, k, short_circuit, timings):
    _worker_state["filter"] = SubpatternFilter(table, k) if table is not None else None
    _worker_state["short_circuit"] = short_circuit
    _worker_state["timings"] = timings


def _work(words) -> ResultRecord:
    return decide_record(words, short_circuit=_worker_state["short_circuit"],
                         prefilter=_worker_state["filter"], timings=_worker_state["timings"])


def iter_results(n: int, *, short_circuit: bool = True, use_filter: Optional[bool] = None,
                 workers: Optional[int] = None, timings: bool = False) -> Iterator[ResultRecord]:
    """Records for all normalized triples of size ``n``, in normalized order.

    The sub-pattern filter (exhaustive forbidden table of size 4) is on by
    default when short-circuiting; it only skips taggings that are certainly
    forbidden, so verdicts are unchanged.
    """
    if use_filter is None:
        use_filter = short_circuit and n > FILTER_SIZE
    table = forbidden_table(FILTER_SIZE) if use_filter else None
    workers = workers or worker_count()
    triples = enumerate_normalized_words(n)
    if workers == 1:
        _init_worker(table, FILTER_SIZE, short_circuit, timings)
        for words in triples:
            yield _work(words)
        return
    ctx = get_context("fork") if hasattr(os, "fork") else get_context()
    with ctx.Pool(workers, initializer=_init_worker,
                  initargs=(table, FILTER_SIZE, short_circuit, timings)) as pool:
        # imap hands out small chunks on demand and yields in submission order
        yield from pool.imap(_work, triples, chunksize=4)


def run_enumeration(n: int, out, **kw) -> Summary:
    """Write one record per normalized triple of size ``n`` to ``out``.

    The file content depends only on ``n`` and the options (runtimes are
    written as 0 unless ``timings=True``), not on the worker count.
    """
    summary = Summary(n)
    t0 = time.perf_counter()
    with open(out, "w", encoding="utf-8") as fh:
        for rec in iter_results(n, **kw):
            fh.write(rec.to_json() + "\n")
            summary.total += 1
            if rec.verdict:
                summary.realizable += 1
            else:
                summary.unrealizable += 1
    summary.seconds = time.perf_counter() - t0
    return summary
