"""The shipped list of forbidden size-6 triples and comparison against fresh results."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .core import ParseError, normalize_words

DATA_FILE = "forbidden6.txt"
CHECKSUM_FILE = "forbidden6.sha256"


class TableFormatError(ParseError):
    """Malformed line in a forbidden-triple table; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}", line)
        self.line = line


def _data_path(name: str) -> Path:
    return Path(str(resources.files("geoperm") / "data" / name))


def default_table_path() -> Path:
    return _data_path(DATA_FILE)


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def parse_table(text: str, n: int = 6) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (w2, w3) completing ``0 1 .. n-1`` to a forbidden triple, in file order."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TableFormatError(f"expected two words, got {raw!r}", lineno)
        words = []
        for w in parts:
            if not w.isdigit() or sorted(w) != [str(i) for i in range(n)]:
                raise TableFormatError(f"{w!r} is not a permutation of 0..{n - 1}", lineno)
            words.append(tuple(int(c) for c in w))
        pair = (words[0], words[1])
        if pair in seen:
            raise TableFormatError(f"duplicate entry {line!r}", lineno)
        seen.add(pair)
        out.append(pair)
    return out


def load_table(path=None, *, check_digest: bool = True):
    """Parse a table file; the shipped file is also checked against its stored digest."""
    if path is None:
        path = default_table_path()
        if check_digest:
            want = _data_path(CHECKSUM_FILE).read_text().split()[0]
            if file_digest(path) != want:
                raise ValueError(f"{path} does not match its recorded sha256")
    return parse_table(Path(path).read_text(encoding="utf-8"))


@dataclass
class TableDiff:
    missing_from_results: list = field(default_factory=list)
    extra_in_results: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.missing_from_results and not self.extra_in_results

    def __len__(self) -> int:
        return len(self.missing_from_results) + len(self.extra_in_results)

    def report(self) -> str:
        if self.empty:
            return "no differences"
        lines = []
        for label, items in (("missing from results", self.missing_from_results),
                             ("extra in results", self.extra_in_results)):
            for w2, w3 in items:
                lines.append(f"{label}: {''.join(map(str, w2))} {''.join(map(str, w3))}")
        return "\n".join(lines)


def compare_forbidden_list(results: Iterable, table_file=None) -> TableDiff:
    """Diff unrealizable triples among ``results`` (records) against a table file."""
    table = set(load_table(table_file))
    found = set()
    for rec in results:
        if not rec.verdict:
            words = normalize_words(rec.triple)
            found.add((words[1], words[2]))
    return TableDiff(sorted(table - found), sorted(found - table))
