"""Line-delimited JSON result records."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .core import ParseError, Permutation, TaggedPattern, Triple, format_word, reverse
from .geometry import DegenerateError, TriangleConfig, verify_certificate


def _word_text(word) -> str:
    return format_word(word)


def _parse_word_text(text: str) -> tuple[int, ...]:
    if " " in text.strip():
        return tuple(int(c) for c in text.split())
    return tuple(int(c) for c in text)


@dataclass(frozen=True)
class ResultRecord:
    """Outcome for one triple.  ``tags`` and ``certificate`` refer to the triple
    after applying the reversal mask (bit k reverses permutation k)."""

    triple: tuple[tuple[int, ...], ...]
    verdict: bool
    reversals: Optional[int] = None
    tags: Optional[tuple[tuple[int, int], ...]] = None
    certificate: Optional[TriangleConfig] = None
    runtime_ms: int = 0

    def realized_pattern(self) -> Optional[TaggedPattern]:
        if self.tags is None or self.reversals is None:
            return None
        words = [w[::-1] if self.reversals >> k & 1 else w for k, w in enumerate(self.triple)]
        return TaggedPattern.from_parts(words, self.tags)

    def verifies(self) -> bool:
        """Exact re-check: realizable records must carry a valid certificate."""
        if not self.verdict:
            return self.certificate is None
        pattern = self.realized_pattern()
        if pattern is None or self.certificate is None:
            return False
        try:
            return verify_certificate(pattern, self.certificate)
        except DegenerateError:
            return False

    def to_json(self) -> str:
        data = {
            "triple": [_word_text(w) for w in self.triple],
            "reversals": self.reversals,
            "tags": [list(t) for t in self.tags] if self.tags is not None else None,
            "verdict": "realizable" if self.verdict else "unrealizable",
            "certificate": self.certificate.to_strings() if self.certificate is not None else None,
            "runtime_ms": int(self.runtime_ms),
        }
        return json.dumps(data, separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        data = json.loads(text)
        try:
            verdict = {"realizable": True, "unrealizable": False}[data["verdict"]]
            cert = data.get("certificate")
            tags = data.get("tags")
            return cls(
                triple=tuple(_parse_word_text(w) for w in data["triple"]),
                verdict=verdict,
                reversals=data.get("reversals"),
                tags=tuple((int(z), int(o)) for z, o in tags) if tags is not None else None,
                certificate=TriangleConfig.from_strings(cert) if cert is not None else None,
                runtime_ms=int(data.get("runtime_ms", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad record: {exc}") from exc

    @classmethod
    def from_verdict(cls, t: Triple, verdict, runtime_ms: int = 0) -> "ResultRecord":
        if not verdict.realizable:
            return cls(t.words, False, runtime_ms=runtime_ms)
        mask = verdict.reversals if verdict.reversals is not None else 0
        return cls(t.words, True, mask, tuple(verdict.pattern.tags), verdict.certificate, runtime_ms)


def write_records(records: Iterable[ResultRecord], path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
            count += 1
    return count


def read_records(path) -> Iterator[ResultRecord]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield ResultRecord.from_json(line)
            except (ParseError, json.JSONDecodeError) as exc:
                raise ParseError(f"{Path(path).name}:{lineno}: {exc}") from exc
