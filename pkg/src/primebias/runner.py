"""Experiment orchestration with resumable checkpoints."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import baseline, classify
from .classify import Tally
from .parallel import default_workers
from .sieve import DEFAULT_SEGMENT_SIZE
from .stats import BiasReport, redistribution_report

log = logging.getLogger(__name__)

EXPERIMENTS = classify.PRIME_KINDS + baseline.BASELINE_KINDS
CHECKPOINT_VERSION = 1


class CheckpointMismatch(RuntimeError):
    """Existing checkpoint belongs to a different experiment."""


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One experiment at one scale.

    The scale is ``count`` when given, otherwise ``10**exponent``: the
    number of primes for ``twins``/``isolated`` or the number of multiples
    of 6 for the control experiments.
    """

    kind: str
    exponent: int | None = None
    count: int | None = None
    segment_size: int = DEFAULT_SEGMENT_SIZE
    threads: int = 1
    checkpoint_path: str | None = None
    checkpoint_every: int = 16

    def __post_init__(self):
        if self.kind not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.kind!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.count is None:
            if self.exponent is None or self.exponent < 1:
                raise ValueError("need exponent >= 1 or an explicit count")
        elif self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.segment_size < 64:
            raise ValueError(f"segment_size must be >= 64, got {self.segment_size}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.checkpoint_every < 1:
            raise ValueError(f"checkpoint_every must be >= 1, got {self.checkpoint_every}")

    @property
    def scale(self) -> int:
        return self.count if self.count is not None else 10**self.exponent

    @property
    def over_primes(self) -> bool:
        return self.kind in classify.PRIME_KINDS

    def fingerprint(self) -> str:
        # Only fields that change the result; segment size and threads may
        # differ between the interrupted run and the resumed one.
        key = json.dumps({"kind": self.kind, "scale": self.scale, "version": CHECKPOINT_VERSION})
        return hashlib.sha256(key.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Checkpoint:
    fingerprint: str
    next_range_start: int
    primes_seen: int
    partial: Tally
    complete: bool = False
    format_version: int = CHECKPOINT_VERSION

    def to_json(self) -> str:
        return json.dumps(
            {
                "format_version": self.format_version,
                "fingerprint": self.fingerprint,
                "next_range_start": self.next_range_start,
                "primes_seen": self.primes_seen,
                "partial": {"a": self.partial.a, "b": self.partial.b},
                "complete": self.complete,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "Checkpoint":
        d = json.loads(text)
        if d.get("format_version") != CHECKPOINT_VERSION:
            raise CheckpointMismatch(f"unsupported checkpoint version {d.get('format_version')}")
        return cls(
            fingerprint=d["fingerprint"],
            next_range_start=int(d["next_range_start"]),
            primes_seen=int(d["primes_seen"]),
            partial=Tally(int(d["partial"]["a"]), int(d["partial"]["b"])),
            complete=bool(d["complete"]),
        )

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.to_json() + "\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Checkpoint":
        return cls.from_json(Path(path).read_text())


@dataclass(frozen=True)
class RunResult:
    spec: ExperimentSpec
    tally: Tally
    report: BiasReport | None
    wall_time: float


def centered_total(kind: str, scale: int, t: Tally) -> int:
    """Objects whose center or neighbor is a multiple of 6; drops the (3, 5) pair."""
    if kind == classify.TWINS and scale >= 2:
        return t.a - 1
    return t.a


def summarize(kind: str, scale: int, t: Tally) -> BiasReport | None:
    try:
        return redistribution_report(t, centered_total(kind, scale, t))
    except (ValueError, ZeroDivisionError):
        return None


def _fresh(spec: ExperimentSpec) -> Checkpoint:
    start = 0 if spec.over_primes else 1
    return Checkpoint(spec.fingerprint(), start, 0, Tally())


def _load_or_start(spec: ExperimentSpec, force: bool) -> Checkpoint:
    path = spec.checkpoint_path
    if path is None or not Path(path).exists():
        return _fresh(spec)
    ckpt = Checkpoint.load(path)
    if ckpt.fingerprint != spec.fingerprint():
        if not force:
            raise CheckpointMismatch(
                f"checkpoint {path} was written for a different experiment; use force to overwrite"
            )
        log.warning("discarding mismatched checkpoint %s", path)
        return _fresh(spec)
    log.info("resuming %s at %d (partial a=%d b=%d)", spec.kind, ckpt.next_range_start, ckpt.partial.a, ckpt.partial.b)
    return ckpt


def run(
    spec: ExperimentSpec,
    force: bool = False,
    on_checkpoint: Callable[[Checkpoint], None] | None = None,
) -> RunResult:
    """
    Run one experiment, resuming from ``spec.checkpoint_path`` if it holds
    a compatible checkpoint.

    ``on_checkpoint`` is called after every checkpoint write.
    """
    t0 = time.perf_counter()
    ckpt = _load_or_start(spec, force)
    n = spec.scale

    if spec.over_primes:
        end = None
        commits = classify.iter_prime_segments(
            spec.kind, n, ckpt.next_range_start, ckpt.primes_seen, spec.segment_size, spec.threads
        )
    else:
        end = n + 1
        commits = baseline.iter_multiple_segments(
            spec.kind, n, ckpt.next_range_start, spec.segment_size, spec.threads
        )

    first = ckpt.next_range_start
    partial, primes_seen, next_start = ckpt.partial, ckpt.primes_seen, ckpt.next_range_start
    done = 0

    def checkpoint(complete: bool) -> None:
        c = Checkpoint(spec.fingerprint(), next_start, primes_seen, partial, complete)
        if spec.checkpoint_path is not None:
            c.save(spec.checkpoint_path)
        if on_checkpoint is not None:
            on_checkpoint(c)

    if not ckpt.complete:
        try:
            for commit in commits:
                partial = partial + commit.tally
                next_start = commit.next_start
                if spec.over_primes:
                    primes_seen = commit.primes_seen
                done += 1
                if done % spec.checkpoint_every == 0:
                    checkpoint(complete=False)
                    if spec.over_primes:
                        frac = (primes_seen - ckpt.primes_seen) / max(n - ckpt.primes_seen, 1)
                    else:
                        frac = (next_start - first) / max(end - first, 1)
                    elapsed = time.perf_counter() - t0
                    eta = elapsed * (1 - frac) / frac if frac > 0 else float("nan")
                    log.info(
                        "%s: %d segments, at %d, primes seen %d, eta %.1fs",
                        spec.kind, done, next_start, primes_seen, eta,
                    )
        finally:
            commits.close()
        checkpoint(complete=True)

    return RunResult(spec, partial, summarize(spec.kind, n, partial), time.perf_counter() - t0)


def workers_or_default(threads: int | None) -> int:
    return threads if threads else default_workers()
