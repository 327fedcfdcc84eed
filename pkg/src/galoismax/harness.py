"""Experiment orchestration: prime scans, constant fitting, oracle checks, single runs."""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .cyclotomic import gamma_conjugates
from .driver import RunConfig, RunReport, run
from .errors import CheckpointCorrupt, EmptyInput, GaloisMaxError, NotOddPrime
from .ntheory import (
    is_odd_prime,
    kappa,
    make_context,
    mirimanoff_zero_count,
    primes_between,
)
from .qsim import aggregate_statevector, build_distribution, statevector_distribution

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "p",
    "kappa",
    "eta",
    "gamma_max",
    "kappa2_over_eta",
    "eta_over_gamma_max",
    "kappa_over_sqrt_p",
    "stmt1_margin",
)
BATCH_SIZE = 32
S_SEARCH_LIMIT = 64
P0_RANK = 10


@dataclass(frozen=True)
class ScanRecord:
    p: int
    kappa: int
    eta: int
    gamma_max: float
    ratio_kappa2_eta: float
    ratio_eta_gammamax: float
    kappa_over_sqrtp: float
    stmt1_margin: float

    def csv_row(self) -> str:
        return ",".join(
            [str(self.p), str(self.kappa), str(self.eta)]
            + [
                f"{x:.12g}"
                for x in (
                    self.gamma_max,
                    self.ratio_kappa2_eta,
                    self.ratio_eta_gammamax,
                    self.kappa_over_sqrtp,
                    self.stmt1_margin,
                )
            ]
        )

    @classmethod
    def from_row(cls, row: dict) -> "ScanRecord":
        return cls(
            p=int(row["p"]),
            kappa=int(row["kappa"]),
            eta=int(row["eta"]),
            gamma_max=float(row["gamma_max"]),
            ratio_kappa2_eta=float(row["kappa2_over_eta"]),
            ratio_eta_gammamax=float(row["eta_over_gamma_max"]),
            kappa_over_sqrtp=float(row["kappa_over_sqrt_p"]),
            stmt1_margin=float(row["stmt1_margin"]),
        )


def scan_record(p: int, s: int = 1) -> ScanRecord:
    ctx = make_context(p)
    k = kappa(ctx)
    eta = mirimanoff_zero_count(ctx)
    gmax = gamma_conjugates(ctx).gamma_max
    return ScanRecord(
        p=p,
        kappa=k,
        eta=eta,
        gamma_max=gmax,
        ratio_kappa2_eta=k * k / eta,
        ratio_eta_gammamax=eta / gmax,
        kappa_over_sqrtp=k / math.sqrt(p),
        stmt1_margin=gmax * math.log(p) ** s / p,
    )


def _batch_records(args: tuple[list[int], int]) -> list[ScanRecord]:
    primes, s = args
    return [scan_record(p, s) for p in primes]


@dataclass(frozen=True)
class FitResult:
    c1_hat: float
    c2_hat: float
    s_hat: int | None
    p0: int | None
    max_kappa_over_sqrt_p: float
    min_stmt1_margin: float
    n_records: int

    def to_json(self) -> dict:
        return asdict(self)


def fit_constants(records) -> FitResult:
    """Empirical constants for kappa^2 < c1 eta < c2 Gamma_max and for Statement 1.

    ``c1_hat`` and ``c2_hat`` are the observed maxima nudged one ulp up, so the
    chain holds strictly on every record.  ``s_hat`` is the least s >= 1 with
    Gamma_max > p / (ln p)^s on all records beyond the 10th smallest prime
    (all records when there are no more than ten), or None if no s <= 64 works.
    """
    records = sorted(records, key=lambda r: r.p)
    if not records:
        raise EmptyInput("no scan records")
    c1 = math.nextafter(max(r.kappa**2 / r.eta for r in records), math.inf)
    c2 = math.nextafter(max(c1 * r.eta / r.gamma_max for r in records), math.inf)

    if len(records) > P0_RANK:
        p0 = records[P0_RANK - 1].p
        tail = records[P0_RANK:]
    else:
        p0, tail = None, records
    s_hat = None
    for s in range(1, S_SEARCH_LIMIT + 1):
        if all(r.gamma_max > r.p / math.log(r.p) ** s for r in tail):
            s_hat = s
            break

    return FitResult(
        c1_hat=c1,
        c2_hat=c2,
        s_hat=s_hat,
        p0=p0,
        max_kappa_over_sqrt_p=max(r.kappa / math.sqrt(r.p) for r in records),
        min_stmt1_margin=min(r.stmt1_margin for r in records),
        n_records=len(records),
    )


def read_scan_csv(path) -> list[ScanRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
        return [ScanRecord.from_row(row) for row in reader]


@dataclass(frozen=True)
class ScanConfig:
    p_min: int
    p_max: int
    s: int = 1
    out: Path = Path("scan.csv")
    checkpoint_path: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if not 3 <= self.p_min <= self.p_max:
            raise ValueError(f"need 3 <= p_min <= p_max, got {self.p_min}, {self.p_max}")

    @property
    def checkpoint(self) -> Path:
        if self.checkpoint_path is not None:
            return Path(self.checkpoint_path)
        return Path(str(self.out) + ".ckpt.json")

    def config_hash(self) -> str:
        # worker count is excluded: output does not depend on it
        key = json.dumps({"p_min": self.p_min, "p_max": self.p_max, "s": self.s})
        return hashlib.sha256(key.encode()).hexdigest()


@dataclass
class ScanResult:
    records: list[ScanRecord]
    summary: FitResult | None
    complete: bool
    resumed_from: int | None = None


def _write_checkpoint(path: Path, payload: dict) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _load_checkpoint(config: ScanConfig) -> int:
    """Validate the checkpoint and trim the CSV to it; returns the last finished p."""
    try:
        with open(config.checkpoint) as fh:
            state = json.load(fh)
        last = int(state["last_completed_p"])
        digest = state["config_hash"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CheckpointCorrupt(f"{config.checkpoint}: {exc}") from exc
    if digest != config.config_hash():
        raise CheckpointCorrupt(f"{config.checkpoint} was written for a different scan")
    if not Path(config.out).exists():
        raise CheckpointCorrupt(f"checkpoint present but {config.out} is missing")

    with open(config.out) as fh:
        lines = fh.read().split("\n")
    if lines[0] != ",".join(CSV_COLUMNS):
        raise CheckpointCorrupt(f"{config.out}: bad header")
    kept = [lines[0]]
    for line in lines[1:]:
        fields = line.split(",")
        if len(fields) != len(CSV_COLUMNS):
            break  # torn trailing write
        if int(fields[0]) > last:
            break
        kept.append(line)
    expected = primes_between(config.p_min, last)
    if [int(line.split(",")[0]) for line in kept[1:]] != expected:
        raise CheckpointCorrupt(f"{config.out} does not match checkpoint at p={last}")
    with open(config.out, "w") as fh:
        fh.write("\n".join(kept) + "\n")
    return last


def scan(config: ScanConfig, restart: bool = False, max_batches: int | None = None) -> ScanResult:
    """Compute a :class:`ScanRecord` for every prime in the range, streaming to CSV.

    The checkpoint is rewritten atomically after every batch.  An existing
    checkpoint for the same range is resumed; one for a different range, or
    an unreadable one, raises :class:`CheckpointCorrupt` unless ``restart``.
    ``max_batches`` stops early, as an interruption would.
    """
    out = Path(config.out)
    ckpt = config.checkpoint
    primes = primes_between(config.p_min, config.p_max)

    resumed_from = None
    if ckpt.exists() and not restart:
        resumed_from = _load_checkpoint(config)
        log.info("resuming after p=%d", resumed_from)
        todo = [p for p in primes if p > resumed_from]
    else:
        with open(out, "w") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
        todo = primes

    batches = [(todo[i : i + BATCH_SIZE], config.s) for i in range(0, len(todo), BATCH_SIZE)]
    if max_batches is not None:
        batches = batches[:max_batches]

    done: list[ScanRecord] = []
    if config.workers > 1:
        pool = ProcessPoolExecutor(max_workers=config.workers)
        results = pool.map(_batch_records, batches)
    else:
        pool = None
        results = map(_batch_records, batches)
    try:
        for batch in results:
            with open(out, "a") as fh:
                fh.write("".join(r.csv_row() + "\n" for r in batch))
                fh.flush()
                os.fsync(fh.fileno())
            done.extend(batch)
            _write_checkpoint(
                ckpt,
                {
                    "last_completed_p": batch[-1].p,
                    "config_hash": config.config_hash(),
                    "partial_summary": fit_constants(done).to_json(),
                },
            )
    finally:
        if pool is not None:
            pool.shutdown()

    records = read_scan_csv(out)
    complete = [r.p for r in records] == primes
    summary = fit_constants(records) if records else None
    return ScanResult(records=records, summary=summary, complete=complete, resumed_from=resumed_from)


@dataclass
class CheckReport:
    rows: list[dict] = field(default_factory=list)
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return all(
            row.get("error") is None and row["max_deviation"] < self.tolerance for row in self.rows
        )

    def to_json(self) -> dict:
        return {"passed": self.passed, "tolerance": self.tolerance, "rows": self.rows}


def oracle_deviation(p: int) -> float:
    """Largest componentwise gap between the closed-form and brute-force outcome laws."""
    ctx = make_context(p)
    closed = build_distribution(gamma_conjugates(ctx))
    brute = aggregate_statevector(statevector_distribution(ctx), ctx)
    return closed.max_deviation(brute)


def verify_lemmas(p_list, tolerance: float = 1e-9) -> CheckReport:
    report = CheckReport(tolerance=tolerance)
    for p in p_list:
        try:
            dev = oracle_deviation(p)
        except GaloisMaxError as exc:
            report.rows.append({"p": p, "max_deviation": None, "error": type(exc).__name__})
        else:
            report.rows.append({"p": p, "max_deviation": dev, "error": None})
    return report


def simulate(p: int, config: RunConfig) -> RunReport:
    if not is_odd_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    ctx = make_context(p)
    table = gamma_conjugates(ctx)
    return run(ctx, table, config, np.random.default_rng(config.seed))
