"""Tabular I/O for recorded job runtimes.

Record CSVs carry one job per row with the header
`backend,M,S,K,deff,T_seconds`.
"""

import csv
import warnings
from dataclasses import dataclass

from .errors import MalformedRecordsError
from .model import JobSpec

RECORD_HEADER = ["backend", "M", "S", "K", "deff", "T_seconds"]


@dataclass(frozen=True)
class RuntimeRecord:
    job: JobSpec
    backend: str
    seconds: float


def load_runtime_records(path) -> list[RuntimeRecord]:
    """Parse and validate a runtime-record CSV; error messages carry the
    offending row number. An empty body yields an empty list with a warning."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRecordsError(f"{path}: empty file, expected header {RECORD_HEADER}")
        if [h.strip() for h in header] != RECORD_HEADER:
            raise MalformedRecordsError(
                f"{path}: bad header {header}, expected {RECORD_HEADER}"
            )
        records = []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(RECORD_HEADER):
                raise MalformedRecordsError(f"{path}:{row_no}: expected {len(RECORD_HEADER)} columns")
            backend = row[0].strip()
            try:
                m, s, k = int(row[1]), int(row[2]), int(row[3])
                d_eff, seconds = float(row[4]), float(row[5])
            except ValueError as exc:
                raise MalformedRecordsError(f"{path}:{row_no}: {exc}") from exc
            if seconds <= 0:
                raise MalformedRecordsError(f"{path}:{row_no}: T_seconds must be positive")
            try:
                job = JobSpec(m, s, k, d_eff)
            except Exception as exc:
                raise MalformedRecordsError(f"{path}:{row_no}: {exc}") from exc
            records.append(RuntimeRecord(job, backend, seconds))
    if not records:
        warnings.warn(f"{path}: no runtime records found", stacklevel=2)
    return records


def save_runtime_records(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_HEADER)
        for rec in records:
            writer.writerow(
                [
                    rec.backend,
                    rec.job.circuits,
                    rec.job.shots,
                    rec.job.updates,
                    repr(rec.job.d_eff),
                    repr(rec.seconds),
                ]
            )
