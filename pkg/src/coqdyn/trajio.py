"""Tabular trajectory output: CSV and JSON lines with a fixed column set."""

from __future__ import annotations

import csv
import json
import math
from typing import IO, Iterator

import numpy as np

from .dynamics import INVARIANTS, Trajectory

COLUMNS = (
    ["t"]
    + [f"psi1_{c}" for c in range(4)]
    + [f"psi2_{c}" for c in range(4)]
    + [f"sigma{l}" for l in range(1, 6)]
    + ["sx", "sy", "sz"]
    + ["aux1", "aux2", "aux3"]
    + [f"inv_{name}" for name in INVARIANTS]
)


def _block(a, n, width):
    if a is None:
        return np.full((n, width), np.nan)
    return np.asarray(a, dtype=float).reshape(n, width)


def trajectory_table(traj: Trajectory) -> np.ndarray:
    """All columns of :data:`COLUMNS` as one ``(n, 30)`` array; missing levels are NaN."""
    n = len(traj.times)
    inv = np.column_stack([traj.invariants.get(name, np.full(n, np.nan)) for name in INVARIANTS])
    return np.column_stack([
        traj.times,
        _block(traj.psi, n, 8),
        _block(traj.sigma, n, 5),
        _block(traj.reduced, n, 3),
        _block(traj.aux, n, 3),
        inv,
    ])


def format_number(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def rows(traj: Trajectory) -> Iterator[list[float]]:
    for row in trajectory_table(traj):
        yield [float(x) for x in row]


def write_csv(traj: Trajectory, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows(traj):
        writer.writerow([format_number(x) for x in row])


def write_jsonl(traj: Trajectory, fh: IO[str]) -> None:
    for row in rows(traj):
        record = {k: (None if math.isnan(v) else v) for k, v in zip(COLUMNS, row)}
        fh.write(json.dumps(record) + "\n")


def write_trajectory(traj: Trajectory, fh: IO[str], fmt: str = "csv") -> None:
    if fmt == "csv":
        write_csv(traj, fh)
    elif fmt == "json-lines":
        write_jsonl(traj, fh)
    else:
        raise ValueError(f"unknown output format {fmt!r}")


def read_csv(path) -> dict[str, np.ndarray]:
    """Column name -> values for a file written by :func:`write_csv`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = [[float(x) for x in row] for row in reader]
    table = np.array(data, dtype=float).reshape(len(data), len(header))
    return {name: table[:, c] for c, name in enumerate(header)}


def read_jsonl(path) -> dict[str, np.ndarray]:
    with open(path) as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    return {name: np.array([np.nan if r[name] is None else r[name] for r in records], dtype=float)
            for name in COLUMNS}
