"""Bundled benchmark datasets and CSV ingestion.

The two bundled series ship as plain CSV next to this module; their
SHA-256 digests are pinned so a corrupted install fails loudly rather
than silently shifting every downstream estimate.
"""
from __future__ import annotations

import csv
import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .generate import Origin, Series

__all__ = ["Dataset", "nile_data", "nhtemp_data", "load_csv", "data_dir"]

_CHECKSUMS = {
    "nile.csv": "a76a227a6f219b60f9045bb16a67f9a96470b1cd42c1ec5d5b71da9e072795d0",
    "nhtemp.csv": "8986f23383b4287b75a454aebbe7219a7192b2d03ab0d7e5fedee90174ca4d0b",
}

_SOURCE_NOTES = {
    "nile.csv": (
        "Annual minimum water levels of the Nile at the Roda gauge, 622-1284 AD "
        "(663 observations; Toussoun 1925, as distributed with the classical "
        "long-memory literature)."
    ),
    "nhtemp.csv": (
        "Annual Northern Hemisphere-dominated global land temperature anomalies, "
        "1850-2023, relative to 1991-2020 (CRU/HadCRUT lineage, via the astsa "
        "dataset collection; 174 observations)."
    ),
}


@dataclass(frozen=True)
class Dataset:
    name: str
    columns: dict
    source_note: str

    def series(self, column: str | None = None) -> Series:
        """The dataset's value column as a Series (last column by default)."""
        if column is None:
            column = list(self.columns)[-1]
        return Series(self.columns[column], label=column, origin=Origin.LOADED)


def data_dir() -> Path:
    """Bundled-data directory; overridable via LONGMEM_DATA_DIR."""
    override = os.environ.get("LONGMEM_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).parent / "datasets"


def _read_table(path: Path) -> tuple[list[str], dict]:
    if not path.exists():
        raise DataError(f"data file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"empty data file: {path}") from None
        cols = {name: [] for name in header}
        for i, row in enumerate(reader, start=2):  # row 1 is the header
            if len(row) != len(header):
                raise DataError(f"{path}: row {i} has {len(row)} fields, expected {len(header)}")
            for name, cell in zip(header, row):
                if cell.strip() == "":
                    raise DataError(f"{path}: blank cell in column {name!r} at row {i}")
                try:
                    v = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: non-numeric cell {cell!r} in column {name!r} at row {i}"
                    ) from None
                if not np.isfinite(v):
                    raise DataError(f"{path}: non-finite value in column {name!r} at row {i}")
                cols[name].append(v)
    return header, {name: np.asarray(vals) for name, vals in cols.items()}


def _load_bundled(filename: str) -> Dataset:
    path = data_dir() / filename
    if not path.exists():
        raise DataError(
            f"bundled data file missing: {path} (expected SHA-256 {_CHECKSUMS[filename]})"
        )
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    if digest != _CHECKSUMS[filename]:
        raise DataError(
            f"bundled data file corrupt: {path} has SHA-256 {digest}, "
            f"expected {_CHECKSUMS[filename]}"
        )
    _, cols = _read_table(path)
    return Dataset(filename.removesuffix(".csv"), cols, _SOURCE_NOTES[filename])


def nile_data() -> Dataset:
    """Nile minima dataset: columns Year and NileMin, T = 663."""
    return _load_bundled("nile.csv")


def nhtemp_data() -> Dataset:
    """Hemispheric temperature anomaly dataset: columns Year and TempAnomaly."""
    return _load_bundled("nhtemp.csv")


def load_csv(path, column: str) -> Series:
    """Load one numeric column of a CSV file as a Series."""
    p = Path(path)
    header, cols = _read_table(p)
    if column not in cols:
        raise DataError(f"{p}: column {column!r} not found; available: {header}")
    return Series(cols[column], label=column, origin=Origin.LOADED)
