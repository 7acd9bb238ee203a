"""Participant-by-feature dataset with CSV round-trip and numeric encoding.

The CSV header uses the catalog names verbatim, one participant per row, with
a trailing ``suitable`` label column (1, 0 or NA) and, once phase 1 has run,
a ``label_source`` column (ground_truth / inferred).  Encoding to a numeric
matrix maps numbers to floats, booleans to 0/1, two-valued enums to one
indicator column and wider enums to one-hot columns named ``Name=value``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import InputError
from .catalog import CATALOG_BY_NAME, LABEL_COLUMN, VariableDef

LABEL_SOURCE_COLUMN = "label_source"


@dataclass
class Dataset:
    feature_names: list[str]
    rows: list[dict]
    labels: list[int | None]
    label_sources: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.feature_names)) != len(self.feature_names):
            raise InputError("duplicate feature names")
        for row in self.rows:
            missing = [n for n in self.feature_names if n not in row]
            if missing:
                raise InputError(f"row missing features: {missing[:3]}")
        if len(self.labels) != len(self.rows):
            raise InputError("labels length must match rows")
        if not self.label_sources:
            self.label_sources = ["ground_truth" if y is not None else ""
                                  for y in self.labels]

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def with_features(self, names: list[str]) -> "Dataset":
        keep = set(names)
        rows = [{n: row[n] for n in row if n in keep or n not in self.feature_names}
                for row in self.rows]
        return Dataset([n for n in self.feature_names if n in keep], rows,
                       list(self.labels), list(self.label_sources))

    def variable(self, name: str) -> VariableDef:
        if name in CATALOG_BY_NAME:
            return CATALOG_BY_NAME[name]
        # non-catalog columns occur only in synthetic test data; treat as numeric
        return VariableDef(name, "number", "behavioral")

    # -- CSV -------------------------------------------------------------------

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow([*self.feature_names, LABEL_COLUMN, LABEL_SOURCE_COLUMN])
            for row, label, source in zip(self.rows, self.labels, self.label_sources):
                out = []
                for name in self.feature_names:
                    value = row[name]
                    if value is None:
                        out.append("")
                    elif isinstance(value, bool):
                        out.append("1" if value else "0")
                    elif isinstance(value, float):
                        out.append(repr(value))
                    else:
                        out.append(str(value))
                out.append("NA" if label is None else str(int(label)))
                out.append(source)
                writer.writerow(out)

    @classmethod
    def from_csv(cls, path: str | Path) -> "Dataset":
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader)
            if LABEL_COLUMN not in header:
                raise InputError(f"dataset CSV lacks the {LABEL_COLUMN!r} column")
            label_idx = header.index(LABEL_COLUMN)
            source_idx = header.index(LABEL_SOURCE_COLUMN) \
                if LABEL_SOURCE_COLUMN in header else None
            feature_names = [h for i, h in enumerate(header)
                             if i != label_idx and i != source_idx]
            rows, labels, sources = [], [], []
            for record in reader:
                row = {}
                for i, h in enumerate(header):
                    if i == label_idx or i == source_idx:
                        continue
                    row[h] = _parse_value(h, record[i])
                rows.append(row)
                raw = record[label_idx]
                labels.append(None if raw in ("NA", "") else int(raw))
                sources.append(record[source_idx] if source_idx is not None else "")
        ds = cls(feature_names, rows, labels)
        ds.label_sources = sources if source_idx is not None else ds.label_sources
        return ds


def _parse_value(name: str, text: str):
    if text == "":
        return None
    var = CATALOG_BY_NAME.get(name)
    dtype = var.dtype if var else "number"
    if dtype == "bool":
        return bool(int(text))
    if dtype == "number":
        # keep the int/float distinction so CSV round-trips byte-identically
        if any(ch in text for ch in ".eE") or text in ("nan", "inf", "-inf"):
            return float(text)
        return int(text)
    return text


# -- numeric encoding -----------------------------------------------------------

@dataclass(frozen=True)
class Encoder:
    """Maps raw features to matrix columns and remembers the expansion."""

    feature_names: tuple[str, ...]
    encoded_names: tuple[str, ...]
    source_of: tuple[str, ...]  # original feature per encoded column

    def __len__(self) -> int:
        return len(self.encoded_names)


def encode(ds: Dataset, feature_names: list[str] | None = None) -> tuple[np.ndarray, Encoder]:
    names = feature_names if feature_names is not None else ds.feature_names
    columns: list[np.ndarray] = []
    encoded_names: list[str] = []
    sources: list[str] = []
    for name in names:
        var = ds.variable(name)
        raw = ds.column(name)
        if var.dtype == "string":
            raise InputError(f"string feature {name!r} cannot be encoded")
        if var.dtype in ("number", "bool"):
            col = np.array([np.nan if v is None else float(v) for v in raw], dtype=float)
            columns.append(col)
            encoded_names.append(name)
            sources.append(name)
        else:  # enum
            domain = var.domain
            if len(domain) == 2:
                col = np.array([np.nan if v is None else float(v == domain[1])
                                for v in raw], dtype=float)
                columns.append(col)
                encoded_names.append(f"{name}={domain[1]}")
                sources.append(name)
            else:
                for value in domain:
                    col = np.array([np.nan if v is None else float(v == value)
                                    for v in raw], dtype=float)
                    columns.append(col)
                    encoded_names.append(f"{name}={value}")
                    sources.append(name)
    X = np.column_stack(columns) if columns else np.zeros((ds.n_rows, 0))
    return X, Encoder(tuple(names), tuple(encoded_names), tuple(sources))


def labels_array(ds: Dataset) -> np.ndarray:
    return np.array([-1 if y is None else int(y) for y in ds.labels], dtype=int)
