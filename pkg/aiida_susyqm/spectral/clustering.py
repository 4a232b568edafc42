"""Degeneracy clustering of per-sector spectra and their level diagrams."""

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Union

from ..base.utils import get_logger
from ..exceptions import AmbiguousCluster

logger = get_logger("spectral.clustering")


@dataclass
class Cluster:
    energy: float
    members: list = field(default_factory=list)

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    @property
    def sectors(self) -> list:
        return sorted(sector for sector, _, _ in self.members)

    @property
    def spread(self) -> tuple:
        values = [value for _, _, value in self.members]
        return min(values), max(values)

    def to_json(self) -> dict:
        return {"energy": self.energy, "multiplicity": self.multiplicity, "sectors": self.sectors}


def _row_order(row: dict) -> tuple:
    reference = row["E_closed_form"]
    return (row["E_numeric"] if reference is None else reference, row["sector"])


@dataclass
class SpectrumReport:
    levels: dict
    clusters: list
    tol: float
    labels: dict = field(default_factory=dict)
    closed_form: dict = field(default_factory=dict)

    @property
    def pattern(self) -> list:
        return [c.multiplicity for c in self.clusters]

    def comparison_rows(self) -> list:
        rows = []
        for sector, values in self.levels.items():
            reference = self.closed_form.get(sector, [])
            for index, value in enumerate(values):
                exact = reference[index] if index < len(reference) else None
                rows.append(
                    {
                        "sector": sector,
                        "level_index": index,
                        "E_numeric": float(value),
                        "E_closed_form": exact,
                        "abs_error": None if exact is None else abs(float(value) - exact),
                    }
                )
        return sorted(rows, key=_row_order)

    def max_error(self) -> float:
        errors = [row["abs_error"] for row in self.comparison_rows() if row["abs_error"] is not None]
        return max(errors, default=0.0)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        fieldnames = ["sector", "level_index", "E_numeric", "E_closed_form", "abs_error"]
        writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.comparison_rows())
        return buffer.getvalue()

    def to_json(self) -> dict:
        return {
            "levels": {str(k): [float(v) for v in values] for k, values in self.levels.items()},
            "clusters": [c.to_json() for c in self.clusters],
            "pattern": self.pattern,
            "tol": self.tol,
            "labels": {str(k): v for k, v in self.labels.items()},
        }

    def columns(self) -> dict:
        """Cluster energies grouped by sector label; sectors sharing a label share a column."""
        grouped = {self.labels.get(sector, f"sector {sector}"): [] for sector in self.levels}
        for cluster in self.clusters:
            for sector, _, _ in cluster.members:
                grouped[self.labels.get(sector, f"sector {sector}")].append(cluster.energy)
        return grouped

    def ascii_diagram(self) -> str:
        return level_diagram(self.columns())


def degeneracy_cluster(
    levels: Union[dict, list],
    tol: float,
    labels: Optional[dict] = None,
    closed_form: Optional[dict] = None,
) -> SpectrumReport:
    """Greedy clustering of all sector levels by energy.

    A level joins the current cluster when it lies within ``tol`` of the
    cluster's lowest member; two clusters closer than ``tol`` are reported as
    ambiguous.
    """
    if tol <= 0:
        raise ValueError(f"clustering tolerance must be positive, got {tol}")
    if not isinstance(levels, dict):
        levels = {i + 1: values for i, values in enumerate(levels)}
    entries = sorted(
        ((float(value), sector, index) for sector, values in levels.items() for index, value in enumerate(values)),
    )
    clusters = []
    for value, sector, index in entries:
        if clusters and value - clusters[-1].energy <= tol:
            clusters[-1].members.append((sector, index, value))
            continue
        if clusters and value - clusters[-1].spread[1] <= tol:
            raise AmbiguousCluster(f"level {value} of sector {sector} overlaps cluster at {clusters[-1].energy}")
        clusters.append(Cluster(value, [(sector, index, value)]))
    for cluster in clusters:
        low, high = cluster.spread
        cluster.energy = 0.5 * (low + high)
    report = SpectrumReport(dict(levels), clusters, tol, dict(labels or {}), dict(closed_form or {}))
    logger.info(f"Clustered {len(entries)} levels into pattern {report.pattern} (tol {tol})")
    return report


def level_diagram(columns: dict, label: str = "E", decimals: int = 3) -> str:
    """Text level scheme: one column per label, one row per distinct level, top row highest."""
    headers = list(columns)
    width = max([12] + [len(h) + 2 for h in headers])
    energies = sorted({round(v, decimals) for values in columns.values() for v in values}, reverse=True)
    lines = [f"{label:>10} " + "".join(f"{h:^{width}}" for h in headers)]
    for energy in energies:
        cells = []
        for h in headers:
            multiplicity = sum(1 for v in columns[h] if round(v, decimals) == energy)
            cell = "" if not multiplicity else "----" if multiplicity == 1 else f"---- x{multiplicity}"
            cells.append(f"{cell:^{width}}")
        lines.append(f"{energy:>10.{decimals}f} " + "".join(cells).rstrip())
    return "\n".join(lines)
