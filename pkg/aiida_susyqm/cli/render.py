"""Report rendering: text, CSV, JSON and SVG level diagrams."""

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ..operators import SpinorOperator  # noqa: E402


def _default(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, default=_default)


def checks_csv(checks: list) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer,
        fieldnames=["name", "residual", "threshold", "pass", "error"],
        lineterminator="\n",
        extrasaction="ignore",
    )
    writer.writeheader()
    writer.writerows(checks)
    return buffer.getvalue()


def render_text(payload: dict, sections: tuple = ()) -> str:
    lines = [f"susyqm {payload['command']}"]
    for check in payload["checks"]:
        status = "PASS" if check["pass"] else "FAIL"
        if "error" in check:
            lines.append(f"  {status}  {check['name']}: {check['error']}")
        else:
            residual = f"residual={check['residual']:.3e}  threshold={check['threshold']:.1e}"
            lines.append(f"  {status}  {check['name']}  {residual}")
    lines.append("result: " + ("PASS" if payload["pass"] else "FAIL"))
    for title, body in sections:
        lines.extend(["", title, body])
    return "\n".join(lines)


def hamiltonian_display(h: SpinorOperator) -> str:
    """Non-zero entries of a matrix operator, one per line."""
    lines = []
    for i in range(1, h.dim + 1):
        for j in range(1, h.dim + 1):
            entry = h.describe(i, j)
            if entry and entry != "0":
                lines.append(f"  H[{i},{j}] = {entry}")
    return "\n".join(lines)


def write_svg(panels: dict, path, ylabel: str = "E") -> Path:
    """One subplot per panel; each panel maps a column label to its levels."""
    path = Path(path)
    fig, axes = plt.subplots(1, len(panels), figsize=(4.5 * len(panels), 5), squeeze=False)
    for ax, (title, columns) in zip(axes[0], panels.items()):
        for position, (label, levels) in enumerate(columns.items()):
            counts = {}
            for value in levels:
                counts[round(value, 6)] = counts.get(round(value, 6), 0) + 1
            for value, multiplicity in counts.items():
                ax.hlines(value, position - 0.3, position + 0.3, colors="k")
                if multiplicity > 1:
                    ax.annotate(f"x{multiplicity}", (position + 0.32, value), va="center", fontsize=8)
        ax.set_xticks(range(len(columns)))
        ax.set_xticklabels(list(columns))
        ax.set_xlim(-0.6, len(columns) - 0.2)
        ax.set_title(title)
        ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
