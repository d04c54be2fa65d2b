"""Persist sweep results: wide CSV and gnuplot data + script."""
from __future__ import annotations

import csv
from pathlib import Path

from .sweep import SweepResult


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _table(result: SweepResult, missing: str) -> tuple[list[str], list[list[str]]]:
    labels = result.labels
    header = ["d"] + labels + [f"bound_{label}" for label in result.bounds]
    lookup = {label: dict(s.rows) for label, s in result.series.items()}
    rows = []
    for d in result.config.dims:
        row = [str(d)]
        for label in labels:
            v = lookup[label].get(d)
            row.append(missing if v is None else _fmt(v))
        row.extend(_fmt(b) for b in result.bounds.values())
        rows.append(row)
    return header, rows


def write_csv(result: SweepResult, path) -> None:
    """Header ``d,m0,m1,...`` (plus ``bound_m*`` with the overlay).

    A state is blank in rows whose truncation does not contain it.
    """
    header, rows = _table(result, "")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


_SCRIPT = """\
# gnuplot script generated by trotterlab
set datafile missing "?"
set key top left
set xlabel "truncation dimension d"
set ylabel "{ylabel}"
set terminal pdfcairo enhanced
set output "{pdf}"
plot \\
{series}
"""


def emit_plotdata(result: SweepResult, path) -> Path:
    """Write a whitespace-separated data file and a companion ``.gp`` script.

    Returns the script path.  Error columns are drawn as points, bound
    columns as lines.
    """
    path = Path(path)
    header, rows = _table(result, "?")
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("# " + " ".join(header) + "\n")
        for row in rows:
            fh.write(" ".join(row) + "\n")

    lines = []
    ncols = len(result.labels)
    for j, label in enumerate(result.labels):
        title = f"|{label[1:]}>" if label.startswith("m") else label
        lines.append(f'  "{path.name}" using 1:{j + 2} with points pt 7 ps 0.4 lc {j + 1} title "{title}"')
    for j, label in enumerate(result.bounds):
        lines.append(f'  "{path.name}" using 1:{ncols + j + 2} with lines lw 2 lc {j + 1} notitle')
    ylabel = "uniform Trotter error" if result.labels == ["uniform"] else "state-dependent Trotter error"
    script = path.with_suffix(".gp")
    script.write_text(
        _SCRIPT.format(ylabel=ylabel, pdf=path.with_suffix(".pdf").name, series=", \\\n".join(lines)),
        encoding="utf-8",
    )
    return script
