"""CSV schema for the figure renderer.

Two file shapes are understood, both produced by the macrolab CLI:

* sample rows  -- one line per optimized state, 13 columns starting with
  ``ensemble,n,k,sample,seed``; numeric cells may be empty when a run
  recorded brackets only.
* bounds rows  -- the compact ``mode,n,eta,e_g,m_norm`` curve format.

Readers validate the header before touching any data and raise
:class:`SchemaError` with the offending column named, so a schema drift
upstream fails loudly instead of producing an empty plot.
"""

import csv

SAMPLE_COLUMNS = (
    "ensemble",
    "n",
    "k",
    "sample",
    "seed",
    "m_tilde_lower",
    "m_tilde_upper",
    "m_tilde",
    "m_norm",
    "n_m_norm",
    "e_g",
    "opt_converged",
    "eg_converged",
)

BOUNDS_COLUMNS = ("mode", "n", "eta", "e_g", "m_norm")


class SchemaError(ValueError):
    """A CSV input does not match the documented schema."""


def _float_or_none(cell):
    cell = cell.strip()
    return None if cell == "" else float(cell)


def _read_table(path, required):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: file is empty, expected a CSV header")
            header = [h.strip() for h in header]
            for column in required:
                if column not in header:
                    raise SchemaError(f"{path}: missing required column '{column}'")
            records = [dict(zip(header, row)) for row in reader if row]
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}")
    if not records:
        raise SchemaError(f"{path}: no data rows (header only)")
    return records


def read_sample_rows(paths):
    """Parse one or more sample-row CSV files into typed dicts.

    Numeric cells left empty by bracket-only runs come back as None.
    """
    rows = []
    for path in paths:
        for rec in _read_table(path, SAMPLE_COLUMNS):
            rows.append(
                {
                    "ensemble": rec["ensemble"],
                    "n": int(rec["n"]),
                    "k": int(rec["k"]),
                    "sample": int(rec["sample"]),
                    "m_tilde_lower": _float_or_none(rec["m_tilde_lower"]),
                    "m_tilde_upper": _float_or_none(rec["m_tilde_upper"]),
                    "m_tilde": _float_or_none(rec["m_tilde"]),
                    "m_norm": _float_or_none(rec["m_norm"]),
                    "e_g": _float_or_none(rec["e_g"]),
                }
            )
    return rows


def read_bounds_rows(paths):
    """Parse one or more compact bounds CSV files."""
    rows = []
    for path in paths:
        for rec in _read_table(path, BOUNDS_COLUMNS):
            rows.append(
                {
                    "mode": rec["mode"],
                    "n": int(rec["n"]),
                    "eta": float(rec["eta"]),
                    "e_g": float(rec["e_g"]),
                    "m_norm": float(rec["m_norm"]),
                }
            )
    return rows
