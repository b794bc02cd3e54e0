"""
Output formatter for reports and exact tables.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

FORMATS = ("json", "csv")


def format_output(results: Any, output_path: Optional[Path] = None) -> Optional[Path]:
    """
    Format and output a report as JSON.

    Args:
        results: JSON-serializable report (rationals already rendered as "num/den")
        output_path: Output file path. If None, writes to stdout.

    Returns:
        The output path if one was given, None otherwise.
    """
    json_output = json.dumps(results, ensure_ascii=False, indent=2, sort_keys=False)
    if output_path:
        _write_text_file(json_output, output_path)
        return output_path
    print(json_output)
    return None


def format_rows(
    rows: List[Dict[str, Any]], output_format: str = "csv", output_path: Optional[Path] = None, columns: Optional[Sequence[str]] = None
) -> Optional[Path]:
    """
    Output a table of flat rows as CSV or JSON.

    Args:
        rows: One dict per table row
        output_format: "csv" or "json"
        output_path: Output file path. If None, writes to stdout.
        columns: CSV column order (default: keys of the first row)

    Returns:
        The output path if one was given, None otherwise.

    Raises:
        ValueError: If the format is not supported
    """
    if output_format == "json":
        return format_output(rows, output_path)
    if output_format != "csv":
        raise ValueError(f"Unknown output format: {output_format}")

    fieldnames = list(columns) if columns else (list(rows[0].keys()) if rows else [])
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(row.get(key)) for key in fieldnames})
    text = buffer.getvalue().rstrip("\n")

    if output_path:
        _write_text_file(text, output_path)
        return output_path
    print(text)
    return None


def _csv_cell(value: Any) -> Any:
    # index pairs print as "i;j" so the cell needs no quoting
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return value


def _write_text_file(text: str, file_path: Path) -> None:
    """
    Write text to a file, creating the parent directory.

    Args:
        text: File contents (a trailing newline is appended)
        file_path: Output file path
    """
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(text)
        f.write("\n")
