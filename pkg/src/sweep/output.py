"""CSV output for sweep rows: UTF-8, '\\n' line endings, 12 significant digits."""
import csv
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO

from src.sweep.rows import SWEEP_COLUMNS, SweepRow

logger = logging.getLogger(__name__)

STDOUT = "-"


def format_value(value: float) -> str:
    return f"{value:.12g}"


@contextmanager
def open_sink(path: str) -> Iterator[TextIO]:
    """Yield a text sink for path, or stdout when path is '-'."""
    if path == STDOUT:
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, 'w', encoding='utf-8', newline='') as f:
        yield f


def write_rows(sink: TextIO, rows: Iterable[SweepRow], columns: Sequence[str] = SWEEP_COLUMNS) -> int:
    """
    Write a header and one line per row, keeping only the named columns.

    Returns:
        Number of data rows written
    """
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(columns)
    count = 0
    for row in rows:
        writer.writerow([format_value(getattr(row, name)) for name in columns])
        count += 1
    return count


def write_csv(path: str, rows: Sequence[SweepRow], columns: Sequence[str] = SWEEP_COLUMNS) -> int:
    with open_sink(path) as sink:
        count = write_rows(sink, rows, columns)
    if path != STDOUT:
        logger.info(f"💾 Wrote {count} rows to {path}")
    return count
