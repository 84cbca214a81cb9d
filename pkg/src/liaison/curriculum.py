"""Read-only curriculum catalogue, seeded from a strict CSV fixture.

The shipped fixture transcribes the BMAS computer-science course outline
as printed, duplicated 200-level titles included; it is provenance data,
not curated truth.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable

from .domain import COURSE_LEVELS, COURSE_MAX_UNITS, COURSE_MIN_UNITS, Course
from .errors import DuplicateCode, IoError, ParseError

FIXTURE_HEADER = ["code", "title", "units", "level", "elective"]

_BOOL = {"true": True, "false": False}


def default_fixture_path() -> Path:
    """The packaged BMAS course fixture."""
    return Path(__file__).parent / "fixtures" / "bmas_csc.csv"


def load_fixture(path: str | Path) -> list[Course]:
    """Parse a course CSV; any bad row aborts the whole load."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read fixture {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(0, "bad_encoding") from exc
    return parse_fixture(text)


def parse_fixture(text: str) -> list[Course]:
    rows = csv.reader(io.StringIO(text))
    try:
        header = next(rows)
    except StopIteration:
        raise ParseError(1, "bad_header") from None
    if header != FIXTURE_HEADER:
        raise ParseError(1, "bad_header")

    courses: list[Course] = []
    seen: set[str] = set()
    for line, row in enumerate(rows, start=2):
        courses.append(_parse_row(line, row, seen))
    return courses


def _parse_row(line: int, row: list[str], seen: set[str]) -> Course:
    if len(row) != len(FIXTURE_HEADER):
        raise ParseError(line, "wrong_field_count")
    code, title, units_text, level_text, elective_text = (field.strip() for field in row)
    if not code:
        raise ParseError(line, "empty_code")
    if not title:
        raise ParseError(line, "empty_title")
    try:
        units = int(units_text)
    except ValueError:
        raise ParseError(line, "bad_units") from None
    if not COURSE_MIN_UNITS <= units <= COURSE_MAX_UNITS:
        raise ParseError(line, "bad_units")
    try:
        level = int(level_text)
    except ValueError:
        raise ParseError(line, "bad_level") from None
    if level not in COURSE_LEVELS:
        raise ParseError(line, "bad_level")
    elective = _BOOL.get(elective_text.lower())
    if elective is None:
        raise ParseError(line, "bad_elective")
    if code in seen:
        raise DuplicateCode(code)
    seen.add(code)
    return Course(code=code, title=title, units=units, level=level, elective=elective)


def dump_fixture(courses: Iterable[Course]) -> str:
    """Serialize back to fixture CSV; load(dump(load(f))) is a fixed point."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FIXTURE_HEADER)
    for c in courses:
        writer.writerow([c.code, c.title, c.units, c.level, str(c.elective).lower()])
    return out.getvalue()


class Catalogue:
    """Immutable course collection; free to share once built."""

    def __init__(self, courses: Iterable[Course] = ()):
        self._courses = tuple(courses)

    def __len__(self) -> int:
        return len(self._courses)

    def list_courses(self, level: int | None = None) -> list[Course]:
        """Courses at one level (or all), sorted by code."""
        found = [c for c in self._courses if level is None or c.level == level]
        found.sort(key=lambda c: c.code)
        return found

    def total_units(self, level: int) -> int:
        """Sum of units over the non-elective courses at a level."""
        return sum(c.units for c in self._courses if c.level == level and not c.elective)
