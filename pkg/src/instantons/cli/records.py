"""Result records and their JSON / CSV / text renderings."""

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

SCHEMA_VERSION = 1

CSV_HEADER = [
    "input", "j", "canonical_p", "delta", "milnor", "tjurina",
    "width", "height", "charge", "multiplicity", "branches",
]

_INT_FIELDS = {"j", "delta", "milnor", "tjurina", "width", "height", "charge", "multiplicity", "branches"}


@dataclass
class InvariantRecord:
    input: str
    j: int
    delta: int = None
    milnor: int = None
    tjurina: int = None
    width: int = None
    height: int = None
    charge: int = None
    multiplicity: int = None
    branches: int = None
    canonical_p: str = ""
    consistent: bool = None
    kind: str = "curve"
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


def to_json(record):
    return json.dumps(record.to_dict(), ensure_ascii=False)


def from_json(text):
    return InvariantRecord.from_dict(json.loads(text))


def _cell(v):
    return "" if v is None else str(v)


def to_csv(records):
    if isinstance(records, InvariantRecord):
        records = [records]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        d = r.to_dict()
        w.writerow([_cell(d[k]) for k in CSV_HEADER])
    return buf.getvalue()


def from_csv(text, kind="curve"):
    """Parse CSV produced by :func:`to_csv`; blank cells become ``None``."""
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        d = {}
        for k in CSV_HEADER:
            v = row[k]
            if k in _INT_FIELDS:
                d[k] = int(v) if v != "" else None
            else:
                d[k] = v
        rec = InvariantRecord(**d, kind=kind)
        if rec.delta is not None:
            rec.consistent = 2 * rec.delta == rec.milnor + rec.branches - 1
        out.append(rec)
    return out


TEXT_COLUMNS = [
    ("input", "P"), ("j", "j"), ("canonical_p", "p"), ("delta", "delta"), ("milnor", "mu"),
    ("tjurina", "tau"), ("width", "w"), ("height", "h"), ("charge", "k"),
]


def text_table(records):
    if isinstance(records, InvariantRecord):
        records = [records]
    rows = [[label for _, label in TEXT_COLUMNS]]
    for r in records:
        d = r.to_dict()
        rows.append([_cell(d[k]) if d[k] is not None else "-" for k, _ in TEXT_COLUMNS])
    widths = [max(len(row[i]) for row in rows) for i in range(len(TEXT_COLUMNS))]
    lines = []
    for n, row in enumerate(rows):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def format_report(records, fmt):
    """Render one record (or a list) as ``json``, ``csv`` or ``text``."""
    if fmt == "json":
        if isinstance(records, InvariantRecord):
            return to_json(records) + "\n"
        return json.dumps([r.to_dict() for r in records], ensure_ascii=False) + "\n"
    if fmt == "csv":
        return to_csv(records)
    if fmt == "text":
        return text_table(records)
    raise ValueError(f"unknown format {fmt!r}")
