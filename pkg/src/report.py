import json

from sympy import Poly


def format_polynomial(p: Poly) -> str:
    return str(p.as_expr())


def homology_rows(h):
    return [
        {"i": i, "j": j, "free": group.free, "torsion": list(group.torsion)}
        for (i, j), group in sorted(h.groups.items())
    ]


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False, default=str) + "\n"


def _tsv_table(rows, columns):
    lines = ["\t".join(columns)]
    for row in rows:
        cells = []
        for column in columns:
            value = row.get(column, "")
            if isinstance(value, (list, tuple)):
                value = ",".join(str(v) for v in value)
            cells.append(str(value))
        lines.append("\t".join(cells))
    return "\n".join(lines)


def _is_table(value):
    return isinstance(value, list) and value and all(isinstance(v, dict) for v in value)


def _flatten(prefix, value, scalars, tables):
    if _is_table(value):
        columns = []
        for row in value:
            for column in row:
                if column not in columns:
                    columns.append(column)
        tables.append(f"# {prefix}\n" + _tsv_table(value, columns))
    elif isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), sub, scalars, tables)
    else:
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        scalars.append(f"{prefix}\t{value}")


def to_tsv(report: dict) -> str:
    """
    Flatten a command report to tab-separated tables

    Scalars are written as "key<TAB>value" lines with dotted keys for nested
    dicts; each list of row dicts becomes its own table preceded by a
    "# name" line.

    Args:
        report: dict produced by one of the cli commands

    Returns:
        TSV text
    """
    scalars = []
    tables = []
    _flatten("", report, scalars, tables)
    return "\n\n".join(["\n".join(scalars)] + tables) + "\n"


def render(report: dict, fmt="json") -> str:
    if fmt == "tsv":
        return to_tsv(report)
    return to_json(report)


def format_verify_summary(report: dict) -> str:
    """One line per property, for terminal output."""
    lines = []
    for entry in report.get("checks", []):
        line = f"{entry['status']:>4}  {entry.get('graph', '')}\t{entry['property']}"
        if entry.get("witness") and entry["status"] != "pass":
            line += f"\t{entry['witness']}"
        lines.append(line)
    total = len(report.get("checks", []))
    failures = sum(1 for e in report.get("checks", []) if e["status"] == "FAIL")
    lines.append(f"{total - failures}/{total} properties hold")
    return "\n".join(lines) + "\n"
