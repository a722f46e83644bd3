"""Report serialization: stable JSON documents and plain text tables."""
import json

VERSION = "0.1.0"


def envelope(command, payload, input_hash):
    return {"command": command, "version": VERSION, "input_hash": input_hash, "result": payload}


def to_json(document):
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(x) for x in value) or "-"
    return str(value)


def table(rows, columns):
    """Left-aligned text table of dict rows restricted to columns."""
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def key_values(document, indent=0):
    """Nested dicts as indented "key: value" lines."""
    lines = []
    for key in sorted(document):
        value = document[key]
        if isinstance(value, dict):
            lines.append("{}{}:".format(" " * indent, key))
            lines.append(key_values(value, indent + 2).rstrip("\n"))
        else:
            lines.append("{}{}: {}".format(" " * indent, key, _cell(value)))
    return "\n".join(line for line in lines if line) + "\n"


def footer(input_hash, prefix=""):
    """Provenance lines closing every text report."""
    return "{}version: {}\n{}input_hash: {}\n".format(prefix, VERSION, prefix, input_hash)
