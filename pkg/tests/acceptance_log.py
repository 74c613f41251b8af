"""Collects one PASS/FAIL line per acceptance criterion."""

LINES = []


def record(number, ok, title, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}"
    if detail:
        line += f"  [{detail}]"
    LINES.append(line)
    print(line)
    return ok


def order(line):
    return int(line.split("criterion")[1].split(":")[0])
