"""Collects one line per acceptance criterion for the terminal summary."""

LINES = []


def record(criterion, ok: bool, detail: str):
    line = f"criterion {criterion} {'PASS' if ok else 'FAIL'}: {detail}"
    LINES.append(line)
    print(line)
    return ok
