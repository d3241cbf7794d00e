"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
from __future__ import annotations

LINES: list[str] = []


def record(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    LINES.append(line)
    print(line, flush=True)
