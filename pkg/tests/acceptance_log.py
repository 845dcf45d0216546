"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

import functools

LINES: list[str] = []


def criterion(name: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                LINES.append(f"FAIL  {name}")
                raise
            LINES.append(f"PASS  {name}")

        return run

    return wrap
