"""PASS/FAIL lines collected by the acceptance tests and echoed in the terminal summary."""

LINES: list[str] = []
