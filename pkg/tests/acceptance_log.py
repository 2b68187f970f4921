"""Collects one pass/fail line per acceptance criterion."""

RESULTS: dict[int, tuple[bool, str, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
    RESULTS[number] = (bool(passed), title, detail)
    print(format_line(number))
    return bool(passed)


def format_line(number: int) -> str:
    passed, title, detail = RESULTS[number]
    status = "PASS" if passed else "FAIL"
    return f"criterion {number:2d} [{status}] {title}" + (f": {detail}" if detail else "")


def lines() -> list[str]:
    return [format_line(k) for k in sorted(RESULTS)]
