from collections import defaultdict

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)


def record(criterion: int, part: str, passed: bool, detail: str) -> None:
    ACCEPTANCE[criterion].append((part, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {d}{'' if passed else ' [FAIL]'}" for name, passed, d in parts)
        terminalreporter.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'} | {detail}")
