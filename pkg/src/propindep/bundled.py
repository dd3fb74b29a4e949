"""The bundled worked-example fixtures and their expected CLI outputs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from . import sat
from .cli import EXIT_FALSE, EXIT_OK, ORACLE_TWINS, format_result, run
from .formula import parse


def fixture_dir() -> Path:
    return Path(str(resources.files("propindep") / "fixtures"))


def load_manifest() -> list[dict]:
    return json.loads((fixture_dir() / "manifest.json").read_text())["fixtures"]


@dataclass
class CheckOutcome:
    name: str
    argv: list
    ok: bool
    detail: str


def _argv(check: dict, files: list[str]) -> list[str]:
    paths = [str(fixture_dir() / f) for f in files]
    return [a.format(*paths) for a in check["argv"]]


def _judge(check: dict, res) -> tuple[bool, str]:
    if res.status != "ok":
        return False, str(res.payload)
    out = format_result(res).rstrip("\n")
    if "verdict" in check:
        want = check["verdict"]
        code = EXIT_OK if want else EXIT_FALSE
        return res.payload == want and res.exit_code == code, out
    if "text" in check:
        return out == check["text"], out
    if "equiv" in check:
        return sat.equivalent(res.payload, parse(check["equiv"])), out
    if "groups" in check:
        return sorted(res.payload.lines()) == sorted(check["groups"]), out
    if "records" in check:
        return all(res.payload.get(k) == v for k, v in check["records"].items()), out
    return False, "check has no expectation"


def run_checks(use_oracle: bool = False) -> Iterator[CheckOutcome]:
    """Run every manifest check; with ``use_oracle`` only the brute-force twins."""
    for entry in load_manifest():
        for check in entry["checks"]:
            argv = _argv(check, entry["files"])
            if use_oracle:
                if argv[0] not in ORACLE_TWINS:
                    continue
                argv = ["oracle"] + argv
            ok, detail = _judge(check, run(argv))
            yield CheckOutcome(entry["name"], argv, ok, detail)
