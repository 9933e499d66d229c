"""Access to the bundled program files and their recorded witness rows."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .exprlang import Program, parse_program

PROGRAMS = ("in1_maass", "in2_holomorphic", "in3_ngeqm")


def program_dir():
    return resources.files("expolab").joinpath("programs")


def program_text(name: str) -> str:
    return program_dir().joinpath(f"{name}.opt").read_text()


def load_program(name: str) -> Program:
    return parse_program(program_text(name))


def resolve_program_path(path: str) -> Path | None:
    """A path on disk, or a bundled file referred to as ``programs/<file>``."""
    p = Path(path)
    if p.is_file():
        return p
    if p.parent.name == "programs" or str(p.parent) in ("", "."):
        bundled = program_dir().joinpath(p.name)
        if bundled.is_file():
            return Path(str(bundled))
    return None


@dataclass(frozen=True)
class Witness:
    claimed: Fraction
    point: dict[str, Fraction]
    inferred: tuple[str, ...]


def load_witness(name: str) -> Witness:
    raw = json.loads(program_dir().joinpath(f"{name}.witness.json").read_text())
    return Witness(Fraction(raw["claimed"]),
                   {k: Fraction(v) for k, v in raw["point"].items()},
                   tuple(raw.get("inferred", ())))
