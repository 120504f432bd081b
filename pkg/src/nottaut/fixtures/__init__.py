"""Access to the packaged reference data: automaton tables and polynomials.

The TSV tables are transcribed reference automata for the Q8/D4 tower
elements; multi-label tables expand into one automaton per label column.
``manifest.json`` records which (family, param, element) each label column
belongs to, the reference state counts, and which fixture pairs are related
by the coefficient Frobenius.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..dfao import Dfao, parse_tsv
from ..gf2m import GF4
from ..minpoly import BivarPoly

__all__ = [
    "FixtureAutomaton",
    "load_manifest",
    "load_tables",
    "load_polynomials",
    "reported_counts",
    "frobenius_pairs",
]


def _read(name: str) -> str:
    return resources.files("nottaut.fixtures").joinpath(name).read_text(encoding="utf-8")


def load_manifest() -> dict:
    return json.loads(_read("manifest.json"))


@dataclass(frozen=True)
class FixtureAutomaton:
    file: str
    column: str
    family: str
    param: str
    element: str
    automaton: Dfao
    states: int
    empirical: bool = False  # element attribution settled by test, not by heading


def load_tables() -> list[FixtureAutomaton]:
    man = load_manifest()
    out = []
    for tab in man["tables"]:
        try:
            parsed = dict(parse_tsv(_read(tab["file"])))
        except Exception as exc:
            raise type(exc)(f"{tab['file']}: {exc}") from exc
        for lab in tab["labels"]:
            a = parsed[lab["column"]]
            if a.n_states != tab["states"]:
                raise AssertionError(f"{tab['file']}: expected {tab['states']} states")
            out.append(
                FixtureAutomaton(
                    file=tab["file"],
                    column=lab["column"],
                    family=lab["family"],
                    param=lab["param"],
                    element=lab["element"],
                    automaton=a,
                    states=tab["states"],
                    empirical=bool(lab.get("empirical", False)),
                )
            )
    return out


def load_polynomials() -> dict[str, BivarPoly]:
    data = json.loads(_read("polynomials.json"))
    return {k: BivarPoly.from_text(GF4, v) for k, v in data.items()}


def reported_counts() -> dict[str, int]:
    return {k: int(v) for k, v in load_manifest()["reported_state_counts"].items()}


def frobenius_pairs() -> list[tuple[str, str, str, str]]:
    return [tuple(row) for row in load_manifest()["frobenius_fixture_pairs"]]
