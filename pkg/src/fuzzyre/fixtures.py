"""Hand-entered golden data for the worked examples.

Files live in ``fuzzyre/data/*.json``. Each file holds an ``expr``, a
``structure``, optionally a crisp automaton ``nfa`` in the automaton document
format, and a ``matrices`` table.

Names resolve as follows:

* ``<stem>`` returns the file's crisp automaton (:class:`~fuzzyre.position.Nfa`);
* ``<stem>_nfa`` is the same;
* ``<stem>_<key>`` returns ``matrices[key]`` as a float array, or as a dict
  of arrays when the entry carries ``printed``/``derived`` variants.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np

from .serialize import from_document

__all__ = ["FIXTURE_DIR", "fixture_names", "fixture_record", "load_fixture", "UnknownFixture"]

FIXTURE_DIR = resources.files(__package__) / "data"


class UnknownFixture(KeyError):
    pass


@lru_cache(maxsize=None)
def _stems() -> tuple:
    return tuple(sorted(p.name[:-5] for p in FIXTURE_DIR.iterdir() if p.name.endswith(".json")))


@lru_cache(maxsize=None)
def _raw(stem: str) -> str:
    return (FIXTURE_DIR / f"{stem}.json").read_text(encoding="utf-8")


def fixture_record(stem: str) -> dict:
    """The parsed JSON file (a fresh copy on every call)."""
    if stem not in _stems():
        raise UnknownFixture(f"no fixture file {stem!r}; known: {', '.join(_stems())}")
    return json.loads(_raw(stem))


def fixture_names() -> list[str]:
    out = []
    for stem in _stems():
        rec = fixture_record(stem)
        if "nfa" in rec:
            out += [stem, f"{stem}_nfa"]
        out += [f"{stem}_{k}" for k in rec.get("matrices", {})]
    return out


def _convert(value):
    if isinstance(value, dict):
        return {k: (v if k == "note" else np.asarray(v, dtype=np.float64)) for k, v in value.items()}
    return np.asarray(value, dtype=np.float64)


def load_fixture(name: str):
    for stem in sorted(_stems(), key=len, reverse=True):
        if name == stem or name == f"{stem}_nfa":
            rec = fixture_record(stem)
            if "nfa" not in rec:
                raise UnknownFixture(f"fixture {stem!r} has no crisp automaton")
            return from_document(rec["nfa"])
        if name.startswith(stem + "_"):
            key = name[len(stem) + 1:]
            matrices = fixture_record(stem).get("matrices", {})
            if key in matrices:
                return _convert(matrices[key])
    raise UnknownFixture(f"unknown fixture {name!r}")
