"""JSON documents and Graphviz DOT output for automata.

A document looks like::

    {
      "kind": "fuzzy",
      "structure": {"name": "godel", "tolerance": 0.0},
      "states": ["0", "1", "2"],
      "alphabet": ["x"],
      "sigma": [1.0, 0.0, 0.0],
      "transitions": {"x": [[0.0, 0.0, 1.0], ...]},
      "tau": [0.0, 0.0, 1.0]
    }

``kind`` is ``"nfa"`` for crisp automata (values 0/1, boolean structure,
initial state 0). Floats are written with the shortest decimal that reads
back to the same double, so export -> import -> export is byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import make_structure
from .automaton import FuzzyAutomaton
from .position import Nfa

__all__ = ["to_document", "from_document", "dumps", "loads", "to_dot", "format_degree"]


def _num(v):
    return float(v)


def to_document(a) -> dict:
    if isinstance(a, Nfa):
        sigma = [1.0] + [0.0] * (a.n_states - 1)
        return {
            "kind": "nfa",
            "structure": {"name": "boolean", "tolerance": 0.0},
            "states": list(a.labels),
            "alphabet": list(a.alphabet),
            "sigma": sigma,
            "transitions": {x: a.delta[x].astype(float).tolist() for x in a.alphabet},
            "tau": a.finals.astype(float).tolist(),
        }
    return {
        "kind": "fuzzy",
        "structure": {"name": a.lm.name, "tolerance": _num(a.lm.tolerance)},
        "states": list(a.labels),
        "alphabet": list(a.alphabet),
        "sigma": [_num(v) for v in a.sigma],
        "transitions": {x: [[_num(v) for v in row] for row in a.delta[x]] for x in a.alphabet},
        "tau": [_num(v) for v in a.tau],
    }


def from_document(doc: dict):
    """Rebuild an :class:`Nfa` or :class:`FuzzyAutomaton` from a document."""
    states = doc["states"]
    n = len(states)
    alphabet = list(doc["alphabet"])
    trans = doc["transitions"]
    for key in ("sigma", "tau"):
        if len(doc[key]) != n:
            raise ValueError(f"{key} has {len(doc[key])} entries for {n} states")
    for x in alphabet:
        m = np.asarray(trans[x], dtype=np.float64).reshape(-1, n) if n else np.zeros((0, 0))
        if m.shape != (n, n):
            raise ValueError(f"transition matrix for {x!r} has shape {m.shape}")
    values = [v for key in ("sigma", "tau") for v in doc[key]]
    values += [v for x in alphabet for row in trans[x] for v in row]
    if any(not 0.0 <= float(v) <= 1.0 for v in values):
        raise ValueError("document contains values outside [0, 1]")

    if doc.get("kind", "fuzzy") == "nfa":
        sigma = [float(v) for v in doc["sigma"]]
        if n and (sigma[0] != 1.0 or any(sigma[1:])):
            raise ValueError("a crisp automaton document needs state 0 as its only initial state")
        delta = {x: np.asarray(trans[x], dtype=np.float64) > 0.5 for x in alphabet}
        finals = np.asarray(doc["tau"], dtype=np.float64) > 0.5
        return Nfa(n, tuple(alphabet), delta, finals, tuple(states))

    st = doc["structure"]
    lm = make_structure(st["name"], st.get("tolerance"))
    delta = {x: np.asarray(trans[x], dtype=np.float64) for x in alphabet}
    return FuzzyAutomaton(tuple(alphabet), delta, np.asarray(doc["sigma"], dtype=np.float64),
                          np.asarray(doc["tau"], dtype=np.float64), lm, tuple(states))


def _row(values):
    return "[" + ", ".join(json.dumps(float(v)) for v in values) + "]"


def dumps(a) -> str:
    """Deterministic JSON text; matrices are written one row per line."""
    doc = to_document(a) if not isinstance(a, dict) else a
    lines = ["{"]
    lines.append(f'  "kind": {json.dumps(doc["kind"])},')
    lines.append(f'  "structure": {json.dumps(doc["structure"])},')
    lines.append(f'  "states": {json.dumps(doc["states"])},')
    lines.append(f'  "alphabet": {json.dumps(doc["alphabet"])},')
    lines.append(f'  "sigma": {_row(doc["sigma"])},')
    lines.append('  "transitions": {')
    items = list(doc["transitions"].items())
    for k, (x, m) in enumerate(items):
        body = ",\n".join("      " + _row(r) for r in m)
        sep = "," if k < len(items) - 1 else ""
        lines.append(f"    {json.dumps(x)}: [\n{body}\n    ]{sep}" if m else f"    {json.dumps(x)}: []{sep}")
    lines.append("  },")
    extra = {k: v for k, v in doc.items()
             if k not in ("kind", "structure", "states", "alphabet", "sigma", "transitions", "tau")}
    lines.append(f'  "tau": {_row(doc["tau"])}' + ("," if extra else ""))
    for k, (key, value) in enumerate(extra.items()):
        sep = "," if k < len(extra) - 1 else ""
        lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text: str):
    return from_document(json.loads(text))


def format_degree(v: float) -> str:
    """12 significant digits, trailing zeros trimmed."""
    return f"{float(v):.12g}"


def _node(label):
    if label.isalnum():
        return label
    return json.dumps(label)


def to_dot(a, name: str = "automaton") -> str:
    """Graphviz source; only nonzero transitions are drawn.

    Fuzzy edges read ``letter/degree``, terminal states show their degree
    and each initial state gets an incoming arrow from a point node.
    """
    lines = [f"digraph {_node(name)} {{", "  rankdir=LR;"]
    if isinstance(a, Nfa):
        finals = a.finals
        for i, lab in enumerate(a.labels):
            shape = "doublecircle" if finals[i] else "circle"
            lines.append(f"  {_node(lab)} [shape={shape}];")
        lines.append("  __start [shape=point];")
        lines.append(f"  __start->{_node(a.labels[0])};")
        for i, x, j in a.edges():
            lines.append(f'  {_node(a.labels[i])}->{_node(a.labels[j])} [label="{x}"];')
    else:
        for i, lab in enumerate(a.labels):
            t = a.tau[i]
            if t > 0:
                lines.append(f'  {_node(lab)} [shape=doublecircle, label="{lab}\\n{format_degree(t)}"];')
            else:
                lines.append(f"  {_node(lab)} [shape=circle];")
        for i, s in enumerate(a.sigma):
            if s > 0:
                src = f"__start{i}"
                lines.append(f"  {src} [shape=point];")
                attr = "" if s == 1.0 else f' [label="{format_degree(s)}"]'
                lines.append(f"  {src}->{_node(a.labels[i])}{attr};")
        for x in a.alphabet:
            m = a.delta[x]
            for i, j in zip(*np.nonzero(m)):
                lines.append(
                    f'  {_node(a.labels[i])}->{_node(a.labels[j])} [label="{x}/{format_degree(m[i, j])}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
