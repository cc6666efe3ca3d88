"""Graphviz DOT rendering of OCNs, sorted so output is byte-stable."""

from __future__ import annotations

from .core import Ocn


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(ocn: Ocn, name: str = "ocn") -> str:
    """One node per state, one edge per transition labelled ``"symbol, effect"``.

    Accepting states are double circles; initial states are drawn bold.
    """
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for q in sorted(ocn.states):
        attrs = [f"shape={'doublecircle' if q in ocn.accepting else 'circle'}"]
        if q in ocn.initials:
            attrs.append("style=bold")
        lines.append(f"  {_quote(q)} [{', '.join(attrs)}];")
    for src, sym, eff, dst in sorted(ocn.transitions):
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(f'{sym}, {eff}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
