"""Analysis of omega Petri nets: Karp-Miller trees, termination, coverability,
reductions and length bounds."""

import json as _json

from ._wpn import (
    BudgetExceeded,
    Net,
    ParseError,
    UnsupportedArcs,
    UnsupportedNet,
    UsageError,
    WellFormednessError,
    coverability_set,
    kmtree_dot,
    reduce,
)
from . import _wpn

__all__ = [
    "Net", "parse", "load", "check", "kmtree", "kmtree_dot", "coverability_set",
    "reduce", "explore", "bounds", "ParseError", "WellFormednessError", "UsageError",
    "UnsupportedArcs", "UnsupportedNet", "BudgetExceeded",
]


def parse(text):
    return Net.parse(text)


def load(path):
    with open(path, encoding="utf-8") as f:
        return Net.parse(f.read())


def check(net, problem, budget=10, timing=True):
    """Verdict report for one problem, e.g. "termination" or "cover=p2=1"."""
    return _json.loads(_wpn.check(net, problem, budget, timing))


def kmtree(net):
    return _json.loads(_wpn.kmtree(net))


def explore(net, depth=6, cap=2, max_states=200000, threads=1):
    return _json.loads(_wpn.explore(net, depth, cap, max_states, threads))


def bounds(net, c=2):
    return _json.loads(_wpn.bounds(net, c))
