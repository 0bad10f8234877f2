"""Canonical forms and isomorphism for small graphs and digraphs.

Colour refinement seeded by degree (graphs) or (indegree, outdegree)
(digraphs), then individualise-and-refine over the smallest non-singleton
colour class. Among all leaves the lexicographically smallest relabelled
adjacency matrix is kept. Branches on interchangeable twin vertices are
skipped, since swapping two twins is an automorphism fixing everything
already individualised.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .graphs import Digraph, Graph, bits


@dataclass(frozen=True, order=True)
class CanonicalForm:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __repr__(self) -> str:
        return f"CanonicalForm({self.data.hex()})"


def _refine(colors: list[int], rows_out: Sequence[int], rows_in: Sequence[int] | None) -> list[int]:
    """Stable refinement; colour ids are ranks of label-free signatures."""
    n = len(colors)
    while True:
        sigs = []
        for v in range(n):
            outs = tuple(sorted(colors[u] for u in bits(rows_out[v])))
            ins = tuple(sorted(colors[u] for u in bits(rows_in[v]))) if rows_in is not None else ()
            sigs.append((colors[v], outs, ins))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def _individualize(colors: list[int], v: int) -> list[int]:
    # v gets a fresh colour just below its class; ranks stay label-free
    return [2 * c + (0 if u == v else 1) if c == colors[v] else 2 * c + 1 for u, c in enumerate(colors)]


def _code(order: Sequence[int], rows: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sum(1 << pos[u] for u in bits(rows[v])) for v in order)


def _twins(rows_out: Sequence[int], rows_in: Sequence[int] | None) -> list[int]:
    """twin_mask[v]: vertices that may be swapped with v by an automorphism."""
    n = len(rows_out)
    masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            bu, bv = 1 << u, 1 << v
            if rows_out[u] & ~bv != rows_out[v] & ~bu:
                continue
            if rows_in is not None:
                if rows_in[u] & ~bv != rows_in[v] & ~bu:
                    continue
                if bool(rows_out[u] & bv) != bool(rows_out[v] & bu):
                    continue
            masks[u] |= bv
            masks[v] |= bu
    return masks


def _search(rows_out: tuple[int, ...], rows_in: tuple[int, ...] | None, seed: list[int]):
    twins = _twins(rows_out, rows_in)
    best_code: tuple[int, ...] | None = None
    best_order: list[int] = []

    def visit(colors: list[int]) -> None:
        nonlocal best_code, best_order
        colors = _refine(colors, rows_out, rows_in)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1 and (target is None or len(cells[c]) < len(target)):
                target = cells[c]
        if target is None:
            order = sorted(range(len(colors)), key=colors.__getitem__)
            code = _code(order, rows_out)
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            return
        tried = 0
        for v in target:
            if twins[v] & tried:
                continue
            tried |= 1 << v
            visit(_individualize(colors, v))

    visit(seed)
    return best_code, best_order


@lru_cache(maxsize=1 << 16)
def _graph_label(n: int, adj: tuple[int, ...]):
    seed = [bin(r).count("1") for r in adj]
    return _search(adj, None, seed)


@lru_cache(maxsize=1 << 16)
def _digraph_label(n: int, out: tuple[int, ...], inn: tuple[int, ...]):
    seed_keys = [(bin(i).count("1"), bin(o).count("1")) for i, o in zip(inn, out)]
    ranking = {k: r for r, k in enumerate(sorted(set(seed_keys)))}
    return _search(out, inn, [ranking[k] for k in seed_keys])


def _labeling(x: Union[Graph, Digraph]) -> tuple[tuple[int, ...], list[int]]:
    if isinstance(x, Graph):
        return _graph_label(x.n, x.adj)
    return _digraph_label(x.n, x.out, x.inn)


def canonical_form(x: Union[Graph, Digraph]) -> CanonicalForm:
    """Isomorphism-complete invariant; equal forms iff isomorphic."""
    code, _ = _labeling(x)
    kind = b"G" if isinstance(x, Graph) else b"D"
    width = (x.n + 7) // 8
    body = b"".join(row.to_bytes(width, "big") for row in code)
    return CanonicalForm(kind + bytes([x.n]) + body)


def canonical_labeling(x: Union[Graph, Digraph]) -> list[int]:
    """``order[i]`` is the vertex placed at canonical position ``i``."""
    return list(_labeling(x)[1])


def are_isomorphic(a: Union[Graph, Digraph], b: Union[Graph, Digraph]) -> Optional[list[int]]:
    """A vertex map ``m`` with ``a.relabel(m) == b``, or None."""
    if type(a) is not type(b):
        raise TypeError("cannot compare a graph with a digraph")
    if a.n != b.n:
        return None
    code_a, order_a = _labeling(a)
    code_b, order_b = _labeling(b)
    if code_a != code_b:
        return None
    mapping = [0] * a.n
    for va, vb in zip(order_a, order_b):
        mapping[va] = vb
    if a.relabel(mapping) != b:
        raise AssertionError("canonical labelling produced a non-isomorphism")
    return mapping
