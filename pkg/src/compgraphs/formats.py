"""Text formats: graph6, digraph6, edge lists and DOT (write only)."""
from __future__ import annotations

from typing import Optional, Sequence, Union

from .graphs import MAX_VERTICES, Digraph, Graph

GRAPH6_HEADER = ">>graph6<<"
DIGRAPH6_HEADER = ">>digraph6<<"


class FormatError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset
        self.message = message


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _decode_n(s: str, pos: int) -> tuple[int, int]:
    def val(i: int) -> int:
        if i >= len(s):
            raise FormatError("truncated vertex count", i)
        c = ord(s[i]) - 63
        if not 0 <= c <= 63:
            raise FormatError(f"invalid character {s[i]!r}", i)
        return c

    if val(pos) < 63:
        return val(pos), pos + 1
    if pos + 1 < len(s) and s[pos + 1] == "~":
        width, start = 6, pos + 2
    else:
        width, start = 3, pos + 1
    n = 0
    for i in range(start, start + width):
        n = (n << 6) | val(i)
    return n, start + width


def _pack(bitlist: Sequence[int]) -> str:
    out = []
    for i in range(0, len(bitlist), 6):
        chunk = list(bitlist[i:i + 6]) + [0] * (6 - len(bitlist[i:i + 6]))
        out.append(chr(int("".join(map(str, chunk)), 2) + 63))
    return "".join(out)


def _unpack(s: str, pos: int, nbits: int) -> list[int]:
    need = (nbits + 5) // 6
    if len(s) - pos != need:
        raise FormatError(f"expected {need} data bytes, found {len(s) - pos}", min(len(s), pos + need))
    result = []
    for i in range(pos, len(s)):
        c = ord(s[i]) - 63
        if not 0 <= c <= 63:
            raise FormatError(f"invalid character {s[i]!r}", i)
        result.extend((c >> (5 - b)) & 1 for b in range(6))
    if any(result[nbits:]):
        raise FormatError("nonzero padding bits", len(s) - 1)
    return result[:nbits]


def _check_n(n: int, offset: int) -> None:
    if n < 1 or n > MAX_VERTICES:
        raise FormatError(f"vertex count {n} outside 1..{MAX_VERTICES}", offset)


def to_graph6(g: Graph) -> str:
    bitlist = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    return _encode_n(g.n) + _pack(bitlist)


def from_graph6(line: str) -> Graph:
    s = line.rstrip("\r\n")
    pos = len(GRAPH6_HEADER) if s.startswith(GRAPH6_HEADER) else 0
    n, pos = _decode_n(s, pos)
    _check_n(n, pos - 1)
    bitlist = _unpack(s, pos, n * (n - 1) // 2)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    return Graph.from_edges(n, [p for p, b in zip(pairs, bitlist) if b])


def to_digraph6(d: Digraph) -> str:
    bitlist = [int(d.has_arc(i, j)) for i in range(d.n) for j in range(d.n)]
    return "&" + _encode_n(d.n) + _pack(bitlist)


def from_digraph6(line: str) -> Digraph:
    s = line.rstrip("\r\n")
    pos = len(DIGRAPH6_HEADER) if s.startswith(DIGRAPH6_HEADER) else 0
    if pos >= len(s) or s[pos] != "&":
        raise FormatError("digraph6 must start with '&'", pos)
    n, pos = _decode_n(s, pos + 1)
    _check_n(n, pos - 1)
    bitlist = _unpack(s, pos, n * n)
    arcs = [(i, j) for i in range(n) for j in range(n) if bitlist[i * n + j]]
    if any(i == j for i, j in arcs):
        raise FormatError("digraph6 loops are not supported", pos)
    return Digraph.from_arcs(n, arcs)


def to_edge_list(x: Union[Graph, Digraph]) -> str:
    if isinstance(x, Graph):
        lines = [f"n {x.n}"] + [f"{u} {v}" for u, v in x.edges()]
    else:
        lines = [f"n {x.n} directed"] + [f"{u} -> {v}" for u, v in x.arcs()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Union[Graph, Digraph]:
    """Header ``n <count>`` then one pair per line; ``#`` starts a comment.

    Pairs written ``u -> v`` make the result a digraph; mixing styles is an error.
    A header ``n <count> directed`` marks a digraph even when it has no arcs.
    """
    n: Optional[int] = None
    pairs: list[tuple[int, int]] = []
    directed: Optional[bool] = None
    offset = 0
    for raw in text.splitlines(keepends=True):
        start = offset
        offset += len(raw.encode())
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            head = line.split()
            if not (2 <= len(head) <= 3 and head[0] == "n" and head[1].isdigit()) or head[2:] not in ([], ["directed"]):
                raise FormatError("expected header 'n <count>' or 'n <count> directed'", start)
            n = int(head[1])
            if len(head) == 3:
                directed = True
            _check_n(n, start)
            continue
        arrow = "->" in line
        tokens = line.replace("->", " ").split()
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise FormatError(f"malformed pair {line!r}", start)
        if directed is not None and directed != arrow:
            raise FormatError("mixed directed and undirected pairs", start)
        directed = arrow
        u, v = int(tokens[0]), int(tokens[1])
        if u >= n or v >= n or u == v:
            raise FormatError(f"bad pair {u} {v} for n={n}", start)
        pairs.append((u, v))
    if n is None:
        raise FormatError("empty input", 0)
    if directed:
        return Digraph.from_arcs(n, pairs)
    return Graph.from_edges(n, pairs)


def parse_text(text: str) -> Union[Graph, Digraph]:
    """Sniff the format: digraph6, edge list, or graph6 (first non-blank line)."""
    stripped = text.lstrip()
    lead = len(text.encode()) - len(stripped.encode())
    if not stripped:
        raise FormatError("empty input", 0)
    first = stripped.splitlines()[0].strip()
    if first.split()[0] == "n":
        return from_edge_list(text)
    if len(stripped.split()) != 1:
        token = stripped.split()[0]
        raise FormatError("trailing data after a single graph6/digraph6 line", lead + len(token.encode()))
    try:
        if first.startswith("&") or first.startswith(DIGRAPH6_HEADER):
            return from_digraph6(first)
        return from_graph6(first)
    except FormatError as e:
        raise FormatError(e.message, e.offset + lead) from None


def format_of(x: Union[Graph, Digraph]) -> str:
    return to_graph6(x) if isinstance(x, Graph) else to_digraph6(x)


def to_dot(x: Union[Graph, Digraph], part_of: Optional[Sequence[int]] = None, name: str = "G") -> str:
    """DOT text; each partite set becomes a same-rank cluster."""
    directed = isinstance(x, Digraph)
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    if part_of is not None:
        for p in sorted(set(part_of)):
            members = " ".join(str(v) for v in range(x.n) if part_of[v] == p)
            lines.append(f"  subgraph cluster_{p} {{ rank=same; label=\"V{p + 1}\"; {members}; }}")
    else:
        lines.extend(f"  {v};" for v in range(x.n))
    pairs = x.arcs() if directed else x.edges()
    op = "->" if directed else "--"
    lines.extend(f"  {u} {op} {v};" for u, v in pairs)
    lines.append("}")
    return "\n".join(lines) + "\n"
