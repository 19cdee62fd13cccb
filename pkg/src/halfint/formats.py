"""Line-oriented text formats for the problem families.

Every file starts with a ``p <family> ...`` header; ``#`` starts a
comment.  Vertex ids are 1-based in files and 0-based in memory; domain
values, colours and group elements are written as they are stored.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .constraints import CyclicGroup, TableGroup
from .problems import (
    GroupFVS, MonoOrientableDeletion, NodeMultiwayCut, NodeUniqueLabelCover,
    NonMonoCycleTransversal, SubsetFVS, SubsetPseudoforestDeletion, TwoFanDeletion,
    ZeroOneAll,
)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int, source: str = "<input>") -> None:
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _lines(text: str):
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            toks.append(_Tok(body[i:j], ln, i + 1))
            i = j
        if toks:
            yield toks


class _Reader:
    def __init__(self, text: str, source: str) -> None:
        self.rows = list(_lines(text))
        self.source = source

    def fail(self, tok: _Tok, msg: str):
        raise ParseError(msg, tok.line, tok.col, self.source)

    def int(self, tok: _Tok, lo: int | None = None, hi: int | None = None) -> int:
        try:
            v = int(tok.text)
        except ValueError:
            self.fail(tok, f"expected an integer, got {tok.text!r}")
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            self.fail(tok, f"value {v} outside [{lo}, {hi}]")
        return v

    def vertex(self, tok: _Tok, n: int) -> int:
        return self.int(tok, 1, n) - 1

    def arity(self, row, k: int, what: str) -> None:
        if len(row) != k:
            self.fail(row[0], f"'{what}' line needs {k - 1} fields, got {len(row) - 1}")


def parse(text: str, source: str = "<input>", base_dir: str | None = None):
    """Parse an instance file's contents into a problem object."""
    rd = _Reader(text, source)
    if not rd.rows:
        raise ParseError("empty input", 1, 1, source)
    head, body = rd.rows[0], rd.rows[1:]
    if head[0].text != "p" or len(head) < 3:
        rd.fail(head[0], "first line must be 'p <family> ...'")
    fam = head[1].text
    if fam in ("tfd", "zoa"):
        rd.arity(head, 3, "p")
        return _parse_domains(rd, fam, rd.int(head[2], 0), body)
    if len(head) < 4:
        rd.fail(head[0], "header needs vertex and edge counts")
    n, m = rd.int(head[2], 0), rd.int(head[3], 0)
    extra = head[4:]
    edges = []
    terms = []
    group = None
    width = {"mwc": 3, "sfvs": 4, "spd": 4, "nmct": 4, "mod": 4, "gfvs": 4}.get(fam)
    if fam == "nulc":
        if len(extra) != 1:
            rd.fail(head[0], "nulc header is 'p nulc n m sigma'")
        sigma = rd.int(extra[0], 1)
        width = 3 + sigma
    elif fam == "gfvs":
        group = _parse_group(rd, head, extra, base_dir)
    elif width is None:
        rd.fail(head[1], f"unknown family {fam!r}")
    elif extra:
        rd.fail(extra[0], "unexpected header field")
    for row in body:
        key = row[0].text
        if fam == "mwc" and key == "t":
            rd.arity(row, 2, "t")
            terms.append(rd.vertex(row[1], n))
            continue
        if key != "e":
            rd.fail(row[0], f"unexpected line type {key!r}")
        rd.arity(row, width, "e")
        u, v = rd.vertex(row[1], n), rd.vertex(row[2], n)
        if fam == "mwc":
            edges.append((u, v))
        elif fam in ("sfvs", "spd"):
            edges.append((u, v, bool(rd.int(row[3], 0, 1))))
        elif fam in ("nmct", "mod"):
            edges.append((u, v, rd.int(row[3])))
        elif fam == "gfvs":
            lab = rd.int(row[3])
            if lab not in group.elements():
                rd.fail(row[3], f"{lab} is not a group element")
            edges.append((u, v, lab))
        else:
            table = tuple(rd.int(t, 0, sigma - 1) for t in row[3:])
            if sorted(table) != list(range(sigma)):
                rd.fail(row[3], "permutation is not a bijection")
            edges.append((u, v, table))
    if len(edges) != m:
        rd.fail(head[3], f"header says {m} edges, found {len(edges)}")
    if fam == "mwc":
        if len(set(terms)) != len(terms):
            rd.fail(head[1], "repeated terminal")
        return NodeMultiwayCut(n, edges, terms)
    if fam == "sfvs":
        return SubsetFVS(n, edges)
    if fam == "spd":
        return SubsetPseudoforestDeletion(n, edges)
    if fam == "nmct":
        return NonMonoCycleTransversal(n, edges)
    if fam == "mod":
        return MonoOrientableDeletion(n, edges)
    if fam == "gfvs":
        return GroupFVS(n, group, edges)
    return NodeUniqueLabelCover(n, sigma, edges)


def _parse_group(rd: _Reader, head, extra, base_dir):
    if len(extra) != 2 or extra[0].text not in ("zq", "table"):
        rd.fail(head[0], "gfvs header is 'p gfvs n m zq q' or 'p gfvs n m table <file>'")
    if extra[0].text == "zq":
        return CyclicGroup(rd.int(extra[1], 1))
    path = extra[1].text
    full = path if os.path.isabs(path) or base_dir is None else os.path.join(base_dir, path)
    try:
        with open(full) as fh:
            rows = [[int(x) for x in ln.split("#", 1)[0].split()] for ln in fh]
    except OSError as e:
        rd.fail(extra[1], f"cannot read group table: {e.strerror}")
    except ValueError:
        rd.fail(extra[1], "group table must hold integers")
    try:
        g = TableGroup([r for r in rows if r])
    except ValueError as e:
        rd.fail(extra[1], str(e))
    g.path = path
    return g


def _parse_domains(rd: _Reader, fam: str, n: int, body):
    dom: list[int | None] = [None] * n
    fans, perms, assign = [], [], {}
    later = []
    for row in body:
        key = row[0].text
        if key == "d":
            rd.arity(row, 3, "d")
            v = rd.vertex(row[1], n)
            if dom[v] is not None:
                rd.fail(row[1], "domain given twice")
            dom[v] = rd.int(row[2], 1)
        elif key == "fan" or (fam == "zoa" and key in ("perm", "a")):
            later.append(row)
        else:
            rd.fail(row[0], f"unexpected line type {key!r}")
    for v, d in enumerate(dom):
        if d is None:
            raise ParseError(f"vertex {v + 1} has no domain line", 1, 1, rd.source)
    for row in later:
        key = row[0].text
        if key == "fan":
            rd.arity(row, 5, "fan")
            u, v = rd.vertex(row[1], n), rd.vertex(row[2], n)
            fans.append((u, v, rd.int(row[3], 0, dom[u] - 1), rd.int(row[4], 0, dom[v] - 1)))
        elif key == "perm":
            u, v = rd.vertex(row[1], n), rd.vertex(row[2], n)
            if dom[u] != dom[v]:
                rd.fail(row[2], "permutation needs equal domains")
            rd.arity(row, 3 + dom[u], "perm")
            table = tuple(rd.int(t, 0, dom[v] - 1) for t in row[3:])
            if sorted(table) != list(range(dom[u])):
                rd.fail(row[3], "permutation is not a bijection")
            perms.append((u, v, table))
        else:
            rd.arity(row, 3, "a")
            v = rd.vertex(row[1], n)
            if v in assign:
                rd.fail(row[1], "vertex assigned twice")
            assign[v] = rd.int(row[2], 0, dom[v] - 1)
    if fam == "tfd":
        return TwoFanDeletion(dom, fans)
    seen = set()
    for u, v, *_ in perms + fans:
        key = (min(u, v), max(u, v))
        if u != v and key in seen:
            raise ParseError(f"two constraints on pair {u + 1} {v + 1}", 1, 1, rd.source)
        seen.add(key)
    return ZeroOneAll(dom, perms, fans, assign)


def load(path: str):
    with open(path) as fh:
        text = fh.read()
    return parse(text, path, os.path.dirname(os.path.abspath(path)))


def dump(problem) -> str:
    """Text form of a problem; ``parse(dump(p))`` gives ``p`` back."""
    fam = problem.family
    out = []
    if fam in ("tfd", "zoa"):
        out.append(f"p {fam} {problem.n}")
        out += [f"d {v + 1} {d}" for v, d in enumerate(problem.domains)]
        if fam == "zoa":
            out += [f"perm {u + 1} {v + 1} " + " ".join(map(str, t)) for u, v, t in problem.perms]
        out += [f"fan {u + 1} {v + 1} {a} {b}" for u, v, a, b in problem.fans]
        if fam == "zoa":
            out += [f"a {v + 1} {a}" for v, a in sorted(problem.assignment.items())]
        return "\n".join(out) + "\n"
    head = f"p {fam} {problem.n} {len(problem.edges)}"
    if fam == "nulc":
        head += f" {problem.sigma}"
    elif fam == "gfvs":
        g = problem.group
        if isinstance(g, CyclicGroup):
            head += f" zq {g.q}"
        elif getattr(g, "path", None):
            head += f" table {g.path}"
        else:
            raise ValueError("only cyclic groups and file-backed tables can be written")
    out.append(head)
    if fam == "mwc":
        out += [f"t {t + 1}" for t in problem.terminals]
        out += [f"e {u + 1} {v + 1}" for u, v in problem.edges]
    elif fam == "nulc":
        out += [f"e {u + 1} {v + 1} " + " ".join(map(str, t)) for u, v, t in problem.edges]
    else:
        out += [f"e {u + 1} {v + 1} {int(x)}" for u, v, x in problem.edges]
    return "\n".join(out) + "\n"
