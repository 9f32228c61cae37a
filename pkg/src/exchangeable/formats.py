"""Plain-text file formats for graphons, graphs, partitions, feature allocations, floorplans and arrays.

Every format may start with ``#`` comment lines; writers use them to record
the resolved run configuration (``# config: {...}``) and readers skip them.
Reals are written with 17 significant digits so that a write/read round trip
is exact.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import FormatError, ValidationError
from .graphons import StepGraphon
from .structures import FeatureAllocation, Graph, Partition


def real(x) -> str:
    return format(float(x), ".17g")


def config_header(config: dict | None) -> str:
    if config is None:
        return ""
    return "# config: " + json.dumps(config, sort_keys=True, separators=(",", ":")) + "\n"


def write_text(path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _lines(text: str, source: str):
    """Non-comment lines as (1-based line number, content)."""
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        if line.startswith("#"):
            continue
        out.append((no, line))
    if not out:
        raise FormatError(source, 1, 1, "empty file")
    return out


def _header(lines, source, keyword, nfields):
    no, line = lines[0]
    toks = line.split()
    if not toks or toks[0] != keyword or len(toks) != nfields + 1:
        raise FormatError(source, no, 1, f"expected header '{keyword}' with {nfields} fields")
    vals = []
    for t in toks[1:]:
        try:
            v = int(t)
        except ValueError:
            raise FormatError(source, no, line.index(t) + 1, f"header field {t!r} is not an integer") from None
        if v < 0:
            raise FormatError(source, no, line.index(t) + 1, f"header field {t!r} is negative")
        vals.append(v)
    return vals


def _columns(line):
    """Tokens with their 1-based start columns."""
    out, pos = [], 0
    for t in line.split():
        pos = line.index(t, pos)
        out.append((t, pos + 1))
        pos += len(t)
    return out


def _ints(no, line, source, count=None):
    toks = _columns(line)
    if count is not None and len(toks) != count:
        raise FormatError(source, no, 1, f"expected {count} fields, found {len(toks)}")
    vals = []
    for t, col in toks:
        try:
            vals.append(int(t))
        except ValueError:
            raise FormatError(source, no, col, f"{t!r} is not an integer") from None
    return vals


def _reals(no, line, source, count=None):
    toks = _columns(line)
    if count is not None and len(toks) != count:
        raise FormatError(source, no, 1, f"expected {count} values, found {len(toks)}")
    vals = []
    for t, col in toks:
        try:
            vals.append(float(t))
        except ValueError:
            raise FormatError(source, no, col, f"{t!r} is not a number") from None
    return vals


def _read(path) -> tuple[str, str]:
    return Path(path).read_text(), str(path)


# graphon grid


def format_graphon_grid(w: StepGraphon, config=None) -> str:
    rows = [" ".join(real(v) for v in row) for row in w.values]
    return (config_header(config) + f"graphon-grid {w.k} {int(w.symmetric)}\n"
            + "".join(r + "\n" for r in rows))


def parse_graphon_grid(text: str, source: str = "<string>") -> StepGraphon:
    lines = _lines(text, source)
    k, sym = _header(lines, source, "graphon-grid", 2)
    if k < 1:
        raise FormatError(source, lines[0][0], 1, "grid needs k >= 1")
    if sym not in (0, 1):
        raise FormatError(source, lines[0][0], 1, "symmetric flag must be 0 or 1")
    if len(lines) != k + 1:
        raise FormatError(source, lines[-1][0], 1, f"expected {k} grid rows, found {len(lines) - 1}")
    vals = np.empty((k, k))
    for i, (no, line) in enumerate(lines[1:]):
        vals[i] = _reals(no, line, source, k)
        for j, (t, col) in enumerate(_columns(line)):
            if not 0.0 <= vals[i, j] <= 1.0:
                raise FormatError(source, no, col, f"entry ({i}, {j}) = {t} outside [0, 1]")
    if sym == 1:
        bad = np.argwhere(vals != vals.T)
        if len(bad):
            i, j = bad[0]
            raise ValidationError(f"{source}: grid declared symmetric but values[{i}][{j}] != values[{j}][{i}]")
    return StepGraphon(vals, bool(np.array_equal(vals, vals.T)))


def read_graphon_grid(path) -> StepGraphon:
    return parse_graphon_grid(*_read(path))


# graphs


def format_edgelist(g: Graph, config=None) -> str:
    e = g.edges()
    return (config_header(config) + f"graph {g.n} {len(e)}\n"
            + "".join(f"{i} {j}\n" for i, j in e))


def parse_edgelist(text: str, source: str = "<string>") -> Graph:
    lines = _lines(text, source)
    n, m = _header(lines, source, "graph", 2)
    if len(lines) != m + 1:
        raise FormatError(source, lines[-1][0], 1, f"expected {m} edges, found {len(lines) - 1}")
    edges = []
    seen = set()
    for no, line in lines[1:]:
        i, j = _ints(no, line, source, 2)
        if not 0 <= i < j < n:
            raise FormatError(source, no, 1, f"edge ({i}, {j}) violates 0 <= i < j < {n}")
        if (i, j) in seen:
            raise FormatError(source, no, 1, f"edge ({i}, {j}) repeated")
        seen.add((i, j))
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def read_edgelist(path) -> Graph:
    return parse_edgelist(*_read(path))


# partitions and feature allocations


def format_partition(p: Partition, config=None) -> str:
    return (config_header(config) + f"partition {p.n} {p.num_blocks}\n"
            + " ".join(str(int(b)) for b in p.labels) + "\n")


def parse_partition(text: str, source: str = "<string>") -> Partition:
    lines = _lines(text, source)
    n, B = _header(lines, source, "partition", 2)
    body = lines[1:]
    labels = _ints(body[0][0], body[0][1], source, n) if body else []
    if len(body) > 1 or len(labels) != n:
        raise FormatError(source, lines[0][0], 1, f"expected one line of {n} labels")
    p = Partition(np.array(labels, dtype=np.int64))
    if p.num_blocks != B:
        raise FormatError(source, body[0][0] if body else 1, 1, f"header declares {B} blocks, labels use {p.num_blocks}")
    return p


def read_partition(path) -> Partition:
    return parse_partition(*_read(path))


def format_features(f: FeatureAllocation, config=None) -> str:
    body = "".join(" ".join(str(int(k)) for k in np.flatnonzero(row)) + "\n" for row in f.Z)
    return config_header(config) + f"features {f.n} {f.num_features}\n" + body


def parse_features(text: str, source: str = "<string>") -> FeatureAllocation:
    raw = text.splitlines()
    lines = [(no, line) for no, line in enumerate(raw, 1) if not line.startswith("#")]
    if not lines:
        raise FormatError(source, 1, 1, "empty file")
    n, K = _header(lines, source, "features", 2)
    if len(lines) != n + 1:
        raise FormatError(source, lines[-1][0], 1, f"expected {n} element lines, found {len(lines) - 1}")
    Z = np.zeros((n, K), dtype=bool)
    for i, (no, line) in enumerate(lines[1:]):
        for k in _ints(no, line, source):
            if not 0 <= k < K:
                raise FormatError(source, no, 1, f"feature id {k} outside 0..{K - 1}")
            Z[i, k] = True
    return FeatureAllocation(Z)


def read_features(path) -> FeatureAllocation:
    return parse_features(*_read(path))


# floorplans


def format_floorplan(rectangles, psi=None, config=None) -> str:
    out = []
    for j, rect in enumerate(rectangles):
        fields = [real(v) for v in rect]
        if psi is not None:
            fields.append(real(psi[j]))
        out.append(" ".join(fields) + "\n")
    return config_header(config) + "".join(out)


def parse_floorplan(text: str, source: str = "<string>"):
    """Rectangles (x0, x1, y0, y1) and the psi values (None when absent)."""
    lines = _lines(text, source)
    rects, psi = [], []
    width = None
    for no, line in lines:
        vals = _reals(no, line, source)
        if len(vals) not in (4, 5) or (width is not None and len(vals) != width):
            raise FormatError(source, no, 1, "rectangle lines hold 'x0 x1 y0 y1' or 'x0 x1 y0 y1 psi' consistently")
        width = len(vals)
        if not (vals[0] < vals[1] and vals[2] < vals[3]):
            raise FormatError(source, no, 1, "degenerate rectangle")
        rects.append(tuple(vals[:4]))
        if width == 5:
            psi.append(vals[4])
    return rects, (np.array(psi) if width == 5 else None)


def read_floorplan(path):
    return parse_floorplan(*_read(path))


# arrays


def format_array_csv(X, config=None) -> str:
    """``shape,<n1>,...,<nd>`` then the array flattened to (n1, n2*...*nd) rows, row-major."""
    X = np.asarray(X)
    if X.ndim < 1:
        raise ValidationError("array output needs at least one dimension")
    flat = X.reshape(X.shape[0], -1)
    if X.dtype.kind == "f":
        cell = real
    elif X.dtype.kind in "iub":
        cell = lambda v: str(int(v))  # noqa: E731
    else:
        raise ValidationError(f"cannot write arrays of dtype {X.dtype}")
    body = "".join(",".join(cell(v) for v in row) + "\n" for row in flat)
    return config_header(config) + "shape," + ",".join(str(s) for s in X.shape) + "\n" + body


def parse_array_csv(text: str, source: str = "<string>") -> np.ndarray:
    lines = _lines(text, source)
    no, head = lines[0]
    toks = head.split(",")
    if toks[0] != "shape":
        raise FormatError(source, no, 1, "expected 'shape,<n1>,...' header")
    try:
        shape = tuple(int(t) for t in toks[1:])
    except ValueError:
        raise FormatError(source, no, 7, "shape entries must be integers") from None
    if not shape or len(lines) - 1 != shape[0]:
        raise FormatError(source, no, 1, f"expected {shape[0] if shape else 0} data rows")
    width = int(np.prod(shape[1:], dtype=np.int64))
    is_int = all("." not in c and "e" not in c.lower() and "n" not in c.lower()
                 for _, line in lines[1:] for c in line.split(","))
    rows = []
    for no, line in lines[1:]:
        cells = line.split(",")
        if len(cells) != width:
            raise FormatError(source, no, 1, f"expected {width} cells, found {len(cells)}")
        try:
            rows.append([int(c) if is_int else float(c) for c in cells])
        except ValueError as exc:
            raise FormatError(source, no, 1, str(exc)) from None
    return np.array(rows, dtype=np.int64 if is_int else float).reshape(shape)


def read_array_csv(path) -> np.ndarray:
    return parse_array_csv(*_read(path))


# images


def format_pgm(w, comment: str | None = None) -> str:
    """Plain (P2) 8-bit grey map of a step graphon or matrix; 0 maps to 0 and 1 to 255.

    Row 0 of the image is block row 0 of the values, as in an adjacency-matrix plot.
    """
    vals = w.values if isinstance(w, StepGraphon) else np.asarray(w, dtype=float)
    pix = np.clip(np.rint(vals * 255.0), 0, 255).astype(np.int64)
    h, wd = pix.shape
    head = "P2\n" + (f"# {comment}\n" if comment else "") + f"{wd} {h}\n255\n"
    return head + "".join(" ".join(str(v) for v in row) + "\n" for row in pix)
