"""CSV and JSON serialization of fields, profiles and beam ensembles.

State CSV: one row per node, `lambda,re,im`, preceded by a comment header
`# rep=F|G n_half=<int> h=<float>`.  Spectral CSV: `kappa,re,im` with
header `# dk=<float>`.  Multi-component fields use the same layout with
`components=<n>` in the header and re/im column pairs per component.
Beam ensembles are JSON: {"beams": [{"direction": [x,y,z],
"kappa": [...], "re": [...], "im": [...]}]}.

Floats are written with repr (shortest round-trip), so identical data
serializes byte-identically.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .grids import (AxialField, SpectralProfile, make_grid,
                    make_spectral_grid)
from .relativity import BeamState


class FileFormatError(ValueError):
    """Malformed input file; message carries path and line number."""


def _fmt(x: float) -> str:
    return repr(float(x))


def write_state_csv(fld: AxialField, path):
    grid = fld.grid
    rep = "F" if fld.rep == "f" else "G"
    lines = [f"# rep={rep} n_half={grid.n_half} h={_fmt(grid.h)}",
             "lambda,re,im"]
    for lam, v in zip(grid.nodes, fld.values):
        lines.append(f"{_fmt(lam)},{_fmt(v.real)},{_fmt(v.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_components_csv(fields: list[AxialField], path):
    """Several same-grid components in one file (spinor, vector fields)."""
    grid = fields[0].grid
    rep = "F" if fields[0].rep == "f" else "G"
    n = len(fields)
    cols = ",".join(f"re{i + 1},im{i + 1}" for i in range(n))
    lines = [f"# rep={rep} n_half={grid.n_half} h={_fmt(grid.h)} components={n}",
             f"lambda,{cols}"]
    for j, lam in enumerate(grid.nodes):
        row = [_fmt(lam)]
        for f in fields:
            row += [_fmt(f.values[j].real), _fmt(f.values[j].imag)]
        lines.append(",".join(row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


_STATE_HEADER = re.compile(
    r"#\s*rep=(?P<rep>[FG])\s+n_half=(?P<n>\d+)\s+h=(?P<h>[^\s]+)"
    r"(?:\s+components=(?P<c>\d+))?\s*$")
_SPECTRAL_HEADER = re.compile(r"#\s*dk=(?P<dk>[^\s]+)\s*$")


def _read_lines(path):
    with open(path) as fh:
        return fh.read().splitlines()


def _parse_floats(path, lineno, line, expected):
    parts = line.split(",")
    if len(parts) != expected:
        raise FileFormatError(
            f"{path}:{lineno}: expected {expected} columns, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise FileFormatError(f"{path}:{lineno}: {exc}") from None


def _read_table(path, header_re, expected_cols_fn):
    lines = _read_lines(path)
    if not lines:
        raise FileFormatError(f"{path}:1: empty file")
    m = header_re.match(lines[0])
    if m is None:
        raise FileFormatError(f"{path}:1: malformed header {lines[0]!r}")
    meta = m.groupdict()
    ncols = expected_cols_fn(meta)
    start = 1
    if start < len(lines) and lines[start].lstrip().startswith(("lambda", "kappa")):
        start += 1
    rows = []
    for i, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        rows.append(_parse_floats(path, i, line, ncols))
    return meta, np.array(rows)


def read_state_csv(path) -> AxialField | list[AxialField]:
    """Read a state CSV; returns a list when the file has several components."""
    meta, data = _read_table(
        path, _STATE_HEADER,
        lambda m: 1 + 2 * (int(m["c"]) if m["c"] else 1))
    n_half = int(meta["n"])
    h = float(meta["h"])
    grid = make_grid(n_half, n_half * h)
    if data.shape[0] != grid.size:
        raise FileFormatError(
            f"{path}: expected {grid.size} rows, found {data.shape[0]}")
    if np.max(np.abs(data[:, 0] - grid.nodes)) > 1e-9 * grid.h:
        raise FileFormatError(f"{path}: lambda column does not match the "
                              "half-offset grid declared in the header")
    rep = "f" if meta["rep"] == "F" else "g"
    n_comp = int(meta["c"]) if meta["c"] else 1
    fields = [AxialField(grid, rep, data[:, 1 + 2 * i] + 1j * data[:, 2 + 2 * i])
              for i in range(n_comp)]
    return fields[0] if n_comp == 1 else fields


def write_spectral_csv(profile: SpectralProfile, path):
    sg = profile.grid
    lines = [f"# dk={_fmt(sg.dk)}", "kappa,re,im"]
    for kap, v in zip(sg.nodes, profile.values):
        lines.append(f"{_fmt(kap)},{_fmt(v.real)},{_fmt(v.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_spectral_csv(path) -> SpectralProfile:
    meta, data = _read_table(path, _SPECTRAL_HEADER, lambda m: 3)
    dk = float(meta["dk"])
    if data.shape[0] % 2 != 0:
        raise FileFormatError(f"{path}: kappa node count must be even")
    sg = make_spectral_grid(data.shape[0] // 2, dk)
    if np.max(np.abs(data[:, 0] - sg.nodes)) > 1e-9 * dk:
        raise FileFormatError(f"{path}: kappa column does not match the "
                              "half-offset grid declared in the header")
    return SpectralProfile(sg, data[:, 1] + 1j * data[:, 2])


def write_beams_json(beams, path):
    payload = {"beams": [{
        "direction": [float(x) for x in b.direction],
        "dk": float(b.profile.grid.dk),
        "kappa": [float(x) for x in b.profile.grid.nodes],
        "re": [float(x) for x in b.profile.values.real],
        "im": [float(x) for x in b.profile.values.imag],
    } for b in beams]}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_beams_json(path) -> list[BeamState]:
    with open(path) as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}:{exc.lineno}: {exc.msg}") from None
    if "beams" not in payload:
        raise FileFormatError(f"{path}: missing 'beams' key")
    beams = []
    for i, entry in enumerate(payload["beams"]):
        try:
            kappa = np.asarray(entry["kappa"], dtype=float)
            n_half = kappa.size // 2
            dk = float(entry.get("dk", np.diff(kappa).min()))
            sg = make_spectral_grid(n_half, dk)
            if np.max(np.abs(kappa - sg.nodes)) > 1e-9 * dk:
                raise FileFormatError(
                    f"{path}: beam {i}: kappa nodes are not a symmetric "
                    "half-offset grid")
            vals = np.asarray(entry["re"], dtype=float) \
                + 1j * np.asarray(entry["im"], dtype=float)
            beams.append(BeamState(np.asarray(entry["direction"], dtype=float),
                                   SpectralProfile(sg, vals)))
        except KeyError as exc:
            raise FileFormatError(f"{path}: beam {i}: missing key {exc}") from None
    return beams
