"""On-disk formats: binary/CSV source fields, solution dumps, certificates.

Binary source layout (little endian): int32 nt, nx, ny; float64 Lt, Lx,
Ly, gamma; then the complex64 samples in C order with t as the leading
(major) axis, shape (nt, nx, ny).  The CSV variant keeps the same metadata
on a leading comment line and one ``it,ix,iy,re,im`` row per sample.
"""

from __future__ import annotations

import csv
import json
import pathlib

import numpy as np

from .grids import GridSpec

__all__ = [
    "write_source_bin",
    "read_source_bin",
    "write_source_csv",
    "read_source_csv",
    "read_source",
    "write_front_solution",
    "write_json",
    "write_csv",
]

_HEADER = np.dtype(
    [
        ("nt", "<i4"),
        ("nx", "<i4"),
        ("ny", "<i4"),
        ("Lt", "<f8"),
        ("Lx", "<f8"),
        ("Ly", "<f8"),
        ("gamma", "<f8"),
    ]
)

_SOLUTION_HEADER = np.dtype(
    [("nt", "<i4"), ("nx", "<i4"), ("Lt", "<f8"), ("Lx", "<f8"), ("gamma", "<f8")]
)


def _grid_fields(grid: GridSpec) -> tuple:
    return (grid.nt, grid.nx, grid.ny, grid.Lt, grid.Lx, grid.Ly, grid.gamma)


def write_source_bin(path, raw: np.ndarray, grid: GridSpec) -> None:
    raw = np.asarray(raw)
    if raw.shape != (grid.nt, grid.nx, grid.ny):
        raise ValueError(f"raw shape {raw.shape} does not match the grid")
    header = np.array([_grid_fields(grid)], dtype=_HEADER)
    with open(path, "wb") as fh:
        fh.write(header.tobytes())
        fh.write(np.ascontiguousarray(raw, dtype=np.complex64).tobytes())


def read_source_bin(path) -> tuple[np.ndarray, GridSpec]:
    blob = pathlib.Path(path).read_bytes()
    header = np.frombuffer(blob[: _HEADER.itemsize], dtype=_HEADER)[0]
    nt, nx, ny = int(header["nt"]), int(header["nx"]), int(header["ny"])
    grid = GridSpec(
        nt=nt, nx=nx, ny=ny,
        Lt=float(header["Lt"]), Lx=float(header["Lx"]), Ly=float(header["Ly"]),
        gamma=float(header["gamma"]),
    )
    expected = nt * nx * ny
    data = np.frombuffer(blob[_HEADER.itemsize :], dtype="<c8")
    if data.size != expected:
        raise ValueError(f"payload holds {data.size} samples, expected {expected}")
    return data.astype(np.complex128).reshape(nt, nx, ny), grid


def write_source_csv(path, raw: np.ndarray, grid: GridSpec) -> None:
    raw = np.asarray(raw)
    if raw.shape != (grid.nt, grid.nx, grid.ny):
        raise ValueError(f"raw shape {raw.shape} does not match the grid")
    nt, nx, ny, lt, lx, ly, gamma = _grid_fields(grid)
    with open(path, "w", newline="") as fh:
        fh.write(
            f"# vfs-source nt={nt} nx={nx} ny={ny} Lt={lt!r} Lx={lx!r} Ly={ly!r} gamma={gamma!r}\n"
        )
        writer = csv.writer(fh)
        writer.writerow(["it", "ix", "iy", "re", "im"])
        for it in range(nt):
            for ix in range(nx):
                for iy in range(ny):
                    z = raw[it, ix, iy]
                    writer.writerow([it, ix, iy, repr(float(z.real)), repr(float(z.imag))])


def read_source_csv(path) -> tuple[np.ndarray, GridSpec]:
    with open(path, newline="") as fh:
        meta_line = fh.readline().strip()
        if not meta_line.startswith("# vfs-source"):
            raise ValueError("missing '# vfs-source ...' metadata line")
        meta = dict(tok.split("=", 1) for tok in meta_line.split()[2:])
        grid = GridSpec(
            nt=int(meta["nt"]), nx=int(meta["nx"]), ny=int(meta["ny"]),
            Lt=float(meta["Lt"]), Lx=float(meta["Lx"]), Ly=float(meta["Ly"]),
            gamma=float(meta["gamma"]),
        )
        raw = np.zeros((grid.nt, grid.nx, grid.ny), dtype=np.complex128)
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["it", "ix", "iy", "re", "im"]:
            raise ValueError(f"unexpected CSV columns {header}")
        for row in reader:
            it, ix, iy = int(row[0]), int(row[1]), int(row[2])
            raw[it, ix, iy] = float(row[3]) + 1j * float(row[4])
    return raw, grid


def read_source(path) -> tuple[np.ndarray, GridSpec]:
    """Dispatch on extension: .csv for text, anything else binary."""
    if str(path).endswith(".csv"):
        return read_source_csv(path)
    return read_source_bin(path)


def write_front_solution(prefix, solution) -> tuple[pathlib.Path, pathlib.Path]:
    """Dump f as complex64 binary plus a JSON sidecar; returns both paths."""
    prefix = pathlib.Path(prefix)
    grid = solution.grid
    bin_path = prefix.with_suffix(".bin")
    header = np.array(
        [(grid.nt, grid.nx, grid.Lt, grid.Lx, grid.gamma)], dtype=_SOLUTION_HEADER
    )
    with open(bin_path, "wb") as fh:
        fh.write(header.tobytes())
        fh.write(np.ascontiguousarray(solution.f, dtype=np.complex64).tobytes())
    sidecar = {
        "s": solution.s,
        "regime": solution.regime.value,
        "norms": {
            f"{space.value}_s{order:g}": value
            for (order, space), value in sorted(
                solution.norms.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
            )
        },
        "report": solution.report,
        "grid": {
            "nt": grid.nt, "nx": grid.nx, "ny": grid.ny,
            "Lt": grid.Lt, "Lx": grid.Lx, "Ly": grid.Ly, "gamma": grid.gamma,
        },
    }
    json_path = prefix.with_suffix(".json")
    write_json(json_path, sidecar)
    return bin_path, json_path


def write_json(path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(path, columns: list, rows: list) -> None:
    """Write rows of mixed scalars with repr'd floats (deterministic output)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
