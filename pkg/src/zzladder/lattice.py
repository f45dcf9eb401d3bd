"""Geometry of the driven-qubit lattice.

Two kinds of layout are supported: the full 2D ladder hosting N logical
qubits, and plain 1D rows used by the small benchmark experiments.  A
layout is an immutable roster of qubits (species, position, crossed /
coupler flags) together with the ZZ edge list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

SPECIES = ("A", "B", "C")

# Column species repeat with period 4 starting from the leftmost column.
COLUMN_PATTERN = "CABA"


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Qubit:
    index: int
    species: str
    row: int
    column: int
    crossed: bool = False
    is_coupler: bool = False


class Layout:
    """Immutable qubit roster plus symmetric ZZ adjacency."""

    def __init__(self, qubits, edges, n_logical=None):
        self.qubits = tuple(qubits)
        self.n_logical = n_logical
        for i, q in enumerate(self.qubits):
            if q.index != i:
                raise LatticeError(f"qubit index {q.index} out of order")
            if q.species not in SPECIES:
                raise LatticeError(f"unknown species {q.species!r}")
        norm = set()
        for i, j in edges:
            if i == j:
                raise LatticeError("self-loop in ZZ edge list")
            if not (0 <= i < len(self.qubits) and 0 <= j < len(self.qubits)):
                raise LatticeError("edge endpoint out of range")
            norm.add((min(i, j), max(i, j)))
        self.edges = tuple(sorted(norm))
        adj = {q.index: [] for q in self.qubits}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        self._adj = {k: tuple(sorted(v)) for k, v in adj.items()}

    @property
    def n_qubits(self):
        return len(self.qubits)

    @property
    def n_columns(self):
        return 1 + max(q.column for q in self.qubits)

    def neighbors(self, index):
        """ZZ partners of a qubit."""
        try:
            return self._adj[index]
        except KeyError:
            raise LatticeError(f"unknown qubit index {index}") from None

    def detuning_class(self, index):
        """Fabrication detuning bucket, set by the ZZ connection count."""
        deg = len(self.neighbors(index))
        if deg == 0:
            return "nominal"
        if deg == 1:
            return "minus"
        if deg == 2:
            return "nominal"
        if deg == 3:
            return "plus"
        raise LatticeError(f"qubit {index} has unsupported degree {deg}")

    def species_indices(self, species, subset="all"):
        """Indices of one species, optionally restricted to a subset.

        subset is one of "all", "regular", "crossed".
        """
        if subset not in ("all", "regular", "crossed"):
            raise LatticeError(f"unknown subset {subset!r}")
        out = []
        for q in self.qubits:
            if q.species != species:
                continue
            if subset == "regular" and q.crossed:
                continue
            if subset == "crossed" and not q.crossed:
                continue
            out.append(q.index)
        return tuple(out)

    def sector(self, column):
        """Functional area of a column: initialization, processing or readout."""
        if self.n_logical is None:
            raise LatticeError("sector is defined for ladder layouts only")
        if not 0 <= column < self.n_columns:
            raise LatticeError(f"column {column} out of range")
        if column < 2:
            return "initialization"
        if column >= self.n_columns - 2:
            return "readout"
        return "processing"

    def grid_index(self, row, column):
        """Index of the grid qubit at (row, column); couplers excluded."""
        for q in self.qubits:
            if q.row == row and q.column == column and not q.is_coupler:
                return q.index
        raise LatticeError(f"no grid qubit at row {row}, column {column}")

    def coupler_index(self, rows):
        """Index of the coupler linking the given pair of adjacent rows."""
        lo = min(rows)
        for q in self.qubits:
            if q.is_coupler and q.row == lo:
                return q.index
        raise LatticeError(f"no coupler between rows {rows}")

    def to_json(self):
        doc = {
            "n_logical": self.n_logical,
            "n_qubits": self.n_qubits,
            "n_columns": self.n_columns,
            "qubits": [
                {
                    "index": q.index,
                    "species": q.species,
                    "row": q.row,
                    "column": q.column,
                    "crossed": q.crossed,
                    "coupler": q.is_coupler,
                    "detuning_class": self.detuning_class(q.index),
                }
                for q in self.qubits
            ],
            "zz_edges": [list(e) for e in self.edges],
        }
        return json.dumps(doc, indent=2)


def column_species(column):
    return COLUMN_PATTERN[column % 4]


def build_ladder(n_logical):
    """Construct the ladder for n_logical rows.

    The ladder has 2N+3 columns in the repeating C,A,B,A pattern and
    2N^2+4N-1 qubits: an N x (2N+3) grid plus N-1 coupler qubits.  The
    leftmost column is entirely crossed; each processing B/C column
    carries one crossed element, staggered one row per column; couplers
    are crossed A qubits living inside every processing B/C column from
    the second onward, each linking the column elements of two adjacent
    rows.
    """
    if not isinstance(n_logical, int) or n_logical < 1:
        raise LatticeError(f"invalid logical size {n_logical!r}")
    n = n_logical
    n_cols = 2 * n + 3
    qubits = []
    for row in range(n):
        for col in range(n_cols):
            crossed = col == 0 or (col % 2 == 0 and 2 <= col <= 2 * n and row == col // 2 - 1)
            qubits.append(Qubit(len(qubits), column_species(col), row, col, crossed))
    for ell in range(1, n):
        # coupler ell sits in column 2*ell+2 and links rows ell-1 and ell
        qubits.append(Qubit(len(qubits), "A", ell - 1, 2 * ell + 2, True, True))

    edges = []
    grid = lambda r, c: r * n_cols + c
    for row in range(n):
        for col in range(n_cols - 1):
            edges.append((grid(row, col), grid(row, col + 1)))
    for ell in range(1, n):
        cidx = n * n_cols + (ell - 1)
        col = 2 * ell + 2
        edges.append((cidx, grid(ell - 1, col)))
        edges.append((cidx, grid(ell, col)))
    return Layout(qubits, edges, n_logical=n)


def build_row(pattern, crossed=()):
    """Construct a 1D chain of qubits with the given species string.

    crossed lists the chain positions wired with doubled drive capacitance.
    """
    if not pattern:
        raise LatticeError("empty row pattern")
    crossed = set(crossed)
    qubits = [
        Qubit(i, s, 0, i, crossed=i in crossed) for i, s in enumerate(pattern)
    ]
    edges = [(i, i + 1) for i in range(len(pattern) - 1)]
    return Layout(qubits, edges)


def gate_column(layout, kind, row):
    """Internal column index addressed by a logical gate.

    Single-qubit rotations on logical row j use the crossed B/C element
    in row j; the CZ on rows (j, j+1) uses the coupler linking them.
    """
    n = layout.n_logical
    if n is None:
        raise LatticeError("gate columns are defined for ladder layouts only")
    if kind == "rot":
        if not 0 <= row < n:
            raise LatticeError(f"rotation row {row} out of range")
        return 2 * row + 2
    if kind == "cz":
        if not 0 <= row < n - 1:
            raise LatticeError(f"cz row pair ({row},{row + 1}) out of range")
        return 2 * row + 4
    raise LatticeError(f"unknown gate kind {kind!r}")
