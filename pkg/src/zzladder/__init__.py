"""Simulator and global-pulse compiler for the ZZ-blockade qubit ladder."""

from . import device, effective, hamiltonian, lattice, protocols, qcore, report, simulator  # noqa: F401

__all__ = [
    "device",
    "effective",
    "hamiltonian",
    "lattice",
    "protocols",
    "qcore",
    "report",
    "simulator",
]

__version__ = "0.1.0"
