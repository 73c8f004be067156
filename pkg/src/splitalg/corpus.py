"""The standard corpus of small algebras used by sweeps and acceptance runs."""

from __future__ import annotations

import re
from pathlib import Path

from .algebra import FiniteAlgebra, builtin, dump_algebra

# (family, n, options); order is the canonical corpus order
ENTRIES = (
    *[("cyclic", n, {}) for n in range(1, 9)],
    *[("cyclic_plus_only", n, {}) for n in range(1, 5)],
    *[("pointed_set", n, {}) for n in range(1, 4)],
    ("chain_semilattice", 2, {}),
    ("chain_semilattice", 3, {}),
    ("chain_semilattice", 2, {"pointed": True}),
    ("chain_join", 2, {}),
    ("chain_join", 3, {}),
    ("bool_subtraction", 2, {}),
)


def default_corpus(max_size: int | None = None) -> list[FiniteAlgebra]:
    algebras = [builtin(family, n, **opts) for family, n, opts in ENTRIES]
    if max_size is not None:
        algebras = [A for A in algebras if A.size <= max_size]
    return algebras


def cyclic_corpus(sizes=range(1, 9)) -> list[FiniteAlgebra]:
    return [builtin("cyclic", n) for n in sizes]


def file_stem(A: FiniteAlgebra) -> str:
    """``chain_semilattice(2)`` -> ``chain_semilattice_2``."""
    return re.sub(r"[^A-Za-z0-9]+", "_", A.name).strip("_")


def write_corpus(directory, algebras=None) -> list[Path]:
    """Dump each algebra as JSON; file names sort in corpus order."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    algebras = default_corpus() if algebras is None else algebras
    paths = []
    for i, A in enumerate(algebras):
        path = out / f"{i:02d}_{file_stem(A)}.json"
        dump_algebra(A, path)
        paths.append(path)
    return paths
