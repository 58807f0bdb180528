"""Graded generator counts of positive S^1-equivariant symplectic homology from orbit indices."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import InternalInconsistencyError, InvalidCertificateError
from .exact import rational_to_str
from .geometry import Family, LinkParams
from .index import cz_link_closed_form, cz_link_via_crossing


@dataclass
class RankTable:
    degree_max: int
    ranks: dict[int, int]
    generators: dict[int, list[tuple[str, int]]]
    lacunary: bool
    contractible_min_index: int
    shift: int = 0
    label: str = ""
    params: dict = field(default_factory=dict)

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    def same_ranks(self, other: "RankTable") -> bool:
        window = range(0, min(self.degree_max, other.degree_max) + 1)
        return all(self.rank(d) == other.rank(d) for d in window)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "params": self.params,
            "degree_max": self.degree_max,
            "shift": self.shift,
            "ranks": {str(d): r for d, r in sorted(self.ranks.items())},
            "generators": {str(d): [f"{fam}^{N}" for fam, N in g] for d, g in sorted(self.generators.items())},
            "lacunary": self.lacunary,
            "contractible_min_index": self.contractible_min_index,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "rank", "generators"])
        for d in range(self.degree_max + 1):
            w.writerow([d, self.rank(d), " ".join(f"{f}^{N}" for f, N in self.generators.get(d, []))])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = ["| degree | rank | generators |", "|---:|---:|:---|"]
        for d in range(self.degree_max + 1):
            gens = ", ".join(f"{f}^{N}" for f, N in self.generators.get(d, []))
            lines.append(f"| {d} | {self.rank(d)} | {gens} |")
        lines.append("")
        lines.append(f"lacunary: {self.lacunary}; contractible minimum index: {self.contractible_min_index}")
        return "\n".join(lines)


def tally(
    index_fn: Callable[[str, int], int],
    families: Iterable[str],
    n: int,
    D: int,
    shift: int = 0,
) -> RankTable:
    """Enumerate iterates of each family until the shifted index exceeds ``D``.

    The cutoff is only valid if indices are nondecreasing in N, so a decrease aborts.
    """
    if D < 0:
        raise ValueError("degree window must be nonnegative")
    generators: dict[int, list[tuple[str, int]]] = {}
    seen: list[int] = []
    contractible = []
    for fam in families:
        prev = None
        N = 0
        while True:
            N += 1
            mu = index_fn(fam, N)
            if prev is not None and mu < prev:
                raise InternalInconsistencyError(f"index of {fam} decreased at N={N}: {prev} -> {mu}")
            prev = mu
            if N % (n + 1) == 0:
                contractible.append(mu)
            if mu + shift > D:
                # the first contractible iterate is always reported, even past the window
                if N >= n + 1:
                    break
                continue
            seen.append(mu + shift)
            generators.setdefault(mu + shift, []).append((fam, N))
    degrees = sorted(set(seen))
    lacunary = all(b - a != 1 for a, b in zip(degrees, degrees[1:]))
    ranks = {d: len(g) for d, g in sorted(generators.items())}
    return RankTable(
        degree_max=D,
        ranks=ranks,
        generators=dict(sorted(generators.items())),
        lacunary=lacunary,
        contractible_min_index=min(contractible),
        shift=shift,
    )


def tally_ranks(params: LinkParams, D: int, shift: int = 0, method: str = "closed") -> RankTable:
    fn = {"closed": cz_link_closed_form, "crossing": cz_link_via_crossing}[method]
    table = tally(lambda fam, N: fn(params, fam, N), [f.value for f in (Family.MINUS, Family.PLUS)], params.n, D, shift)
    table.label = "link"
    table.params = {"n": params.n, "eps": rational_to_str(params.eps)}
    return table


def expected_pattern(n: int, d: int) -> int:
    if d == 1:
        return n
    if d >= 3 and d % 2 == 1:
        return n + 1
    return 0


def check_thm_pattern(table: RankTable, n: int) -> bool:
    """rank n in degree 1, n+1 in every odd degree >= 3, 0 otherwise."""
    if not table.lacunary:
        raise InvalidCertificateError("index set has consecutive degrees; the differential need not vanish")
    if any(d < 0 or d > table.degree_max for d, r in table.ranks.items() if r):
        return False
    return all(table.rank(d) == expected_pattern(n, d) for d in range(table.degree_max + 1))


def conjugacy_class_count(n: int) -> int:
    """Brute-force count of conjugacy classes of the group generated by diag(e^{2 pi i/(n+1)}, e^{2 pi i n/(n+1)})."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n + 1
    g = np.diag(np.exp(2j * np.pi * np.array([1, n]) / m))
    elements = [np.linalg.matrix_power(g, k) for k in range(m)]

    def lookup(mat):
        for k, e in enumerate(elements):
            if np.allclose(mat, e, atol=1e-9):
                return k
        raise InternalInconsistencyError("group is not closed under conjugation")

    classes = {frozenset(lookup(h @ e @ np.linalg.inv(h)) for h in elements) for e in elements}
    return len(classes)
