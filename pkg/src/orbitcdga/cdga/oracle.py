"""Truncated homology oracle.

Each generator gets a weight: 1 for even generators, and for an odd generator
the largest weight of a monomial in its differential. Leibniz terms replace a
factor g by d(g), so weights never go up and the monomials of weight <= W span
a finite subcomplex. Its homology is computed by exact elimination. It is
evidence only: truncated homology need not inject into the full homology,
which is why two bounds are compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import OracleUnavailableError
from ..exact.linalg import sparse_rank
from .algebra import PresentedCdga


def weight_function(A: PresentedCdga) -> dict[str, int]:
    """Weights satisfying w(d(g)) <= w(g) termwise, or OracleUnavailableError."""
    if A.relations:
        raise OracleUnavailableError("oracle works on free presentations only")
    w: dict[str, int] = {n: 1 for n in A.even_names}
    pending = list(A.odd_names)
    while pending:
        progress = False
        for n in list(pending):
            dg = A.d_gen(n)
            if dg.support() - set(w):
                continue
            w[n] = max(
                (sum(k * w[v] for v, k in zip(A.names, e) if k) for e in dg.terms), default=0
            )
            pending.remove(n)
            progress = True
        if not progress:
            raise OracleUnavailableError(f"cannot weight odd generators {pending}")
    for n in A.even_names:
        for e in A.d_gen(n).terms:
            if sum(k * w[v] for v, k in zip(A.names, e) if k) > w[n]:
                raise OracleUnavailableError(f"d({n}) raises weight")
    return w


def _monomials(A: PresentedCdga, w: dict[str, int], bound: int):
    """Monomials of weight <= bound, grouped by degree."""
    names = A.names
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    odd_names = [n for n in names if A.degree(n) % 2]
    even_names = [n for n in names if A.degree(n) % 2 == 0]
    idx = A.sig.index

    def rec_even(i, left, acc):
        if i == len(even_names):
            yield dict(acc)
            return
        n = even_names[i]
        for k in range(left // w[n] + 1):
            acc[n] = k
            yield from rec_even(i + 1, left - k * w[n], acc)
        acc.pop(n, None)

    for odd_sel in itertools.product(range(2), repeat=len(odd_names)):
        used = sum(w[n] * s for n, s in zip(odd_names, odd_sel))
        if used > bound:
            continue
        for ev in rec_even(0, bound - used, {}):
            e = [0] * len(names)
            for n, s in zip(odd_names, odd_sel):
                e[idx[n]] = s
            for n, k in ev.items():
                e[idx[n]] = k
            e = tuple(e)
            by_degree.setdefault(A.sig.degree_of(e), []).append(e)
    return by_degree


def truncated_dims(A: PresentedCdga, lo: int, hi: int, bound: int) -> dict[int, int]:
    """dim H_k of the weight-<=bound subcomplex for lo <= k <= hi."""
    w = weight_function(A)
    mons = _monomials(A, w, bound)
    index = {deg: {e: i for i, e in enumerate(es)} for deg, es in mons.items()}
    rank_cache: dict[int, int] = {}

    def rank_d(k):
        """Rank of d: C_k -> C_{k-1}."""
        if k in rank_cache:
            return rank_cache[k]
        rows = []
        for e in mons.get(k, []):
            img = A.d(A.element_from_exps(e))
            tgt = index.get(k - 1, {})
            row = {}
            for te, c in img.terms.items():
                if te not in tgt:
                    raise AssertionError("truncation is not a subcomplex")
                row[tgt[te]] = c
            rows.append(row)
        rank_cache[k] = sparse_rank(rows)
        return rank_cache[k]

    out = {}
    for k in range(lo, hi + 1):
        dim_c = len(mons.get(k, []))
        out[k] = dim_c - rank_d(k) - rank_d(k + 1)
    return out


@dataclass
class OracleReport:
    window: tuple[int, int]
    bound: int
    delta: int
    dims: dict[int, int]
    dims_extended: dict[int, int]

    @property
    def stabilized(self) -> bool:
        return self.dims == self.dims_extended

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "weight_bound": self.bound,
            "delta": self.delta,
            "dims": {str(k): v for k, v in sorted(self.dims.items())},
            "dims_extended": {str(k): v for k, v in sorted(self.dims_extended.items())},
            "stabilized": self.stabilized,
        }


def truncated_homology_oracle(
    A: PresentedCdga, window=(-2, 2), bound: int = 10, delta: int = 4
) -> OracleReport:
    if bound < 1:
        raise ValueError("weight bound must be >= 1")
    lo, hi = window
    return OracleReport(
        (lo, hi),
        bound,
        delta,
        truncated_dims(A, lo, hi, bound),
        truncated_dims(A, lo, hi, bound + delta),
    )
