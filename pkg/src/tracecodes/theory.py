"""Closed-form parameter tables for the square-trace codes, and bound checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charsums import even_sign
from .codes import LinearCode, TraceCode, make_code, minimum_distance, weight_distribution
from .codes import WeightDistribution
from .errors import EmptyDefiningSetError, UnsupportedParameterError


@dataclass
class PredictedCode:
    p: int
    m: int
    punctured: bool
    n: int
    k: int
    counts: dict[int, int]
    source: str
    sign: int | None = None

    @property
    def degenerate(self) -> bool:
        """True when the predicted length is 0 (empty defining set)."""
        return self.n == 0


def predict(p: int, m: int, punctured: bool = False) -> PredictedCode:
    """Length, dimension and weight table predicted for C_D or its punctured form.

    Weight 0 is included with multiplicity 1.  Rows with a zero
    multiplicity are dropped.
    """
    if m < 2:
        raise UnsupportedParameterError("m must be at least 2")
    div = (p - 1) if punctured else 1
    table: dict[int, int] = {}

    def row(w, a):
        table[w] = table.get(w, 0) + a

    row(0, 1)
    if m % 2:
        h = p ** ((m - 3) // 2)
        n = p ** (m - 1) - 1
        row((p - 1) * (p ** (m - 2) - h) // div, (p - 1) * (p ** (m - 1) + p ** ((m - 1) // 2)) // 2)
        row((p - 1) * p ** (m - 2) // div, p ** (m - 1) - 1)
        row((p - 1) * (p ** (m - 2) + h) // div, (p - 1) * (p ** (m - 1) - p ** ((m - 1) // 2)) // 2)
        sign = None
        source = "odd-punctured" if punctured else "odd-full"
    else:
        sign = even_sign(p, m)
        h = p ** ((m - 2) // 2)
        n = p ** (m - 1) - sign * (p - 1) * h - 1
        row((p - 1) * p ** (m - 2) // div, n)
        row((p - 1) * (p ** (m - 2) - sign * h) // div, (p - 1) * (p ** (m - 1) + sign * h))
        source = "even-punctured" if punctured else "even-full"
    counts = {w: a for w, a in sorted(table.items()) if a}
    return PredictedCode(p, m, punctured, n // div, m, counts, source, sign)


def verify(p: int, m: int, punctured: bool = False) -> dict:
    """Build the code, enumerate it and compare against predict()."""
    pred = predict(p, m, punctured)
    try:
        code = make_code(p, m, punctured)
    except EmptyDefiningSetError:
        ok = pred.degenerate
        return {"theorem": pred.source, "p": p, "m": m, "punctured": punctured,
                "degenerate": True, "n": {"predicted": pred.n, "observed": 0},
                "k": {"predicted": pred.k, "observed": 0}, "pass": ok, "rows": []}
    wd = weight_distribution(code)
    weights = sorted(set(pred.counts) | set(wd.counts))
    rows = [{"w": w, "predicted": pred.counts.get(w, 0), "observed": wd.counts.get(w, 0)}
            for w in weights]
    ok = (pred.n == code.n and pred.k == code.k and pred.counts == wd.counts)
    report = {"theorem": pred.source, "p": p, "m": m, "punctured": punctured,
              "degenerate": False, "n": {"predicted": pred.n, "observed": code.n},
              "k": {"predicted": pred.k, "observed": code.k}, "pass": ok, "rows": rows}
    if pred.sign is not None:
        report["sign"] = pred.sign
    return report


def ashikhmin_barg(wd: WeightDistribution, p: int) -> tuple[bool, Fraction]:
    """Sufficient condition for all nonzero codewords to be minimal.

    Holds iff w_min / w_max > (p-1)/p, decided over the integers.
    """
    wmin, wmax = wd.min_weight, wd.max_weight
    if wmin is None:
        raise ValueError("weight distribution has no nonzero weight")
    return wmin * p > wmax * (p - 1), Fraction(wmin, wmax)


def griesmer_min_length(p: int, k: int, d: int) -> int:
    """sum_{i<k} ceil(d / p^i)."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return sum(-(-d // p**i) for i in range(k))


def is_griesmer_optimal(code: LinearCode, d: int | None = None) -> bool:
    d = minimum_distance(code) if d is None else d
    return code.n == griesmer_min_length(code.p, code.k, d)
