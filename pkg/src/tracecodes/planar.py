"""Planar functions on GF(q) and the codes C_{D_f} with D_f = {x != 0 : Tr(f(x)) = 0}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import config
from .codes import (
    TraceCode,
    build_code,
    build_defining_set,
    code_report,
    puncture_representatives,
    weight_distribution,
    zero_trace_set,
)
from .errors import ConfigurationError, EmptyDefiningSetError, ResourceError
from .field import FieldCtx, FieldElement

SQUARE = "square"
DEMBOWSKI_OSTROM = "dembowski-ostrom-monomial"
COULTER_MATTHEWS = "coulter-matthews"
DING_YUAN = "ding-yuan"
FAMILIES = (SQUARE, DEMBOWSKI_OSTROM, COULTER_MATTHEWS, DING_YUAN)

_ALIASES = {"dembowski-ostrom": DEMBOWSKI_OSTROM, "do": DEMBOWSKI_OSTROM,
            "cm": COULTER_MATTHEWS, "dy": DING_YUAN}


@dataclass(frozen=True)
class PlanarSpec:
    """A catalog entry: x^2, x^(p^k+1), x^((3^k+1)/2) or x^10 - u x^6 - u^2 x^2.

    ``u`` is the integer encoding of a field element.
    """

    family: str
    k: int | None = None
    u: int | None = None

    def __post_init__(self):
        fam = _ALIASES.get(self.family, self.family)
        if fam not in FAMILIES:
            raise ConfigurationError(f"unknown planar family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if fam in (DEMBOWSKI_OSTROM, COULTER_MATTHEWS) and self.k is None:
            raise ConfigurationError(f"{fam} needs the exponent parameter k")
        if fam == DING_YUAN and self.u is None:
            raise ConfigurationError("ding-yuan needs the coefficient u")

    @property
    def params(self) -> dict:
        if self.family in (DEMBOWSKI_OSTROM, COULTER_MATTHEWS):
            return {"k": self.k}
        if self.family == DING_YUAN:
            return {"u": self.u}
        return {}

    @property
    def name(self) -> str:
        return self.family + "".join(f":{k}={v}" for k, v in self.params.items())

    @classmethod
    def parse(cls, text: str) -> "PlanarSpec":
        """Parse ``family`` or ``family:k=3`` / ``family:u=1``."""
        family, _, rest = text.partition(":")
        kwargs = {}
        for part in filter(None, rest.split(",")):
            key, _, val = part.partition("=")
            if key not in ("k", "u"):
                raise ConfigurationError(f"unknown planar parameter {key!r}")
            kwargs[key] = int(val)
        return cls(family, **kwargs)


def inadmissibility(spec: PlanarSpec, ctx: FieldCtx) -> list[str]:
    """Reasons why spec is not a catalogued planar function on ctx (empty if fine)."""
    p, m = ctx.p, ctx.m
    why = []
    if spec.family == DEMBOWSKI_OSTROM:
        if spec.k < 0:
            why.append("k must be nonnegative")
        elif (m // math.gcd(m, spec.k)) % 2 == 0:
            why.append("m/gcd(m,k) must be odd")
    elif spec.family == COULTER_MATTHEWS:
        if p != 3:
            why.append("p must be 3")
        if spec.k % 2 == 0:
            why.append("k must be odd")
        if math.gcd(m, spec.k) != 1:
            why.append("gcd(m,k) must be 1")
    elif spec.family == DING_YUAN:
        if p != 3:
            why.append("p must be 3")
        if m % 2 == 0:
            why.append("m must be odd")
        if not 0 <= spec.u < ctx.q:
            why.append("u must encode an element of GF(q)")
    return why


def planar_map(spec: PlanarSpec, ctx: FieldCtx, strict: bool = True) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised f acting on (..., m) coefficient arrays."""
    why = inadmissibility(spec, ctx)
    if strict and why:
        raise ConfigurationError(f"{spec.name} not admissible for GF({ctx.p}^{ctx.m}): "
                                 + "; ".join(why))
    if spec.family == SQUARE:
        return lambda X: ctx.mul(X, X)
    if spec.family == DEMBOWSKI_OSTROM:
        e = ctx.p**spec.k + 1
        return lambda X: ctx.pow(X, e)
    if spec.family == COULTER_MATTHEWS:
        e = (3**spec.k + 1) // 2
        return lambda X: ctx.pow(X, e)
    u = ctx.decode(spec.u % ctx.q)
    u2 = ctx.mul(u, u)

    def ding_yuan(X):
        x2 = ctx.mul(X, X)
        x4 = ctx.mul(x2, x2)
        x6 = ctx.mul(x4, x2)
        x10 = ctx.mul(x6, x4)
        return ctx.sub(ctx.sub(x10, ctx.mul(x6, u)), ctx.mul(x2, u2))

    return ding_yuan


def eval_planar(spec: PlanarSpec, x: FieldElement, strict: bool = True) -> FieldElement:
    ctx = x.ctx
    return FieldElement(ctx, planar_map(spec, ctx, strict)(x.array))


def _check_planar_ceiling(ctx: FieldCtx):
    limit = config.get_planar_ceiling()
    if ctx.q > limit:
        raise ResourceError(f"q = {ctx.q} exceeds the planarity ceiling {limit}")


def max_difference_count(ctx: FieldCtx, fvals: np.ndarray) -> int:
    """max over a != 0 and b of |{x : f(x+a) - f(x) = b}| given the table f(x)."""
    X = ctx.elements()
    fcodes = np.asarray(fvals, dtype=np.int64)
    best = 0
    for a in range(1, ctx.q):
        shifted = ctx.encode(ctx.add(X, X[a]))
        diff = ctx.encode(ctx.sub(fcodes[shifted], fcodes))
        best = max(best, int(np.bincount(diff, minlength=ctx.q).max()))
    return best


def nonlinearity_measure(spec: PlanarSpec | Callable, ctx: FieldCtx, strict: bool = False) -> Fraction:
    """P_f as an exact fraction (max difference count)/q.

    ``spec`` may also be a vectorised callable on coefficient arrays.
    """
    _check_planar_ceiling(ctx)
    f = spec if callable(spec) else planar_map(spec, ctx, strict)
    return Fraction(max_difference_count(ctx, f(ctx.elements())), ctx.q)


def check_df_conditions(spec: PlanarSpec | Callable, ctx: FieldCtx, strict: bool = False) -> dict:
    """f(0)=0, f even, and the h in [0, p-2] with f(a x) = a^h f(x) for all a in GF(p)*, x."""
    f = spec if callable(spec) else planar_map(spec, ctx, strict)
    X = ctx.elements()
    fx = f(X)
    f0_zero = not fx[0].any()
    even = bool(np.array_equal(f(ctx.neg(X)), fx))
    h_found = None
    scaled = {a: f(ctx.scale(X, a)) for a in range(1, ctx.p)}
    for h in range(ctx.p - 1):
        if all(np.array_equal(scaled[a], ctx.scale(fx, pow(a, h, ctx.p))) for a in scaled):
            h_found = h
            break
    return {"f0_zero": bool(f0_zero), "even": even, "homogeneity_exponent": h_found}


def conditions_hold(cond: dict) -> bool:
    return cond["f0_zero"] and cond["even"] and cond["homogeneity_exponent"] is not None


def build_df_set(spec: PlanarSpec, ctx: FieldCtx, strict: bool = False):
    return zero_trace_set(ctx, planar_map(spec, ctx, strict), f"planar:{spec.name}")


def build_Df_code(spec: PlanarSpec, ctx: FieldCtx, punctured: bool = False) -> tuple[TraceCode, list[str]]:
    """C_{D_f}; inadmissible specs and failed conditions are built but flagged."""
    warnings = [f"inadmissible: {w}" for w in inadmissibility(spec, ctx)]
    cond = check_df_conditions(spec, ctx)
    if not conditions_hold(cond):
        warnings.append("D_f conditions fail: " + str(cond))
    D = build_df_set(spec, ctx)
    if len(D) == 0:
        raise EmptyDefiningSetError(f"D_f is empty for {spec.name}")
    if punctured:
        D = puncture_representatives(D)
    return build_code(ctx, D), warnings


def compare_with_CD(spec: PlanarSpec, ctx: FieldCtx, punctured: bool = False,
                    measure: bool = True) -> dict:
    """Report comparing (n, k, weight map) of C_{D_f} against C_D on the same field."""
    cond = check_df_conditions(spec, ctx)
    D = build_defining_set(ctx)
    if punctured:
        D = puncture_representatives(D)
    cd = build_code(ctx, D)
    cdf, warnings = build_Df_code(spec, ctx, punctured)
    r_cd = code_report(cd, weight_distribution(cd))
    r_cdf = code_report(cdf, weight_distribution(cdf))
    equal = all(r_cd[key] == r_cdf[key] for key in ("n", "k", "weights"))
    pf = None
    if measure:
        _check_planar_ceiling(ctx)
        count = max_difference_count(ctx, planar_map(spec, ctx, strict=False)(ctx.elements()))
        pf = f"{count}/{ctx.q}"
    return {
        "family": spec.family,
        "params": spec.params,
        "p": ctx.p,
        "m": ctx.m,
        "punctured": punctured,
        "admissible": not inadmissibility(spec, ctx),
        "conditions": cond,
        "P_f": pf,
        "equal_to_CD": bool(equal),
        "same_defining_set": len(cd.defining_set) == len(cdf.defining_set)
        and bool(np.array_equal(cd.defining_set.codes, cdf.defining_set.codes)),
        "warnings": warnings,
        "cd": r_cd,
        "cdf": r_cdf,
    }


def catalog(ctx: FieldCtx) -> Iterator[PlanarSpec]:
    """Every admissible catalog entry on ctx with k in [1, m) and every u in GF(q)."""
    yield PlanarSpec(SQUARE)
    for k in range(1, ctx.m):
        spec = PlanarSpec(DEMBOWSKI_OSTROM, k=k)
        if not inadmissibility(spec, ctx):
            yield spec
    if ctx.p == 3:
        for k in range(1, ctx.m, 2):
            spec = PlanarSpec(COULTER_MATTHEWS, k=k)
            if not inadmissibility(spec, ctx):
                yield spec
        if ctx.m % 2:
            for u in range(ctx.q):
                yield PlanarSpec(DING_YUAN, u=u)
