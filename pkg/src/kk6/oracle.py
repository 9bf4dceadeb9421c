"""Independent numeric oracle for curvature.

Compiles metric entries to plain ``cmath`` closures (with common-subtree
elimination) and rebuilds the connection and curvature purely numerically:
five-point (fourth-order) central differences for the metric and
connection derivatives, ``numpy.linalg.inv`` for the metric inverse,
einsum contractions for the tensor algebra.

Step sizes: with a fourth-order stencil the truncation error at
h = 1e-4 is ~h^4 ~ 1e-16 times the fifth-derivative scale — negligible —
so the step is chosen to keep subtraction noise (~eps/h) small instead.
The outer derivative of the connection uses the larger H = 3e-3 because
the connection values it differences already carry the inner stencil's
~1e-12-relative noise, which the outer difference amplifies by 1/H; on
the sharpest metric family this balances amplified noise against the
outer truncation at ~2e-7, well inside the 1e-6 oracle-agreement bound.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .expr import (
    Add, Conj, Exp, Expr, Mul, Num, Pow, Sqrt, Sym, ZERO, free_symbols,
)
from .tensor import DIM, Metric6

__all__ = [
    "compile_expr", "metric_evaluator", "christoffel_fd", "ricci_fd",
    "ricci_scalar_fd", "einstein_fd", "H_METRIC", "H_CONNECTION",
]

H_METRIC = 1e-4
H_CONNECTION = 3e-3

_COORD_INDEX = {f"x{i}": i for i in range(DIM)}


def compile_expr(e: Expr) -> Callable[[Sequence[complex]], complex]:
    """Compile to a function of the six coordinates.

    All free symbols must be coordinates; bind parameters numerically
    (``subs``) before compiling."""
    stray = sorted(s.name for s in free_symbols(e) if s.name not in _COORD_INDEX)
    if stray:
        raise ValueError(f"non-coordinate symbols in compiled expression: {stray}")

    lines: list[str] = []
    names: dict[Expr, str] = {}
    counter = 0

    def emit(node: Expr) -> str:
        nonlocal counter
        got = names.get(node)
        if got is not None:
            return got
        if isinstance(node, Num):
            ref = f"complex({float(node.re)!r}, {float(node.im)!r})"
        elif isinstance(node, Sym):
            ref = f"x[{_COORD_INDEX[node.symbol.name]}]"
        else:
            if isinstance(node, Add):
                src = " + ".join(emit(t) for t in node.terms)
            elif isinstance(node, Mul):
                src = " * ".join(emit(f) for f in node.factors)
            elif isinstance(node, Pow):
                src = f"{emit(node.base)} ** {node.n}"
            elif isinstance(node, Exp):
                src = f"_exp({emit(node.arg)})"
            elif isinstance(node, Sqrt):
                src = f"_sqrt({emit(node.arg)})"
            elif isinstance(node, Conj):
                src = f"({emit(node.arg)}).conjugate()"
            else:  # pragma: no cover
                raise TypeError(f"cannot compile node {type(node).__name__}")
            counter += 1
            ref = f"t{counter}"
            lines.append(f"{ref} = {src}")
        names[node] = ref
        return ref

    root = emit(e)
    body = "\n    ".join(lines + [f"return {root}"])
    source = f"def _f(x):\n    {body}\n"
    ns: dict = {}
    import cmath
    exec(compile(source, "<kk6-oracle>", "exec"),
         {"_exp": cmath.exp, "_sqrt": cmath.sqrt}, ns)
    return ns["_f"]


def metric_evaluator(metric: Metric6) -> Callable[[Sequence[complex]], np.ndarray]:
    fns = [[None if metric.lower[a][b] == ZERO else compile_expr(metric.lower[a][b])
            for b in range(DIM)] for a in range(DIM)]

    def gf(x) -> np.ndarray:
        out = np.zeros((DIM, DIM), dtype=complex)
        for a in range(DIM):
            for b in range(DIM):
                if fns[a][b] is not None:
                    out[a, b] = fns[a][b](x)
        return out

    return gf


def _shift(x, c: int, h: float):
    y = list(x)
    y[c] = y[c] + h
    return y


def _d1(f, x, c: int, h: float) -> np.ndarray:
    """Fourth-order five-point central difference along coordinate c."""
    return (-f(_shift(x, c, 2 * h)) + 8 * f(_shift(x, c, h))
            - 8 * f(_shift(x, c, -h)) + f(_shift(x, c, -2 * h))) / (12 * h)


def christoffel_fd(gf, x, h: float = H_METRIC) -> np.ndarray:
    """Gamma[c, a, b] from central differences of the metric closure."""
    g = gf(x)
    ginv = np.linalg.inv(g)
    dg = np.stack([_d1(gf, x, c, h) for c in range(DIM)])
    # S[a, d, b] = d_a g_db + d_b g_da - d_d g_ab
    s = dg + dg.transpose(2, 1, 0) - dg.transpose(1, 0, 2)
    return 0.5 * np.einsum("cd,adb->cab", ginv, s)


def ricci_fd(gf, x, h: float = H_METRIC, h_outer: float = H_CONNECTION) -> np.ndarray:
    gamma = christoffel_fd(gf, x, h)

    def gamma_at(pt):
        return christoffel_fd(gf, pt, h)

    dgamma = np.stack([_d1(gamma_at, x, e, h_outer) for e in range(DIM)])
    term1 = np.einsum("ccab->ab", dgamma)
    term2 = np.einsum("bcac->ab", dgamma)
    trace = np.einsum("dcd->c", gamma)
    term3 = np.einsum("cab,c->ab", gamma, trace)
    term4 = np.einsum("cad,dbc->ab", gamma, gamma)
    return term1 - term2 + term3 - term4


def ricci_scalar_fd(gf, x, h: float = H_METRIC,
                    h_outer: float = H_CONNECTION) -> complex:
    r = ricci_fd(gf, x, h, h_outer)
    ginv = np.linalg.inv(gf(x))
    return complex(np.einsum("ab,ab->", ginv, r))


def einstein_fd(gf, x, h: float = H_METRIC,
                h_outer: float = H_CONNECTION) -> np.ndarray:
    g = gf(x)
    r = ricci_fd(gf, x, h, h_outer)
    rs = np.einsum("ab,ab->", np.linalg.inv(g), r)
    return r - 0.5 * rs * g
