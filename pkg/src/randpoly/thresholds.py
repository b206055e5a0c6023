"""Threshold curves for the neighborliness and face-density regimes.

The neighborliness exponent

    c(alpha, beta) = alpha*H(beta/alpha) + (alpha-beta)*(H((alpha-1)/(alpha-beta)) - 1)

is negative exactly in the regime where the union bound decays; its root in
beta defines the curve rho_N'(alpha).  The face-density curve is the line
rho_D'(alpha) = 2 - alpha.  Everything here is double precision; residual
tolerances default to 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .bounds import binary_entropy

RHO_N_PRIME = "rho_N_prime"
RHO_D_PRIME = "rho_D_prime"


class RootBracketError(Exception):
    """No sign change found while scanning for the exponent root; carries the
    scanned (beta, value) grid for audit."""

    def __init__(self, message, scan):
        super().__init__(message)
        self.scan = scan


@dataclass(frozen=True)
class ThresholdPoint:
    alpha: float
    beta: float
    residual: float
    curve: str
    scan: Optional[tuple] = field(default=None, compare=False, repr=False)


def neighborliness_exponent(alpha: float, beta: float) -> float:
    """The decay exponent c(alpha, beta); negative means the union bound on
    "some beta*d-subset is not a face" vanishes as d grows."""
    if alpha <= 1:
        raise ValueError("need alpha > 1")
    if not 0 < beta < alpha:
        raise ValueError("need 0 < beta < alpha")
    r = (alpha - 1) / (alpha - beta)
    if not 0 < r < 1:
        raise ValueError("need (alpha-1)/(alpha-beta) in (0, 1), i.e. beta < 1")
    return alpha * binary_entropy(beta / alpha) + (alpha - beta) * (binary_entropy(r) - 1.0)


def exponent_product_form_holds(alpha: float, beta: float) -> bool:
    """Equivalent product-form test: alpha^alpha / ((alpha-1)^(alpha-1) 2^alpha)
    < beta^beta (1-beta)^(1-beta) / 2^beta.  Used as a cross-check of the
    entropy form's sign."""
    if alpha <= 1 or not 0 < beta < 1:
        raise ValueError("need alpha > 1 and 0 < beta < 1")
    lhs = (alpha * math.log(alpha) - (alpha - 1) * math.log(alpha - 1)
           - alpha * math.log(2))
    rhs = (beta * math.log(beta) + (1 - beta) * math.log(1 - beta)
           - beta * math.log(2))
    return lhs < rhs


def _scan_grid(alpha: float, points: int = 400):
    lo = 1e-6
    hi = min(1.0 - 1e-12, 2.0 - alpha + 0.2)
    ratio = (hi / lo) ** (1.0 / (points - 1))
    return [lo * ratio ** i for i in range(points)]


def rho_N_prime(alpha: float, tol: float = 1e-12) -> ThresholdPoint:
    """Root of c(alpha, .) = 0 in beta, located by a geometric sign scan from
    1e-6 (where c < 0) and refined by bisection to |c| <= tol.  Returns the
    smallest root above the scan origin; the scan itself rides along on the
    point for audit since uniqueness is not established."""
    if not 1.0 < alpha < 2.0:
        raise ValueError("need 1 < alpha < 2")
    grid = _scan_grid(alpha)
    values = [neighborliness_exponent(alpha, b) for b in grid]
    if values[0] >= 0:
        raise RootBracketError(
            f"exponent not negative at the scan origin for alpha={alpha}",
            tuple(zip(grid, values)))
    bracket = None
    for i in range(1, len(grid)):
        if values[i] >= 0:
            bracket = (grid[i - 1], grid[i])
            break
    if bracket is None:
        raise RootBracketError(
            f"no sign change of the exponent located for alpha={alpha}",
            tuple(zip(grid, values)))
    lo, hi = bracket
    flo = neighborliness_exponent(alpha, lo)
    beta = lo
    resid = flo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = neighborliness_exponent(alpha, mid)
        beta, resid = mid, fmid
        if abs(fmid) <= tol:
            break
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    if abs(resid) > tol:
        raise RootBracketError(
            f"bisection stalled at residual {resid} for alpha={alpha}",
            tuple(zip(grid, values)))
    return ThresholdPoint(alpha=alpha, beta=beta, residual=resid, curve=RHO_N_PRIME,
                          scan=tuple(zip(grid, values)))


def rho_D_prime(alpha: float) -> ThresholdPoint:
    """The face-density threshold line rho_D'(alpha) = 2 - alpha."""
    if not 1.0 < alpha < 2.0:
        raise ValueError("need 1 < alpha < 2")
    return ThresholdPoint(alpha=alpha, beta=2.0 - alpha, residual=0.0, curve=RHO_D_PRIME)


def rho_delta(delta: float, which: str = "N", tol: float = 1e-12) -> ThresholdPoint:
    """Reparameterize by delta = 1/alpha in (1/2, 1): rho_N(delta) =
    rho_N'(1/delta) and rho_D(delta) = 2 - 1/delta."""
    if not 0.5 < delta < 1.0:
        raise ValueError("need 1/2 < delta < 1")
    alpha = 1.0 / delta
    if which == "N":
        return rho_N_prime(alpha, tol=tol)
    if which == "D":
        return rho_D_prime(alpha)
    raise ValueError("which must be 'N' or 'D'")


def threshold_curve(alpha_min: float, alpha_max: float, steps: int,
                    tol: float = 1e-12) -> list:
    """Both curves on a uniform alpha grid, as (rho_N', rho_D') pairs.  The
    neighborliness curve must sit strictly below the density line at every
    grid point; a violation is a solver failure and raises."""
    if not (1.0 < alpha_min < alpha_max < 2.0):
        raise ValueError("need 1 < alpha_min < alpha_max < 2")
    if steps < 2:
        raise ValueError("need steps >= 2")
    out = []
    for i in range(steps):
        alpha = alpha_min + (alpha_max - alpha_min) * i / (steps - 1)
        pn = rho_N_prime(alpha, tol=tol)
        pd = rho_D_prime(alpha)
        if not pn.beta < pd.beta:
            raise RootBracketError(
                f"curve ordering violated at alpha={alpha}: {pn.beta} >= {pd.beta}",
                pn.scan)
        out.append((pn, pd))
    return out


def write_threshold_csv(pairs, path, include_delta: bool = False) -> None:
    cols = ["alpha", "rho_N_prime", "rho_D_prime", "residual"]
    if include_delta:
        cols += ["delta", "rho_N", "rho_D"]
    lines = [",".join(cols)]
    for pn, pd in pairs:
        row = [f"{pn.alpha:.12g}", f"{pn.beta:.12g}", f"{pd.beta:.12g}",
               f"{pn.residual:.3e}"]
        if include_delta:
            delta = 1.0 / pn.alpha
            row += [f"{delta:.12g}", f"{pn.beta:.12g}", f"{2.0 - 1.0 / delta:.12g}"]
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
