"""Numerical monodromy of a rational map ``f = P/Q``.

Critical values come from the exact LL form (multiplicities from its
square-free decomposition, positions from polished numerical roots).  The
fibre ``f^-1(t)`` is then continued along a fixed loop system:

* the base point ``t*`` lies on a circle ``|t| = R`` enclosing every finite
  critical value, at the angle that keeps the straight spokes farthest from
  the other critical values;
* the loop around a finite value goes out along its spoke, once around a
  small counterclockwise circle, and back;
* loops are taken in :func:`hurwitz.covering.loop_order` (by argument as seen
  from ``t*``) and the loop around infinity, the circle ``|t| = R`` run
  clockwise, comes last.

With this system the left-to-right product of the monodromies is the
identity.  Roots are tracked projectively on the ``x``-sphere, switching
between the charts ``z`` and ``1/z``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .boundary import BoundaryClass
from .covering import BranchPoint, Constellation, loop_order
from .perm import Permutation, PermTuple, _compose
from .polyalg import RationalMapClass, UPoly, ll_polynomial_affine, squarefree_decomposition


class ResolutionFailure(ArithmeticError):
    """Distinct critical values closer than the clustering tolerance allows."""


class TrackingFailure(ArithmeticError):
    """Path continuation could not proceed along an arc."""


@dataclass(frozen=True)
class CriticalValue:
    """A numerically located critical value; ``value is None`` stands for infinity."""

    value: complex | None
    multiplicity: int

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def label(self, digits: int = 12) -> str:
        if self.value is None:
            return "inf"
        return f"{self.value.real:.{digits}g}{self.value.imag:+.{digits}g}i"


def _numeric_roots(p: UPoly) -> np.ndarray:
    coeffs = np.array([complex(c) for c in reversed(p.c)])
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.zeros(0, dtype=complex)
    dp = np.polyder(coeffs)
    for _ in range(20):
        step = np.polyval(coeffs, roots) / np.polyval(dp, roots)
        roots = roots - step
        if np.all(np.abs(step) <= 1e-15 * (1 + np.abs(roots))):
            break
    return roots


def critical_values_numeric(m: RationalMapClass, eps: float = config.CLUSTER_TOL) -> list[CriticalValue]:
    """Critical values of ``m`` with multiplicities; total multiplicity ``2n - 2``.

    Raises :class:`ResolutionFailure` when two distinct values lie within
    ``10 * eps`` of each other.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    D = ll_polynomial_affine(m)
    k = 2 * m.n - 2
    out = []
    for factor, mult in squarefree_decomposition(D):
        out += [CriticalValue(complex(r), mult) for r in _numeric_roots(factor)]
    out.sort(key=lambda cv: (round(cv.value.real, 9), round(cv.value.imag, 9)))
    if D.degree < k:
        out.append(CriticalValue(None, k - D.degree))
    finite = [cv.value for cv in out if cv.value is not None]
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if abs(finite[i] - finite[j]) <= 10 * eps:
                raise ResolutionFailure(
                    f"critical values {finite[i]} and {finite[j]} are within 10*eps; retry with eps < {abs(finite[i] - finite[j]) / 10:.3g}")
    return out


# -- projective root tracking ------------------------------------------------------------


class _Fibre:
    """Solver for ``t Q(x) - P(x) = 0`` in the two affine charts of the ``x``-sphere."""

    def __init__(self, m: RationalMapClass) -> None:
        n = m.n
        P = np.array([complex(c) for c in m.P.coeffs])
        Q = np.array([complex(c) for c in m.Q.coeffs])
        # chart z = x1/x0: coefficient i multiplies z^i; np.polyval wants descending order
        self.PA, self.QA = P[::-1], Q[::-1]
        # chart w = x0/x1: coefficient i multiplies w^(n-i)
        self.PB, self.QB = P, Q
        self.dPA, self.dQA = np.polyder(self.PA), np.polyder(self.QA)
        self.dPB, self.dQB = np.polyder(self.PB), np.polyder(self.QB)
        self.n = n

    def newton(self, t: complex, zeta: np.ndarray, inv: np.ndarray, tol: float, iters: int = 12):
        zeta = zeta.copy()
        for _ in range(iters):
            g = np.where(inv, t * np.polyval(self.QB, zeta) - np.polyval(self.PB, zeta),
                         t * np.polyval(self.QA, zeta) - np.polyval(self.PA, zeta))
            dg = np.where(inv, t * np.polyval(self.dQB, zeta) - np.polyval(self.dPB, zeta),
                          t * np.polyval(self.dQA, zeta) - np.polyval(self.dPA, zeta))
            if np.any(dg == 0):
                return zeta, False
            step = g / dg
            zeta = zeta - step
            if np.all(np.abs(step) <= tol * (1 + np.abs(zeta))):
                return zeta, True
        return zeta, False

    def initial(self, t: complex, tol: float) -> tuple[np.ndarray, np.ndarray]:
        coeffs = t * self.QA - self.PA
        roots = np.roots(coeffs)
        if len(roots) != self.n:
            raise TrackingFailure(f"base point {t} lies over a point at infinity")
        inv = np.abs(roots) > 1
        zeta = np.where(inv, 1 / np.where(roots == 0, 1, roots), roots)
        zeta, ok = self.newton(t, zeta, inv, tol)
        if not ok:
            raise TrackingFailure(f"Newton failed on the fibre over the base point {t}")
        return zeta, inv


def _homog(zeta: np.ndarray, inv: np.ndarray) -> np.ndarray:
    x0 = np.where(inv, zeta, 1)
    x1 = np.where(inv, 1, zeta)
    h = np.stack([x0, x1], axis=1).astype(complex)
    return h / np.linalg.norm(h, axis=1)[:, None]


def _chordal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise chordal distances between rows of two arrays of unit homogeneous pairs."""
    return 2 * np.abs(a[:, None, 0] * b[None, :, 1] - a[:, None, 1] * b[None, :, 0])


def _rechart(zeta: np.ndarray, inv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    flip = np.abs(zeta) > 1
    zeta = np.where(flip, 1 / np.where(zeta == 0, 1, zeta), zeta)
    return zeta, inv ^ flip


def _track(fib: _Fibre, path, zeta: np.ndarray, inv: np.ndarray, tol: float, arc: str):
    """Continue the roots along ``path(s)``, ``s`` from 0 to 1."""
    s, h = 0.0, 1 / 32
    prev = None  # (s, homogeneous roots) of the previous accepted step
    while s < 1:
        h = min(h, 1 - s)
        t_new = path(s + h)
        cur_h = _homog(zeta, inv)
        sep = _chordal(cur_h, cur_h)
        np.fill_diagonal(sep, np.inf)
        sep_min = sep.min() if fib.n > 1 else 1.0
        guess = zeta
        if prev is not None:
            ps, ph = prev
            # secant predictor in the current chart of each root
            prev_z = np.where(inv, ph[:, 0] / np.where(ph[:, 1] == 0, 1, ph[:, 1]),
                              ph[:, 1] / np.where(ph[:, 0] == 0, 1, ph[:, 0]))
            ratio = h / (s - ps)
            cand = zeta + (zeta - prev_z) * ratio
            guess = np.where(np.isfinite(cand) & (np.abs(cand - zeta) < 1), cand, zeta)
        new, ok = fib.newton(t_new, guess, inv, tol)
        if ok:
            new_h = _homog(new, inv)
            moved = np.abs(np.sum(np.conj(new_h) * cur_h, axis=1))
            jump = 2 * np.sqrt(np.clip(1 - moved ** 2, 0, None))
            d_new = _chordal(new_h, new_h)
            np.fill_diagonal(d_new, np.inf)
            ok = (np.all(jump < 0.3 * sep_min)
                  and (fib.n == 1 or d_new.min() > 10 * tol))
        if ok:
            prev = (s, cur_h)
            s += h
            zeta, inv = _rechart(new, inv)
            h *= 1.5
        else:
            h /= 2
            prev = None
            if h < 1e-12:
                raise TrackingFailure(f"step size underflow on {arc} at s={s:.6g}")
    return zeta, inv


def _seg_dist(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(p - a)
    u = ((p - a) * ab.conjugate()).real / abs(ab) ** 2
    u = min(max(u, 0.0), 1.0)
    return abs(p - (a + u * ab))


@dataclass(frozen=True)
class TracedMonodromy:
    """Loop permutations of a rational map, one per critical value, in loop order."""

    base_point: complex
    critical_values: tuple[CriticalValue, ...]
    loop_permutations: PermTuple
    tolerances: tuple[float, float]

    @property
    def n(self) -> int:
        return self.loop_permutations.n

    def labels(self) -> list[str]:
        return [f"w{i}" for i in range(len(self.critical_values))]

    def constellation(self) -> Constellation:
        return Constellation(self.n, tuple(BranchPoint(lab, p) for lab, p in zip(self.labels(), self.loop_permutations)))


def _choose_base(finite: list[complex], avoid: list[complex]) -> tuple[complex, float]:
    radius = 2 * max([1.0] + [abs(c) for c in finite + avoid]) + 1
    best = None
    for k in range(64):
        theta = -math.pi / 2 + 2 * math.pi * (k + 0.37) / 64
        base = radius * cmath.exp(1j * theta)
        clearance = math.inf
        for j, cj in enumerate(finite):
            for i, ci in enumerate(finite):
                if i != j:
                    clearance = min(clearance, _seg_dist(ci, base, cj))
        if best is None or clearance > best[0] + 1e-12:
            best = (clearance, base)
    return best[1], best[0]


def trace_monodromy(m: RationalMapClass, eps: float = config.CLUSTER_TOL,
                    root_tol: float = config.ROOT_TOL, *, bound: int | None = None) -> TracedMonodromy:
    """Monodromy of ``m`` along the loop system described in the module docstring."""
    config.check_degree(m.n, bound)
    values = critical_values_numeric(m, eps)
    n = m.n
    fib = _Fibre(m)
    if not values:
        return TracedMonodromy(0j, (), PermTuple(n, ()), (root_tol, eps))
    finite_cvs = [cv for cv in values if cv.value is not None]
    finite = [cv.value for cv in finite_cvs]
    avoid = []
    qn, pn = complex(m.Q.coeffs[-1]), complex(m.P.coeffs[-1])
    if qn != 0:
        avoid.append(pn / qn)  # f(infinity)
    base, clearance = _choose_base(finite, avoid)
    radius = abs(base)
    pair = min((abs(a - b) for i, a in enumerate(finite) for b in finite[i + 1:]), default=radius / 4)
    r = min(pair / 2, clearance / 2 if clearance < math.inf else pair / 2, radius / 4)
    if r <= 1e3 * eps:
        raise ResolutionFailure("critical values too close to separate the loops; retry with a smaller eps")

    zeta0, inv0 = fib.initial(base, root_tol)
    order = np.lexsort((np.round(_affine(zeta0, inv0).imag, 9), np.round(_affine(zeta0, inv0).real, 9)))
    zeta0, inv0 = zeta0[order], inv0[order]
    start = _homog(zeta0, inv0)

    def close(zeta: np.ndarray, inv: np.ndarray, what: str) -> Permutation:
        d = _chordal(_homog(zeta, inv), start)
        images = [int(np.argmin(row)) for row in d]
        if sorted(images) != list(range(n)) or max(d[i, images[i]] for i in range(n)) > 1e-6:
            raise TrackingFailure(f"sheets do not return to the base fibre after {what}")
        return Permutation(tuple(images))

    perms, used = [], []
    for idx in loop_order(finite, base):
        c = finite[idx]
        u = (base - c) / abs(base - c)
        entry = c + r * u
        phi0 = cmath.phase(u)
        out = (lambda s, a=base, b=entry: a + (b - a) * s)
        around = (lambda s, c=c, phi0=phi0: c + r * cmath.exp(1j * (phi0 + 2 * math.pi * s)))
        back = (lambda s, a=entry, b=base: a + (b - a) * s)
        zeta, inv = zeta0, inv0
        for piece, name in ((out, "spoke out"), (around, "circle"), (back, "spoke back")):
            zeta, inv = _track(fib, piece, zeta, inv, root_tol, f"{name} of the loop around {c:.6g}")
        perms.append(close(zeta, inv, f"the loop around {c:.6g}"))
        used.append(finite_cvs[idx])
    phi_b = cmath.phase(base)
    big = (lambda s: radius * cmath.exp(1j * (phi_b - 2 * math.pi * s)))
    zeta, inv = _track(fib, big, zeta0, inv0, root_tol, "the loop around infinity")
    sigma_inf = close(zeta, inv, "the loop around infinity")
    infinite = [cv for cv in values if cv.value is None]
    if infinite:
        perms.append(sigma_inf)
        used.append(infinite[0])
    elif not sigma_inf.is_identity():
        raise TrackingFailure("nontrivial monodromy around infinity, which is not a critical value")
    tup = PermTuple(n, tuple(perms))
    acc = tuple(range(n))
    for p in perms:
        acc = _compose(acc, p.images)
    if any(i != j for i, j in enumerate(acc)):
        raise TrackingFailure(f"traced product is {Permutation(acc)}, not the identity")
    total = sum(n - p.num_cycles for p in perms)
    if total != 2 * n - 2:
        raise TrackingFailure(f"Riemann-Hurwitz fails: total multiplicity {total} != {2 * n - 2}")
    return TracedMonodromy(base, tuple(used), tup, (root_tol, eps))


def _affine(zeta: np.ndarray, inv: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(inv, 1 / zeta, zeta)


@dataclass(frozen=True)
class BridgeReport:
    ok: bool
    numeric: tuple[tuple[complex | None, int], ...]
    traced: tuple[tuple[complex | None, int], ...]
    message: str = ""

    def lines(self) -> list[str]:
        status = "PASS" if self.ok else "FAIL"
        fmt = lambda d: "{" + ", ".join(f"({'inf' if v is None else f'{v:.8g}'}, {k})" for v, k in d) + "}"  # noqa: E731
        out = [f"{status} bridge: numeric {fmt(self.numeric)} traced {fmt(self.traced)}"]
        if self.message:
            out.append(self.message)
        return out


def bridge_check(m: RationalMapClass, eps: float = config.CLUSTER_TOL) -> BridgeReport:
    """Compare the critical values of ``m`` with the branch divisor of its traced covering."""
    numeric = critical_values_numeric(m, eps)
    num = tuple((cv.value, cv.multiplicity) for cv in numeric)
    try:
        tm = trace_monodromy(m, eps)
    except (TrackingFailure, ResolutionFailure) as exc:
        return BridgeReport(False, num, (), str(exc))
    from .space import ll
    b = BoundaryClass.from_constellation(tm.constellation()) if tm.critical_values else BoundaryClass(m.n, ())
    lab = dict(zip(tm.labels(), tm.critical_values))
    traced = tuple((lab[pos].value, k) for pos, k in ll(b).entries)
    unmatched = list(num)
    ok = len(traced) == len(num)
    for v, k in traced:
        hit = next((e for e in unmatched if e[1] == k and _same_value(e[0], v, eps)), None)
        if hit is None:
            ok = False
            break
        unmatched.remove(hit)
    return BridgeReport(ok and not unmatched, num, traced)


def _same_value(a: complex | None, b: complex | None, eps: float) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return abs(a - b) <= eps * (1 + abs(a))
