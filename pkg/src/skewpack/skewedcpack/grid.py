"""The recursive set of admissible x-coordinates for wide-item edges.

``T_0 = {0}``; for each stage ``j``

* ``delta_j = eps*eps1 / t_{j-1}`` with ``t_j = (1 + 1/(eps*eps1))**(2j)``,
* ``S_j = T_{j-1} | {k*delta_j : 0 <= k < 1/delta_j}``,
* ``T_j = {x + y : x in S_j, y in R | {0}}``,

where ``R`` holds the distinct rounded widths of wide items. The final set
is ``T_J`` with ``J = 1/eps1 - 1``. Values above one are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..core import ONE, ZERO, SkewpackError, rat

#: refuse to materialise grids larger than this many values
MAX_GRID = 200_000


class GridTooLarge(SkewpackError):
    """The grid would be too large to build."""


def _reciprocal_int(x, name):
    if not 0 < x <= 1 or (1 / x).denominator != 1:
        raise ValueError(f"{name} must be 1/k for a positive integer k, got {x}")
    return int(1 / x)


@dataclass(frozen=True)
class GridT:
    eps: Fraction
    eps1: Fraction
    R: tuple[Fraction, ...]
    S: tuple[tuple[Fraction, ...], ...]  # S[j-1] is S_j
    T: tuple[tuple[Fraction, ...], ...]  # T[j] is T_j, T[0] = (0,)
    deltas: tuple[Fraction, ...]  # deltas[j-1] is delta_j

    @property
    def stages(self) -> int:
        return len(self.S)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.T[-1]

    @property
    def size(self) -> int:
        return len(self.T[-1])

    def t_bound(self, j: int) -> Fraction:
        return (1 + 1 / (self.eps * self.eps1)) ** (2 * j)

    def contains(self, x) -> bool:
        return x in self._set

    @cached_property
    def _set(self):
        return frozenset(self.T[-1])

    @property
    def columns(self) -> tuple[Fraction, ...]:
        """Column boundaries inside the bin: grid values in ``[0, 1)`` plus 1."""
        return tuple(v for v in self.T[-1] if v < 1) + (ONE,)

    @property
    def eps_cont(self) -> Fraction:
        return self.eps * self.eps1 / (6 * self.size)

    @property
    def n_W(self) -> int:
        """Most wide compartments a bin may hold."""
        return 3 * (int(1 / self.eps1) - 1) * self.size + 1

    @property
    def n_H(self) -> int:
        """Most tall compartments a bin may hold."""
        return (int(1 / self.eps1) - 1) * self.size

    def edge_ok(self, x) -> bool:
        """Admissible compartment x-edge: a grid value or the right bin border."""
        return x == 1 or self.contains(x)


def grid_T(eps, eps1, R=(), max_size: int = MAX_GRID) -> GridT:
    """Build the grid for parameters ``eps1 <= eps <= 1/2`` and widths ``R``."""
    eps, eps1 = rat(eps), rat(eps1)
    _reciprocal_int(eps, "eps")
    k1 = _reciprocal_int(eps1, "eps1")
    if not eps1 <= eps <= Fraction(1, 2):
        raise ValueError("need eps1 <= eps <= 1/2")
    R = tuple(sorted({rat(r) for r in R}))
    for r in R:
        if not eps1 < r <= 1:
            raise ValueError(f"width {r} is not in (eps1, 1]")
    if len(R) > 1 / (eps * eps1):
        # the cardinality bound on T_j relies on linear grouping's value count
        raise ValueError(f"at most {1 / (eps * eps1)} distinct widths, got {len(R)}")
    shifts = (ZERO,) + R
    base = 1 + 1 / (eps * eps1)
    T = [(ZERO,)]
    S, deltas = [], []
    for j in range(1, k1):
        delta = eps * eps1 / base ** (2 * (j - 1))
        steps = 1 / delta
        assert steps.denominator == 1
        estimate = len(shifts) * (len(T[-1]) + int(steps))
        if estimate > max_size:
            raise GridTooLarge(f"stage {j} would hold up to {estimate} values "
                               f"(limit {max_size})")
        s = sorted(set(T[-1]) | {k * delta for k in range(int(steps))})
        t = sorted({x + y for x in s for y in shifts})
        S.append(tuple(s))
        T.append(tuple(t))
        deltas.append(delta)
    g = GridT(eps, eps1, R, tuple(S), tuple(T), tuple(deltas))
    for j in range(len(T)):
        if len(T[j]) > g.t_bound(j):
            raise AssertionError(f"|T_{j}| exceeds its bound")
    return g
