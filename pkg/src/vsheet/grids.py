"""Discrete grids, weighted transforms and weighted norms.

Time and the tangential direction live on a torus [0, Lt) x [0, Lx); the
normal direction is a truncated half-line [0, Ly] carrying a composite
Gauss-Legendre rule.  The forward transform multiplies by exp(-gamma*t)
and applies an FFT calibrated to the continuum transform with kernel
exp(-i(delta*t + eta*x1)), so discrete norms approximate the continuum
weighted norms (with their 1/(2*pi) normalization) by plain Riemann sums
in frequency.
"""

from __future__ import annotations

import dataclasses
import enum
import functools

import numpy as np

from .symbols import Frequency, PhysicalParams, weight_sigma

__all__ = [
    "GridSpec",
    "Space",
    "composite_gauss_legendre",
    "find_mode",
    "forward_transform",
    "inverse_transform",
    "weighted_norm",
    "half_line_norm",
]


class Space(enum.Enum):
    """Weight applied inside a frequency-space norm."""

    PLAIN = "plain"          # Lambda^s
    ANISOTROPIC = "aniso"    # |sigma| * Lambda^s


def composite_gauss_legendre(n_nodes: int, length: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite Gauss-Legendre rule on [0, length].

    The interval is split into equal panels of ``order`` nodes each;
    ``n_nodes`` must be a multiple of the effective panel order.
    """
    order = min(order, n_nodes)
    if n_nodes % order:
        raise ValueError(f"n_nodes={n_nodes} is not a multiple of the panel order {order}")
    panels = n_nodes // order
    xg, wg = np.polynomial.legendre.leggauss(order)
    width = length / panels
    offsets = width * np.arange(panels)
    nodes = (offsets[:, None] + 0.5 * width * (xg + 1.0)[None, :]).ravel()
    weights = np.tile(0.5 * width * wg, panels)
    return nodes, weights


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclasses.dataclass(frozen=True)
class GridSpec:
    """Discretization: torus sizes/periods, half-line rule, Laplace abscissa.

    nt, nx : number of samples in t and x1 (powers of two, for the FFT)
    ny     : quadrature nodes on [0, Ly] per side
    gamma  : Laplace abscissa of the run, >= 1
    """

    nt: int
    nx: int
    ny: int
    Lt: float
    Lx: float
    Ly: float
    gamma: float = 1.0
    quad_order: int = 8

    def __post_init__(self) -> None:
        if not (_is_power_of_two(self.nt) and _is_power_of_two(self.nx)):
            raise ValueError(f"nt and nx must be powers of two, got {self.nt}, {self.nx}")
        if self.ny < 2:
            raise ValueError(f"ny must be at least 2, got {self.ny}")
        for name in ("Lt", "Lx", "Ly"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be positive and finite, got {val!r}")
        if not (np.isfinite(self.gamma) and self.gamma >= 1.0):
            raise ValueError(f"gamma must be >= 1, got {self.gamma!r}")
        if self.quad_order < 1:
            raise ValueError("quad_order must be positive")
        order = min(self.quad_order, self.ny)
        if self.ny % order:
            raise ValueError(f"ny={self.ny} must be a multiple of the panel order {order}")

    def t(self) -> np.ndarray:
        return np.arange(self.nt) * (self.Lt / self.nt)

    def x1(self) -> np.ndarray:
        return np.arange(self.nx) * (self.Lx / self.nx)

    def delta(self) -> np.ndarray:
        """Signed angular frequencies 2*pi*j/Lt in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.nt, d=self.Lt / self.nt)

    def eta(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.nx, d=self.Lx / self.nx)

    @functools.cache
    def freq_mesh(self) -> Frequency:
        """All grid frequencies (gamma, delta_j, eta_k) as an (nt, nx) batch."""
        d, e = np.meshgrid(self.delta(), self.eta(), indexing="ij")
        return Frequency(np.full_like(d, self.gamma), d, e)

    @functools.cache
    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        return composite_gauss_legendre(self.ny, self.Ly, self.quad_order)

    @property
    def cell(self) -> float:
        """Measure of one (t, x1) grid cell."""
        return (self.Lt / self.nt) * (self.Lx / self.nx)


def forward_transform(raw: np.ndarray, grid: GridSpec) -> np.ndarray:
    """exp(-gamma t)-weighted DFT over (t, x1), calibrated to the continuum.

    Values approximate the continuum transform with kernel
    exp(-i(delta t + eta x1)) at the grid frequencies; the inverse carries
    the 1/(2 pi)^2 factor.  Trailing axes (e.g. the x2 node axis) ride
    along untouched.
    """
    raw = np.asarray(raw)
    if raw.shape[:2] != (grid.nt, grid.nx):
        raise ValueError(f"leading axes {raw.shape[:2]} do not match the grid ({grid.nt}, {grid.nx})")
    damp = np.exp(-grid.gamma * grid.t()).reshape((grid.nt,) + (1,) * (raw.ndim - 1))
    return grid.cell * np.fft.fft2(damp * raw, axes=(0, 1))


def inverse_transform(spectral: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Inverse of :func:`forward_transform`, including the exp(+gamma t) reweighting."""
    spectral = np.asarray(spectral)
    if spectral.shape[:2] != (grid.nt, grid.nx):
        raise ValueError(
            f"leading axes {spectral.shape[:2]} do not match the grid ({grid.nt}, {grid.nx})"
        )
    grow = np.exp(grid.gamma * grid.t()).reshape((grid.nt,) + (1,) * (spectral.ndim - 1))
    return grow * np.fft.ifft2(spectral / grid.cell, axes=(0, 1))


def find_mode(grid: GridSpec, freq: Frequency) -> tuple[int, int]:
    """Lattice indices (it, ix) of a single frequency; it must sit on the grid."""
    if not freq.is_scalar:
        raise ValueError("mode lookup works one frequency at a time")
    if freq.gamma != grid.gamma:
        raise ValueError(f"frequency gamma {freq.gamma!r} differs from grid gamma {grid.gamma!r}")
    deltas, etas = grid.delta(), grid.eta()
    it = int(np.argmin(np.abs(deltas - freq.delta)))
    ix = int(np.argmin(np.abs(etas - freq.eta)))
    scale = max(abs(freq.delta), abs(freq.eta), 1.0)
    if abs(deltas[it] - freq.delta) > 1e-9 * scale or abs(etas[ix] - freq.eta) > 1e-9 * scale:
        raise ValueError("frequency does not sit on the grid lattice")
    return it, ix


def _norm_weight(grid: GridSpec, s: float, space: Space, params: PhysicalParams | None) -> np.ndarray:
    freq = grid.freq_mesh()
    lam_s = np.asarray(freq.lam) ** s
    if Space(space) is Space.PLAIN:
        return lam_s
    if params is None:
        raise ValueError("the anisotropic norm needs params (the weight depends on mach)")
    return np.abs(weight_sigma(freq, params)) * lam_s


def weighted_norm(
    u_hat: np.ndarray,
    grid: GridSpec,
    s: float,
    space: Space = Space.PLAIN,
    params: PhysicalParams | None = None,
) -> float:
    """Discrete weighted Sobolev norm of a transformed trace u_hat(delta, eta).

    PLAIN is the norm with weight Lambda^s, ANISOTROPIC the one with
    |sigma| Lambda^s.  The Riemann sum in frequency absorbs the continuum
    1/(2 pi)^2 so that the s = 0 plain norm equals the L^2 norm of
    exp(-gamma t) u on the torus (discrete Parseval).
    """
    u_hat = np.asarray(u_hat)
    if u_hat.shape != (grid.nt, grid.nx):
        raise ValueError(f"expected shape ({grid.nt}, {grid.nx}), got {u_hat.shape}")
    w = _norm_weight(grid, s, space, params)
    total = np.sum((w * np.abs(u_hat)) ** 2) / (grid.Lt * grid.Lx)
    return float(np.sqrt(total))


def half_line_norm(
    spectral: np.ndarray,
    grid: GridSpec,
    s: float,
    space: Space = Space.PLAIN,
    params: PhysicalParams | None = None,
) -> float:
    """L^2(half-line; H^s) norm of a source: quadrature in x2 of squared trace norms."""
    spectral = np.asarray(spectral)
    if spectral.shape != (grid.nt, grid.nx, grid.ny):
        raise ValueError(
            f"expected shape ({grid.nt}, {grid.nx}, {grid.ny}), got {spectral.shape}"
        )
    _, wq = grid.quadrature()
    w = _norm_weight(grid, s, space, params)
    per_node = np.sum((w[..., None] * np.abs(spectral)) ** 2, axis=(0, 1)) / (grid.Lt * grid.Lx)
    return float(np.sqrt(np.dot(wq, per_node)))
