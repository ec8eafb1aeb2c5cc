"""Spectral radius of the adjacency and algebraic connectivity of the Laplacian.

Two solvers are available for each quantity:

* ``power``: power iteration with a Rayleigh-quotient estimate, stopping once the
  eigen-residual ||Mx - mu x|| drops to ``tol`` (x has unit norm). The adjacency is
  iterated as A + I so that bipartite graphs, whose spectrum is symmetric, still
  converge to the Perron value. The Laplacian is iterated as c*I - L with every
  iterate projected off the all-ones kernel, so the dominant direction is the Fiedler
  vector.
* ``dense``: a dense symmetric eigensolver. For the Laplacian the all-ones kernel is
  deflated by adding c * J / n, which moves the zero eigenvalue to c and leaves the
  rest of the spectrum in place.

Start vectors come from a generator re-seeded with ``START_SEED`` on every call.
"""

from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np
from scipy import linalg, sparse

from src.network.build import Snapshot, laplacian
from src.utils.errors import (
    InputValidationError,
    InternalConsistencyError,
    SpectralConvergenceError,
)

Method = Literal["power", "dense"]

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000
START_SEED = 42
# Below this, lambda_2 is treated as zero and the snapshot as disconnected.
DISCONNECTED_BELOW = 1e-7


@dataclass(frozen=True, eq=False)
class EigenEstimate:
    """An eigenpair estimate and how it was obtained."""

    value: float
    vector: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True)
class SpectralResult:
    """Spectral metrics of one snapshot."""

    spectral_radius: float
    algebraic_connectivity: Optional[float]
    iterations_used: int
    residual: float
    disconnected_by_spectrum: bool = False


def _check_tol(tol: float) -> None:
    if tol <= 0:
        raise InputValidationError(f"tolerance must be positive, got {tol}")


def _start_vector(n: int) -> np.ndarray:
    rng = np.random.default_rng(START_SEED)
    return rng.random(n) + 0.5


def _shift(snapshot: Snapshot) -> float:
    # Gershgorin: every Laplacian eigenvalue is at most 2 * max_degree.
    return 2.0 * float(snapshot.degree_seq.max(initial=0)) + 1.0


def dominant_eigenpair(
    snapshot: Snapshot,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: Method = "power",
) -> EigenEstimate:
    """Largest eigenpair of the adjacency matrix (the Perron pair)."""
    _check_tol(tol)
    n = snapshot.n
    if n == 0:
        raise InputValidationError("spectral radius needs at least one vertex")

    if method == "dense":
        values, vectors = linalg.eigh(snapshot.adjacency.astype(float))
        x = vectors[:, -1]
        mu = float(values[-1])
        residual = float(np.linalg.norm(snapshot.sparse_adjacency @ x - mu * x))
        return EigenEstimate(value=max(mu, 0.0), vector=x, iterations=0, residual=residual)

    a = snapshot.sparse_adjacency
    x = _start_vector(n)
    x /= np.linalg.norm(x)
    mu, residual = 0.0, np.inf
    for iteration in range(1, max_iter + 1):
        y = a @ x
        mu = float(x @ y)
        residual = float(np.linalg.norm(y - mu * x))
        if residual <= tol:
            return EigenEstimate(
                value=max(mu, 0.0), vector=x, iterations=iteration, residual=residual
            )
        z = y + x
        x = z / np.linalg.norm(z)

    raise SpectralConvergenceError(
        "spectral radius did not converge", estimate=mu, residual=residual, iterations=max_iter
    )


def fiedler_eigenpair(
    snapshot: Snapshot,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: Method = "dense",
) -> EigenEstimate:
    """Smallest Laplacian eigenpair orthogonal to the all-ones vector."""
    _check_tol(tol)
    n = snapshot.n
    if n < 2:
        raise InputValidationError(f"algebraic connectivity needs n >= 2, got n = {n}")

    lap = laplacian(snapshot).entries.astype(float)
    c = _shift(snapshot)

    if method == "dense":
        deflated = lap + c / n
        try:
            values, vectors = linalg.eigh(deflated, subset_by_index=[0, 0])
        except linalg.LinAlgError as e:
            raise SpectralConvergenceError(
                f"dense Laplacian solve failed: {e}",
                estimate=float("nan"),
                residual=float("inf"),
                iterations=0,
            ) from e
        x = vectors[:, 0]
        mu = float(values[0])
        residual = float(np.linalg.norm(lap @ x - mu * x))
        return EigenEstimate(value=max(mu, 0.0), vector=x, iterations=0, residual=residual)

    lap_sparse = sparse.csr_matrix(lap)
    x = _start_vector(n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    mu, residual = 0.0, np.inf
    for iteration in range(1, max_iter + 1):
        y = lap_sparse @ x
        mu = float(x @ y)
        residual = float(np.linalg.norm(y - mu * x))
        if residual <= tol:
            return EigenEstimate(
                value=max(mu, 0.0), vector=x, iterations=iteration, residual=residual
            )
        z = c * x - y
        z -= z.mean()
        x = z / np.linalg.norm(z)

    raise SpectralConvergenceError(
        "algebraic connectivity did not converge",
        estimate=mu,
        residual=residual,
        iterations=max_iter,
    )


def spectral_radius(
    snapshot: Snapshot,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: Method = "power",
) -> float:
    """Largest absolute eigenvalue of the adjacency matrix."""
    return dominant_eigenpair(snapshot, tol, max_iter, method).value


def algebraic_connectivity(
    snapshot: Snapshot,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: Method = "dense",
) -> float:
    """Second-smallest eigenvalue of the Laplacian."""
    return fiedler_eigenpair(snapshot, tol, max_iter, method).value


def _with_fallback(
    solve: Callable[[Method], EigenEstimate],
    method: Method,
    fallback: bool,
    on_fallback: Optional[Callable[[str], None]],
) -> EigenEstimate:
    try:
        return solve(method)
    except SpectralConvergenceError as e:
        if not fallback or method == "dense":
            raise
        if on_fallback is not None:
            on_fallback(str(e))
        return solve("dense")


def spectral_summary(
    snapshot: Snapshot,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    radius_method: Method = "power",
    fiedler_method: Method = "dense",
    fallback: bool = True,
    on_fallback: Optional[Callable[[str, str], None]] = None,
) -> SpectralResult:
    """Spectral radius and algebraic connectivity with a connectivity cross-check.

    lambda_2 below ``DISCONNECTED_BELOW`` flags the snapshot as disconnected and is
    reported as exactly 0; the flag must agree with the union-find component count.
    ``algebraic_connectivity`` is None for a single vertex.
    """

    def notify(quantity: str) -> Optional[Callable[[str], None]]:
        if on_fallback is None:
            return None
        return lambda reason: on_fallback(quantity, reason)

    radius = _with_fallback(
        lambda m: dominant_eigenpair(snapshot, tol, max_iter, m),
        radius_method,
        fallback,
        notify("spectral_radius"),
    )
    if snapshot.n < 2:
        return SpectralResult(
            spectral_radius=radius.value,
            algebraic_connectivity=None,
            iterations_used=radius.iterations,
            residual=radius.residual,
        )

    fiedler = _with_fallback(
        lambda m: fiedler_eigenpair(snapshot, tol, max_iter, m),
        fiedler_method,
        fallback,
        notify("algebraic_connectivity"),
    )
    disconnected = fiedler.value < DISCONNECTED_BELOW
    if disconnected == snapshot.connected:
        raise InternalConsistencyError(
            f"lambda_2 = {fiedler.value:.3e} disagrees with "
            f"{snapshot.component_count} union-find component(s)"
        )

    return SpectralResult(
        spectral_radius=radius.value,
        algebraic_connectivity=0.0 if disconnected else fiedler.value,
        iterations_used=radius.iterations + fiedler.iterations,
        residual=max(radius.residual, fiedler.residual),
        disconnected_by_spectrum=disconnected,
    )
