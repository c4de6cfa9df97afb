"""Brute-force oracles, independent of the library's analytic reductions.

Everything here works by direct sampling or direct minimization so the tests
compare two genuinely different routes to the same quantity.
"""

import numpy as np


def ellipsoid_boundary_points(region, count, rng):
    """Points on the boundary shell {(mu-c)' P (mu-c) = radius_sq}."""
    p = region.dimension
    u = rng.normal(size=(count, p))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    chol = np.linalg.cholesky(np.asarray(region.precision))
    x = np.linalg.solve(chol.T, u.T).T
    return region.center + np.sqrt(region.radius_sq) * x


def ellipsoid_fill_points(region, count, rng):
    """Points filling the ellipsoid body (uniform in the mapped ball)."""
    p = region.dimension
    u = rng.normal(size=(count, p))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    radial = rng.uniform(size=(count, 1)) ** (1.0 / p)
    chol = np.linalg.cholesky(np.asarray(region.precision))
    x = np.linalg.solve(chol.T, (u * radial).T).T
    return region.center + np.sqrt(region.radius_sq) * x


def extent_bruteforce(region, weights, count=100_000, seed=0):
    """(min, max) of weights . mu over dense boundary samples."""
    pts = ellipsoid_boundary_points(region, count, np.random.default_rng(seed))
    vals = pts @ np.asarray(weights, dtype=float)
    return float(vals.min()), float(vals.max())


def extent_bruteforce_refined(region, weights, count=100_000, seed=0, rounds=3):
    """Brute-force extent with zoomed resampling near the incumbent extremes.

    Round 1 samples directions uniformly; later rounds resample inside a
    shrinking cap around the best direction found so far. Still pure
    sampling (no gradients, no closed form), but resolves the extremes to
    well below 1e-6 relative error.
    """
    rng = np.random.default_rng(seed)
    p = region.dimension
    chol = np.linalg.cholesky(np.asarray(region.precision))
    w = np.asarray(weights, dtype=float)
    scale = np.sqrt(region.radius_sq)

    def values_for(dirs):
        dirs = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
        pts = region.center + scale * np.linalg.solve(chol.T, dirs.T).T
        return dirs, pts @ w

    dirs, vals = values_for(rng.normal(size=(count, p)))
    best = {"max": dirs[np.argmax(vals)], "min": dirs[np.argmin(vals)]}
    extremes = {"max": vals.max(), "min": vals.min()}
    cap = 0.05
    for _ in range(rounds - 1):
        for side, sign in (("max", 1.0), ("min", -1.0)):
            center_dir = best[side]
            perturbed = center_dir + cap * rng.normal(size=(count, p))
            dirs, vals = values_for(perturbed)
            idx = np.argmax(sign * vals)
            if sign * vals[idx] > sign * extremes[side]:
                extremes[side] = vals[idx]
                best[side] = dirs[idx]
        cap *= 0.02
    return float(extremes["min"]), float(extremes["max"])


def completion_min_quadform(region, keep, point2d):
    """Minimum of the quadratic form over the dropped coordinates, 3-D regions.

    With one dropped coordinate the form is an upward parabola in it, so the
    minimum is analytic: q(t) = q0 + 2 t b + t^2 P_kk at t* = -b / P_kk.
    """
    p = region.dimension
    assert p == 3
    (k,) = [idx for idx in range(p) if idx not in keep]
    precision = np.asarray(region.precision)
    d0 = np.zeros(p)
    d0[keep[0]] = point2d[0] - region.center[keep[0]]
    d0[keep[1]] = point2d[1] - region.center[keep[1]]
    d0[k] = -region.center[k] + 0.0  # coordinate t enters separately
    # q(t) for mu_k = t: deviation d = d0 + (t) e_k with d0[k] = -center[k]
    e = np.zeros(p)
    e[k] = 1.0
    q0 = d0 @ precision @ d0
    b = e @ precision @ d0
    pkk = precision[k, k]
    return float(q0 - b * b / pkk)


def decision_oracle_points(region, h, count=20_000, seed=0):
    """Three-way decision by membership of dense boundary + fill samples."""
    rng = np.random.default_rng(seed)
    pts = np.vstack(
        [
            ellipsoid_boundary_points(region, count // 2, rng),
            ellipsoid_fill_points(region, count - count // 2, rng),
        ]
    )
    inside = h.contains_many(pts)
    if inside.all():
        return "accept"
    if not inside.any():
        return "reject"
    return "agnostic"
