"""Vectorized numpy implementations of the hot kernels.

This is the fallback backend: every function here has a loop-style twin in
``numba_impl`` with the same name and signature.  Both consume pre-drawn
random arrays, so a caller switching backends replays the same randomness;
results agree to floating-point tolerance (reduction orders differ).
"""

import numpy as np

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# benchmark functions (fid 1..7), population-batched
# ---------------------------------------------------------------------------

def _penalty_u(X, a, k, m):
    out = np.zeros_like(X)
    hi = X > a
    lo = X < -a
    out[hi] = k * (X[hi] - a) ** m
    out[lo] = k * (-X[lo] - a) ** m
    return out


def bench_batch(fid: int, X: np.ndarray) -> np.ndarray:
    """Evaluate benchmark function ``fid`` on every row of X (n, dim)."""
    if fid == 1:  # sphere
        return (X * X).sum(axis=1)
    if fid == 2:  # abs-sum plus abs-product
        a = np.abs(X)
        return a.sum(axis=1) + a.prod(axis=1)
    if fid == 3:  # rotated hyper-ellipsoid (cumulative sums squared)
        c = np.cumsum(X, axis=1)
        return (c * c).sum(axis=1)
    if fid == 4:  # max absolute coordinate
        return np.abs(X).max(axis=1)
    if fid == 5:  # ackley
        d = X.shape[1]
        s1 = (X * X).sum(axis=1)
        s2 = np.cos(TWO_PI * X).sum(axis=1)
        return (-20.0 * np.exp(-0.2 * np.sqrt(s1 / d))
                - np.exp(s2 / d) + 20.0 + np.e)
    if fid == 6:  # penalized (y-transformed sin landscape)
        d = X.shape[1]
        y = 1.0 + (X + 1.0) / 4.0
        t = 10.0 * np.sin(np.pi * y[:, 0]) ** 2
        t = t + ((y[:, :-1] - 1.0) ** 2
                 * (1.0 + 10.0 * np.sin(np.pi * y[:, 1:]) ** 2)).sum(axis=1)
        t = t + (y[:, -1] - 1.0) ** 2
        return np.pi / d * t + _penalty_u(X, 10.0, 100.0, 4).sum(axis=1)
    if fid == 7:  # penalized (direct sin landscape)
        t = np.sin(3.0 * np.pi * X[:, 0]) ** 2
        t = t + ((X[:, :-1] - 1.0) ** 2
                 * (1.0 + np.sin(3.0 * np.pi * X[:, 1:]) ** 2)).sum(axis=1)
        t = t + (X[:, -1] - 1.0) ** 2 * (1.0 + np.sin(TWO_PI * X[:, -1]) ** 2)
        return 0.1 * t + _penalty_u(X, 5.0, 100.0, 4).sum(axis=1)
    raise ValueError(f"unknown benchmark id {fid}")


# ---------------------------------------------------------------------------
# whale population update (shared by the plain and improved variants)
# ---------------------------------------------------------------------------

def whale_step(X, best_x, a, b, r1, r2, p, l, ridx, lb, ub):
    """One whale-position update for the whole population.

    Per whale: A = 2a*r1 - a and C = 2*r2 (scalars).  p >= 0.5 takes the
    log-spiral around the leader; otherwise |A| < 1 encircles the leader and
    |A| >= 1 steps relative to a random whale.  Result is clipped to bounds.
    """
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    An = A[:, None]
    Cn = C[:, None]
    ln = l[:, None]

    enc_new = best_x[None, :] - An * np.abs(Cn * best_x[None, :] - X)
    Xr = X[ridx]
    sea_new = Xr - An * np.abs(Cn * Xr - X)
    spi_new = (np.abs(best_x[None, :] - X) * np.exp(b * ln) * np.cos(TWO_PI * ln)
               + best_x[None, :])

    spiral = (p >= 0.5)[:, None]
    search = ((p < 0.5) & (np.abs(A) >= 1.0))[:, None]
    Xn = np.where(spiral, spi_new, np.where(search, sea_new, enc_new))
    return np.clip(Xn, lb[None, :], ub[None, :])


# ---------------------------------------------------------------------------
# grey-wolf population update
# ---------------------------------------------------------------------------

def gwo_step(X, xa, xb, xd, a, r1, r2, lb, ub):
    """One grey-wolf update: average of the three leader-guided moves.

    r1, r2 have shape (3, n, dim) — fresh draws per leader/wolf/dimension.
    """
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    leaders = np.stack((xa, xb, xd))[:, None, :]
    Xl = leaders - A * np.abs(C * leaders - X[None, :, :])
    Xn = (Xl[0] + Xl[1] + Xl[2]) / 3.0
    return np.clip(Xn, lb[None, :], ub[None, :])


# ---------------------------------------------------------------------------
# sparrow-search population update
# ---------------------------------------------------------------------------

def ssa_step(X, fit, order, gbest_x, gbest_f, max_iter, n_prod, n_scout, st,
             r2_alarm, alpha, q_prod, q_scr, sgn_u, scout_idx, k_gauss, k_uni,
             lb, ub):
    """One sparrow-search update (producer / scrounger / scout roles).

    ``order`` sorts the population by ascending fitness; producers are the
    best ``n_prod`` rows, scouts are ``n_scout`` random members updated last.
    """
    n, dim = X.shape
    Xn = X.copy()

    prod = order[:n_prod]
    ranks_p = np.arange(1.0, n_prod + 1.0)
    if r2_alarm < st:
        decay = np.exp(-ranks_p / (np.maximum(alpha, 1e-12) * max_iter))
        Xn[prod] = X[prod] * decay[:, None]
    else:
        Xn[prod] = X[prod] + q_prod[:, None]

    xp = Xn[order[0]].copy()          # best producer after its own move
    worst_x = X[order[-1]]
    f_worst = fit[order[-1]]

    scr = order[n_prod:]
    ranks_s = np.arange(n_prod + 1.0, n + 1.0)
    starving = ranks_s > n / 2.0
    if starving.any():
        idx = scr[starving]
        Xn[idx] = (q_scr[starving][:, None]
                   * np.exp((worst_x[None, :] - X[idx]) / (ranks_s[starving] ** 2)[:, None]))
    attending = ~starving
    if attending.any():
        sgn = np.where(sgn_u < 0.5, -1.0, 1.0)
        offs = (sgn * np.abs(X[scr] - xp[None, :])).mean(axis=1)
        idx = scr[attending]
        Xn[idx] = xp[None, :] + offs[attending][:, None]

    for j in range(n_scout):
        i = scout_idx[j]
        if fit[i] > gbest_f:
            Xn[i] = gbest_x + k_gauss[j] * np.abs(X[i] - gbest_x)
        elif fit[i] == gbest_f:
            Xn[i] = X[i] + k_uni[j] * (np.abs(X[i] - worst_x)
                                       / (fit[i] - f_worst + 1e-50))

    return np.clip(Xn, lb[None, :], ub[None, :])


# ---------------------------------------------------------------------------
# SVR: RBF kernel and the sequential pair solver
# ---------------------------------------------------------------------------

def sq_dists(X, Y):
    """Pairwise squared euclidean distances, shape (len(X), len(Y))."""
    xx = (X * X).sum(axis=1)[:, None]
    yy = (Y * Y).sum(axis=1)[None, :]
    d2 = xx + yy - 2.0 * (X @ Y.T)
    return np.maximum(d2, 0.0)


def rbf_from_sq(D2, gamma):
    return np.exp(-gamma * D2)


def smo_solve(K, y, C, eps, tol, max_steps):
    """Solve the eps-insensitive regression dual by maximal-violating pairs.

    Variables lam[0:m] (alpha) and lam[m:2m] (alpha*) carry signs u = +1/-1.
    Each step picks the most violating feasible pair (i from the ascent set,
    j from the descent set), moves it to the box boundary or the
    unconstrained pair minimum, and updates the gradient in O(m).

    Whatever the blocks of i and j, the pair direction changes
    beta = alpha - alpha* by +t at i's sample and -t at j's sample, so the
    curvature along it is K_ii + K_jj - 2 K_ij.

    Returns (beta, bias, steps, gap, converged).
    """
    m = y.shape[0]
    lam = np.zeros(2 * m)
    # gradient split: g_pos = d/d alpha = K beta + eps - y, g_neg = d/d alpha*
    g_pos = eps - y
    g_neg = eps + y

    steps = 0
    converged = False
    minus_inf = -np.inf
    while True:
        # -u*grad: -g_pos on the alpha block, +g_neg on the alpha* block
        up_pos = np.where(lam[:m] < C, -g_pos, minus_inf)
        up_neg = np.where(lam[m:] > 0.0, g_neg, minus_inf)
        lo_pos = np.where(lam[:m] > 0.0, -g_pos, np.inf)
        lo_neg = np.where(lam[m:] < C, g_neg, np.inf)

        i_pos = int(np.argmax(up_pos))
        i_neg = int(np.argmax(up_neg))
        if up_pos[i_pos] >= up_neg[i_neg]:
            i, vi, ui = i_pos, up_pos[i_pos], 1.0
        else:
            i, vi, ui = m + i_neg, up_neg[i_neg], -1.0
        j_pos = int(np.argmin(lo_pos))
        j_neg = int(np.argmin(lo_neg))
        if lo_pos[j_pos] <= lo_neg[j_neg]:
            j, vj, uj = j_pos, lo_pos[j_pos], 1.0
        else:
            j, vj, uj = m + j_neg, lo_neg[j_neg], -1.0

        gap = vi - vj
        if gap <= tol:
            converged = True
            break
        if steps >= max_steps:
            break

        ii = i % m
        jj = j % m
        den = K[ii, ii] + K[jj, jj] - 2.0 * K[ii, jj]
        if den < 1e-12:
            den = 1e-12
        t = gap / den
        tb_i = (C - lam[i]) if ui > 0 else lam[i]
        tb_j = lam[j] if uj > 0 else (C - lam[j])
        t = min(t, tb_i, tb_j)

        new_i = lam[i] + ui * t
        new_j = lam[j] - uj * t
        if t == tb_i:
            new_i = C if ui > 0 else 0.0
        if t == tb_j:
            new_j = 0.0 if uj > 0 else C
        lam[i] = new_i
        lam[j] = new_j

        dh = t * (K[:, ii] - K[:, jj])
        g_pos = g_pos + dh
        g_neg = g_neg - dh
        steps += 1

    beta = lam[:m] - lam[m:]
    # bias from free multipliers; midpoint of the KKT interval otherwise
    free_pos = (lam[:m] > 0.0) & (lam[:m] < C)
    free_neg = (lam[m:] > 0.0) & (lam[m:] < C)
    n_free = int(free_pos.sum() + free_neg.sum())
    if n_free > 0:
        bias = ((-g_pos[free_pos]).sum() + g_neg[free_neg].sum()) / n_free
    else:
        up_pos = np.where(lam[:m] < C, -g_pos, minus_inf)
        up_neg = np.where(lam[m:] > 0.0, g_neg, minus_inf)
        lo_pos = np.where(lam[:m] > 0.0, -g_pos, np.inf)
        lo_neg = np.where(lam[m:] < C, g_neg, np.inf)
        hi = max(float(np.max(up_pos)), float(np.max(up_neg)))
        lo = min(float(np.min(lo_pos)), float(np.min(lo_neg)))
        bias = (hi + lo) / 2.0
    return beta, float(bias), steps, float(gap), converged


# ---------------------------------------------------------------------------
# thermal: batched RK4 cooling
# ---------------------------------------------------------------------------

def sf6_lambda_raw(T):
    """SF6 thermal-conductivity polynomial, no validity-window check."""
    return (4.37e-3 + T * (-5.78e-5 + T * (4.79e-7 + T * (-9.19e-10
            + T * (8.18e-13 + T * -2.82e-16)))))


def cool_batch(t_peak, t2, k0, mcp, t_amb, dt, use_gas_ratio=True):
    """Integrate dT/dt = -k(T) (T - T_amb)/(m cp) for each scenario.

    Fixed-step classic RK4 with step dt; the final partial step covers the
    remainder so every scenario integrates exactly its own t2.  With
    use_gas_ratio False the conductance stays pinned at k0 (the constant-k
    variant has a closed-form solution, used to validate the integrator).
    """
    lam_ref = sf6_lambda_raw(300.0)

    def rate(T):
        if use_gas_ratio:
            k = k0 * sf6_lambda_raw((T + t_amb) / 2.0) / lam_ref
        else:
            k = k0
        return -k * (T - t_amb) / mcp

    T = t_peak.astype(np.float64, copy=True)
    remaining = t2.astype(np.float64, copy=True)
    while True:
        h = np.minimum(remaining, dt)
        active = h > 0.0
        if not active.any():
            break
        k1 = rate(T)
        k2 = rate(T + 0.5 * h * k1)
        k3 = rate(T + 0.5 * h * k2)
        k4 = rate(T + h * k3)
        T = T + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        remaining = remaining - h
    return T
