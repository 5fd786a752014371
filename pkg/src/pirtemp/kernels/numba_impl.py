"""Numba-compiled implementations of the hot kernels.

Loop-style twins of ``numpy_impl`` (same names, same signatures, same
pre-drawn randomness).  All kernels are nopython-compiled with caching, so
the first call per process pays the compile; afterwards these are the fast
path the package selects by default.
"""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# benchmark functions
# ---------------------------------------------------------------------------

@njit(cache=True)
def _penalty_u_scalar(x, a, k, m):
    if x > a:
        return k * (x - a) ** m
    if x < -a:
        return k * (-x - a) ** m
    return 0.0


@njit(cache=True)
def bench_batch(fid, X):
    n, d = X.shape
    out = np.empty(n)
    if fid == 1:
        for i in range(n):
            s = 0.0
            for j in range(d):
                s += X[i, j] * X[i, j]
            out[i] = s
    elif fid == 2:
        for i in range(n):
            s = 0.0
            pr = 1.0
            for j in range(d):
                a = abs(X[i, j])
                s += a
                pr *= a
            out[i] = s + pr
    elif fid == 3:
        for i in range(n):
            s = 0.0
            c = 0.0
            for j in range(d):
                c += X[i, j]
                s += c * c
            out[i] = s
    elif fid == 4:
        for i in range(n):
            mx = 0.0
            for j in range(d):
                a = abs(X[i, j])
                if a > mx:
                    mx = a
            out[i] = mx
    elif fid == 5:
        for i in range(n):
            s1 = 0.0
            s2 = 0.0
            for j in range(d):
                s1 += X[i, j] * X[i, j]
                s2 += np.cos(TWO_PI * X[i, j])
            out[i] = (-20.0 * np.exp(-0.2 * np.sqrt(s1 / d))
                      - np.exp(s2 / d) + 20.0 + np.e)
    elif fid == 6:
        for i in range(n):
            y0 = 1.0 + (X[i, 0] + 1.0) / 4.0
            t = 10.0 * np.sin(np.pi * y0) ** 2
            pen = _penalty_u_scalar(X[i, 0], 10.0, 100.0, 4)
            yprev = y0
            for j in range(1, d):
                yj = 1.0 + (X[i, j] + 1.0) / 4.0
                t += (yprev - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * yj) ** 2)
                pen += _penalty_u_scalar(X[i, j], 10.0, 100.0, 4)
                yprev = yj
            t += (yprev - 1.0) ** 2
            out[i] = np.pi / d * t + pen
    elif fid == 7:
        for i in range(n):
            t = np.sin(3.0 * np.pi * X[i, 0]) ** 2
            pen = _penalty_u_scalar(X[i, 0], 5.0, 100.0, 4)
            for j in range(d - 1):
                t += ((X[i, j] - 1.0) ** 2
                      * (1.0 + np.sin(3.0 * np.pi * X[i, j + 1]) ** 2))
                pen += _penalty_u_scalar(X[i, j + 1], 5.0, 100.0, 4)
            xl = X[i, d - 1]
            t += (xl - 1.0) ** 2 * (1.0 + np.sin(TWO_PI * xl) ** 2)
            out[i] = 0.1 * t + pen
    else:
        raise ValueError("unknown benchmark id")
    return out


# ---------------------------------------------------------------------------
# whale population update
# ---------------------------------------------------------------------------

@njit(cache=True)
def whale_step(X, best_x, a, b, r1, r2, p, l, ridx, lb, ub):
    n, d = X.shape
    Xn = np.empty_like(X)
    for i in range(n):
        A = 2.0 * a * r1[i] - a
        C = 2.0 * r2[i]
        if p[i] >= 0.5:
            ebl = np.exp(b * l[i])
            cl = np.cos(TWO_PI * l[i])
            for j in range(d):
                Xn[i, j] = abs(best_x[j] - X[i, j]) * ebl * cl + best_x[j]
        elif abs(A) >= 1.0:
            r = ridx[i]
            for j in range(d):
                Xn[i, j] = X[r, j] - A * abs(C * X[r, j] - X[i, j])
        else:
            for j in range(d):
                Xn[i, j] = best_x[j] - A * abs(C * best_x[j] - X[i, j])
        for j in range(d):
            v = Xn[i, j]
            if v < lb[j]:
                v = lb[j]
            elif v > ub[j]:
                v = ub[j]
            Xn[i, j] = v
    return Xn


# ---------------------------------------------------------------------------
# grey-wolf population update
# ---------------------------------------------------------------------------

@njit(cache=True)
def gwo_step(X, xa, xb, xd, a, r1, r2, lb, ub):
    n, d = X.shape
    Xn = np.empty_like(X)
    for i in range(n):
        for j in range(d):
            A1 = 2.0 * a * r1[0, i, j] - a
            C1 = 2.0 * r2[0, i, j]
            x1 = xa[j] - A1 * abs(C1 * xa[j] - X[i, j])
            A2 = 2.0 * a * r1[1, i, j] - a
            C2 = 2.0 * r2[1, i, j]
            x2 = xb[j] - A2 * abs(C2 * xb[j] - X[i, j])
            A3 = 2.0 * a * r1[2, i, j] - a
            C3 = 2.0 * r2[2, i, j]
            x3 = xd[j] - A3 * abs(C3 * xd[j] - X[i, j])
            v = (x1 + x2 + x3) / 3.0
            if v < lb[j]:
                v = lb[j]
            elif v > ub[j]:
                v = ub[j]
            Xn[i, j] = v
    return Xn


# ---------------------------------------------------------------------------
# sparrow-search population update
# ---------------------------------------------------------------------------

@njit(cache=True)
def ssa_step(X, fit, order, gbest_x, gbest_f, max_iter, n_prod, n_scout, st,
             r2_alarm, alpha, q_prod, q_scr, sgn_u, scout_idx, k_gauss, k_uni,
             lb, ub):
    n, d = X.shape
    Xn = X.copy()

    for r in range(n_prod):
        i = order[r]
        if r2_alarm < st:
            al = alpha[r]
            if al < 1e-12:
                al = 1e-12
            decay = np.exp(-(r + 1.0) / (al * max_iter))
            for j in range(d):
                Xn[i, j] = X[i, j] * decay
        else:
            for j in range(d):
                Xn[i, j] = X[i, j] + q_prod[r]

    xp = Xn[order[0]].copy()
    worst = order[n - 1]
    f_worst = fit[worst]

    for s in range(n - n_prod):
        i = order[n_prod + s]
        rank = n_prod + s + 1.0
        if rank > n / 2.0:
            for j in range(d):
                Xn[i, j] = q_scr[s] * np.exp((X[worst, j] - X[i, j]) / (rank * rank))
        else:
            off = 0.0
            for j in range(d):
                sgn = -1.0 if sgn_u[s, j] < 0.5 else 1.0
                off += sgn * abs(X[i, j] - xp[j])
            off /= d
            for j in range(d):
                Xn[i, j] = xp[j] + off

    for s in range(n_scout):
        i = scout_idx[s]
        if fit[i] > gbest_f:
            for j in range(d):
                Xn[i, j] = gbest_x[j] + k_gauss[s] * abs(X[i, j] - gbest_x[j])
        elif fit[i] == gbest_f:
            denom = fit[i] - f_worst + 1e-50
            for j in range(d):
                Xn[i, j] = X[i, j] + k_uni[s] * (abs(X[i, j] - X[worst, j]) / denom)

    for i in range(n):
        for j in range(d):
            v = Xn[i, j]
            if v < lb[j]:
                v = lb[j]
            elif v > ub[j]:
                v = ub[j]
            Xn[i, j] = v
    return Xn


# ---------------------------------------------------------------------------
# SVR: RBF kernel and the sequential pair solver
# ---------------------------------------------------------------------------

@njit(cache=True)
def sq_dists(X, Y):
    n, d = X.shape
    m = Y.shape[0]
    out = np.empty((n, m))
    for i in range(n):
        for k in range(m):
            s = 0.0
            for j in range(d):
                diff = X[i, j] - Y[k, j]
                s += diff * diff
            out[i, k] = s
    return out


@njit(cache=True)
def rbf_from_sq(D2, gamma):
    n, m = D2.shape
    out = np.empty((n, m))
    for i in range(n):
        for k in range(m):
            out[i, k] = np.exp(-gamma * D2[i, k])
    return out


@njit(cache=True)
def smo_solve(K, y, C, eps, tol, max_steps):
    m = y.shape[0]
    lam = np.zeros(2 * m)
    g_pos = np.empty(m)
    g_neg = np.empty(m)
    for k in range(m):
        g_pos[k] = eps - y[k]
        g_neg[k] = eps + y[k]

    steps = 0
    converged = False
    gap = np.inf
    while True:
        vi = -np.inf
        i = -1
        ui = 0.0
        vj = np.inf
        j = -1
        uj = 0.0
        for k in range(m):
            if lam[k] < C and -g_pos[k] > vi:
                vi = -g_pos[k]
                i = k
                ui = 1.0
            if lam[k] > 0.0 and -g_pos[k] < vj:
                vj = -g_pos[k]
                j = k
                uj = 1.0
        for k in range(m):
            if lam[m + k] > 0.0 and g_neg[k] > vi:
                vi = g_neg[k]
                i = m + k
                ui = -1.0
            if lam[m + k] < C and g_neg[k] < vj:
                vj = g_neg[k]
                j = m + k
                uj = -1.0

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
        if tb_i < t:
            t = tb_i
        if tb_j < t:
            t = tb_j

        new_i = lam[i] + ui * t
        new_j = lam[j] - uj * t
        if t == tb_i:
            new_i = C if ui > 0 else 0.0
        if t == tb_j:
            new_j = 0.0 if uj > 0 else C
        lam[i] = new_i
        lam[j] = new_j

        for k in range(m):
            dh = t * (K[k, ii] - K[k, jj])
            g_pos[k] += dh
            g_neg[k] -= dh
        steps += 1

    beta = np.empty(m)
    for k in range(m):
        beta[k] = lam[k] - lam[m + k]

    n_free = 0
    acc = 0.0
    for k in range(m):
        if 0.0 < lam[k] < C:
            acc += -g_pos[k]
            n_free += 1
        if 0.0 < lam[m + k] < C:
            acc += g_neg[k]
            n_free += 1
    if n_free > 0:
        bias = acc / n_free
    else:
        hi = -np.inf
        lo = np.inf
        for k in range(m):
            if lam[k] < C and -g_pos[k] > hi:
                hi = -g_pos[k]
            if lam[m + k] > 0.0 and g_neg[k] > hi:
                hi = g_neg[k]
            if lam[k] > 0.0 and -g_pos[k] < lo:
                lo = -g_pos[k]
            if lam[m + k] < C and g_neg[k] < lo:
                lo = g_neg[k]
        bias = (hi + lo) / 2.0
    return beta, bias, steps, gap, converged


# ---------------------------------------------------------------------------
# thermal: batched RK4 cooling
# ---------------------------------------------------------------------------

@njit(cache=True)
def sf6_lambda_raw(T):
    return (4.37e-3 + T * (-5.78e-5 + T * (4.79e-7 + T * (-9.19e-10
            + T * (8.18e-13 + T * -2.82e-16)))))


@njit(cache=True)
def _cool_rate(T, k0, mcp, t_amb, lam_ref, use_gas_ratio):
    if use_gas_ratio:
        k = k0 * sf6_lambda_raw((T + t_amb) / 2.0) / lam_ref
    else:
        k = k0
    return -k * (T - t_amb) / mcp


@njit(cache=True)
def cool_batch(t_peak, t2, k0, mcp, t_amb, dt, use_gas_ratio=True):
    lam_ref = sf6_lambda_raw(300.0)
    n = t_peak.shape[0]
    out = np.empty(n)
    for i in range(n):
        T = t_peak[i]
        remaining = t2[i]
        while remaining > 0.0:
            h = dt if remaining > dt else remaining
            k1 = _cool_rate(T, k0, mcp, t_amb, lam_ref, use_gas_ratio)
            k2 = _cool_rate(T + 0.5 * h * k1, k0, mcp, t_amb, lam_ref, use_gas_ratio)
            k3 = _cool_rate(T + 0.5 * h * k2, k0, mcp, t_amb, lam_ref, use_gas_ratio)
            k4 = _cool_rate(T + h * k3, k0, mcp, t_amb, lam_ref, use_gas_ratio)
            T = T + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            remaining -= h
        out[i] = T
    return out
