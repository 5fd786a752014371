"""Dense QP oracle for the epsilon-tube dual, used by the solver tests.

The dual in stacked variables lam = (alpha, alpha*) in R^{2m} is

    min 1/2 lam^T [[K, -K], [-K, K]] lam + [eps - y; eps + y]^T lam
    s.t. 0 <= lam <= C,  sum(alpha) - sum(alpha*) = 0,

solved here with cvxopt's interior-point QP.  beta = alpha - alpha*.

The offset needs care: KKT pins it only to an interval

    lo = max over { F_i - eps : alpha_i free-or-zero-side lower bounds, ... }

computed by bias_interval() from a solution's exact bound states (use the
decomposition solver's beta for that — interior-point iterates never sit
exactly on a bound, so thresholding cvxopt's lam misclassifies states).
When at least one coefficient is strictly inside the box the interval
collapses to a point and full predictions are comparable; otherwise any
offset inside the interval is optimal.
"""

import numpy as np
import cvxopt

cvxopt.solvers.options["show_progress"] = False
# The oracle must be solved well below the comparison tolerance, otherwise
# its own termination slack shows up as false disagreement on degenerate
# (all-coefficients-at-bound) problems.
cvxopt.solvers.options["abstol"] = 1e-10
cvxopt.solvers.options["reltol"] = 1e-9
cvxopt.solvers.options["feastol"] = 1e-9


def solve_qp(K, y, c, eps):
    """Return the oracle's beta for the dual above."""
    m = len(y)
    P = np.block([[K, -K], [-K, K]]) + 1e-10 * np.eye(2 * m)
    q = np.concatenate([eps - y, eps + y])
    G = np.vstack([-np.eye(2 * m), np.eye(2 * m)])
    h = np.concatenate([np.zeros(2 * m), np.full(2 * m, c)])
    A = np.concatenate([np.ones(m), -np.ones(m)])[None, :]
    sol = cvxopt.solvers.qp(
        cvxopt.matrix(P), cvxopt.matrix(q), cvxopt.matrix(G),
        cvxopt.matrix(h), cvxopt.matrix(A), cvxopt.matrix(np.zeros(1)),
    )
    if sol["status"] not in ("optimal", "unknown"):
        raise RuntimeError(f"oracle QP failed: {sol['status']}")
    lam = np.array(sol["x"]).ravel()
    return lam[:m] - lam[m:]


def dual_objective(beta, K, y, eps):
    """Dual objective in beta form (valid at complementarity)."""
    return 0.5 * beta @ K @ beta + eps * np.abs(beta).sum() - y @ beta


def bias_interval(beta, K, y, c, eps, state_tol=1e-9):
    """KKT-feasible offset interval [lo, hi] for a dual solution beta.

    Bound states are read off beta directly, so pass a solution whose
    coefficients snap exactly to 0 and +-C.  lo > hi by more than the solver
    tolerance indicates an invalid solution.
    """
    F = y - K @ beta
    lo, hi = -np.inf, np.inf
    for i in range(len(y)):
        a_pos = max(beta[i], 0.0)
        a_neg = max(-beta[i], 0.0)
        if a_pos <= state_tol:
            lo = max(lo, F[i] - eps)
        elif a_pos >= c - state_tol:
            hi = min(hi, F[i] - eps)
        else:
            lo = max(lo, F[i] - eps)
            hi = min(hi, F[i] - eps)
        if a_neg <= state_tol:
            hi = min(hi, F[i] + eps)
        elif a_neg >= c - state_tol:
            lo = max(lo, F[i] + eps)
        else:
            lo = max(lo, F[i] + eps)
            hi = min(hi, F[i] + eps)
    return lo, hi


def random_regression(rng, max_n=20):
    """One random small regression problem in O(1) units."""
    n = int(rng.integers(6, max_n + 1))
    d = int(rng.integers(1, 4))
    X = rng.uniform(-2.0, 2.0, size=(n, d))
    y = np.sin(X).sum(axis=1) + 0.1 * rng.normal(size=n)
    c = float(10.0 ** rng.uniform(-1.0, 2.0))
    gamma = float(10.0 ** rng.uniform(-1.5, 0.5))
    return X, y, c, gamma
