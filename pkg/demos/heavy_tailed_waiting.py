"""Heavy-tailed waiting times of the fractional counting process.

The waiting time between events has survival function E_beta(-lam t^beta),
a Mittag-Leffler function: stretched-exponential at short times, power
law t^-beta at long times, and infinite mean for beta < 1.  This script
tabulates that survival next to the exponential clock with the same
short-time behavior, checks simulated first waits against the analytic
curve, and shows the sample mean refusing to settle.
"""

import math

import numpy as np

from fracpoisson import RngStream, ml_waiting_survival, simulate_fpp

BETA = 0.6
LAM = 1.0
SEED = 2026


def survival_table():
    print(f"waiting-time survival, beta={BETA}, lam={LAM}")
    print(f"{'t':>8} {'ML survival':>12} {'exp(-lam t)':>12} {'power tail':>12}")
    for t in (0.1, 0.5, 1.0, 5.0, 20.0, 100.0, 1000.0):
        ml = ml_waiting_survival(BETA, LAM, t)
        ex = math.exp(-LAM * t)
        # long-time asymptote t^-beta / (lam Gamma(1-beta))
        tail = t ** (-BETA) / (LAM * math.gamma(1.0 - BETA))
        print(f"{t:8.1f} {ml:12.6f} {ex:12.2e} {tail:12.6f}")
    print()


def empirical_check(n_paths=20_000):
    rng = RngStream(SEED, 0)
    waits = np.array([
        simulate_fpp(BETA, LAM, 1e-9, rng).jump_times[0] for i in range(n_paths)
    ])
    print(f"empirical survival from {n_paths} simulated first waits")
    print(f"{'t':>8} {'empirical':>10} {'analytic':>10}")
    for t in (0.5, 1.0, 2.0, 5.0, 20.0):
        emp = float(np.mean(waits > t))
        ana = ml_waiting_survival(BETA, LAM, t)
        print(f"{t:8.1f} {emp:10.4f} {ana:10.4f}")
    print()
    print("running sample mean of the waits (no finite mean to converge to):")
    for k in (100, 1_000, 10_000, n_paths):
        print(f"  first {k:>6} paths: {waits[:k].mean():10.2f}")
    print()


if __name__ == "__main__":
    survival_table()
    empirical_check()
