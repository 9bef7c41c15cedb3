"""Grid residuals of the governing fractional equations.

Each residual assembles the two sides of a governing equation from
independent code paths (analytic distributions on one side, L1-scheme
fractional derivatives or difference stencils on the other) and reports
|LHS - RHS|.  Halving the step should contract the residual by roughly
2^-(2-beta); the tables below show that contraction directly.
"""

from fracpoisson import governing_residual

BETA = 0.5
LAM = 1.0


def master_equation():
    print("fractional master equation  d^beta p(n,t) = -lam [p(n,t) - p(n-1,t)]")
    print(f"{'step':>8} {'n=0,t=1':>12} {'n=1,t=1':>12} {'n=2,t=2':>12}")
    for step in (4e-3, 2e-3, 1e-3):
        row = [
            governing_residual(
                "fpp_master", {"beta": BETA, "lam": LAM, "step": step}, point
            )
            for point in ((0, 1.0), (1, 1.0), (2, 2.0))
        ]
        print(f"{step:8.0e} " + " ".join(f"{r:12.3e}" for r in row))
    print()


def transport_equation():
    print("inverse-subordinator transport  d^beta h(x,t) = -dx h(x,t)")
    print(f"{'step':>8} {'x=0.5,t=1':>12} {'x=1,t=1':>12} {'x=1,t=2':>12}")
    for step in (4e-3, 2e-3, 1e-3):
        row = [
            governing_residual("inverse_density", {"step": step}, point)
            for point in ((0.5, 1.0), (1.0, 1.0), (1.0, 2.0))
        ]
        print(f"{step:8.0e} " + " ".join(f"{r:12.3e}" for r in row))
    print()


def brownian_time():
    print("heat equation with moving source for u(x,t) = E[f(x - E(t))]")
    print(f"{'step':>8} {'x=0.3,t=1':>12} {'x=1,t=0.5':>12}")
    for step in (4e-3, 2e-3, 1e-3):
        row = [
            governing_residual("brownian_time", {"step": step}, point)
            for point in ((0.3, 1.0), (1.0, 0.5))
        ]
        print(f"{step:8.0e} " + " ".join(f"{r:12.3e}" for r in row))
    print()


if __name__ == "__main__":
    master_equation()
    transport_equation()
    brownian_time()
