"""
The p^{3/2} term is really there
================================

The fluctuation A2 - (p^2 - n p - 1) divided by p^{3/2} equals -2 cos(theta)
for the Frobenius angle of y^2 = x^3 + 16, so over split primes it fills
[-2, 2]. Writes a histogram to sharpness.png when matplotlib is available.
"""

from ecmoments.sharpness import fluctuation_sweep, interval_hit_report

P_MAX = 10**5
records = list(fluctuation_sweep(5, P_MAX))
report = interval_hit_report(P_MAX, 0.5, records=records)
print(report.to_csv())
print("every bin hit:", report.all_bins_hit())
print("inert primes all zero:", all(r.fluct == 0 for r in records if r.p % 3 == 2))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    split = [r for r in records if r.p % 3 == 1]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.hist([r.normalized for r in split], bins=40, range=(-2, 2))
    ax1.set_xlabel("fluctuation / p^(3/2)")
    ax2.hist([r.theta for r in split], bins=40, range=(0, 3.1416))
    ax2.set_xlabel("theta")
    fig.tight_layout()
    fig.savefig("sharpness.png", dpi=120)
    print("wrote sharpness.png")
