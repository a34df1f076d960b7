"""Independent high-precision reference values for the Mittag-Leffler tests.

Sums the defining power series sum z^n / Gamma(alpha n + beta) with mpmath.  The
working precision is set per case from the size of the largest term, so the
alternating-sign cancellation never reaches the printed digits.  Run with `python3 ml_reference.py` to regenerate the table that is
frozen into tests/unit/test_mlf.cpp.
"""
import mpmath as mp

mp.mp.dps = 30


def ml(alpha, beta, z):
    # Working precision covers the largest term plus 60 guard digits.
    with mp.workdps(30):
        x = abs(mp.mpf(z))
        peak = max(mp.log10(x) * n - mp.log10(abs(mp.gamma(alpha * n + beta)) + mp.mpf(10) ** -300)
                   for n in range(1, 4000)) if x > 0 else 0
    with mp.workdps(int(max(peak, 0)) + 60):
        return +_series(alpha, beta, z)


def _series(alpha, beta, z):
    alpha, beta, z = mp.mpf(alpha), mp.mpf(beta), mp.mpf(z)
    total = mp.mpf(0)
    n = 0
    while True:
        term = z**n * mp.rgamma(alpha * n + beta)
        total += term
        if n > 10 and abs(term) < mp.mpf(10) ** (-60) * (abs(total) + mp.mpf(10) ** (-200)):
            break
        n += 1
    return total


CASES = [
    (0.5, 1.0, -1.0), (0.5, 2.0, -1.0), (1.5, 2.0, -1.0), (1.5, 3.0, -1.0),
    (0.5, 1.5, -1.0), (1.0, 1.5, -1.0), (1.0, 0.5, -1.0),
    (0.5, 1.0, -3.0), (0.5, 1.0, -7.5), (0.5, 2.0, -12.0), (0.5, 0.5, -9.0),
    (0.75, 1.0, -10.0), (0.75, 1.75, -25.0), (0.75, 0.75, -6.0),
    (0.9, 1.0, -15.0), (0.95, 1.0, -20.0), (1.05, 2.05, -20.0),
    (1.0, 0.5, -12.0), (1.0, 1.5, -25.0), (1.0, 2.5, -40.0),
    (1.25, 1.0, -18.0), (1.25, 2.25, -30.0), (1.5, 3.0, -40.0), (1.5, 2.0, -60.0),
    (1.5, 1.0, -30.0), (1.75, 2.5, -50.0), (2.0, 1.5, -80.0), (2.0, 3.0, -150.0),
    (0.3, 1.0, -4.0), (0.6, 1.6, -8.0), (1.5, 3.0, -300.0),
    (0.5, 1.0, -40.0), (0.75, 1.75, -120.0),
]

if __name__ == "__main__":
    for a, b, z in CASES:
        print("    {%.17g, %.17g, %.17g, %s}," % (a, b, z, mp.nstr(ml(a, b, z), 20, min_fixed=-5, max_fixed=5)))
