"""The environment-dressed covariance: exact closed form versus its
super-Hubble asymptotics.

The exact dressed covariance is a combination of incomplete gamma
functions of imaginary argument (through the oscillatory moment
integrals); on super-Hubble scales it collapses onto power laws whose
coefficients are tabulated once per parameter set.

Run:  python demos/04_dressed_covariance.py
"""

from gausslind import (
    CosmoParams,
    approx_open_covariance,
    asymptotic_coefficients,
    de_sitter_covariance_closed,
    exact_open_covariance,
)

for p in (2.1, 6.1):
    params = CosmoParams(kGamma_over_kstar=10.0, p=p, ellH=0.1)
    t = asymptotic_coefficients(params)
    print(f"p = {p}: leading coefficients a11 = {t.a11:+.5f}, "
          f"b11 = {t.b11:+.5f} (a22 = {t.a22:+.5f})")
    print(f"{'x':>8} {'g11 exact':>12} {'free':>12} {'dressing':>10} "
          f"{'approx dev':>11}")
    for x in (0.5, 0.1, 0.02, 0.005):
        exact = exact_open_covariance(x, params)
        free = de_sitter_covariance_closed(x)
        boost = exact.g11 / free.g11
        if x < 0.1:
            dev = abs(approx_open_covariance(x, params).g11 / exact.g11 - 1.0)
            dev_s = f"{dev:11.2e}"
        else:
            dev_s = f"{'-':>11}"
        print(f"{x:8.3f} {exact.g11:12.5g} {free.g11:12.5g} {boost:10.3g} {dev_s}")
    print()

print("The identity (4-p) a22 = 2 (6-p) a11 + 1 ties the non-analytic")
print("coefficients of g11 and g22 together:")
for p in (0.5, 3.7, 9.3):
    t = asymptotic_coefficients(CosmoParams(1.0, p, 0.1))
    print(f"  p = {p}: residual = {(4 - p) * t.a22 - 2 * (6 - p) * t.a11 - 1.0:+.2e}")
