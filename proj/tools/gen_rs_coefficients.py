#!/usr/bin/env python3
"""Emit src/rs_coefficients.inc: Taylor coefficients of the Riemann-Siegel
correction terms C_0..C_4 expanded about p = 1/2 (u = p - 1/2, |u| <= 1/2).

    Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)

    C_0 = Psi
    C_1 = -Psi'''/(96 pi^2)
    C_2 = Psi^(6)/(18432 pi^4) + Psi''/(64 pi^2)
    C_3 = -Psi^(9)/(5308416 pi^6) - Psi^(5)/(3840 pi^4) - Psi'/(64 pi^2)
    C_4 = Psi^(12)/(2038431744 pi^8) + 11 Psi^(8)/(5898240 pi^6)
          + 19 Psi^(4)/(24576 pi^4) + Psi/(128 pi^2)

Requires mpmath. Usage: tools/gen_rs_coefficients.py > src/rs_coefficients.inc
"""
import mpmath as mp

mp.mp.dps = 60
ORDER = 70


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def main():
    series = mp.taylor(psi, mp.mpf(1) / 2, ORDER + 14)

    def derivative(j):
        return [series[m + j] * mp.factorial(m + j) / mp.factorial(m) for m in range(ORDER)]

    pi = mp.pi
    recipe = {
        0: [(1, 0)],
        1: [(-1 / (96 * pi**2), 3)],
        2: [(1 / (18432 * pi**4), 6), (1 / (64 * pi**2), 2)],
        3: [(-1 / (5308416 * pi**6), 9), (-1 / (3840 * pi**4), 5), (-1 / (64 * pi**2), 1)],
        4: [(1 / (2038431744 * pi**8), 12), (11 / (5898240 * pi**6), 8),
            (19 / (24576 * pi**4), 4), (1 / (128 * pi**2), 0)],
    }
    print("// Generated by tools/gen_rs_coefficients.py. Do not edit.")
    print("// Taylor coefficients in u = p - 1/2 of the Riemann-Siegel corrections C_k(p).")
    for k, parts in recipe.items():
        coeffs = [mp.mpf(0)] * ORDER
        for scale, j in parts:
            d = derivative(j)
            for m in range(ORDER):
                coeffs[m] += scale * d[m]
        last = max(m for m in range(ORDER) if abs(coeffs[m]) * mp.mpf(0.5) ** m > mp.mpf("1e-22"))
        body = ",\n    ".join(mp.nstr(c, 20, min_fixed=1, max_fixed=0) for c in coeffs[: last + 1])
        print(f"constexpr double kRsC{k}[] = {{\n    {body}}};")


if __name__ == "__main__":
    main()
