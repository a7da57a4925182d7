"""Period matrices of genus-2 curves y^2 = f(x), deg f = 6, in a symplectic basis.

Offline helper for the fixture corpus; prints a JSON object with one
2x4 period matrix (decimal-string pairs) per curve. Requires mpmath.

    python3 curve_periods.py --dps 40 65B1:-1,-4,3,28,-7,-62,42 ...

Coefficients are listed from x^6 down to x^0.
"""
import argparse
import itertools
import json

from mpmath import mp, mpf, matrix, sqrt, cos, pi, quad, polyroots, inverse, eig, nstr


def chain_periods(coeffs):
    """Periods of dx/y, x dx/y over the chain loops around consecutive roots."""
    lc = mpf(coeffs[0])
    roots = polyroots(coeffs, maxsteps=400, extraprec=4 * mp.prec)
    roots = sorted(roots, key=lambda z: (mp.re(z), mp.im(z)))
    out = []
    for k in range(5):
        a, b = roots[k], roots[k + 1]
        h = b - a
        others = [e for i, e in enumerate(roots) if i not in (k, k + 1)]
        g0 = -lc
        for e in others:
            g0 *= a - e
        s0 = sqrt(g0)

        def sqrtg(s):
            r = s0
            for e in others:
                r *= sqrt(1 + s * h / (a - e))
            return r

        def integral(j):
            return quad(lambda t: (a + (1 - cos(t)) / 2 * h) ** j / sqrtg((1 - cos(t)) / 2), [0, pi])

        out.append((2 * integral(0), 2 * integral(1)))
    return out


def symplectic_rows():
    # the chain loops meet their neighbours once (tridiagonal +-1 intersection
    # matrix); these rows normalize it to [[0,I],[-I,0]]
    return [[1, 0, 0, 0], [1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]


def symplectic_periods(coeffs):
    chain = chain_periods(coeffs)
    s = symplectic_rows()
    best = None
    for signs in itertools.product((1, -1), repeat=3):
        e = (1,) + signs
        om = matrix(2, 4)
        for r in range(2):
            for c in range(4):
                om[r, c] = sum(s[c][k] * e[k] * chain[k][r] for k in range(4))
        z = inverse(om[:, 0:2]) * om[:, 2:4]
        im = matrix([[mp.im(z[0, 0]), mp.im(z[0, 1])], [mp.im(z[1, 0]), mp.im(z[1, 1])]])
        if abs(z[0, 1] - z[1, 0]) < mpf(10) ** (-mp.dps // 2) and min(mp.re(x) for x in eig(im)[0]) > 0:
            best = om
    if best is None:
        raise SystemExit("no sign choice gives a Siegel point")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dps", type=int, default=40)
    ap.add_argument("curves", nargs="+", help="NAME:c6,c5,...,c0")
    args = ap.parse_args()
    mp.dps = args.dps
    result = {}
    for spec in args.curves:
        name, cs = spec.split(":")
        coeffs = [int(c) for c in cs.split(",")]
        om = symplectic_periods(coeffs)
        digits = args.dps - 5
        result[name] = [[[nstr(mp.re(om[r, c]), digits, min_fixed=-1, max_fixed=1),
                          nstr(mp.im(om[r, c]), digits, min_fixed=-1, max_fixed=1)] for c in range(4)]
                        for r in range(2)]
    print(json.dumps(result, indent=1))


if __name__ == "__main__":
    main()
