"""Independent high-precision evaluation of the closed-form values frozen into
the C++ unit tests. Run with `python3 tests/oracles/closed_forms.py`."""
from mpmath import mp, mpf, e, exp, pi, sqrt, zeta

mp.dps = 40

# Geometric example: (1 + c) e^-1 / (1 - e^-1) = 1
c = e - 2
a = lambda i: c * exp(-i)
b = lambda i: exp(-i)
print("geo c", c)
print("geo a1", a(1), "b1", b(1))
bb = lambda i: mpf(0) if i == 0 else b(i)
p = lambda x: a(x) * b(x) / ((a(x) + bb(x - 1)) * (a(x) + b(x)))
q = lambda x: a(x - 1) * b(x - 1) / ((a(x) + bb(x - 1)) * (a(x - 1) + b(x - 1)))
print("p1", p(1), "p2", p(2), "q2", q(2), "ratio", p(2) / q(2), exp(-1))
z = mpf("1.3")
print("coef z=1.3 x=10", p(10) * (z - 1) + q(10) * (1 / z - 1) + 1)
print("T limit c(e-1)/((1+c)(c+e))", c * (e - 1) / ((1 + c) * (c + e)))

# untruncated T_i for the geometric example
def T(i):
    mu = sum(a(x) + bb(x - 1) for x in range(i, 400))
    return a(i - 1) * b(i - 1) / (a(i - 1) + b(i - 1)) / (mu * (1 - mu))
print("T20", T(20), "T30", T(30))

# lift arithmetic with lambda = 0.9602, p = 1/2
lam, pp = mpf("0.9602"), mpf("0.5")
lo, hi = pp / (1 - pp), pp / (lam * (1 - pp))
cc = sqrt(lo * hi)
print("lift c", cc, "gamma", max((1 - pp) * (cc * lam + 1), pp * (1 + cc) / cc))

# power law d = 2, c1 = c2
print("power c1", 1 / (2 * zeta(2)), 3 / pi**2)

# mixed geometric: c e^-1/(1-e^-1) + e^-2/(1-e^-2) = 1
c3 = (1 - exp(-2) / (1 - exp(-2))) * (1 - exp(-1)) / exp(-1)
print("mixed c", c3)
