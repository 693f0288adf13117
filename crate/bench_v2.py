import sympy as sp, time
from sympy import symbols

s, u, C, D = symbols('s u C D')
r = u**2 + s**2 + 1 - u*s
P = sp.expand((r - 4)*(r - s**2) + 2)
Q = sp.expand(P*1 + (s*(s*1 - u) - 1)*(r - 4) - 1)
t0 = time.time()
P2 = sp.expand(P.subs({s: P, u: Q}, simultaneous=True))
Q2 = sp.expand(Q.subs({s: P, u: Q}, simultaneous=True))
print("compose %.1fs" % (time.time() - t0), "P2 terms:", len(P2.as_ordered_terms()), "deg_u:", sp.degree(P2, u), flush=True)
h1 = sp.Poly(P2 - 2 - C, u)
h2 = sp.Poly(Q2 - (C + 1) - D, u)
t0 = time.time()
R = sp.resultant(h1, h2)
print("resultant %.1fs" % (time.time() - t0), flush=True)
R = sp.expand(R)
print("R terms:", len(R.as_ordered_terms()), "deg_s:", sp.degree(R, s), "deg C:", sp.degree(R, C), "deg D:", sp.degree(R, D), flush=True)
