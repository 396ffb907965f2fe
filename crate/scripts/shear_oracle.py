"""Brute-force zig-zag on R^2 with sympy.

Forms are dicts {sorted index tuple: sympy expr}. The homotopy operator is
evaluated as the radial integral  (h a)(x) = int_0^1 t^(k-1) (i(x) a)(t x) dt
rather than by per-monomial factors, so it shares no code path with the
Rust implementation.
"""
import itertools
import sympy as sp

x, y, t = sp.symbols("x y t")
X = (x, y)


def sign_sort(idx):
    idx = list(idx)
    s = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                s = -s
    return s, tuple(idx)


def add(a, b, cb=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = sp.expand(out.get(k, 0) + cb * v)
    return {k: v for k, v in out.items() if v != 0}


def d(a):
    out = {}
    for idx, f in a.items():
        for j in range(2):
            if j in idx:
                continue
            s, nidx = sign_sort((j,) + idx)
            out = add(out, {nidx: s * sp.diff(f, X[j])})
    return out


def contract_radial(a):
    out = {}
    for idx, f in a.items():
        for r, i in enumerate(idx):
            rest = idx[:r] + idx[r + 1:]
            out = add(out, {rest: (-1) ** r * X[i] * f})
    return out


def h(a):
    if not a:
        return {}
    k = len(next(iter(a)))
    if k == 0:
        return {}
    ia = contract_radial(a)
    out = {}
    for idx, f in ia.items():
        # coefficient f(x) evaluated at t x: the x factor from i(x) is not scaled
        ft = f.subs({x: t * x, y: t * y}, simultaneous=True)
        # i(x) contributed one x-factor that must stay unscaled: divide it back
        out[idx] = sp.expand(sp.integrate(t ** (k - 1) * ft / t, (t, 0, 1)))
    return {k_: v for k_, v in out.items() if v != 0}


def pull(g, a):
    out = {}
    dg = [{(j,): sp.diff(g[i], X[j]) for j in range(2)} for i in range(2)]
    for idx, f in a.items():
        fg = f.subs({x: g[0], y: g[1]}, simultaneous=True)
        term = {(): fg}
        for i in idx:
            new = {}
            for i1, c1 in term.items():
                for i2, c2 in dg[i].items():
                    if set(i1) & set(i2):
                        continue
                    s, nidx = sign_sort(i1 + i2)
                    new = add(new, {nidx: s * c1 * c2})
            term = new
        out = add(out, term)
    return out


def compose(g, k):
    return tuple(sp.expand(gi.subs({x: k[0], y: k[1]}, simultaneous=True)) for gi in g)


omega = {(0, 1): sp.Integer(1)}
phi0 = {k: -v for k, v in h(omega).items()}
assert add(omega, d(phi0)) == {}


def dphi0(g):
    return add(phi0, pull(g, phi0), -1)


def phi1(g):
    beta = dphi0(g)
    assert d(beta) == {}
    return h(beta)


sigma = (x + y ** 2, y)
T01 = (x, y + 1)
val = add(add(phi1(T01), phi1(compose(sigma, T01)), -1), pull(T01, phi1(sigma)))
c = sp.nsimplify(val.get((), 0).subs({x: 0, y: 0}))
print("c(sigma, T(0,1)) =", c)
assert c == sp.Rational(-1, 6)

e1, e2 = (x + 1, y), (x, y + 1)
val = add(add(phi1(e2), phi1(compose(e1, e2)), -1), pull(e2, phi1(e1)))
print("c(T(1,0), T(0,1)) =", val.get((), 0))
