"""Sparse multivariate polynomials over F_p and fraction-free determinants.

Used to check the determinant identity det M_d(f^e) = eps * delta^g as an
exact polynomial identity in the roots x_1..x_r at desk scale, and to track
single-variable (s_0-adic) valuations in the experimental checks.
"""

from itertools import combinations

from .ff import PrimeCtx


class ZeroPivotUnresolvable(ArithmeticError):
    pass


class ScaleRefusal(ValueError):
    """Desk-scale guard tripped; symbolic blowup is super-exponential."""


def _grlex_key(mono):
    return (sum(mono), mono)


class MultiPoly:
    """Map from exponent tuples to nonzero residues; graded lex ordering."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: PrimeCtx, nvars: int, terms=None):
        self.ctx = ctx
        self.nvars = nvars
        t = {}
        if terms:
            p = ctx.p
            for mono, c in terms.items():
                c %= p
                if c:
                    t[mono] = c
        self.terms = t

    @classmethod
    def constant(cls, ctx, nvars, c):
        return cls(ctx, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, ctx, nvars, i):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(ctx, nvars, {mono: 1})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx.p == other.ctx.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx.p, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        p = self.ctx.p
        for mono, c in other.terms.items():
            v = (out.get(mono, 0) + c) % p
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        res = MultiPoly(self.ctx, self.nvars)
        res.terms = out
        return res

    def __neg__(self):
        p = self.ctx.p
        res = MultiPoly(self.ctx, self.nvars)
        res.terms = {m: p - c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        p = self.ctx.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = (out.get(mono, 0) + c1 * c2) % p
        res = MultiPoly(self.ctx, self.nvars)
        res.terms = {m: c for m, c in out.items() if c}
        return res

    __rmul__ = __mul__

    def scale(self, c: int):
        c %= self.ctx.p
        res = MultiPoly(self.ctx, self.nvars)
        if c:
            res.terms = {m: v * c % self.ctx.p for m, v in self.terms.items()}
        return res

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.ctx, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def lead(self):
        """(monomial, coefficient) maximal in graded lex."""
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def evaluate(self, point) -> int:
        p = self.ctx.p
        out = 0
        for mono, c in self.terms.items():
            v = c
            for x, a in zip(point, mono):
                if a:
                    v = v * pow(x, a, p) % p
            out = (out + v) % p
        return out

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        return f"MultiPoly(p={self.ctx.p}, {items})"


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f / g when g divides f exactly; raises ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p = f.ctx.p
    quot = {}
    rem = f
    gm, gc = g.lead()
    gc_inv = pow(gc, p - 2, p)
    while not rem.is_zero():
        rm, rc = rem.lead()
        mono = tuple(a - b for a, b in zip(rm, gm))
        if any(a < 0 for a in mono):
            raise ValueError("not an exact multiple")
        c = rc * gc_inv % p
        quot[mono] = c
        piece = MultiPoly(f.ctx, f.nvars, {mono: c})
        rem = rem - piece * g
    return MultiPoly(f.ctx, f.nvars, quot)


def det_bareiss(entries) -> MultiPoly:
    """Exact determinant of a square array of MultiPoly by fraction-free
    elimination; divisions are exact in the polynomial ring."""
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise ValueError("square array required")
    if n == 0:
        raise ValueError("empty matrix")
    ctx = entries[0][0].ctx
    nv = entries[0][0].nvars
    a = [list(row) for row in entries]
    sign = 1
    prev = MultiPoly.constant(ctx, nv, 1)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return MultiPoly(ctx, nv)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev) if not num.is_zero() else num
            a[i][k] = MultiPoly(ctx, nv)
        prev = a[k][k]
    return a[n - 1][n - 1].scale(sign)


def generic_monic(r: int, ctx: PrimeCtx):
    """Coefficients s_0..s_r of prod (x - x_i) as polynomials in the roots."""
    if r < 2:
        raise ValueError("need r >= 2")
    out = [MultiPoly.constant(ctx, r, 1)]
    for i in range(1, r + 1):
        terms = {}
        for combo in combinations(range(r), i):
            mono = tuple(1 if j in combo else 0 for j in range(r))
            terms[mono] = (-1) ** (i % 2)
        out.append(MultiPoly(ctx, r, terms))
    return out


def delta_power(r: int, g: int, ctx: PrimeCtx) -> MultiPoly:
    """prod_{i<j} (x_i - x_j)^g."""
    if g < 0:
        raise ValueError("need g >= 0")
    delta = MultiPoly.constant(ctx, r, 1)
    for i in range(r):
        for j in range(i + 1, r):
            delta = delta * (
                MultiPoly.variable(ctx, r, i) - MultiPoly.variable(ctx, r, j)
            )
    return delta ** g


def poly_power_coeffs(coeffs, e: int, max_index: int):
    """x-coefficients 0..max_index of (sum coeffs[i] x^i)^e, entries MultiPoly."""
    ctx = coeffs[0].ctx
    nv = coeffs[0].nvars
    zero = MultiPoly(ctx, nv)
    one = [MultiPoly.constant(ctx, nv, 1)]

    def trunc_mul(a, b):
        out = [zero] * min(len(a) + len(b) - 1, max_index + 1)
        for i, ai in enumerate(a):
            if ai.is_zero() or i > max_index:
                continue
            for j, bj in enumerate(b):
                if i + j > max_index:
                    break
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return out

    result = one
    base = list(coeffs)
    while e:
        if e & 1:
            result = trunc_mul(result, base)
        e >>= 1
        if e:
            base = trunc_mul(base, base)
    result += [zero] * (max_index + 1 - len(result))
    return result[: max_index + 1]


def symbolic_m_matrix(r: int, e: int, d: int, ctx: PrimeCtx):
    """Entries of M_d(f^e) for the generic monic f, as MultiPoly in the roots."""
    p = ctx.p
    coeffs = generic_monic(r, ctx)
    ascending = list(reversed(coeffs))  # index i = coefficient of x^i
    c = poly_power_coeffs(ascending, e, d * p - 1)
    return [
        [c[i * p + j - d - 1] for j in range(1, d + 1)]
        for i in range(1, d + 1)
    ]


def theorem1_check(t) -> dict:
    """Exact polynomial identity det M_d(f^e) = eps * delta^g in the roots."""
    from .sets import epsilon, g_exponent, in_B

    if in_B(t) is None:
        raise ValueError(f"{t} is not in B")
    if t.r > 5 or t.p > 7:
        raise ScaleRefusal(f"desk scale is r <= 5, p <= 7; got {t}")
    ctx = t.ctx
    g = g_exponent(t)
    assert g == 2 * t.e - (t.p - 1)
    entries = symbolic_m_matrix(t.r, t.e, t.d, ctx)
    lhs = det_bareiss(entries)
    rhs = delta_power(t.r, int(g), ctx).scale(epsilon(t))
    return {"holds": lhs == rhs, "lhs": lhs, "rhs": rhs,
            "eps": epsilon(t), "g": int(g)}
