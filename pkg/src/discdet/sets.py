"""Classification of exponent triples (r, e, d) and their closed-form data.

A triple determines the matrix M_d(f^e) for degree-r polynomials f over F_p.
This module supplies the exponent g, membership predicates for the B and U
families, the epsilon scalar on B, closed-form determinants for the
specialized polynomials x^r - 1 and x^r - x, and the kappa invariant that
controls which d = 1 candidates survive the x^r - x test.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .ff import PrimeCtx, bracket, binom_mod_p, is_prime, prime_ctx

B_PLUS = "B+"
B_ZERO = "B0"
B_MINUS = "B-"


class NotInB(ValueError):
    pass


class NotInD(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    ctx: PrimeCtx
    r: int
    e: int
    d: int

    @property
    def p(self) -> int:
        return self.ctx.p

    def as_tuple(self):
        return (self.r, self.e, self.d)

    def __repr__(self):
        return f"Triple(p={self.p}, r={self.r}, e={self.e}, d={self.d})"


def g_exponent(t: Triple) -> Fraction:
    """The degree-balancing exponent (red - d(d+1)(p-1)/2) / (r(r-1)/2)."""
    num = Fraction(t.r * t.e * t.d) - Fraction(t.d * (t.d + 1) * (t.p - 1), 2)
    return num / Fraction(t.r * (t.r - 1), 2)


def in_B(t: Triple):
    """B+/B0/B- tag, or None."""
    p, r, e, d = t.p, t.r, t.e, t.d
    if 2 <= r <= p and e == p - 1 and d == r:
        return B_PLUS
    if 2 <= r <= p + 1 and 2 * e > p - 1 and e <= p - 1 and r * (p - 1 - e) <= p - 1 and d == r - 1:
        return B_ZERO
    if r >= 2 and 2 * e > p - 1 and e <= p - 1 and r * (p - 1 - e) == p - 1 and d == r - 2:
        return B_MINUS
    return None


def in_U(t: Triple) -> bool:
    p, r, e, d = t.p, t.r, t.e, t.d
    if r < 2 or e < 1 or not 1 <= d <= p:
        return False
    if not d * (p - 1) <= r * e <= r * (p - 1):
        return False
    g = g_exponent(t)
    if g <= 0 or g.denominator != 1:
        return False
    return p == 2 or g.numerator % 2 == 0


def in_D(t: Triple) -> bool:
    p, r, e, d = t.p, t.r, t.e, t.d
    return 2 * e > p - 1 and e <= p - 1 and d * (p - 1) <= r * e <= (d + 1) * (p - 1)


def degree_balance(t: Triple) -> Fraction:
    """(p-1)(r-d-1)((r-d)/2 - (re/(p-1) - d)); zero exactly on B."""
    if not in_D(t):
        raise NotInD(f"{t} is not in the D window")
    p, r, e, d = t.p, t.r, t.e, t.d
    return (
        (p - 1)
        * (r - d - 1)
        * (Fraction(r - d, 2) - (Fraction(r * e, p - 1) - d))
    )


def epsilon(t: Triple) -> int:
    """The scalar in det M_d(f^e) = eps * delta^g on B, mod p."""
    tag = in_B(t)
    if tag is None:
        raise NotInB(f"{t} is not in B")
    ctx, p, r, e = t.ctx, t.p, t.r, t.e
    if tag == B_PLUS:
        base = epsilon(Triple(ctx, r, e, t.d - 1))
        return (-base if (r - 1) % 2 else base) % p
    if tag == B_MINUS:
        base = epsilon(Triple(ctx, r, e, t.d + 1))
        return (-base if r % 2 else base) % p
    # B0 closed forms: p | r forces r = p (and e = p-1, d = p-1).
    if r % p == 0:
        return 1 if p % 4 in (1, 2) else p - 1
    sign = (r + 1) * (r + 2) // 2 + r * (r + 1) // 2 * e
    out = ctx.fact[r * (p - 1 - e)] * pow(ctx.fact[e], r, p) % p
    return (-out if sign % 2 else out) % p


def enumerate_B(ctx: PrimeCtx):
    """All of B(p), ascending (r, e, d)."""
    p = ctx.p
    out = []
    for r in range(2, p + 2):
        for e in range((p - 1) // 2 + 1, p):
            if r * (p - 1 - e) <= p - 1:
                out.append(Triple(ctx, r, e, r - 1))
            if r * (p - 1 - e) == p - 1 and r - 2 >= 1:
                out.append(Triple(ctx, r, e, r - 2))
        if r <= p:
            out.append(Triple(ctx, r, p - 1, r))
    return sorted(out, key=Triple.as_tuple)


def det_xr1(t: Triple) -> int:
    """Closed-form det M_d((x^r-1)^e) for t in U with r | p-1."""
    p, r, e, d = t.p, t.r, t.e, t.d
    if (p - 1) % r or not in_U(t):
        raise ValueError(f"{t} needs r | p-1 and membership in U")
    s = (p - 1) // r
    g = g_exponent(t)
    assert g.denominator == 1 and g.numerator % 2 == 0
    sign = d * (d - 1) // 2 + (r - 1) * (g.numerator // 2)
    out = 1
    for i in range(1, d + 1):
        out = out * binom_mod_p(t.ctx, e, i * s) % p
    return (-out if sign % 2 else out) % p


def _xrx_sign(t: Triple) -> int:
    """(-1)^{r g/2} common to the x^r - x closed forms."""
    g = g_exponent(t)
    assert g.denominator == 1 and g.numerator % 2 == 0
    return -1 if t.r * (g.numerator // 2) % 2 else 1


def enumerate_C(j: int, ctx: PrimeCtx):
    """Members of C_j(p) with closed-form det M_d((x^r-x)^e).

    Returns (Triple, det) pairs in ascending (r, e, d) order.  For the C4
    members with d in {r-1, r} (all of which lie in B) no closed form is
    stated, and det is None.
    """
    p = ctx.p
    out = []
    if j == 1:
        for r in range(2, p):
            if (p - 1) % r:
                continue
            s = (p - 1) // r
            for l in range(1, s + 1):
                e = s + (r - 1) * l
                t = Triple(ctx, r, e, 1)
                det = _xrx_sign(t) * binom_mod_p(ctx, e, s - l) % p
                out.append((t, det))
    elif j == 2:
        for r in range(2, p):
            if (p - 1) % (r * (r - 1)):
                continue
            tt = (p - 1) // (r * (r - 1))
            for d in range(2, r + 1):
                for l in range(d * tt, r * tt + 1):
                    e = (r - 1) * l
                    t = Triple(ctx, r, e, d)
                    det = 1
                    for i in range(1, d + 1):
                        det = det * binom_mod_p(ctx, e, r * tt * i - l) % p
                    sign = _xrx_sign(t) * (-1 if d * (d - 1) // 2 % 2 else 1)
                    out.append((t, sign * det % p))
    elif j == 3:
        for r in range(3, p):
            if (p - 1) % r or (p + 1) % (r - 1):
                continue
            s = (p - 1) // r
            tt = (p + 1) // (r - 1)
            for d in range(2, r):
                for l in range(d * (tt - s), tt + 1):
                    e = (r - 1) * l - (d + 1)
                    t = Triple(ctx, r, e, d)
                    det = 1
                    for i in range(1, d + 1):
                        det = det * binom_mod_p(ctx, e, tt * i - l) % p
                    out.append((t, _xrx_sign(t) * det % p))
    elif j == 4:
        exclude = {t.as_tuple() for jj in (1, 2, 3) for t, _ in enumerate_C(jj, ctx)}
        for r in range(3, p):
            if (p - 1) % r:
                continue
            s = (p - 1) // r
            # d = r-2 members, parametrized; these carry the closed form.
            lo = -(s // (r - 1)) + (1 if r == 3 else 0)
            for l in range(lo, s // (r - 1) + 1):
                e = (r - 1) * (s + l)
                t = Triple(ctx, r, e, r - 2)
                if t.as_tuple() in exclude or not in_U(t):
                    continue
                out.append((t, det_xrx_rm2(t, l)))
            # d = r-1 and d = r members of U (all in B; no closed form stated).
            for d in (r - 1, r):
                if d < 1 or d > p:
                    continue
                e_lo = -(-d * (p - 1) // r)
                for e in range(max(e_lo, 1), p):
                    t = Triple(ctx, r, e, d)
                    if t.as_tuple() in exclude or not in_U(t):
                        continue
                    out.append((t, None))
    else:
        raise ValueError("j must be 1..4")
    return sorted(out, key=lambda pair: pair[0].as_tuple())


def det_xrx_rm2(t: Triple, l: int) -> int:
    """Closed-form det M_{r-2}((x^r-x)^e) with e = (r-1)(s+l)."""
    p, r, d = t.p, t.r, t.d
    s = (p - 1) // r
    assert d == r - 2 and t.e == (r - 1) * (s + l)
    out = 1
    for i in range(1, d + 1):
        m_i = -((i * p - d) // -(r - 1)) - s - l
        out = out * binom_mod_p(t.ctx, t.e, m_i) % p
    return _xrx_sign(t) * bracket(-p, r - 1) * out % p


def kappa(s: int, l: int) -> Fraction:
    """(-1/(s+1))^l * l(l+s)...(l+(l-1)s) / (s(s-1)...(s-l+1))."""
    if not 1 <= l <= s:
        raise ValueError("need 1 <= l <= s")
    num = 1
    for i in range(l):
        num *= l + i * s
    den = 1
    for i in range(l):
        den *= s - i
    return Fraction(-1, s + 1) ** l * Fraction(num, den)


def kappa_survivor_primes(s: int, l: int, p_max: int):
    """Primes p <= p_max whose d = 1 candidate with this (s, l) survives
    the x^r - x test, paired with the surviving triple (r, s+(r-1)l, 1)."""
    kq = kappa(s, l)
    out = []
    for p in range(2 * s + 1, p_max + 1):
        if (p - 1) % s or not is_prime(p):
            continue
        r = (p - 1) // s
        if r < 2:
            continue
        k_mod = kq.numerator % p * pow(kq.denominator % p, p - 2, p) % p
        if pow(k_mod, s, p) != 1:
            continue
        base = (-pow(s + 1, p - 2, p)) % p
        if k_mod != pow(base, r * l, p):
            continue
        ctx = prime_ctx(p)
        out.append((p, Triple(ctx, r, s + (r - 1) * l, 1)))
    return out
