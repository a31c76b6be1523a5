"""Dense univariate polynomial algebra over F_p.

Coefficients are stored ascending (index i = coefficient of x^i) with no
trailing zeros; the zero polynomial has an empty coefficient list.
"""

from .ff import PrimeCtx, multinom_mod_p

# Below this length schoolbook multiplication wins; above it we pack the
# operands into big integers (Kronecker substitution) and let CPython's
# subquadratic integer multiply do the work.
_SCHOOLBOOK_CUTOFF = 64


class CharDividesDegree(ArithmeticError):
    """The resultant-based discriminant formula needs p to not divide deg f."""


class RecurrenceUnavailable(ValueError):
    """Coefficient recurrence cannot reach the requested index."""


class FpPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: PrimeCtx, coeffs):
        p = ctx.p
        c = [a % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return (
            isinstance(other, FpPoly)
            and self.ctx.p == other.ctx.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, tuple(self.coeffs)))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % self.ctx.p
        return FpPoly(self.ctx, out)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        p = self.ctx.p
        return FpPoly(
            self.ctx, [(self.coeff(i) - other.coeff(i)) % p for i in range(n)]
        )

    def __neg__(self):
        return FpPoly(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return FpPoly(self.ctx, [a * other for a in self.coeffs])
        return _mul(self, other)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * x + a) % self.ctx.p
        return acc

    def derivative(self) -> "FpPoly":
        return FpPoly(self.ctx, [i * a for i, a in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "FpPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return FpPoly(self.ctx, [0] * k + self.coeffs)

    def monomials(self):
        """Nonzero (exponent, coefficient) pairs, ascending."""
        return [(i, a) for i, a in enumerate(self.coeffs) if a]

    def __repr__(self):
        return f"FpPoly(p={self.ctx.p}, {self.coeffs})"


def from_coeffs(ctx: PrimeCtx, coeffs) -> FpPoly:
    return FpPoly(ctx, coeffs)


def monomial_sum(ctx: PrimeCtx, terms) -> FpPoly:
    """Build a polynomial from (exponent, coefficient) pairs."""
    if not terms:
        return FpPoly(ctx, [])
    out = [0] * (max(e for e, _ in terms) + 1)
    for e, c in terms:
        out[e] += c
    return FpPoly(ctx, out)


def _mul(a: FpPoly, b: FpPoly) -> FpPoly:
    if a.is_zero() or b.is_zero():
        return FpPoly(a.ctx, [])
    p = a.ctx.p
    la, lb = len(a.coeffs), len(b.coeffs)
    if min(la, lb) < _SCHOOLBOOK_CUTOFF:
        out = [0] * (la + lb - 1)
        if la > lb:
            a, b = b, a
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    out[i + j] += ai * bj
        return FpPoly(a.ctx, out)
    # Kronecker substitution: slot width covers min(la, lb) * (p-1)^2.
    bits = (min(la, lb) * (p - 1) * (p - 1)).bit_length() + 1
    na = sum(c << (bits * i) for i, c in enumerate(a.coeffs))
    nb = sum(c << (bits * i) for i, c in enumerate(b.coeffs))
    prod = na * nb
    mask = (1 << bits) - 1
    out = []
    for _ in range(la + lb - 1):
        out.append((prod & mask) % p)
        prod >>= bits
    return FpPoly(a.ctx, out)


def divmod_poly(a: FpPoly, b: FpPoly):
    """Quotient and remainder of a by b over F_p."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p = a.ctx.p
    rem = list(a.coeffs)
    db = b.degree
    inv_lead = pow(b.lead(), p - 2, p)
    quot = [0] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % p
        if c == 0:
            continue
        q = c * inv_lead % p
        quot[i - db] = q
        for j, bj in enumerate(b.coeffs):
            rem[i - db + j] = (rem[i - db + j] - q * bj) % p
    return FpPoly(a.ctx, quot), FpPoly(a.ctx, rem)


def poly_pow(f: FpPoly, e: int) -> FpPoly:
    """f^e by binary exponentiation; f^0 = 1."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = FpPoly(f.ctx, [1])
    base = f
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def sparse_power_coeff(f: FpPoly, e: int, n: int) -> int:
    """[x^n] f^e for f with at most 3 nonzero terms and e < p.

    Multinomial expansion: with f = sum c_t x^{g_t}, the coefficient is a
    sum of e!/(prod k_t!) * prod c_t^{k_t} over compositions with
    sum k_t = e and sum k_t g_t = n.
    """
    ctx = f.ctx
    terms = f.monomials()
    if e >= ctx.p:
        raise ValueError("multinomial path needs e < p")
    if n < 0:
        return 0
    if not terms:
        return 1 if (e == 0 and n == 0) else 0
    if len(terms) == 1:
        (g, c), = terms
        return pow(c, e, ctx.p) if n == e * g else 0
    if len(terms) == 2:
        (g0, c0), (g1, c1) = terms
        num = n - e * g0
        den = g1 - g0
        if num % den:
            return 0
        k = num // den
        if not 0 <= k <= e:
            return 0
        return (
            multinom_mod_p(ctx, e, (e - k, k))
            * pow(c0, e - k, ctx.p)
            * pow(c1, k, ctx.p)
            % ctx.p
        )
    if len(terms) > 3:
        raise ValueError("multinomial path supports at most 3 terms")
    (g0, c0), (g1, c1), (g2, c2) = terms
    # Solve k0 g0 + k1 g1 + k2 g2 = n with k0 + k1 + k2 = e by looping on k2.
    out = 0
    p = ctx.p
    base = n - e * g0
    d1, d2 = g1 - g0, g2 - g0
    for k2 in range(min(e, base // d2 if d2 else e) + 1):
        rest = base - k2 * d2
        if rest < 0:
            break
        if rest % d1:
            continue
        k1 = rest // d1
        k0 = e - k1 - k2
        if k1 < 0 or k0 < 0:
            continue
        out += (
            multinom_mod_p(ctx, e, (k0, k1, k2))
            * pow(c0, k0, p)
            * pow(c1, k1, p)
            * pow(c2, k2, p)
        ) % p
    return out % p


def _recurrence_coeffs(f: FpPoly, e: int, max_index: int):
    """Coefficients c_0..c_max of f^e by the holonomic recurrence.

    From f * (f^e)' = e * f' * f^e:
        a_0 k c_k = sum_{j=1..r} ((e+1) j - k) a_j c_{k-j}.
    A power of x is factored out first so a_0 != 0; the recurrence is only
    run while the shifted index stays below p (division by k).
    """
    ctx = f.ctx
    p = ctx.p
    if f.is_zero():
        raise ValueError("zero polynomial")
    val = 0
    while f.coeffs[val] == 0:
        val += 1
    shift = val * e
    a = f.coeffs[val:]
    r = len(a) - 1
    top = max_index - shift
    if top >= p:
        raise RecurrenceUnavailable(
            f"index {max_index} needs shifted index {top} >= p = {p}"
        )
    inv_a0 = pow(a[0], p - 2, p)
    c = [0] * (max(top, 0) + 1)
    if top >= 0:
        c[0] = pow(a[0], e, p)
    for k in range(1, top + 1):
        acc = 0
        for j in range(1, min(r, k) + 1):
            if a[j]:
                acc += ((e + 1) * j - k) * a[j] * c[k - j]
        c[k] = acc % p * pow(k, p - 2, p) % p * inv_a0 % p
    return shift, c


def coeff_window(f: FpPoly, e: int, indices, strategy: str = "auto"):
    """Selected coefficients of f^e, without materializing it when possible.

    indices must be sorted ascending.  Strategies: "dense" expands f^e,
    "recurrence" uses the holonomic recurrence (indices below p only),
    "sparse" uses the multinomial expansion (<= 3 terms, e < p), "auto"
    picks the cheapest applicable one.
    """
    indices = list(indices)
    if any(i < 0 for i in indices) or indices != sorted(indices):
        raise ValueError("indices must be sorted and nonnegative")
    if e == 0:
        return [1 if i == 0 else 0 for i in indices]
    if f.is_zero():
        return [0] * len(indices)
    nterms = len(f.monomials())
    if strategy == "auto":
        if nterms <= 3 and e < f.ctx.p:
            strategy = "sparse"
        else:
            val = next(i for i, a in enumerate(f.coeffs) if a)
            top = (indices[-1] if indices else 0) - val * e
            strategy = "recurrence" if top < f.ctx.p else "dense"
    if strategy == "sparse":
        return [sparse_power_coeff(f, e, n) for n in indices]
    if strategy == "recurrence":
        shift, c = _recurrence_coeffs(f, e, indices[-1] if indices else 0)
        out = []
        for n in indices:
            k = n - shift
            out.append(c[k] if 0 <= k < len(c) else 0)
        return out
    if strategy == "dense":
        g = poly_pow(f, e)
        return [g.coeff(n) for n in indices]
    raise ValueError(f"unknown strategy {strategy!r}")


def sylvester(F: FpPoly, G: FpPoly):
    """Sylvester matrix of F and G; its determinant is Res(F, G)."""
    from .fpmat import FpMatrix

    if F.is_zero() or G.is_zero():
        raise ValueError("sylvester needs nonzero polynomials")
    m, n = F.degree, G.degree
    if m + n < 1:
        raise ValueError("need deg F + deg G >= 1")
    size = m + n
    data = [0] * (size * size)
    # Descending coefficient lists, as rows of the band matrix.
    fd = list(reversed(F.coeffs))
    gd = list(reversed(G.coeffs))
    for i in range(n):
        for j, c in enumerate(fd):
            data[i * size + i + j] = c
    for i in range(m):
        for j, c in enumerate(gd):
            data[(n + i) * size + i + j] = c
    return FpMatrix(F.ctx, size, size, data)


def resultant(F: FpPoly, G: FpPoly) -> int:
    """Res(F, G) by Euclidean iteration over F_p."""
    if F.is_zero() or G.is_zero():
        raise ValueError("resultant needs nonzero polynomials")
    p = F.ctx.p
    res = 1
    while True:
        m, n = F.degree, G.degree
        if n == 0:
            return res * pow(G.coeffs[0], m, p) % p
        if m < n:
            F, G = G, F
            if m * n % 2:
                res = (-res) % p
            continue
        _, R = divmod_poly(F, G)
        if R.is_zero():
            return 0
        res = res * pow(G.lead(), m - R.degree, p) % p
        if m * n % 2:
            res = (-res) % p
        F, G = G, R


def bezout_matrix(F: FpPoly, G: FpPoly):
    """Bezout matrix: (F(x)G(y) - F(y)G(x)) / (x - y) in the monomial basis."""
    from .fpmat import FpMatrix

    dim = max(F.degree, G.degree)
    if dim < 1:
        raise ValueError("bezout_matrix needs max degree >= 1")
    p = F.ctx.p
    data = [0] * (dim * dim)
    # (x^i y^j - x^j y^i)/(x - y) = sum_t x^{j+t} y^{i-1-t}, t = 0..i-j-1 (i > j).
    for i in range(dim + 1):
        fi, gi = F.coeff(i), G.coeff(i)
        for j in range(i):
            w = (fi * G.coeff(j) - F.coeff(j) * gi) % p
            if w == 0:
                continue
            for t in range(i - j):
                row = j + t
                col = i - 1 - t
                data[row * dim + col] = (data[row * dim + col] + w) % p
    return FpMatrix(F.ctx, dim, dim, data)


def discriminant(f: FpPoly) -> int:
    """Discriminant via (-1)^{m(m-1)/2} Res(f, f') / lc(f)."""
    m = f.degree
    if m < 2:
        raise ValueError("discriminant needs degree >= 2")
    if m % f.ctx.p == 0:
        raise CharDividesDegree(
            f"p = {f.ctx.p} divides deg f = {m}; use a closed form instead"
        )
    p = f.ctx.p
    fp = f.derivative()
    if fp.is_zero():
        return 0
    res = resultant(f, fp)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * res % p * pow(f.lead(), p - 2, p) % p


def _int_det_bareiss(a) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def discriminant_via_lift(f: FpPoly) -> int:
    """Discriminant by lifting to Z and specializing back mod p.

    The discriminant is a universal polynomial in the coefficients, so the
    value mod p of the integer discriminant of any lift agrees with the
    characteristic-p discriminant whenever the leading coefficient is
    nonzero.  Works in particular when p | deg f, where the Res-based
    formula over F_p is unusable.
    """
    m = f.degree
    if m < 2:
        raise ValueError("discriminant needs degree >= 2")
    c = list(reversed(f.coeffs))  # descending, c[0] = lead != 0
    dc = [(m - i) * c[i] for i in range(m)]  # derivative over Z, descending
    size = 2 * m - 1
    rows = []
    for i in range(m - 1):
        rows.append([0] * i + c + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + dc + [0] * (size - i - m))
    res = _int_det_bareiss(rows)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    assert res % c[0] == 0
    return sign * (res // c[0]) % f.ctx.p


XR_MINUS_1 = "XR_MINUS_1"
XR_MINUS_X_MINUS_1 = "XR_MINUS_X_MINUS_1"
XR_MINUS_X = "XR_MINUS_X"


def special_discriminant(kind: str, r: int, ctx: PrimeCtx) -> int:
    """Closed-form discriminants of x^r-1, x^r-x-1 (p | r), x^r-x."""
    if r < 2:
        raise ValueError("r must be >= 2")
    p = ctx.p
    if kind == XR_MINUS_1:
        sign = -1 if ((r - 1) * (r - 2) // 2) % 2 else 1
        return sign * pow(r, r, p) % p
    if kind == XR_MINUS_X_MINUS_1:
        if r % p:
            raise ValueError("x^r - x - 1 closed form needs p | r")
        return (-1 if (r * (r + 1) // 2) % 2 else 1) % p
    if kind == XR_MINUS_X:
        sign = -1 if ((r + 1) * (r + 2) // 2) % 2 else 1
        return sign * pow(r - 1, r - 1, p) % p
    raise ValueError(f"unknown kind {kind!r}")


def trinomial_discriminant(ctx: PrimeCtx, n: int, m: int, a: int, b: int) -> int:
    """Discriminant of x^n + a x^m + b (0 < m < n) mod p.

    Closed form over Z, reduced mod p: with d = gcd(n, m), N = n/d, M = m/d,
        disc = (-1)^{n(n-1)/2} b^{m-1}
               * (n^N b^{N-M} - (-1)^N (n-m)^{N-M} m^M a^N)^d.
    """
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    from math import gcd

    p = ctx.p
    d = gcd(n, m)
    N, M = n // d, m // d
    core = (
        pow(n, N, p) * pow(b, N - M, p)
        - (-1) ** (N % 2) * pow(n - m, N - M, p) * pow(m, M, p) * pow(a, N, p)
    ) % p
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * pow(b, m - 1, p) % p * pow(core, d, p) % p
