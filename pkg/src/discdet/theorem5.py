"""Structured matrices behind the update formula for M_d(f^e)^{-1} M_d(f^{e+1}).

For (r, e, r-1) and (r, e+1, r-1) both in the B0 family, the quotient
matrix factors as B_r Q_r Z_{r,n} P_r where B_r is a reversed Bezout matrix
of f' and f - (1/r) x f', Q_r / P_r are unit triangular matrices of power
series coefficients beta_l(lambda) = [t^l] phi(t)^lambda, and Z is diagonal
in zeta_i = n / (rn - (r - i)) with n = p - 1 - e.
"""

from dataclasses import dataclass
from fractions import Fraction

from .ff import PrimeCtx, rational_mod_p
from .poly import FpPoly, bezout_matrix, discriminant, poly_pow
from .fpmat import FpMatrix, det, inverse, m_matrix
from .sets import Triple, in_B, B_ZERO


class IndexTooLarge(ValueError):
    pass


class SingularM(ArithmeticError):
    pass


@dataclass(frozen=True)
class StructuredSpec:
    ctx: PrimeCtx
    r: int
    e: int
    f: FpPoly

    def __post_init__(self):
        p = self.ctx.p
        r, e = self.r, self.e
        if in_B(Triple(self.ctx, r, e, r - 1)) != B_ZERO or in_B(
            Triple(self.ctx, r, e + 1, r - 1)
        ) != B_ZERO:
            raise ValueError(f"(r={r}, e={e}) and e+1 must both be B0 at p={p}")
        if self.f.degree != r or self.f.lead() != 1:
            raise ValueError("f must be monic of degree r")

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return self.p - 1 - self.e

    @property
    def d(self) -> int:
        return self.r - 1

    def s(self, i: int) -> int:
        """s_i = coefficient of x^{r-i}; zero outside 0..r."""
        return self.f.coeff(self.r - i) if 0 <= i <= self.r else 0


def admissible_pairs(ctx: PrimeCtx):
    """(r, e) with both (r, e, r-1) and (r, e+1, r-1) in B0."""
    p = ctx.p
    out = []
    for r in range(2, p):
        for e in range((p - 1) // 2 + 1, p - 1):
            if r * (p - 1 - e) <= p - 1:
                out.append((r, e))
    return out


def beta_coeffs(ctx: PrimeCtx, s, lam_mod: int, max_l: int):
    """beta_0..beta_max of phi^lambda, phi = 1 + s_1 t + ... + s_r t^r.

    Recurrence from phi * (phi^lam)' = lam * phi' * phi^lam:
        k beta_k = sum_{j=1..min(k,r)} ((lam+1) j - k) s_j beta_{k-j}.
    """
    p = ctx.p
    if max_l >= p:
        raise IndexTooLarge(f"recurrence divides by k; need l < p = {p}")
    r = len(s) - 1
    beta = [1] + [0] * max_l
    for k in range(1, max_l + 1):
        acc = 0
        for j in range(1, min(k, r) + 1):
            if s[j]:
                acc += ((lam_mod + 1) * j - k) * s[j] * beta[k - j]
        beta[k] = acc % p * pow(k, p - 2, p) % p
    return beta


def beta(spec: StructuredSpec, l: int, lam: Fraction) -> int:
    s = [spec.s(i) for i in range(spec.r + 1)]
    return beta_coeffs(spec.ctx, s, rational_mod_p(spec.ctx, Fraction(lam)), l)[l]


def _beta_table(ctx, s, lams, max_l):
    return {lam: beta_coeffs(ctx, s, rational_mod_p(ctx, lam), max_l) for lam in set(lams)}


def p_matrix(ctx: PrimeCtx, s, lams) -> FpMatrix:
    """P(lam_1..lam_m): entry (i, j) = beta_{i-j}(lam_i)."""
    m = len(lams)
    tab = _beta_table(ctx, s, lams, m - 1)
    rows = [
        [tab[lams[i]][i - j] if i >= j else 0 for j in range(m)] for i in range(m)
    ]
    return FpMatrix.from_rows(ctx, rows)


def q_matrix(ctx: PrimeCtx, s, mus) -> FpMatrix:
    """Q(mu_1..mu_m): entry (i, j) = beta_{i-j}(mu_j)."""
    m = len(mus)
    tab = _beta_table(ctx, s, mus, m - 1)
    rows = [
        [tab[mus[j]][i - j] if i >= j else 0 for j in range(m)] for i in range(m)
    ]
    return FpMatrix.from_rows(ctx, rows)


def u_matrix(ctx: PrimeCtx, s, lam, m: int) -> FpMatrix:
    return p_matrix(ctx, s, [lam] * m)


def s_matrix(ctx: PrimeCtx, coeffs, m: int) -> FpMatrix:
    """Lower-triangular Toeplitz S_m(psi) from the first m series coefficients."""
    rows = [
        [coeffs[i - j] if 0 <= i - j < len(coeffs) else 0 for j in range(m)]
        for i in range(m)
    ]
    return FpMatrix.from_rows(ctx, rows)


def series_inverse(ctx: PrimeCtx, phi, m: int):
    """First m coefficients of 1/phi for phi with phi[0] != 0."""
    p = ctx.p
    inv0 = pow(phi[0], p - 2, p)
    out = [inv0] + [0] * (m - 1)
    for k in range(1, m):
        acc = 0
        for j in range(1, min(k, len(phi) - 1) + 1):
            acc += phi[j] * out[k - j]
        out[k] = (-acc * inv0) % p
    return out


def psi_series(ctx: PrimeCtx, s, m: int):
    """First m coefficients of r - t phi'(t)/phi(t)."""
    r = len(s) - 1
    p = ctx.p
    num = [(r - j) * s[j] % p for j in range(r + 1)]  # r*phi - t*phi'
    inv = series_inverse(ctx, s, m)
    out = [0] * m
    for i in range(m):
        acc = 0
        for j in range(0, min(i, r) + 1):
            acc += num[j] * inv[i - j]
        out[i] = acc % p
    return out


def build_PQZB(spec: StructuredSpec):
    """The four (r-1) x (r-1) factors B_r, Q_r, Z_{r,n}, P_r."""
    ctx, r, n = spec.ctx, spec.r, spec.n
    p = ctx.p
    d = spec.d
    s = [spec.s(i) for i in range(r + 1)]
    fp = spec.f.derivative()
    # f - (1/r) x f'
    inv_r = pow(r % p, p - 2, p)
    g = spec.f - FpPoly(ctx, [0] + [c * inv_r % p for c in fp.coeffs])
    bez = bezout_matrix(fp, g)
    rev = FpMatrix.from_rows(ctx, [[1 if i + j == d - 1 else 0 for j in range(d)] for i in range(d)])
    B = rev @ bez
    Q = q_matrix(ctx, s, [Fraction(-j, r) for j in range(1, d + 1)])
    P = p_matrix(ctx, s, [Fraction(-(r - i), r) for i in range(1, d + 1)])
    zeta = [
        rational_mod_p(ctx, Fraction(n, r * n - (r - i))) for i in range(1, d + 1)
    ]
    Z = FpMatrix.from_rows(
        ctx, [[zeta[i] if i == j else 0 for j in range(d)] for i in range(d)]
    )
    return B, Q, Z, P


def check_theorem5(spec: StructuredSpec) -> dict:
    """Compare M_d(f^e)^{-1} M_d(f^{e+1}) with B_r Q_r Z_{r,n} P_r entrywise."""
    d = spec.d
    Me = m_matrix(spec.f, spec.e, d)
    if det(Me) == 0:
        raise SingularM("det M_d(f^e) = 0; resample f")
    Me1 = m_matrix(spec.f, spec.e + 1, d)
    lhs = inverse(Me) @ Me1
    B, Q, Z, P = build_PQZB(spec)
    rhs = B @ Q @ Z @ P
    return {"holds": lhs == rhs, "lhs": lhs, "rhs": rhs}


def _coeff_dict(spec: StructuredSpec, e: int, indices):
    g = poly_pow(spec.f, e)
    return {i: g.coeff(i) for i in indices}


def build_LVR(spec: StructuredSpec):
    """L (d x (r+d)), V ((r+d) x d), R ((r+d) x r) of the elimination route."""
    ctx, r, d, p, n = spec.ctx, spec.r, spec.d, spec.p, spec.n
    idx = {i * p + j - 2 * r for i in range(1, d + 1) for j in range(1, r + d + 1)}
    c = _coeff_dict(spec, spec.e, idx)
    L = FpMatrix.from_rows(
        ctx,
        [[c[i * p + j - 2 * r] for j in range(1, r + d + 1)] for i in range(1, d + 1)],
    )
    V = FpMatrix.from_rows(
        ctx, [[spec.s(i - j) for j in range(1, d + 1)] for i in range(1, r + d + 1)]
    )
    R = FpMatrix.from_rows(
        ctx,
        [
            [
                (n * (r - i + j) - (r - j)) * spec.s(i - j) % p
                for j in range(1, r + 1)
            ]
            for i in range(1, r + d + 1)
        ],
    )
    return L, V, R


def claimed_r1_inverse(spec: StructuredSpec) -> FpMatrix:
    """(1/n) Q((r-1)/r..0/r) diag(zeta_1..zeta_r) P(-(2r-1)/r..-r/r)."""
    ctx, r, n = spec.ctx, spec.r, spec.n
    s = [spec.s(i) for i in range(r + 1)]
    Q = q_matrix(ctx, s, [Fraction(r - j, r) for j in range(1, r + 1)])
    P = p_matrix(ctx, s, [Fraction(-(2 * r - i), r) for i in range(1, r + 1)])
    zeta = [
        rational_mod_p(ctx, Fraction(n, r * n - (r - i))) for i in range(1, r + 1)
    ]
    Z = FpMatrix.from_rows(
        ctx, [[zeta[i] if i == j else 0 for j in range(r)] for i in range(r)]
    )
    n_inv = pow(n % ctx.p, ctx.p - 2, ctx.p)
    return (Q @ Z @ P).scale(n_inv)


def r_um(spec: StructuredSpec) -> FpMatrix:
    """R^u reduced modulo the zeta ideal: s_{i-j} off the last column,
    (1 - (i-r)/r) s_{i-r} in column r."""
    ctx, r, d, p = spec.ctx, spec.r, spec.d, spec.p
    inv_r = pow(r % p, p - 2, p)
    rows = []
    for i in range(1, r + d + 1):
        row = [spec.s(i - j) for j in range(1, r)]
        row.append((1 - (i - r) * inv_r) * spec.s(i - r) % p)
        rows.append(row)
    return FpMatrix.from_rows(ctx, rows)


def formula_br_lhs(spec: StructuredSpec) -> FpMatrix:
    """The three-term expression claimed to equal B_r."""
    ctx, r, p = spec.ctx, spec.r, spec.p
    m = r - 1
    s = spec.s
    A1 = FpMatrix.from_rows(
        ctx,
        [[(j - i) * s(r - j + i) % p if j >= i else 0 for j in range(m)] for i in range(m)],
    )
    A2 = FpMatrix.from_rows(
        ctx, [[s(i - j) if i >= j else 0 for j in range(m)] for i in range(m)]
    )
    A3 = FpMatrix.from_rows(
        ctx, [[s(r - j + i) if j >= i else 0 for j in range(m)] for i in range(m)]
    )
    A4 = FpMatrix.from_rows(
        ctx,
        [[(r - i + j) * s(i - j) % p if i >= j else 0 for j in range(m)] for i in range(m)],
    )
    col = FpMatrix(ctx, m, 1, [(r - i) * s(i) % p for i in range(1, r)])
    row = FpMatrix(ctx, 1, m, [(r - j) * s(r - j) % p for j in range(1, r)])
    inv_r = pow(r % p, p - 2, p)
    return (A3 @ A4) - (A1 @ A2) - (col @ row).scale(inv_r)


def check_aux_lemmas(spec: StructuredSpec) -> dict:
    """Numeric checks of the elimination-route identities; keyed by name."""
    ctx, r, d = spec.ctx, spec.r, spec.d
    L, V, R = build_LVR(spec)
    Me = m_matrix(spec.f, spec.e, d)
    if det(Me) == 0:
        raise SingularM("det M_d(f^e) = 0; resample f")
    Me1 = m_matrix(spec.f, spec.e + 1, d)
    report = {}
    report["LV=M_next"] = (L @ V) == Me1
    report["LR=0"] = (L @ R) == FpMatrix(ctx, d, r, [0] * (d * r))
    R1 = R.submatrix(0, r, 0, r)
    R2 = R.submatrix(r, r + d, 0, r)
    R1inv = claimed_r1_inverse(spec)
    report["R1_inverse"] = (R1 @ R1inv) == FpMatrix.identity(ctx, r)
    B, _, _, _ = build_PQZB(spec)
    report["formula_Br"] = formula_br_lhs(spec) == B
    bracket_row = (R2 @ inverse(R1)).scale(-1).hstack(FpMatrix.identity(ctx, d))
    report["bracket_V=quotient"] = (bracket_row @ V) == (inverse(Me) @ Me1)
    # Reduction modulo the zeta ideal.
    Rum = r_um(spec)
    R1um = Rum.submatrix(0, r, 0, r)
    R2um = Rum.submatrix(r, r + d, 0, r)
    quot_um = R2um @ inverse(R1um)
    report["um_bracket_V=0"] = (
        quot_um.scale(-1).hstack(FpMatrix.identity(ctx, d)) @ V
    ) == FpMatrix(ctx, d, d, [0] * (d * d))
    diff = (R2 @ inverse(R1)) - quot_um
    report["um_last_column_0"] = all(
        diff[(i, r - 1)] == 0 for i in range(d)
    )
    report["holds"] = all(v for kk, v in report.items() if kk != "holds")
    return report


def det_br_identity(spec: StructuredSpec) -> bool:
    """det B_r = (-1)^{r(r-1)/2} (1/r) Delta(f)."""
    B, _, _, _ = build_PQZB(spec)
    p, r = spec.p, spec.r
    sign = -1 if (r * (r - 1) // 2) % 2 else 1
    want = sign * pow(r % p, p - 2, p) * discriminant(spec.f) % p
    return det(B) == want


def random_spec(ctx: PrimeCtx, r: int, e: int, rng, retries: int = 100) -> StructuredSpec:
    """Monic f with Delta(f) != 0 and det M_{r-1}(f^e) != 0."""
    p = ctx.p
    for _ in range(retries):
        f = FpPoly(ctx, [rng.randrange(p) for _ in range(r)] + [1])
        if discriminant(f) == 0:
            continue
        if det(m_matrix(f, e, r - 1)) == 0:
            continue
        return StructuredSpec(ctx, r, e, f)
    raise SingularM(f"no admissible f found in {retries} tries at p={p}, r={r}, e={e}")
