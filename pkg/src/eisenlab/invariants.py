"""Elementary invariants of a pair of primes (N, p) with p | N - 1.

Merel's number prod i^i, the group-ring zeta element built from the second
Bernoulli polynomial, its order along the augmentation filtration, Mazur's
good primes, and the discrete-log identities underpinning the equivalences
between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np
import sympy

from .corering.dlog import DlogTable, build_dlog_table, is_power
from .corering.linalg import howell_membership
from .corering.zmod import AtLeast, Modulus, valuation_p


def merel_number(N: int) -> int:
    """prod_{i=1}^{(N-1)/2} i^i mod N."""
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N = {N} must be an odd prime")
    out = 1
    for i in range(1, (N - 1) // 2 + 1):
        out = (out * pow(i, i, N)) % N
    return out


def is_good_prime(ell: int, N: int, p: int) -> bool:
    """Mazur's criterion: ell != 1 mod p and ell is not a p-th power mod N.

    ell = p is allowed and tested as a residue mod N.
    """
    if ell == N:
        raise ValueError("ell = N is excluded")
    if ell % p == 1:
        return False
    return not is_power(ell % N, N, p)


def smallest_good_primes(N: int, p: int, count: int = 1, bound: int = 1000) -> list[int]:
    out = []
    ell = 2
    while len(out) < count and ell < bound:
        if ell != N and is_good_prime(ell, N, p):
            out.append(ell)
        ell = sympy.nextprime(ell)
    return out


@dataclass
class MerelReport:
    N: int
    p: int
    merel_value: int
    log_sum_s: dict[int, int]
    is_power_s: dict[int, bool]


def merel_report(N: int, p: int, s_max: int) -> MerelReport:
    """Power status of Merel's number for every s <= s_max.

    The exponent test (x^((N-1)/p^s) = 1) and the log-sum test
    (sum i*log(i) = 0 in Z/p^s) are computed independently and must agree.
    """
    t = valuation_p(N - 1, p)
    if t == 0 or t == float("inf"):
        raise ValueError(f"p = {p} does not divide N-1 = {N - 1}")
    if s_max > t:
        raise ValueError(f"s_max = {s_max} exceeds v_p(N-1) = {t}")
    dlog = build_dlog_table(N)
    value = merel_number(N)
    half = (N - 1) // 2
    total = 0
    for i in range(1, half + 1):
        total += i * dlog.table[i]
    log_sum_s = {}
    is_power_s = {}
    prev = True
    for s in range(1, s_max + 1):
        ps = p**s
        ls = total % ps
        ip = is_power(value, N, ps) if value != 0 else True
        if (ls == 0) != ip:
            raise AssertionError(
                f"exponent and log-sum power tests disagree at (N,p,s)=({N},{p},{s})"
            )
        if ip and not prev:
            raise AssertionError("p^s-power status not monotone in s")
        log_sum_s[s] = ls
        is_power_s[s] = ip
        prev = ip
    return MerelReport(N=N, p=p, merel_value=value, log_sum_s=log_sum_s, is_power_s=is_power_s)


@dataclass
class GroupRingElement:
    """Element of (Z/p^s)[(Z/N)^x], coefficients indexed by residues 1..N-1."""

    N: int
    p: int
    s: int
    coeffs: np.ndarray = field(repr=False)  # coeffs[i-1] = coefficient of [i]

    @property
    def ps(self) -> int:
        return self.p**self.s

    def augmentation(self) -> int:
        return int(self.coeffs.sum() % self.ps)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElement)
            and (self.N, self.p, self.s) == (other.N, other.p, other.s)
            and bool(np.all(self.coeffs % self.ps == other.coeffs % other.ps))
        )

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        """Convolution over (Z/N)^x; quadratic, intended for small N."""
        if (self.N, self.p, self.s) != (other.N, other.p, other.s):
            raise ValueError("group ring mismatch")
        N, ps = self.N, self.ps
        out = np.zeros(N - 1, dtype=np.int64)
        for i in range(1, N):
            ci = int(self.coeffs[i - 1])
            if ci == 0:
                continue
            for j in range(1, N):
                k = (i * j) % N
                out[k - 1] = (out[k - 1] + ci * other.coeffs[j - 1]) % ps
        return GroupRingElement(self.N, self.p, self.s, out)

    def log_vector(self, dlog: DlogTable) -> np.ndarray:
        """Coefficients re-indexed by discrete log: v[k] = coeff of [g^k]."""
        out = np.zeros(self.N - 1, dtype=np.int64)
        for i in range(1, self.N):
            out[dlog.table[i]] = self.coeffs[i - 1]
        return out


def zeta_element(N: int, p: int, s: int) -> GroupRingElement:
    """zeta = sum_i B2(i/N) [i] with B2(x) = x^2 - x + 1/6, reduced mod p^s."""
    if p <= 3:
        raise ValueError("p must exceed 3 so that 6 is invertible")
    if (N - 1) % p != 0:
        raise ValueError(f"p = {p} does not divide N-1")
    ps = p**s
    invN = pow(N % ps, -1, ps)
    inv6 = pow(6, -1, ps)
    i = np.arange(1, N, dtype=np.int64)
    coeffs = (i * i % ps) * (invN * invN % ps) - i * invN + inv6
    return GroupRingElement(N=N, p=p, s=s, coeffs=coeffs % ps)


def _sylow_projection(z: GroupRingElement, dlog: DlogTable, t: int) -> np.ndarray:
    """Image of z in (Z/p^s)[G_p], G_p the Sylow-p quotient of order p^t."""
    pt = z.p**t
    out = np.zeros(pt, dtype=np.int64)
    for i in range(1, z.N):
        out[dlog.table[i] % pt] += int(z.coeffs[i - 1])
    return out % z.ps


def _aug_power_membership_sylow(vec: np.ndarray, p: int, s: int, t: int, r: int) -> bool:
    """Is vec (coefficients over u^k) in I^r inside (Z/p^s)[u]/(u^(p^t)-1)?

    Substituting u = 1 + v turns the ring into (Z/p^s)[v]/rho with
    rho = (1+v)^(p^t) - 1; I = (v), and I^r is the column span of
    {v^(r+k) mod rho}.  Decided by howell membership.
    """
    pt = p**t
    ps = p**s
    mod = Modulus(p, s)
    # vec in v-coordinates: d[j] = sum_k vec[k] * C(k, j)
    d = [0] * pt
    for k, c in enumerate(vec):
        c = int(c) % ps
        if c:
            for j in range(k + 1):
                d[j] = (d[j] + c * (comb(k, j) % ps)) % ps
    d = np.array(d, dtype=np.int64)
    rho = [0] + [comb(pt, j) % ps for j in range(1, pt + 1)]  # (1+v)^(p^t) - 1
    cur = [1] + [0] * (pt - 1)
    pows = [cur[:]]
    for _ in range(r + pt):
        nxt = [0] + cur[:-1]
        top = (cur[-1]) % ps
        if top:
            nxt = [(x - top * rho[j]) % ps for j, x in enumerate(nxt)]
        cur = nxt
        pows.append(cur[:])
    A = np.array(pows[r : r + pt], dtype=np.int64).T % ps
    ok, _ = howell_membership(A, d, mod)
    return ok


def _aug_power_membership_full(
    z: GroupRingElement, dlog: DlogTable, r: int
) -> bool:
    """Full group-ring oracle: z in I_G^r inside (Z/p^s)[(Z/N)^x].

    G is cyclic, so I_G = ([g] - 1) and I_G^r is spanned by the cyclic
    shifts of ([g]-1)^r in discrete-log coordinates (a circulant span).
    Cubic in N; reserved for cross-checks at moderate N.
    """
    n = z.N - 1
    ps = z.ps
    mod = Modulus(z.p, z.s)
    base = np.zeros(n, dtype=np.int64)
    for j in range(r + 1):
        term = (comb(r, j) % ps) * (-1) ** (r - j)
        base[j % n] = (int(base[j % n]) + term) % ps
    cols = np.empty((n, n), dtype=np.int64)
    for k in range(n):
        cols[:, k] = np.roll(base, k)
    ok, _ = howell_membership(cols, z.log_vector(dlog), mod)
    return ok


_FULL_ORACLE_LIMIT = 400


@dataclass
class ZetaReport:
    N: int
    p: int
    ord_s: dict[int, int | AtLeast]
    cap: int
    sylow_zero: bool = False


def ord_zeta(N: int, p: int, s: int, cap: int | None = None, cross_check: bool | None = None):
    """Largest r < cap with zeta in I_G^r, else AtLeast(cap).

    Computes in the Sylow-p quotient ring (the complement factor of the
    group ring lies in I_G^r for every r >= 1, so only the Sylow part
    matters).  The full group-ring membership oracle is run as a
    cross-check for moderate N (always, when cross_check is None and
    N <= 400; forced on/off otherwise).
    """
    t = valuation_p(N - 1, p)
    if t == 0 or t == float("inf"):
        raise ValueError(f"p = {p} does not divide N-1")
    if s > t:
        raise ValueError(f"s = {s} exceeds v_p(N-1) = {t}")
    if cap is None:
        cap = p**t + 1
    z = zeta_element(N, p, s)
    dlog = build_dlog_table(N)
    proj = _sylow_projection(z, dlog, t)
    if not proj.any():
        return AtLeast(cap)

    def member(r: int) -> bool:
        ok = _aug_power_membership_sylow(proj, p, s, t, r)
        do_full = cross_check if cross_check is not None else (N - 1 <= _FULL_ORACLE_LIMIT)
        if do_full:
            ok_full = _aug_power_membership_full(z, dlog, r)
            if ok_full != ok:
                raise AssertionError(
                    f"Sylow and full-ring I^r membership disagree at r={r}, (N,p,s)=({N},{p},{s})"
                )
        return ok

    if not member(1):
        raise AssertionError(f"ord_s(zeta) = 0 at (N,p,s)=({N},{p},{s}); should be >= 1")
    if member(cap):
        return AtLeast(cap)
    lo, hi = 1, cap  # member(lo) true, member(hi) false
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(mid):
            lo = mid
        else:
            hi = mid
    return lo


def zeta_report(N: int, p: int, s_max: int, cap: int | None = None) -> ZetaReport:
    t = valuation_p(N - 1, p)
    if cap is None:
        cap = p**int(t) + 1
    ords: dict[int, int | AtLeast] = {}
    sylow_zero = False
    for s in range(1, s_max + 1):
        o = ord_zeta(N, p, s, cap)
        ords[s] = o
        if isinstance(o, AtLeast):
            z = zeta_element(N, p, s)
            proj = _sylow_projection(z, build_dlog_table(N), int(t))
            sylow_zero = sylow_zero or not proj.any()
    return ZetaReport(N=N, p=p, ord_s=ords, cap=cap, sylow_zero=sylow_zero)


def lecouturier_check(N: int, p: int, s: int) -> bool:
    """Discrete-log identities tying Merel's number to the zeta element.

    Checks sum i^2 log(i) = -(4/3) sum_{i<=(N-1)/2} i log(i), and the two
    auxiliary vanishing identities sum log(i) = 0 and sum i log(i) = 0
    (sums over all of F_N^x).  A failure is a bug, not data.
    """
    if (N - 1) % p != 0 or p <= 3:
        raise ValueError("need p | N-1 and p > 3")
    ps = p**s
    dlog = build_dlog_table(N)
    s_log = 0
    s_ilog = 0
    s_i2log = 0
    s_half = 0
    half = (N - 1) // 2
    for i in range(1, N):
        li = dlog.table[i]
        s_log += li
        s_ilog += i * li
        s_i2log += i * i * li
        if i <= half:
            s_half += i * li
    if s_log % ps != 0 or s_ilog % ps != 0:
        return False
    lhs = s_i2log % ps
    rhs = (-s_half * 4 * pow(3, -1, ps)) % ps
    return lhs == rhs


def merel_power_matches_ord(N: int, p: int, s: int) -> bool:
    """Equivalence: Merel's number is a p^s-th power iff ord_s(zeta) >= 2."""
    rep = merel_report(N, p, s)
    o = ord_zeta(N, p, s)
    ord_ge_2 = isinstance(o, AtLeast) or o >= 2
    return rep.is_power_s[s] == ord_ge_2
