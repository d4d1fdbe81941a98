"""Selberg-sieve and effective-Chebotarev bound shapes, and the exponent they yield.

Implied constants in the underlying estimates are unspecified, so every
bound here is a shape evaluation with explicit multipliers defaulting to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log, prod, sqrt

import numpy as np
from scipy.integrate import quad

from frobscope.algebra.numtheory import is_prime, primes_up_to
from frobscope.algebra.polynomial import IntPolynomial, discriminant, splits_completely_mod
from frobscope.errors import ConsistencyError, EmptySievingSetError, InputError

EXACT_PAIR_LIMIT = 10**6


def li(X: float) -> float:
    """Offset logarithmic integral: integral of 1/log t over [2, X]."""
    if X < 2:
        raise InputError(f"li needs X >= 2, got {X}")
    if X == 2:
        return 0.0
    # split geometrically so each piece is short on a log scale
    edges = [2.0]
    t = 8.0
    while t < X:
        edges.append(t)
        t *= 4.0
    edges.append(float(X))
    total = 0.0
    for a, b in zip(edges, edges[1:]):
        val, _ = quad(lambda u: 1.0 / log(u), a, b, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    return total


def m_lk(G_size: float, delta_k: float, n_k: int, ramified_primes) -> float:
    """|G| * |disc k|^(1/n_k) * product of ramified rational primes."""
    if G_size <= 0 or delta_k <= 0 or n_k <= 0:
        raise InputError("m_lk needs positive |G|, |disc k| and n_k")
    return G_size * delta_k ** (1.0 / n_k) * prod(ramified_primes)


@dataclass(frozen=True)
class ChebotarevInput:
    C_size: int
    G_size: int
    H_index: int
    n_k: int
    X: float
    M_lk: float

    def __post_init__(self):
        if min(self.C_size, self.G_size, self.H_index, self.n_k) < 1:
            raise InputError("Chebotarev inputs must be positive")
        if self.C_size > self.G_size:
            raise InputError(f"|C| = {self.C_size} exceeds |G| = {self.G_size}")
        if self.X <= 1 or self.M_lk <= 0:
            raise InputError("need X > 1 and M(l/k) > 0")

    @property
    def log_factor(self) -> float:
        return sqrt(self.X) * (log(self.X) + log(self.M_lk))


def chebotarev_error_grh(inp: ChebotarevInput, multiplier: float = 1.0) -> float:
    """|C| n_k sqrt(X) (log X + log M): error term under GRH."""
    return multiplier * inp.C_size * inp.n_k * inp.log_factor


def chebotarev_error_ahc(inp: ChebotarevInput, multiplier: float = 1.0) -> float:
    """|C|^(1/2) [G:H]^(1/2) n_k sqrt(X) (log X + log M): GRH plus AHC for H."""
    return multiplier * sqrt(inp.C_size) * sqrt(inp.H_index) * inp.n_k * inp.log_factor


# --- Selberg sieve ------------------------------------------------------------


@dataclass
class SieveConfig:
    beta_per_prime: dict[int, Fraction]
    beta_floor: Fraction
    c: float
    X: float
    z: float
    sieving_primes: list[int]
    gamma_tilde: float  # R_d = error_const * d^gamma_tilde * sqrt(X) (log X + log d)
    error_const: float = 1.0
    coset_count: int = 1  # identical coset problems summed; scales both terms
    multiplier: float = 1.0  # implied constant of the O(...) error

    def __post_init__(self):
        self.beta_floor = Fraction(self.beta_floor)
        self.beta_per_prime = {int(p): Fraction(b) for p, b in self.beta_per_prime.items()}
        self.sieving_primes = sorted(int(p) for p in self.sieving_primes)
        if not 0 < self.beta_floor <= 1:
            raise InputError(f"beta floor must lie in (0, 1], got {self.beta_floor}")
        for p in self.sieving_primes:
            if not is_prime(p):
                raise InputError(f"sieving prime {p} is not prime")
        missing = [p for p in self.sieving_primes if p not in self.beta_per_prime]
        if missing:
            raise InputError(f"no beta_p given for sieving primes {missing}")
        for p, b in self.beta_per_prime.items():
            if not self.beta_floor <= b <= 1:
                raise InputError(f"beta_{p} = {b} outside [beta, 1] = [{self.beta_floor}, 1]")
        if self.z < 2:
            raise InputError(f"z must be >= 2, got {self.z}")
        if self.X < self.z:
            raise InputError(f"X = {self.X} is below z = {self.z}")
        if self.gamma_tilde < 0:
            raise InputError("gamma_tilde must be nonnegative")
        if self.coset_count < 1:
            raise InputError("coset_count must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> SieveConfig:
        required = ["beta_floor", "c", "X", "z", "sieving_primes", "gamma_tilde"]
        missing = [k for k in required if k not in data]
        if missing:
            raise InputError(f"sieve config missing fields: {', '.join(missing)}")
        floor = Fraction(str(data["beta_floor"]))
        betas = data.get("beta_per_prime") or {p: floor for p in data["sieving_primes"]}
        try:
            return cls(
                beta_per_prime={int(p): Fraction(str(b)) for p, b in betas.items()},
                beta_floor=floor,
                c=float(data["c"]),
                X=float(data["X"]),
                z=float(data["z"]),
                sieving_primes=[int(p) for p in data["sieving_primes"]],
                gamma_tilde=float(data["gamma_tilde"]),
                error_const=float(data.get("error_const", 1.0)),
                coset_count=int(data.get("coset_count", 1)),
                multiplier=float(data.get("multiplier", 1.0)),
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad sieve config value: {exc}") from exc


@dataclass
class SieveBoundReport:
    main_term: float
    error_term: float
    total: float
    z: float
    pi_P: int
    error_mode: str  # "exact" or "closed_form"
    pairs: int
    diagnostics: dict = field(default_factory=dict)
    label: str = "shape evaluation"


def squarefree_products(primes: list[int], z: float) -> list[int]:
    """All products of distinct primes from `primes` that are <= z, including 1."""
    out = [1]
    for p in sorted(primes):
        if p > z:
            break
        out += [d * p for d in out if d * p <= z]
    return sorted(out)


def _r_d(cfg: SieveConfig, d: np.ndarray) -> np.ndarray:
    return cfg.error_const * d**cfg.gamma_tilde * sqrt(cfg.X) * (log(cfg.X) + np.log(d))


def exact_error_sum(cfg: SieveConfig, ds: list[int]) -> float:
    """Sum over pairs (d1, d2) of R_[d1, d2], row by row to bound memory."""
    arr = np.array(ds, dtype=np.int64)
    total = 0.0
    for d1 in arr:
        lcm = d1 // np.gcd(d1, arr) * arr
        total += float(_r_d(cfg, lcm.astype(np.float64)).sum())
    return total


def closed_form_error(cfg: SieveConfig) -> float:
    """z^(2g+2) sqrt(X) (log X + 2 log z): dominates the exact pair sum."""
    z, g = cfg.z, cfg.gamma_tilde
    return cfg.error_const * z ** (2 * g + 2) * sqrt(cfg.X) * (log(cfg.X) + 2 * log(z))


def selberg_bound(cfg: SieveConfig) -> SieveBoundReport:
    pi_P = sum(1 for p in cfg.sieving_primes if p <= cfg.z)
    if pi_P == 0:
        raise EmptySievingSetError(f"no sieving primes <= z = {cfg.z}")
    beta = cfg.beta_floor
    main = float((1 - beta) / beta) * cfg.c * li(cfg.X) / pi_P
    ds = squarefree_products(cfg.sieving_primes, cfg.z)
    pairs = len(ds) ** 2
    if pairs <= EXACT_PAIR_LIMIT:
        err, mode = exact_error_sum(cfg, ds), "exact"
    else:
        err, mode = closed_form_error(cfg), "closed_form"
    main *= cfg.coset_count
    err *= cfg.coset_count * cfg.multiplier
    return SieveBoundReport(
        main_term=main,
        error_term=err,
        total=main + err,
        z=cfg.z,
        pi_P=pi_P,
        error_mode=mode,
        pairs=pairs,
        diagnostics={"li_X": li(cfg.X), "beta_floor": beta, "squarefree_moduli": len(ds)},
    )


def multi_prime_bound(per_prime_ratios) -> Fraction:
    """Product of per-prime bounding-set ratios."""
    ratios = [Fraction(r) for r in per_prime_ratios]
    for r in ratios:
        if not 0 <= r <= 1:
            raise InputError(f"ratio {r} outside [0, 1]")
    out = prod(ratios, start=Fraction(1))
    if all(r < Fraction(3, 4) for r in ratios) and out > Fraction(3, 4) ** len(ratios):
        raise ConsistencyError(f"product {out} exceeds (3/4)^{len(ratios)}")
    return out


# --- exponent bookkeeping -----------------------------------------------------


@dataclass
class ExponentReport:
    dim_ss: int
    rank_ss: int
    epsilon: float
    gamma: Fraction
    beta: Fraction
    exponent: float  # 1 - beta + epsilon
    denominator: int  # 4 gamma + 6
    consistent: bool  # 4 gamma + 6 == 3 dim + rank + 6
    grid_beta: float
    grid_step: float
    g: int | None = None
    corollary_denominator: int | None = None  # 6 g^2 + 2 g + 6 as printed
    substituted_denominator: int | None = None  # 3 g(2g+1) + g + 6
    discrepancy: int | None = None

    def exponent_line(self) -> str:
        line = f"1 - 1/(3*{self.dim_ss}+{self.rank_ss}+6) + eps = 1 - 1/{self.denominator} + eps"
        return line + (f" (eps = {self.epsilon:g})" if self.epsilon else "")


def optimal_beta_grid(gamma_tilde: float, points: int = 4000, lo: float = 1e-4, hi: float = 0.5):
    """Minimise max(1 - b, 2b(g + 1) + 1/2), the X-exponents of the sieve's
    main and error terms at z = X^b, over a log-spaced grid of b.

    Returns (argmin, local grid spacing at the argmin).
    """
    grid = np.geomspace(lo, hi, points)
    obj = np.maximum(1 - grid, 2 * grid * (gamma_tilde + 1) + 0.5)
    i = int(np.argmin(obj))
    step = grid[min(i + 1, points - 1)] - grid[max(i - 1, 0)]
    return float(grid[i]), float(step / 2)


def exponent_report(dim_ss: int, rank_ss: int, epsilon: float = 0.0, g: int | None = None) -> ExponentReport:
    if rank_ss < 1 or dim_ss < rank_ss:
        raise InputError(f"need dim >= rank >= 1, got dim={dim_ss}, rank={rank_ss}")
    if epsilon < 0:
        raise InputError("epsilon must be nonnegative")
    gamma = Fraction(3 * dim_ss + rank_ss, 4)
    denom = 4 * gamma + 6
    beta = 1 / denom
    grid_beta, step = optimal_beta_grid(float(gamma))
    rep = ExponentReport(
        dim_ss=dim_ss,
        rank_ss=rank_ss,
        epsilon=epsilon,
        gamma=gamma,
        beta=beta,
        exponent=1 - float(beta) + epsilon,
        denominator=int(denom),
        consistent=denom == 3 * dim_ss + rank_ss + 6,
        grid_beta=grid_beta,
        grid_step=step,
    )
    if g is not None:
        if g < 1:
            raise InputError("g must be >= 1")
        rep.g = g
        rep.corollary_denominator = 6 * g * g + 2 * g + 6
        rep.substituted_denominator = 3 * g * (2 * g + 1) + g + 6
        rep.discrepancy = rep.substituted_denominator - rep.corollary_denominator
    return rep


def generic_exponent_report(g: int, epsilon: float = 0.0) -> ExponentReport:
    """Generic case: semisimple Mumford-Tate group Sp_2g, dim g(2g+1), rank g."""
    return exponent_report(g * (2 * g + 1), g, epsilon, g=g)


def pi_split(z: float, m: IntPolynomial, lower_cut: int) -> int:
    """Primes lower_cut < l <= z, l not dividing disc(m) * lead(m), where m splits completely."""
    if lower_cut < 2:
        raise InputError("lower_cut must be >= 2")
    if m.degree < 1:
        raise InputError("m must have positive degree")
    if z <= lower_cut:
        return 0
    bad = discriminant(m) * m.leading
    return sum(
        1
        for ell in primes_up_to(int(z))
        if ell > lower_cut and bad % ell and splits_completely_mod(m, ell)
    )
