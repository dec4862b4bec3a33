"""Headline pipelines: Kronecker coefficients and 2-truncated Kronecker
products by lattice-point counting in diamond-quiver cone sections, with the
classical character and LR oracles for cross-validation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import symfunc
from .diamond import build_diamond, cone_inequalities, sigma_tilde_row
from .lattice import PolytopeSection, count_points, enumerate_points
from .partitions import (LambdaWeight, Partition, Weight, lambda_omega,
                         partitions_of, partitions_to_weight)

METHODS = ("polytope", "characters", "lr")


@dataclass(frozen=True)
class KroneckerQuery:
    mu: Partition
    nu: Partition
    lam: Partition
    l: int

    def __post_init__(self):
        if not (self.mu.size == self.nu.size == self.lam.size):
            raise ValueError("partitions must have equal size")
        if self.lam.length > 2:
            raise ValueError("lambda must have at most two rows")
        if max(self.mu.length, self.nu.length, 1) > self.l:
            raise ValueError(f"mu and nu must have at most l={self.l} rows")

    @classmethod
    def create(cls, mu, nu, lam, l="auto"):
        if l == "auto" or l is None:
            l = max(mu.length, nu.length, 1)
        return cls(mu, nu, lam, int(l))


@dataclass
class MethodReport:
    query: KroneckerQuery
    sigma: Weight
    values: dict = field(default_factory=dict)
    counts: dict | None = None
    timings: dict = field(default_factory=dict)

    @property
    def g(self) -> int:
        return next(iter(self.values.values()))

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) <= 1

    def to_json_dict(self):
        out = {
            "mu": str(self.query.mu),
            "nu": str(self.query.nu),
            "lambda": str(self.query.lam),
            "l": self.query.l,
            "sigma": str(self.sigma),
            "g": self.g,
            "agree": self.agree,
            "methods": dict(self.values),
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
        }
        if self.counts is not None:
            out["counts"] = dict(self.counts)
        return out


@lru_cache(maxsize=None)
def _cone(l: int):
    return cone_inequalities(l)


@lru_cache(maxsize=None)
def _sigma_rows(l: int):
    """Equality rows extracting the 2l flag coordinates of the graded weight."""
    cone = _cone(l)
    rows = []
    weights = [sigma_tilde_row(v, l) for v in cone.vertices]
    for c in range(2 * l):
        rows.append(tuple(w[c] for w in weights))
    lam1 = tuple(w[2 * l] for w in weights)
    lam2 = tuple(w[2 * l + 1] for w in weights)
    return rows, lam1, lam2


def section_for(sigma: Weight, lam: LambdaWeight | None = None) -> PolytopeSection:
    """Cone section with the flag-weight equalities and, optionally, the
    torus-weight equalities."""
    l = sigma.l
    cone = _cone(l)
    rows, lam1, lam2 = _sigma_rows(l)
    eqs = [(rows[c], sigma.neg[c]) for c in range(l)]
    eqs += [(rows[l + c], sigma.pos[c]) for c in range(l)]
    if lam is not None:
        eqs.append((lam1, lam.a))
        eqs.append((lam2, lam.b))
    return PolytopeSection.from_cone(cone, eqs)


def polytope_counts(mu: Partition, nu: Partition, lam: Partition, l: int):
    """Lattice counts of the two sections whose difference is the coefficient."""
    sigma = partitions_to_weight(mu, nu, l)
    target = LambdaWeight(lam[0], lam[1])
    omega = lambda_omega(lam)
    n_lam = count_points(section_for(sigma, target))
    n_omega = count_points(section_for(sigma, omega))
    return sigma, n_lam, n_omega


def kronecker(query: KroneckerQuery, method: str = "all") -> MethodReport:
    """Kronecker coefficient by the requested method(s)."""
    wanted = list(METHODS) if method == "all" else [method]
    unknown = [m for m in wanted if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method {unknown[0]!r}")
    sigma = partitions_to_weight(query.mu, query.nu, query.l)
    report = MethodReport(query, sigma)
    for m in wanted:
        t0 = time.perf_counter()
        if m == "polytope":
            _, n_lam, n_omega = polytope_counts(query.mu, query.nu, query.lam, query.l)
            value = n_lam - n_omega
            if value < 0:
                raise AssertionError(f"negative polytope count difference for {query}")
            report.counts = {"lambda": n_lam, "lambda_omega": n_omega}
        elif m == "characters":
            value = symfunc.kron_characters(query.lam, query.mu, query.nu)
        else:
            value = symfunc.kron_via_lr(query.lam, query.mu, query.nu, m=2)
        report.values[m] = value
        report.timings[m] = time.perf_counter() - t0
    return report


def truncated_product(mu: Partition, nu: Partition, l=None) -> symfunc.SchurExpansion:
    """2-truncated Kronecker product: enumerate the sigma-section and convert
    the multiset of torus weights into a Schur expansion."""
    if mu.size != nu.size:
        raise ValueError("partitions must have equal size")
    if l is None or l == "auto":
        l = max(mu.length, nu.length, 1)
    sigma = partitions_to_weight(mu, nu, l)
    points = enumerate_points(section_for(sigma))
    weights = [lambda_weight_of(g, l) for g in points]
    return symfunc.schur_from_weights(weights)


def lambda_weight_of(g, l: int) -> LambdaWeight:
    """Torus weight of a cone point: pairing with the (j, k) grading."""
    cone = _cone(l)
    a = sum(gv * v.j for gv, v in zip(g, cone.vertices))
    b = sum(gv * v.k for gv, v in zip(g, cone.vertices))
    return LambdaWeight(a, b)


def sigma_weight_of(g, l: int) -> tuple:
    """Flag weight of a cone point: pairing with the graded weight rows."""
    rows, _, _ = _sigma_rows(l)
    return tuple(sum(gv * c for gv, c in zip(g, row)) for row in rows)


@dataclass
class CrossValidationReport:
    cases: int = 0
    agreements: int = 0
    first_discrepancy: tuple | None = None
    elapsed: float = 0.0

    @property
    def all_agree(self) -> bool:
        return self.first_discrepancy is None

    def to_json_dict(self):
        out = {"cases": self.cases, "agreements": self.agreements,
               "all_agree": self.all_agree, "elapsed": round(self.elapsed, 3)}
        if self.first_discrepancy is not None:
            triple, values = self.first_discrepancy
            out["first_discrepancy"] = {
                "mu": str(triple[0]), "nu": str(triple[1]), "lambda": str(triple[2]),
                "methods": values,
            }
        return out


def _validate_pair(args):
    mu_parts, nu_parts, n, l_cap = args
    mu = Partition(mu_parts)
    nu = Partition(nu_parts)
    out = []
    l = max(mu.length, nu.length, 1)
    for lam in partitions_of(n, max_length=2):
        rep = kronecker(KroneckerQuery.create(mu, nu, lam, l), method="all")
        out.append(((mu_parts, nu_parts, lam.parts), dict(rep.values)))
    return out


def cross_validate(n_max: int, l_max: int, jobs: int = 1) -> CrossValidationReport:
    """Triple-oracle agreement over all sizes up to n_max with the stated
    length caps; reports the first discrepancy, if any."""
    t0 = time.perf_counter()
    report = CrossValidationReport()
    pairs = []
    for n in range(0, n_max + 1):
        for mu in partitions_of(n, max_length=l_max):
            for nu in partitions_of(n, max_length=l_max):
                pairs.append((mu.parts, nu.parts, n, l_max))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_validate_pair, pairs, chunksize=8)
            results = list(chunks)
    else:
        results = [_validate_pair(p) for p in pairs]
    for chunk in results:
        for triple, values in chunk:
            report.cases += 1
            if len(set(values.values())) <= 1:
                report.agreements += 1
            elif report.first_discrepancy is None:
                report.first_discrepancy = (
                    (Partition(triple[0]), Partition(triple[1]), Partition(triple[2])),
                    values,
                )
    report.elapsed = time.perf_counter() - t0
    return report
