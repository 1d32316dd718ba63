"""Verification grids with machine-readable reports.

Each suite runs the property grids of one subsystem and returns a report
whose cases carry (residual, tolerance, pass).  The one deliberately
inverted case is the negative control of the associativity suite: there
the case passes when a perturbed twist produces a LARGE associator, and
the recorded residual is an indicator (0 = control fired, 1 = it did not).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cgc import CGQuery, cg, cg_matrix, coupled_labels
from .hseries import DEFAULT_ORDER, HSeries, q_factorial, q_integer, spin, weights
from .qplane import (
    PlaneElement,
    mu_classical,
    mu_deformed,
    mu_normal_order,
    star,
    verify_associativity,
    verify_covariance,
)
from .spacetime4d import (
    FourElement,
    r_intertwining_residual,
    star4,
    verify_associativity4,
    yang_baxter_residual,
)
from .twist import EtaFunction, twist_rep, verify_intertwiner

SUITES = ("series", "cgc", "twist", "plane", "spacetime")


@dataclass
class VerifyCase:
    id: str
    parameters: dict
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "parameters": self.parameters,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    cases: list = field(default_factory=list)

    def add(self, case_id: str, residual: float, tolerance: float, **params):
        self.cases.append(VerifyCase(case_id, params, float(residual), float(tolerance)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.cases), default=0.0)

    def sorted_cases(self) -> list:
        return sorted(self.cases, key=lambda c: c.id)

    def to_json(self) -> dict:
        cases = self.sorted_cases()
        return {
            "suite": self.suite,
            "cases": [c.to_json() for c in cases],
            "summary": {
                "total": len(cases),
                "passed": sum(1 for c in cases if c.passed),
                "max_residual": self.max_residual,
            },
        }


def _spins_up_to(max_spin) -> list:
    cap = spin(max_spin)
    return [spin(t / 2) for t in range(0, cap.twice + 1)]


# ---------------------------------------------------------------------------

def suite_series(order: int = 8, tol: float = 1e-9, **_ignored) -> VerifyReport:
    rep = VerifyReport("series")
    rng = np.random.default_rng(1234)
    worst_assoc = worst_dist = 0.0
    for _ in range(20):
        a = HSeries(rng.uniform(-2, 2, size=order + 1))
        b = HSeries(rng.uniform(-2, 2, size=order + 1))
        c = HSeries(rng.uniform(-2, 2, size=order + 1))
        worst_assoc = max(worst_assoc, ((a * b) * c).max_abs_diff(a * (b * c)))
        worst_dist = max(worst_dist, (a * (b + c)).max_abs_diff(a * b + a * c))
    rep.add("series/ring/associativity", worst_assoc, tol, order=order, samples=20)
    rep.add("series/ring/distributivity", worst_dist, tol, order=order, samples=20)

    worst_inv = worst_sqrt = 0.0
    for _ in range(20):
        coeffs = rng.uniform(-1, 1, size=order + 1)
        coeffs[0] = rng.uniform(0.5, 2.0)
        s = HSeries(coeffs)
        worst_inv = max(worst_inv, (s * s.invert()).max_abs_diff(HSeries.one(order)))
        worst_sqrt = max(worst_sqrt, (s.sqrt() * s.sqrt()).max_abs_diff(s))
    rep.add("series/invert/round-trip", worst_inv, tol, order=order, samples=20)
    rep.add("series/sqrt/round-trip", worst_sqrt, tol, order=order, samples=20)

    import math

    worst = 0.0
    for n in range(9):
        worst = max(worst, abs(q_integer(n, order).const - n))
        worst = max(worst, abs(q_factorial(n, order).const - math.factorial(n)))
        worst = max(worst, float(np.max(np.abs(q_integer(n, order).coeffs[1::2]), initial=0.0)))
    rep.add("series/q-numbers/classical-limit-and-parity", worst, tol, n_max=8)
    return rep


def suite_cgc(max_spin="2", order: int = DEFAULT_ORDER, tol: float = 1e-9) -> VerifyReport:
    rep = VerifyReport("cgc")
    spins = _spins_up_to(max_spin)
    for j1 in spins:
        for j2 in spins:
            labels = coupled_labels(j1, j2)
            mat = cg_matrix(j1, j2, deformed=True, order=order)
            n = len(labels)
            worst = 0.0
            gram = np.zeros((order + 1, n, n))
            for k in range(order + 1):
                for i in range(k + 1):
                    gram[k] += mat.data[i].T @ mat.data[k - i]
            gram[0] -= np.eye(n)
            worst = float(np.max(np.abs(gram)))
            rep.add(f"cgc/orthogonality/j1={j1},j2={j2}", worst, tol, j1=str(j1), j2=str(j2))

            cl = cg_matrix(j1, j2, deformed=False, order=order)
            limit = float(np.max(np.abs(mat.data[0] - cl.data[0])))
            rep.add(f"cgc/classical-limit/j1={j1},j2={j2}", limit, 1e-10, j1=str(j1), j2=str(j2))
    import math

    worst = 0.0
    for j1 in spins:
        for j2 in spins:
            J = j1 + j2
            for m1 in weights(j1):
                for m2 in weights(j2):
                    M = m1 + m2
                    racah = cg(CGQuery(j1, j2, J, m1, m2, M))
                    closed = math.sqrt(
                        math.comb(j1.twice, (j1.twice + m1.twice) // 2)
                        * math.comb(j2.twice, (j2.twice + m2.twice) // 2)
                        / math.comb(J.twice, (J.twice + M.twice) // 2)
                    )
                    worst = max(worst, abs(racah - closed))
    rep.add("cgc/stretched-identity", worst, 1e-10, max_spin=str(spin(max_spin)))
    return rep


def suite_twist(max_spin="3/2", order: int = DEFAULT_ORDER, tol: float = 1e-9) -> VerifyReport:
    rep = VerifyReport("twist")
    spins = _spins_up_to(max_spin)
    for j1 in spins:
        for j2 in spins:
            tw = twist_rep(j1, j2, order=order)
            inv_resid = (tw.forward @ tw.inverse).max_diff(tw.forward.identity_like())
            rep.add(f"twist/inverse/j1={j1},j2={j2}", inv_resid, 1e-10, j1=str(j1), j2=str(j2))
            const = float(np.max(np.abs(tw.forward.constant_term() - np.eye(tw.forward.dim))))
            rep.add(f"twist/constant-term/j1={j1},j2={j2}", const, 1e-12, j1=str(j1), j2=str(j2))
            for g in ("E", "F", "K"):
                rep.add(
                    f"twist/intertwiner/j1={j1},j2={j2},g={g}",
                    verify_intertwiner(tw, g),
                    tol,
                    j1=str(j1), j2=str(j2), generator=g,
                )
    return rep


def _plane_basis(max_spin, order):
    out = []
    for j in _spins_up_to(max_spin):
        for m in weights(j):
            out.append((j, m, PlaneElement.basis(j, m, order)))
    return out


def suite_plane(max_spin="3/2", order: int = DEFAULT_ORDER, tol: float = 1e-9) -> VerifyReport:
    rep = VerifyReport("plane")
    basis = _plane_basis(max_spin, order)

    worst = 0.0
    for _, _, a in basis:
        for _, _, b in basis:
            worst = max(worst, star(a, b).max_abs_diff(mu_deformed(a, b)))
    rep.add("plane/star-equals-mu", worst, tol, max_spin=str(spin(max_spin)))

    worst = 0.0
    for _, _, a in basis:
        for _, _, b in basis:
            worst = max(worst, mu_deformed(a, b).max_abs_diff(mu_normal_order(a, b, True)))
            worst = max(worst, mu_classical(a, b).max_abs_diff(mu_normal_order(a, b, False)))
    rep.add("plane/dual-route-product", worst, tol, max_spin=str(spin(max_spin)))

    x, y = PlaneElement.x(order), PlaneElement.y(order)
    from .hseries import q_power

    qcomm = star(x, y).max_abs_diff(star(y, x).scale(q_power(1, order)))
    rep.add("plane/q-commutation", qcomm, tol)

    for g in ("E", "F", "K"):
        worst = 0.0
        for _, _, a in basis:
            for _, _, b in basis:
                worst = max(worst, verify_covariance(g, a, b))
        rep.add(f"plane/covariance/g={g}", worst, tol, generator=g, max_spin=str(spin(max_spin)))

    max_deg = spin(max_spin).twice  # per-factor polynomial degree = 2 j_max
    monos = [
        PlaneElement.monomial(a, b, order)
        for a in range(max_deg + 1)
        for b in range(max_deg + 1 - a)
    ]
    worst = 0.0
    for a in monos:
        for b in monos:
            for c in monos:
                worst = max(worst, verify_associativity(a, b, c))
    rep.add("plane/associativity", worst, tol, per_factor_degree=max_deg)

    eta = EtaFunction.perturbed(0.5, 0.5, 1, [1.0, 1.0])
    control = verify_associativity(x, y, PlaneElement.monomial(0, 2, order), eta)
    rep.add(
        "plane/associativity-negative-control",
        0.0 if control > 1e-3 else 1.0,
        0.5,
        perturbed_residual=control,
    )

    worst = 0.0
    for _, _, a in basis:
        for _, _, b in basis:
            full = star(a, b)
            cl = mu_classical(a, b)
            for key in set(full.terms) | set(cl.terms):
                got = full.terms.get(key, HSeries.zero(order)).const
                want = cl.terms.get(key, HSeries.zero(order)).const
                worst = max(worst, abs(got - want))
    rep.add("plane/classical-limit", worst, 1e-12, max_spin=str(spin(max_spin)))
    return rep


def suite_spacetime(max_spin="1", order: int = DEFAULT_ORDER, tol: float = 1e-9) -> VerifyReport:
    rep = VerifyReport("spacetime")
    spins = _spins_up_to(max_spin)
    worst = 0.0
    for j1 in spins:
        for j2 in spins:
            for g in ("E", "F", "K"):
                worst = max(worst, r_intertwining_residual(j1, j2, g, order))
    rep.add("spacetime/r-intertwining", worst, tol, max_spin=str(spin(max_spin)))

    ybe = yang_baxter_residual(0.5, 0.5, 0.5, order)
    for js in ((0.5, 0.5, 1), (1, 0.5, 0.5), (1, 1, 1)):
        if max(spin(j).twice for j in js) <= spin(max_spin).twice:
            ybe = max(ybe, yang_baxter_residual(*js, order=order))
    rep.add("spacetime/yang-baxter", ybe, tol, max_spin=str(spin(max_spin)))

    planes = [PlaneElement.x(order), PlaneElement.y(order)]
    planes.append(mu_classical(planes[0], planes[1]))
    worst = 0.0
    for a1 in planes:
        for a2 in planes:
            for b1 in planes:
                for b2 in planes:
                    lhs = star4(FourElement.from_planes(a1, a2), FourElement.from_planes(b1, b2), "euclidean")
                    rhs = FourElement.from_planes(star(a1, b1), star(a2, b2))
                    worst = max(worst, lhs.max_abs_diff(rhs))
    rep.add("spacetime/euclid-factorization", worst, tol)

    assoc_order = min(order, 4)
    coords = [FourElement.coordinate(n, assoc_order) for n in ("x1", "y1", "x2", "y2")]
    worst = 0.0
    for a in coords:
        for b in coords:
            for c in coords:
                worst = max(worst, verify_associativity4(a, b, c, "minkowski"))
    rep.add("spacetime/minkowski-associativity", worst, tol, order=assoc_order)

    worst = 0.0
    for variant in ("euclidean", "minkowski"):
        for a in coords:
            for b in coords:
                ab = star4(a, b, variant)
                ba = star4(b, a, variant)
                for key in set(ab.terms) | set(ba.terms):
                    ca = ab.terms.get(key, HSeries.zero(assoc_order)).const
                    cb = ba.terms.get(key, HSeries.zero(assoc_order)).const
                    worst = max(worst, abs(ca - cb))
    rep.add("spacetime/classical-commutativity", worst, 1e-12)
    return rep


_SUITE_FUNCS = {
    "series": suite_series,
    "cgc": suite_cgc,
    "twist": suite_twist,
    "plane": suite_plane,
    "spacetime": suite_spacetime,
}

_SUITE_DEFAULT_SPIN = {"cgc": "2", "twist": "3/2", "plane": "3/2", "spacetime": "1"}


def run_suites(names, max_spin=None, order: int = DEFAULT_ORDER, tol: float = 1e-9) -> list:
    """Run the named suites ('all' expands to every suite) and return reports."""
    if isinstance(names, str):
        names = list(_SUITE_FUNCS) if names == "all" else [names]
    reports = []
    for name in names:
        if name not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
        kwargs = {"order": order, "tol": tol}
        if name != "series":
            kwargs["max_spin"] = max_spin if max_spin is not None else _SUITE_DEFAULT_SPIN[name]
        reports.append(_SUITE_FUNCS[name](**kwargs))
    return reports
