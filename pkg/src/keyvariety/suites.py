"""Verification suites: named groups of exact checks with seeded inputs."""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .algebra import MultiPoly, PolyMatrix
from .errors import ContractViolation, DegenerateInput, DomainError, NotEigenvector
from .extension import (ExtensionData, apply_B, build_Wprime, components_to_vector,
                        extended_equations, in_span, matrix_A, nu_vectors, phi,
                        printed_residuals, residual_in_M, residuals, restrict_to_surface,
                        solve_membership, theorem_solution, verify_kernel,
                        verify_presentation, xi_eta)
from .rendering import SEGRE, VERONESE, verify_render_ambiguity
from .sampling import random_form, rng_for, small_scalar
from .series import (EXTRA_GENERATOR, GODEAUX_DENOMINATOR, godeaux_cover_series,
                     numerator_of)
from .tower import (BranchData, ProjectionParams, construct_curve, construct_E, construct_K3,
                    node_count, project_T, verify_parametrized_descriptions)

SUITES = ("presentation", "kernel", "corollary", "uniqueness", "hilbert",
          "involution", "godeaux", "nodes")


@dataclass
class Settings:
    seed: int = 0
    overrides: dict = field(default_factory=dict)  # replacement correction forms
    degree_bound: int | None = None
    truncation: int = 12


@dataclass
class Check:
    suite: str
    id: str
    anchor: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self, timings=False):
        out = {"suite": self.suite, "id": self.id, "anchor": self.anchor,
               "verdict": "pass" if self.passed else "fail"}
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


class _Recorder:
    def __init__(self, suite):
        self.suite = suite
        self.checks = []

    def add(self, id, anchor, fn):
        """Run ``fn() -> (passed, detail)`` and time it; exceptions fail the check."""
        t = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(self.suite, id, anchor, bool(passed), detail or "",
                                 time.perf_counter() - t))


def seeded_pairs(seed: int, count: int, avoid_unit_product=False):
    rng = rng_for(f"pairs:{seed}")
    out = []
    while len(out) < count:
        a, b = small_scalar(rng), small_scalar(rng)
        if avoid_unit_product and a * b == 1:
            continue
        out.append((a, b))
    return out


def seeded_projection(seed: int) -> ProjectionParams:
    rng = rng_for(f"projection:{seed}")
    a, b = small_scalar(rng), small_scalar(rng)
    while a * b == 1:
        b = small_scalar(rng)
    return ProjectionParams.make(a, b, [small_scalar(rng, nonzero=False) for _ in range(4)],
                                 [small_scalar(rng, nonzero=False) for _ in range(4)])


def _nonzero_text(p: MultiPoly, limit=400) -> str:
    text = p.to_text()
    return text if len(text) <= limit else text[:limit] + " ..."


def _with_overrides(data: ExtensionData, overrides: dict) -> ExtensionData:
    if not overrides:
        return data
    forms = dict(data.forms)
    F = data.rings.F
    for name, text in overrides.items():
        forms[name] = MultiPoly.parse(F, text) if isinstance(text, str) else text
    return replace(data, forms=forms)


# ---------------------------------------------------------------------------


def suite_presentation(s: Settings) -> list:
    r = _Recorder("presentation")
    cols = verify_presentation()
    for k in range(4):
        r.add(f"A.column_{k + 1}", "presentation matrix A of M over R",
              lambda k=k: (cols[k], ""))
    A = matrix_A()
    tampered = PolyMatrix([[A[i, j] + (MultiPoly.parse(A[0, 0].ctx, "a*b") if (i, j) == (0, 0) else 0)
                            for j in range(4)] for i in range(4)])
    r.add("A.tampered_entry", "presentation matrix A of M over R",
          lambda: (not verify_presentation(tampered)[0], "perturbed column must not vanish"))

    for k in range(5):
        seed = s.seed + k
        cb, kb = BranchData.random_curve(seed), BranchData.random_k3(seed)

        def curve(cb=cb):
            D = construct_curve(cb)
            meta = D.metadata
            return (D.verified() and meta["raw_minors"] == 36 and meta["distinct_minors"] == 21,
                    f"{meta['distinct_minors']} distinct minors")

        r.add(f"tower.D.seed_{seed:02d}", "curve D from its 4x4 symmetric rank-one matrix", curve)
        r.add(f"tower.E.seed_{seed:02d}", "cover E as a complete intersection",
              lambda cb=cb: (construct_E(cb).verified(), ""))

        def k3(kb=kb):
            T1, T2 = construct_K3(kb), construct_K3(kb, prefer_first=False)
            return (T1.verified() and T2.verified() and len(T1.equations) == 20,
                    f"{len(T1.equations)} equations")

        r.add(f"tower.T.seed_{seed:02d}", "K3 surface T from rank-one and rendered relations", k3)

    def descriptions():
        rep = verify_parametrized_descriptions()
        return rep.ok, f"{rep.veronese_minors} Veronese minors, {rep.segre_minors} Segre minors"

    r.add("descriptions", "quotient descriptions of D and T", descriptions)

    def ambiguity():
        rng = rng_for(f"render:{s.seed}")
        p = random_form(VERONESE.base, VERONESE.base.monomials_of_degree(6), rng)
        q = random_form(SEGRE.base, [m for m in SEGRE.base.monomials_of_degree(4)
                                     if SEGRE.base.bidegree_of(m) == (2, 2)], rng)
        return verify_render_ambiguity(p, VERONESE) and verify_render_ambiguity(q, SEGRE), ""

    r.add("render.ambiguity", "rendering is unique modulo the quadric relation", ambiguity)

    for k in range(3):
        params = seeded_projection(s.seed + k)

        def restriction(params=params):
            W = build_Wprime(params)
            return (W.verified() and restrict_to_surface(W) == project_T(params).equations, "")

        r.add(f"restriction.seed_{s.seed + k:02d}", "W' cut by a = b = c = d = 0 is T'", restriction)
    return r.checks


def suite_kernel(s: Settings) -> list:
    r = _Recorder("kernel")

    def kernel(data):
        pm = phi(data)
        bad = [(k, pm(e)) for k, e in enumerate(extended_equations(data), 1)
               if not verify_kernel(e, data, pm)]
        if bad:
            k, img = bad[0]
            return False, f"equation {k} maps to {_nonzero_text(img)}"
        return True, ""

    for k, (a, b) in enumerate(seeded_pairs(s.seed, 20)):
        data = _with_overrides(theorem_solution(a, b), s.overrides)
        r.add(f"extended.pair_{k:02d}", "extended equations lie in the kernel of Phi",
              lambda data=data: kernel(data))
    sym = _with_overrides(theorem_solution(symbolic=True), s.overrides)
    r.add("extended.symbolic", "extended equations lie in the kernel of Phi",
          lambda: kernel(sym))

    def residual_forms():
        got, want = residuals(sym), printed_residuals(sym)
        ok = got.K == want.K and got.L == want.L and not any(got.constant_parts)
        return ok, "" if ok else "residuals differ from their closed forms"

    r.add("residuals.symbolic", "residual parts K and L", residual_forms)

    a, b = seeded_pairs(s.seed + 1000, 1)[0]
    data = _with_overrides(theorem_solution(a, b), s.overrides)

    def oracle(which):
        res = residuals(data)
        target = residual_in_M(res.K if which == "xi" else res.L)
        sol = solve_membership(target, data, s.degree_bound, with_nullspace=True)
        if not sol.found:
            return False, f"membership solver reports {sol.status}"
        printed = xi_eta(data)[0 if which == "xi" else 1]
        if apply_B(printed, data) != target or apply_B(sol.xi, data) != target:
            return False, "re-substitution does not reproduce the residual"
        diff = [p - q for p, q in zip(components_to_vector(printed, sol.columns),
                                      components_to_vector(sol.xi, sol.columns))]
        return in_span(diff, sol.nullspace), (f"{sol.unknowns} unknowns, rank {sol.rank}, "
                                              f"nullity {sol.nullity}")

    r.add("membership.xi", "syzygy vectors xi and eta", lambda: oracle("xi"))
    r.add("membership.eta", "syzygy vectors xi and eta", lambda: oracle("eta"))
    return r.checks


def suite_corollary(s: Settings) -> list:
    r = _Recorder("corollary")

    def check(data):
        pm = phi(data)
        for nv in nu_vectors(data):
            if not verify_kernel(nv.equation, data, pm):
                return False, f"Q{nv.index} maps to {_nonzero_text(pm(nv.equation))}"
        return True, ""

    for k, (a, b) in enumerate(seeded_pairs(s.seed + 2000, 10, avoid_unit_product=True)):
        data = _with_overrides(theorem_solution(a, b), s.overrides)
        r.add(f"nu.pair_{k:02d}", "equations extending Q1..Q4", lambda data=data: check(data))
    r.add("nu.symbolic", "equations extending Q1..Q4",
          lambda: check(_with_overrides(theorem_solution(symbolic=True), s.overrides)))

    def unit_product():
        try:
            nu_vectors(theorem_solution(2, "1/2"), which=(2,))
        except DomainError as exc:
            return True, str(exc)
        return False, "Q2 extension was built at alpha*beta = 1"

    r.add("nu.q2_unit_product", "equations extending Q1..Q4", unit_product)

    def wprime_unit_product():
        try:
            build_Wprime(ProjectionParams.make(2, "1/2", (0, 1, 0, 0), (0, 0, 0, 0)))
        except DomainError as exc:
            return True, str(exc)
        return False, "W' was built at alpha*beta = 1 with l2 != 0"

    r.add("wprime.unit_product", "equations extending Q1..Q4", wprime_unit_product)
    return r.checks


PERTURBED = {"s2": "K", "s4": "K", "s5": "K", "t2": "L", "t4": "L", "t5": "L"}


def suite_uniqueness(s: Settings) -> list:
    r = _Recorder("uniqueness")
    for k in range(3):
        seed = s.seed + k
        a, b = seeded_pairs(seed + 3000, 1)[0]
        base = theorem_solution(a, b)
        rng = rng_for(f"perturb:{seed}")
        F = base.rings.F
        for name, which in PERTURBED.items():
            deg = 1 if name[1] == "2" else 2
            delta = random_form(F, F.monomials_of_degree(deg, ["a", "b", "c", "d"]), rng)

            def run(name=name, which=which, delta=delta):
                data = base.perturbed(name, delta)
                res = residuals(data)
                target = residual_in_M(res.K if which == "K" else res.L)
                sol = solve_membership(target, data, s.degree_bound)
                bound = "full graded piece" if s.degree_bound is None else f"y-degree {s.degree_bound}"
                return sol.status == "inconsistent", f"{sol.status} ({bound}, rank {sol.rank})"

            r.add(f"perturb.{name}.seed_{seed:02d}", "the corrections are unique", run)
    return r.checks


PRINTED_SERIES = [(1, 0), (0, 1), (2, 2), (4, 4)]
PRINTED_NUMERATOR = {0: (1, 0), 1: (0, 0), 2: (0, 0), 3: (0, 0), 4: (-1, 1),
                     5: (-2, -2), 6: (-6, -4), 8: (8, 7)}
PRINTED_EXTENDED = {0: (1, 0), 4: (-1, 0), 5: (-2, -2), 6: (-6, -4)}


def suite_hilbert(s: Settings) -> list:
    r = _Recorder("hilbert")
    if s.truncation < 8:
        raise ContractViolation("the hilbert suite needs truncation >= 8")
    p = godeaux_cover_series(s.truncation)
    num = numerator_of(p, GODEAUX_DENOMINATOR)
    num4 = numerator_of(p, GODEAUX_DENOMINATOR.extend(EXTRA_GENERATOR))

    def compare(series, want):
        bad = [(n, series[n], w) for n, w in want.items() if series[n] != w]
        return not bad, "; ".join(f"t^{n}: got {g}, want {w}" for n, g, w in bad)

    r.add("series.through_t3", "bigraded Hilbert series of the cover ring",
          lambda: compare(p, dict(enumerate(PRINTED_SERIES))))
    r.add("numerator.through_t8", "numerator over the standard denominator",
          lambda: compare(num, PRINTED_NUMERATOR))
    r.add("numerator.t7_vanishes", "numerator over the standard denominator",
          lambda: (num[7] == (0, 0), f"t^7: {num[7]}"))
    r.add("numerator.extended", "numerator after a degree-4 anti-invariant generator",
          lambda: compare(num4, PRINTED_EXTENDED))
    r.add("numerator.first_term", "first non-unit numerator term is not negative",
          lambda: (num.first_nonunit_term() == (4, (-1, 1)), str(num.first_nonunit_term())))
    return r.checks


def suite_involution(s: Settings) -> list:
    from . import involution as inv
    r = _Recorder("involution")
    r.add("E.square_is_tau", "action on E", lambda: (inv.verify_order(inv.SIGMA_E), ""))
    rng = rng_for(f"curve-involution:{s.seed}")
    alphas = [small_scalar(rng) for _ in range(6)]

    def curve_generic():
        rep = inv.check_curve_involution(alphas)
        return rep.ok and rep.fixed_point_free, "" if rep.fixed_point_free else str(rep.fixed_strata)

    r.add("D.generic", "action on D and the transformed matrix", curve_generic)
    for k, name in ((0, "alpha1"), (5, "alpha6")):
        def degenerate(k=k):
            a = list(alphas)
            a[k] = 0
            rep = inv.check_curve_involution(a)
            return rep.ok and not rep.fixed_point_free, str(rep.fixed_strata[0]) if rep.fixed_strata else ""
        r.add(f"D.{name}_zero", "action on D and the transformed matrix", degenerate)

    data = inv.BranchSwapData((1, 0, 0, 0), (0, 0, 0, 1))

    def k3_points():
        rep = inv.check_K3_involution(data, lambdas=[1, 2])
        one, two = rep.points
        ok = (rep.ok and one["verified"] and one["fixed"]["mu"] == "i"
              and not two["on_variety"])
        return ok, f"quartic {rep.quartic}; lambda=1 mu={one['fixed']['mu']}"

    r.add("T.engineered_point", "fixed points of the action on T", k3_points)

    def not_fixed():
        T = construct_K3(data.branch())
        res = inv.verify_fixed_point(T, {"y1": 1, "y2": 1, "y3": 1, "y4": 1}, inv.SIGMA_T)
        return not res.fixed, res.fixed.reason

    r.add("T.point_with_y2_eq_y3", "fixed points of the action on T", not_fixed)

    def quartic_consistency():
        for lam in (1, -2, "1/2", "3/2", "-1/3"):
            rep = inv.check_K3_involution(inv.BranchSwapData.with_root(lam), lambdas=[lam, 3])
            root, other = rep.points
            if not (root["verified"] and root["quartic_value"] == "0"):
                return False, f"lambda={lam} root not verified"
            if other["verified"] != (other["quartic_value"] == "0"):
                return False, f"lambda=3 disagrees with the quartic for root {lam}"
        return True, ""

    r.add("T.quartic_consistency", "fixed points of the action on T", quartic_consistency)
    r.add("Phi.symbolic", "equivariance of the extended map",
          lambda: (inv.check_phi_equivariance("alpha").ok, ""))
    for a in (2, 0):
        r.add(f"Phi.alpha_{a}", "equivariance of the extended map",
              lambda a=a: (inv.check_phi_equivariance(a).ok, ""))
    r.add("Phi.perturbed", "equivariance of the extended map",
          lambda: (not inv.check_phi_equivariance("alpha", perturb_f1="a^3").ok, ""))

    def planes():
        rep = inv.fixed_planes_check("alpha")
        mus = {k: v["image"]["mu"] for k, v in rep.planes.items()}
        return rep.ok, f"mu on images: {mus}; isolated points {rep.tprime.isolated_count}"

    r.add("planes", "fixed planes in P^5 and fixed points on T'", planes)

    def godeaux_table():
        rep = inv.godeaux_assembly()
        dims = {n: v["computed"] for n, v in rep.table.items()}
        return rep.ok, f"dimensions {dims}"

    r.add("table.dimensions", "eigenspace table of the action on W", godeaux_table)
    return r.checks


def suite_godeaux(s: Settings) -> list:
    from . import involution as inv
    r = _Recorder("godeaux")

    def assembly():
        rep = inv.godeaux_assembly()
        return rep.ok and rep.wprime_swapped and len(rep.sections) == 4, \
            ", ".join(x["form"] for x in rep.sections)

    r.add("assembly.default", "complete intersection of type (1+, 1+, 1-, 2-)", assembly)

    def rejected():
        try:
            inv.godeaux_assembly({"anti_quadric": "y1 + y3"})
        except NotEigenvector as exc:
            return exc.form == "y1 + y3", str(exc)
        return False, "invariant quadric accepted as anti-invariant"

    r.add("assembly.rejects_invariant", "complete intersection of type (1+, 1+, 1-, 2-)", rejected)
    r.add("table.entries", "eigenspace table of the action on W",
          lambda: (all(v["eigenvectors"] and v["spans_generators"]
                       for v in inv.EigenspaceTable.printed().check().values()), ""))
    r.add("table.t_anti_invariant", "eigenspace table of the action on W",
          lambda: (inv.is_eigenvector(inv.SIGMA_W, MultiPoly.var(inv.W_AMBIENT, "t"), -1), ""))
    return r.checks


def suite_nodes(s: Settings) -> list:
    r = _Recorder("nodes")
    for k in range(5):
        seed = s.seed + k

        def count(seed=seed):
            n = node_count(BranchData.random_k3(seed))
            return n.count == 10 and n.transversal, f"{n.count} points, transversal={n.transversal}"

        r.add(f"count.seed_{seed:02d}", "branch curves meet transversally in 10 points", count)

    def degenerate():
        try:
            node_count(BranchData.k3("s1^3*t1", "s1*t1^3"))
        except DegenerateInput as exc:
            return True, str(exc)
        return False, "shared fibre component not detected"

    r.add("count.degenerate", "branch curves meet transversally in 10 points", degenerate)
    return r.checks


RUNNERS = {
    "presentation": suite_presentation, "kernel": suite_kernel, "corollary": suite_corollary,
    "uniqueness": suite_uniqueness, "hilbert": suite_hilbert, "involution": suite_involution,
    "godeaux": suite_godeaux, "nodes": suite_nodes,
}


@dataclass
class Report:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)


def run_suites(names, settings: Settings | None = None) -> Report:
    settings = settings or Settings()
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in RUNNERS]
    if unknown:
        raise ContractViolation(f"unknown suites {unknown}; choose from {list(SUITES)} or all")
    checks = []
    for name in sorted(set(names)):
        checks.extend(RUNNERS[name](settings))
    checks.sort(key=lambda c: (c.suite, c.id))
    return Report(checks)

