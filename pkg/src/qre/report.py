"""Verification suites and their machine-readable reports.

A report is a list of checks, each with a stable id, a short description of
the claim it verifies (``ref``), a status (pass, fail or skip), an optional
witness and optional details.  Checks are emitted in id order so that two runs
with the same inputs serialize to identical JSON; timings are only included
on request.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import forms, golden
from .coeff import ScalarField
from .hecke import (HeckeSymmetry, antisymmetrizer, check_braid, check_hecke, hecke_rank,
                    poincare_minus, projector_rank, standard_r, symmetrizer)
from .realg import (build_re_presentation, build_reh_presentation, ch_coefficients,
                    check_flatness, classical_trace_det, commutative_image, is_central,
                    quantum_trace_matrix, shift_check, trace_element)

SCHEMA_VERSION = "1.0"
PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    id: str
    ref: str
    status: str
    witness: object = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"id": self.id, "ref": self.ref, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = _jsonable(self.details)
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    suite: str
    env: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    def to_dict(self, timings: bool = False) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        counts = {s: sum(1 for c in checks if c.status == s) for s in (PASS, FAIL, SKIP)}
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "env": _jsonable(self.env),
            "summary": counts,
            "checks": [c.to_dict(timings) for c in checks],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


@dataclass
class Config:
    n: int = 2
    degree: int = 6
    c: str | None = None
    hbar: str | None = None
    R: HeckeSymmetry | None = None
    profile: str = "rational-roots"
    only: set = field(default_factory=set)  # selected check groups; empty = everything
    flatness: int = 5
    k_list: tuple = (2, 3)
    module_nu: str | None = None
    level: int = 3
    omega: tuple = (1, 2)
    draws: int = 5
    golden_update: bool = False

    def wants(self, group: str) -> bool:
        return not self.only or group in self.only

    def symmetry(self) -> HeckeSymmetry:
        return self.R if self.R is not None else standard_r(self.n)

    def env(self) -> dict:
        return {"n": self.n, "degree": self.degree, "c": self.c, "hbar": self.hbar,
                "profile": self.profile,
                "rmatrix": "custom" if self.R is not None else "standard"}


class _Runner:
    def __init__(self, report: Report):
        self.report = report

    def run(self, cid: str, ref: str, fn: Callable) -> object:
        """fn returns (ok, witness, details); exceptions become failures."""
        t = time.perf_counter()
        try:
            ok, witness, details = fn()
            status = PASS if ok else FAIL
        except Exception as exc:  # reported, not swallowed
            status, witness, details = FAIL, f"{type(exc).__name__}: {exc}", {}
        self.report.checks.append(Check(cid, ref, status, witness, details or {},
                                        time.perf_counter() - t))
        return status == PASS

    def skip(self, cid: str, ref: str, why: str) -> None:
        self.report.checks.append(Check(cid, ref, SKIP, None, {"reason": why}))


# -- hecke -----------------------------------------------------------------------------

def hecke_suite(cfg: Config) -> Report:
    rep = Report("hecke", cfg.env())
    r = _Runner(rep)
    R = cfg.symmetry()
    n = R.n

    def braid():
        res = check_braid(R)
        return res.ok, res.witness, {}

    def hecke():
        res = check_hecke(R)
        return res.ok, res.witness, {}

    r.run("hecke.braid", "braid relation R12 R23 R12 = R23 R12 R23", braid)
    ok = r.run("hecke.hecke", "Hecke condition R^2 = id + (q - q^-1) R", hecke)
    if not (ok and R.braid_ok):
        r.skip("hecke.poincare", "Poincare series of the skew-symmetric algebra", "R is not a Hecke symmetry")
        return rep

    def poincare():
        series = poincare_minus(R, n + 1)
        expected = [1, 2, 1, 0] if n == 2 else None
        ok = series[-1] == 0 and (expected is None or series == expected)
        return ok, None if ok else series, {"series": series}

    def rank():
        p = hecke_rank(R)
        return p == n, None if p == n else p, {"rank": p}

    def projectors():
        ranks = {}
        for k in range(2, 4):
            for name, P in (("+", symmetrizer(R, k)), ("-", antisymmetrizer(R, k))):
                if P @ P != P:
                    return False, f"P{name}^({k}) not idempotent", {}
                ranks[f"P{name}^({k})"] = projector_rank(P)
        return True, None, {"ranks": ranks}

    r.run("hecke.poincare", "P_-(V, t) = 1 + n t + t^2 for n = 2", poincare)
    r.run("hecke.rank", "rank of the standard symmetry equals n", rank)
    r.run("hecke.projectors", "q-(anti)symmetrizers are idempotents", projectors)
    return rep


# -- re ---------------------------------------------------------------------------------

def _classical_equal(f, g: dict) -> bool:
    img = commutative_image(f)
    return {k: Fraction(v) for k, v in img.items()} == {k: Fraction(v) for k, v in g.items()}


def re_suite(cfg: Config) -> Report:
    rep = Report("re", cfg.env())
    r = _Runner(rep)
    R = cfg.symmetry()
    n = R.n
    if not R.validated():
        r.skip("re.flatness", "RE algebra is a flat deformation", "R is not a Hecke symmetry")
        return rep
    A = build_re_presentation(R, degree=max(cfg.degree, cfg.flatness))
    dmax = cfg.flatness if n == 2 else min(cfg.flatness, 3)

    if cfg.wants("flatness"):
        def flat():
            res = check_flatness(A, dmax)
            return res["ok"], res["mismatches"] or None, {"dims": res["dims"], "expected": res["expected"]}

        r.run("re.flatness", "graded dims of the RE algebra equal those of Sym(gl(n))", flat)

        def flat_h():
            field = ScalarField(("q", "hbar"))
            hb = field.parse(cfg.hbar) if cfg.hbar else field.gen("hbar")
            Ah = build_reh_presentation(R, hb, degree=min(cfg.degree, 5))
            res = check_flatness(Ah, min(dmax, 4))
            return res["ok"], res["mismatches"] or None, {"dims": res["dims"], "expected": res["expected"]}

        r.run("re.flatness_hbar", "filtered dims of the hbar-deformed algebra are classical", flat_h)

    if cfg.wants("trace"):
        def trace():
            form = quantum_trace_matrix(A)
            ok, wit = is_central(A.rs, form.element(A))
            details = {"D": [str(d) for d in form.D]}
            if n == 2 and cfg.R is None:
                details["golden"] = golden.compare_or_update(
                    "trace_D", details["D"], "linear solve for D, degree 2, n=2", cfg.golden_update)
                ok = ok and details["golden"] in ("match", "updated")
            return ok, wit, details

        r.run("re.trace", "Tr_q L = Tr(D L) is central for a unique diagonal D", trace)

        def trace_control():
            ok, wit = is_central(A.rs, trace_element(A, [A.field.one] * n))
            return not ok, None, {"D = id central": ok, "witness": wit}

        r.run("re.trace_control", "negative control: Tr L with D = id is not central", trace_control)

    if cfg.wants("ch"):
        def ch():
            data = ch_coefficients(A)
            details = {"sigma": [str(s) for s in data.sigma[1:]], "central": data.central}
            ok = data.verified and all(data.central)
            if n == 2 and cfg.R is None:
                details["golden"] = golden.compare_or_update(
                    "ch_sigma", details["sigma"], "linear solve of the CH system, n=2, left coefficients",
                    cfg.golden_update)
                ok = ok and details["golden"] in ("match", "updated")
            return ok, None, details

        r.run("re.ch", "Cayley-Hamilton identity with central coefficients", ch)

        if n == 2:
            def ch_classical():
                data = ch_coefficients(A)
                tr, det = classical_trace_det(A)
                ok = _classical_equal(data.sigma[1], tr) and _classical_equal(data.sigma[2], det)
                return ok, None, {}

            r.run("re.ch_classical", "q = 1 limit of the CH coefficients is trace and determinant", ch_classical)

        def ch_h():
            field = ScalarField(("q", "hbar"))
            Ah = build_reh_presentation(R, field.gen("hbar"), degree=min(cfg.degree, 5))
            data = ch_coefficients(Ah, filtered=True)
            return data.verified and all(data.central), None, {"sigma": [str(s) for s in data.sigma[1:]]}

        r.run("re.ch_hbar", "Cayley-Hamilton identity in the hbar-deformed algebra", ch_h)

    if cfg.wants("shift"):
        def shift():
            ok, wit = shift_check(R)
            return ok, wit, {}

        r.run("re.shift", "L -> L - h id maps the RE relations to the deformed ones, hbar = h (q - q^-1)", shift)
    return rep


# -- rtt -------------------------------------------------------------------------------

def rtt_suite(cfg: Config) -> Report:
    from .rtt import (antipode, build_combined, build_rtt, check_coaction_preserves_ideal,
                      check_power_equivariance, check_trace_invariance, coaction_images)
    from .ncalg import AlgMatrix

    rep = Report("rtt", cfg.env())
    r = _Runner(rep)
    R = cfg.symmetry()
    if R.n != 2:
        r.skip("rtt.coaction", "coaction preserves the RE relations", "implemented for n = 2")
        return rep
    if not R.validated():
        r.skip("rtt.coaction", "coaction preserves the RE relations", "R is not a Hecke symmetry")
        return rep
    T = build_rtt(R, degree=8)

    def det():
        ok, wit = is_central(T.rs, T.det)
        return ok, wit, {"det_q": str(T.det)}

    def anti():
        S = antipode(T)
        I = AlgMatrix.identity(T.rs, 2)
        ok = (S @ T.T - I).is_zero() and (T.T @ S - I).is_zero()
        return ok, None, {}

    r.run("rtt.det", "the quantum determinant is central", det)
    r.run("rtt.antipode", "S(T) T = T S(T) = id after inverting det_q", anti)
    A = build_re_presentation(R, degree=6)
    C = build_combined(T, A)
    images = coaction_images(C)

    if cfg.wants("coaction"):
        def coaction():
            ok, wit = check_coaction_preserves_ideal(C, images=images)
            return ok, wit, {}

        def control():
            bad = coaction_images(C, "SLT")
            ok, _ = check_coaction_preserves_ideal(C, images=bad)
            return not ok, None, {"reversed convention preserves relations": ok}

        def trace():
            ok, wit = check_trace_invariance(C, images)
            return ok, wit, {}

        r.run("rtt.coaction", "the adjoint coaction maps every RE relation to 0", coaction)
        r.run("rtt.coaction_control", "negative control: the reversed factor order fails", control)
        r.run("rtt.trace_invariant", "Tr_q L is coinvariant", trace)

        def reh():
            field = ScalarField(("q", "hbar"))
            Ah = build_reh_presentation(R, field.gen("hbar"), degree=6)
            Th = build_rtt(R, degree=8)
            Ch = build_combined(Th, Ah)
            ok, wit = check_coaction_preserves_ideal(Ch)
            return ok, wit, {}

        r.run("rtt.coaction_hbar", "the coaction preserves the hbar-deformed relations", reh)

    if cfg.wants("power"):
        for k in cfg.k_list:
            def power(k=k):
                ok, wit = check_power_equivariance(C, k, images)
                return ok, wit, {}

            r.run(f"rtt.power_{k}", f"L -> L^{k} is a comodule morphism", power)
    return rep


# -- sphere -----------------------------------------------------------------------------

RATIONAL_C = ("-1", "-4", "-q^2")
EXT_C = ("1", "2")


def _default_cs(cfg: Config) -> list[str]:
    if cfg.c:
        return [cfg.c]
    return list(RATIONAL_C if cfg.profile == "rational-roots" else EXT_C)


def sphere_suite(cfg: Config) -> Report:
    from . import sphere as sp

    rep = Report("sphere", cfg.env())
    r = _Runner(rep)
    R = cfg.symmetry()
    if R.n != 2 or not R.validated():
        r.skip("sphere.flatness", "the sphere quotient is flat", "needs a valid n = 2 Hecke symmetry")
        return rep
    F = R.field
    A = build_re_presentation(R, degree=cfg.degree)
    cs = _default_cs(cfg)
    spheres = {}
    for cstr in cs:
        field = ScalarField(("q", "c")) if _mentions(cstr, "c") else F
        spheres[cstr] = sp.build_sphere(A, field.parse(cstr), degree=cfg.degree)

    if cfg.wants("flatness"):
        for cstr, S in spheres.items():
            def flat(S=S):
                dims = S.filtration_dims(4)
                exp = [(d + 1) ** 2 for d in range(5)]
                return dims == exp, None if dims == exp else dims, {"dims": dims}

            r.run(f"sphere.flatness[c={cstr}]", "filtration dims of the sphere are (d+1)^2", flat)

        def flat_h():
            field = ScalarField(("q", "hbar"))
            Ah = build_reh_presentation(R, field.gen("hbar"), degree=cfg.degree)
            S = sp.build_orbit(Ah, field.parse(cs[0]), 0, degree=cfg.degree)
            dims = S.filtration_dims(4)
            exp = [(d + 1) ** 2 for d in range(5)]
            return dims == exp, None if dims == exp else dims, {"dims": dims}

        r.run("sphere.flatness_hbar", "the hbar-deformed sphere is flat", flat_h)

        def c2_symbolic():
            field = ScalarField(("q", "c"))
            S = sp.build_sphere(A, field.gen("c"), degree=4)
            spec = sp.numeric_polynomial(S)
            details = {"a": str(spec.a), "c2": str(spec.c2)}
            details["golden"] = golden.compare_or_update(
                "c2", {"a": details["a"], "c2": details["c2"]},
                "substitution of the solved sigma(1), sigma(2) into the quotient, symbolic c",
                cfg.golden_update)
            return not spec.a and details["golden"] in ("match", "updated"), None, details

        r.run("sphere.c2", "numerical polynomial t^2 - a t + c2 as a function of c", c2_symbolic)

    if cfg.wants("projectors"):
        for cstr, S in spheres.items():
            def proj(S=S, cstr=cstr):
                spec = sp.numeric_polynomial(S)
                res = sp.projector_checks(S, spec)
                failed = {k: v[1] for k, v in res.items() if not v[0]}
                details = {"nu1": str(spec.nu1), "nu2": str(spec.nu2),
                           "checks": {k: v[0] for k, v in res.items()}}
                ok = not failed
                if cstr == RATIONAL_C[0] and not cfg.c and cfg.R is None:
                    b1, _ = sp.projectors(S, spec)
                    entries = [[str(b1.projector[i, j]) for j in range(2)] for i in range(2)]
                    details["golden"] = golden.compare_or_update(
                        "projectors", {"c": cstr, "P1": entries},
                        "P1 = (L - nu1)/(nu2 - nu1) in the sphere quotient, c = -1", cfg.golden_update)
                    ok = ok and details["golden"] in ("match", "updated")
                return ok, failed or None, details

            r.run(f"sphere.projectors[c={cstr}]", "line-bundle idempotents P1, P2 with L = nu2 P1 + nu1 P2", proj)

    if cfg.wants("module"):
        S = spheres[cs[0]]
        spec = sp.numeric_polynomial(S)
        roots = [("nu1", spec.nu1), ("nu2", spec.nu2)]
        if cfg.module_nu:
            roots = [(cfg.module_nu, S.field.parse(cfg.module_nu))]

        for label, nu in roots:
            def mod(nu=nu):
                dims = sp.quotient_module_dims(S, nu, cfg.level)
                return any(dims), None, {"dims": dims}

            r.run(f"sphere.module[{label}]", "M / M_nu is nontrivial at a root of the numerical polynomial", mod)
        if not cfg.module_nu:
            def nonroot():
                nu = spec.nu1 + spec.nu2 + 7
                dims = sp.quotient_module_dims(S, nu, cfg.level)
                return not any(dims), None, {"dims": dims}

            r.run("sphere.module[non-root]", "M / M_nu is trivial away from the roots", nonroot)

    if cfg.wants("ch_plus"):
        for cstr, S in spheres.items():
            def chp(S=S):
                spec = sp.numeric_polynomial(S)
                rep_ = sp.verify_ch_plus(S, spec)
                ok = rep_.ok and bool(rep_.q_independent)
                return ok, rep_.witness, {"b": str(rep_.b), "q_independent": rep_.q_independent,
                                          "literal b = nu1 nu2 holds": rep_.literal_b_ok}

            r.run(f"sphere.ch_plus[c={cstr}]", "L_+^3 - b L_+ = 0 on the sphere, q-independent", chp)

        def chp_orbit():
            S = sp.build_orbit(A, F(3), F(1), degree=cfg.degree)
            spec = sp.numeric_polynomial(S)
            rep_ = sp.verify_ch_plus(S, spec)
            return rep_.ok, rep_.witness, {"a": str(spec.a), "b": str(rep_.b), "notes": rep_.notes}

        r.run("sphere.ch_plus_orbit", "cubic identity for L_+ on a generic (a != 0) orbit", chp_orbit)

        def chp_hbar():
            field = ScalarField(("q", "hbar"))
            hb = field.gen("hbar")
            Ah = build_reh_presentation(R, hb, degree=cfg.degree)
            S = sp.build_orbit(Ah, field(3), field(1), degree=cfg.degree)
            spec = sp.numeric_polynomial(S)
            q = field.q
            plain = sp.verify_ch_plus(S, spec, check_literal=False)
            shifted = sp.verify_ch_plus(S, spec, shift=hb / (q - q.inv()), check_literal=False)
            return shifted.ok, shifted.witness, {"unshifted identity holds": plain.ok,
                                                 "a": str(spec.a)}

        r.run("sphere.ch_plus_hbar", "cubic identity on the hbar-deformed orbit after the h-shift", chp_hbar)

        def chp_classical():
            ok, wit = sp.classical_ch_plus(Fraction(1), Fraction(-3))
            ok0, wit0 = sp.classical_ch_plus(Fraction(0), Fraction(-1))
            return ok and ok0, wit or wit0, {}

        r.run("sphere.ch_plus_classical", "q = 1 limit matches the classical symmetrized extension", chp_classical)

    if cfg.wants("leibniz"):
        def leib():
            ok, factor = sp.classical_leibniz_check()
            return ok, None, {"factor": str(factor)}

        r.run("sphere.leibniz", "at q = 1 the Leibniz extension equals L_+ up to one scalar", leib)
    return rep


def _mentions(expr: str, name: str) -> bool:
    return re.search(rf"\b{name}\b", expr) is not None


# -- forms ------------------------------------------------------------------------------

def forms_suite(cfg: Config) -> Report:
    rep = Report("forms", cfg.env())
    r = _Runner(rep)
    F = ScalarField(("q",))

    if cfg.wants("decompose"):
        def relations():
            bad = []
            for twoj in range(5):
                for classical in (False, True):
                    if not forms.spin_module(twoj, F, classical).check_relations():
                        bad.append((twoj, classical))
            return not bad, bad or None, {}

        r.run("forms.spin_modules", "spin modules satisfy the U_q(sl(2)) relations", relations)

        for a, b, exp in ((2, 2, [0, 2, 4]), (1, 1, [0, 2])):
            def dec(a=a, b=b, exp=exp):
                D = forms.decompose_tensor(forms.spin_module(a, F), forms.spin_module(b, F))
                spins = [t for t, m, _ in D.components if m == 1]
                checks = D.check()
                ok = sorted(spins) == exp and all(checks.values())
                return ok, None, {"spins": [str(s) for s, _ in D.spins()], "checks": checks}

            r.run(f"forms.decompose[{Fraction(a, 2)}x{Fraction(b, 2)}]",
                  "tensor square decomposes into spins |a-b|..a+b once each", dec)

    if cfg.wants("sphere"):
        def tflat():
            out = {}
            for name, hb in (("hbar=0", 0), ("hbar symbolic", ScalarField(("q", "hbar")).gen("hbar"))):
                S = forms.build_deformed(hb, F(-1) if not cfg.c else F.parse(cfg.c))
                out[name] = S.filtration_dims(4)
            ok = all(v == [1, 4, 9, 16, 25] for v in out.values())
            return ok, None, out

        r.run("forms.sphere_flatness", "tensor-realization sphere is flat for hbar = 0 and symbolic hbar", tflat)

        def classical_h():
            S = forms.build_deformed(1, F(-1), classical=True)
            dims = S.filtration_dims(4)
            return dims == [1, 4, 9, 16, 25], None, {"dims": dims}

        r.run("forms.sphere_classical_hbar", "q = 1, hbar = 1 gives the enveloping-algebra orbit", classical_h)

    level = cfg.level
    if cfg.wants("omega"):
        Sq = forms.build_sphere_tensor(F(-1), degree=level + 4)
        Sc = forms.build_sphere_tensor(F(-1), degree=level + 4, classical=True)
        kinds = [f"omega{k}" for k in cfg.omega] + (["tangent"] if 1 in cfg.omega else [])
        for kind in kinds:
            def om(kind=kind):
                Mq = forms.build_omega(kind, level, Sq)
                Mc = forms.build_omega(kind, level, Sc)
                tq, tc = Mq.level_table(), Mc.level_table()
                eq = Mq.equivariance_defect()
                return tq == tc and eq is None, eq, {
                    "levels": [forms._table_json(t) for t in tq],
                    "dims": [Mq.dimension(d) for d in range(level + 1)]}

            r.run(f"forms.{kind}", "per-level isotypic table matches the q = 1 oracle", om)

    if cfg.wants("cohomology"):
        D = max(level, 2)

        def coh():
            dims, choices = [], []
            for seed in range(cfg.draws):
                d = forms.build_differential(D, seed=seed)
                dims.append(forms.cohomology_dims(D, d=d))
                choices.append({f"{a.label()} -> {b.label()}": str(s)
                                for (a, b), s in sorted(d.scalars.items(), key=lambda kv: (
                                    kv[0][0].degree, kv[0][0].level, kv[0][0].twoj, kv[0][1].level))})
            ok = all(d == (1, 0, 1) for d in dims)
            return ok, None if ok else dims, {"D": D, "draws": cfg.draws, "dims": list(dims[0]),
                                              "scalars": choices}

        def coh_classical():
            dims = forms.cohomology_dims(D, classical=True)
            return dims == (1, 0, 1), None, {"dims": list(dims)}

        r.run("forms.cohomology", "truncated cohomology is (1, 0, 1) for admissible d", coh)
        r.run("forms.cohomology_classical", "q = 1 scalars give the de Rham dims (1, 0, 1)", coh_classical)

    if cfg.wants("cross"):
        R = standard_r(2)
        A = build_re_presentation(R, degree=6)
        from .sphere import build_sphere

        def cross():
            m = forms.cross_check_realizations(build_sphere(A, F(-1)), forms.build_sphere_tensor(F(-1)), 3)
            ok = m.relations_ok and m.spans_ok and m.levels_agree
            return ok, None, m.summary()

        def cross_control():
            try:
                forms.cross_check_realizations(build_sphere(A, F(-1)), forms.build_sphere_tensor(F(2)), 3)
            except forms.NoIsomorphismFound as exc:
                return True, None, {"raised": str(exc)}
            return False, "identification found for mismatched constants", {}

        r.run("forms.cross_realization", "tensor and RE spheres agree level by level", cross)
        r.run("forms.cross_control", "negative control: mismatched constants admit no identification", cross_control)
    return rep


SUITES = {
    "hecke": hecke_suite,
    "re": re_suite,
    "rtt": rtt_suite,
    "sphere": sphere_suite,
    "forms": forms_suite,
}


def run_suite(name: str, cfg: Config) -> Report:
    if name == "all":
        rep = Report("all", cfg.env())
        for fn in SUITES.values():
            rep.extend(fn(cfg))
        return rep
    return SUITES[name](cfg)
