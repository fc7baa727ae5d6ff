"""Verification suites behind the CLI: each builds a VerificationReport.

Every case records what was compared, the two values, the normalized
error, the tolerance it was held to, and whether the comparison is an
exact-arithmetic identity ("exact"), a closed-form identity evaluated in
floats ("closed-form-identity"), or a comparison against an independently
computed oracle ("derived-oracle").
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from . import confgeom, fmethod, sbops
from .exactpoly import ExactPoly
from .gausspoly import GaussPolyFn
from .quadrature import Budget
from .report import Case, RunConfig, VerificationReport, write_csv
from .specfun import gamma, gegenbauer, hyp2f1, inflated_gegenbauer, recip_gamma
from .weyl import WeylOperator, weyl_apply, weyl_compose, weyl_hat

SUITES: Dict[str, Callable[[RunConfig], VerificationReport]] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


def run_suite(config: RunConfig) -> VerificationReport:
    if config.suite not in SUITES:
        raise ValueError(f"unknown suite {config.suite!r}; have {sorted(SUITES)}")
    t0 = time.perf_counter()
    report = SUITES[config.suite](config)
    report.wall_seconds = time.perf_counter() - t0
    if config.out:
        report.write(config.out)
    return report


def _report(config: RunConfig) -> VerificationReport:
    return VerificationReport(suite=config.suite, config=vars(config).copy())


def _err(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


# ---------------------------------------------------------------- specfun ---


@suite("specfun")
def run_specfun(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = np.random.default_rng(config.seed)

    worst = 0.0
    for _ in range(200):
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if abs(z.imag) < 1e-2 and abs(z.real - round(z.real)) < 1e-2 and z.real < 0.5:
            continue
        worst = max(worst, abs(gamma(z + 1) - z * gamma(z)) / abs(gamma(z + 1)))
    tol = config.tol or 1e-12
    rep.add(Case("gamma-functional-eq", "gamma(z+1) = z gamma(z) on the strip",
                 "derived-oracle", {"samples": 200}, worst, tol, worst <= tol))

    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(-15, 15), rng.uniform(-15, 15))
        if abs(z.imag) < 1e-2 and abs(z.real - round(z.real)) < 1e-2 and z.real < 0.5:
            continue
        worst = max(worst, abs(recip_gamma(z) * gamma(z) - 1.0))
    rep.add(Case("recip-gamma-product", "recip_gamma(z) * gamma(z) = 1 off poles",
                 "derived-oracle", {"samples": 100}, worst, 1e-12, worst <= 1e-12))

    zeros = max(abs(recip_gamma(-k)) for k in range(0, 12))
    rep.add(Case("recip-gamma-zeros", "recip_gamma vanishes exactly at non-positive integers",
                 "exact", {"range": "0..-11"}, zeros, 0.0, zeros == 0.0))

    worst = 0.0
    for _ in range(50):
        a = complex(rng.uniform(-2, 3), rng.uniform(-1, 1))
        b = complex(rng.uniform(-2, 3), rng.uniform(-1, 1))
        c = complex(rng.uniform(0.5, 3), rng.uniform(-1, 1))
        z = rng.uniform(-0.8, 0.8)
        lhs = c * (1 - z) * hyp2f1(a, b, c, z) - c * hyp2f1(a - 1, b, c, z) \
            + (c - b) * z * hyp2f1(a, b, c + 1, z)
        scale = abs(hyp2f1(a, b, c, z))
        worst = max(worst, abs(lhs) / max(scale, 1.0))
    rep.add(Case("hyp2f1-contiguous", "three-term contiguous relation",
                 "closed-form-identity", {"samples": 50}, worst, 1e-10, worst <= 1e-10))

    worst = 0.0
    for _ in range(max(config.samples, 100)):
        a = complex(rng.uniform(-2, 2), rng.uniform(-0.8, 0.8))
        b = complex(rng.uniform(-2, 2), rng.uniform(-0.8, 0.8))
        c = complex(rng.uniform(0.6, 2.5), rng.uniform(-0.5, 0.5))
        z = rng.uniform(-0.9, 0.9)
        lhs = hyp2f1(a, b, c, z)
        rhs = (1 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
        worst = max(worst, _rel(rhs, lhs))
    rep.add(Case("kummer-relation", "principal-branch quadratic transformation sweep",
                 "closed-form-identity", {"samples": max(config.samples, 100)},
                 worst, 1e-10, worst <= 1e-10))

    worst = 0.0
    for l in range(0, 7):
        for _ in range(50):
            mu = complex(rng.uniform(0.3, 4.0), rng.uniform(-0.5, 0.5))
            x = rng.uniform(-0.95, 0.95)
            lhs = gegenbauer(2 * l, mu, x)
            rhs = (-1) ** l * gamma(l + mu) / (math.factorial(l) * gamma(mu)) \
                * hyp2f1(-l, l + mu, 0.5, x * x)
            worst = max(worst, _rel(lhs, rhs))
    rep.add(Case("gegenbauer-evenness", "even-degree values against the series form",
                 "closed-form-identity", {"l_max": 6, "samples": 50},
                 worst, 1e-12, worst <= 1e-12))

    worst = 0.0
    for l in range(0, 7):
        for _ in range(30):
            mu = complex(rng.uniform(0.3, 3.0), rng.uniform(-0.3, 0.3))
            v = rng.uniform(0.2, 3.0)
            t = rng.uniform(-1.5, 1.5)
            lhs = inflated_gegenbauer(l, mu).eval(v, t)
            rhs = gamma(mu) / gamma(mu + l) * v**l * gegenbauer(2 * l, mu, t / math.sqrt(v))
            worst = max(worst, _rel(lhs, rhs))
    rep.add(Case("inflated-gegenbauer-two-forms", "expanded table vs quotient form",
                 "closed-form-identity", {"l_max": 6, "samples": 30},
                 worst, 1e-11, worst <= 1e-11))
    return rep


# ------------------------------------------------------------------- weyl ---


def random_weyl(n: int, rng: random.Random, max_terms: int = 4, max_exp: int = 2,
                max_order: int = None) -> WeylOperator:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        alpha = tuple(rng.randint(0, max_exp) for _ in range(n))
        beta = tuple(rng.randint(0, max_exp) for _ in range(n))
        if max_order is not None and sum(beta) > max_order:
            beta = tuple(0 for _ in range(n))
        terms[(alpha, beta)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return WeylOperator(n, terms)


@suite("weyl")
def run_weyl(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = random.Random(config.seed)

    failures = 0
    for _ in range(100):
        s, t = random_weyl(3, rng), random_weyl(3, rng)
        if weyl_hat(weyl_compose(s, t)) != weyl_compose(weyl_hat(s), weyl_hat(t)):
            failures += 1
    rep.add(Case("hat-homomorphism", "dual transform respects composition, exact term maps",
                 "exact", {"pairs": 100}, float(failures), 0.0, failures == 0))

    f = GaussPolyFn.gaussian(2, width=0.8, center=(0.3, -0.2)).mul_poly(
        {(0, 0): 1.0, (1, 0): 0.4, (0, 2): -0.6}
    )
    worst = 0.0
    for _ in range(20):
        s = random_weyl(2, rng, max_terms=3, max_order=3)
        lhs = weyl_apply(s, f).fc_transform()
        rhs = weyl_apply(weyl_hat(s), f.fc_transform())
        for _ in range(10):
            z = np.array([rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)])
            l, r = lhs(z), rhs(z)
            worst = max(worst, abs(l - r) / (1 + abs(l)))
    rep.add(Case("transform-intertwining", "dual operator matches transform conjugation on "
                 "the Gaussian class", "derived-oracle", {"pairs": 20, "points": 10},
                 worst, 1e-9, worst <= 1e-9))
    return rep


# --------------------------------------------------------------- geometry ---


def random_lorentz(n: int, rng: np.random.Generator) -> confgeom.LorentzElement:
    h = confgeom.LorentzElement.identity(n)
    for _ in range(2):
        q, _ = np.linalg.qr(rng.normal(size=(n + 1, n + 1)))
        h = h @ confgeom.LorentzElement.rotation(n, q)
        h = h @ confgeom.LorentzElement.boost(n, int(rng.integers(1, n + 2)), rng.uniform(-1.5, 1.5))
    return h


def _random_unit(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=n + 1)
    return v / np.linalg.norm(v)


@suite("geometry")
def run_geometry(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = np.random.default_rng(config.seed)
    n = config.n_values[0] if config.n_values else 3

    worst = 0.0
    for _ in range(1000):
        worst = max(worst, confgeom.cocycle_residual(
            random_lorentz(n, rng), random_lorentz(n, rng), _random_unit(n, rng)))
    rep.add(Case("cocycle", "conformal factor cocycle residual", "derived-oracle",
                 {"samples": 1000, "n": n}, worst, 1e-10, worst <= 1e-10))

    amb = GaussPolyFn.gaussian(n + 1, width=0.7, center=tuple([0.25] * (n + 1))).mul_poly(
        {tuple([1] + [0] * n): 0.5, tuple([0] * (n + 1)): 1.0}
    )
    lam = 0.8 + 0.4j
    worst = 0.0
    for _ in range(200):
        h1, h2 = random_lorentz(n, rng), random_lorentz(n, rng)
        u = _random_unit(n, rng)
        lhs = confgeom.compact_action(h1, lam, confgeom.compact_action(h2, lam, amb))(u)
        rhs = confgeom.compact_action(h2 @ h1, lam, amb)(u)
        worst = max(worst, _err(lhs, rhs))
    rep.add(Case("weighted-action-composition", "weighted pullbacks compose as a group action",
                 "derived-oracle", {"samples": 200, "n": n}, worst, 1e-10, worst <= 1e-10))

    worst = 0.0
    for _ in range(200):
        q, _ = np.linalg.qr(rng.normal(size=(n + 1, n + 1)))
        u = _random_unit(n, rng)
        _, om = confgeom.moebius_act(confgeom.LorentzElement.rotation(n, q), u)
        worst = max(worst, abs(om - 1.0))
    rep.add(Case("isometry-factor", "block rotations have conformal factor 1",
                 "exact", {"samples": 200, "n": n}, worst, 1e-12, worst <= 1e-12))

    worst = 0.0
    for _ in range(1000):
        u = _random_unit(n, rng)
        x = confgeom.stereographic(u)
        if x is confgeom.INFINITY:
            continue
        worst = max(worst, float(np.max(np.abs(confgeom.stereographic_inverse(x) - u))))
    rep.add(Case("chart-round-trip", "stereographic chart inverts", "exact",
                 {"samples": 1000, "n": n}, worst, 1e-12, worst <= 1e-12))

    worst = 0.0
    for _ in range(200):
        x = rng.normal(size=n)
        x[-1] = 0.0
        worst = max(worst, abs(float(confgeom.stereographic_inverse(x)[-1])))
    rep.add(Case("hyperplane-lift", "flat hyperplane lifts to the equatorial slice",
                 "exact", {"samples": 200, "n": n}, worst, 1e-12, worst <= 1e-12))

    lam = 0.6 - 0.2j
    big_f = GaussPolyFn.gaussian(n, width=0.9, center=tuple([0.2] * n)).mul_poly(
        {tuple([1] + [0] * (n - 1)): 0.7, tuple([0] * n): 1.0}
    )
    b = [0.5] + [0.0] * (n - 1)
    q, _ = np.linalg.qr(rng.normal(size=(n - 1, n - 1)))
    motions = [
        confgeom.translation(b), confgeom.dilation(1.6), confgeom.rotation(q),
        confgeom.reflection(), confgeom.inversion(),
    ]
    for motion in motions:
        try:
            direct = confgeom.pi_flat(motion, lam, big_f)
        except Exception:
            direct = confgeom.pi_flat(motion, lam, lambda x: big_f(x))
        via = confgeom.flat_action_via_sphere(motion, n, lam, lambda x: big_f(x))
        worst = 0.0
        used = 0
        while used < 50:
            x = rng.normal(size=n) * 0.9
            if np.linalg.norm(x) < 0.15:
                continue
            used += 1
            d = direct(x)
            worst = max(worst, _err(d, via(x)))
        rep.add(Case(f"flat-vs-compact-{motion.kind}",
                     "flat-picture action matches the sphere-route composition",
                     "derived-oracle", {"generator": motion.kind, "points": 50, "n": n},
                     worst, 1e-10, worst <= 1e-10))
    return rep


# ---------------------------------------------------------------- residue ---


@suite("residue")
def run_residue(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = np.random.default_rng(config.seed)
    tol = config.tol or 1e-10
    rows = []
    for n in config.n_values:
        for l in config.l_values:
            for k in range(config.samples):
                lam = float(rng.uniform(-3, 3))
                grid = sbops.symbol_grid(rng, n, config.grid_points)
                worst = sbops.residue_check(l, n, lam, grid)
                rows.append([n, l, lam, worst])
                rep.add(Case(f"residue-n{n}-l{l}-s{k}",
                             "integral-family symbol collapses onto the differential symbol",
                             "closed-form-identity",
                             {"n": n, "l": l, "lam": lam, "grid": config.grid_points},
                             worst, tol, worst <= tol))
    for i, (lam_i, nu_i) in enumerate([(0, 0), (-2, 0), (-2, -2), (-4, -2), (-6, 0)]):
        n = config.n_values[0]
        params = sbops.ParamPair(lam=lam_i, nu=nu_i, n=n)
        grid = sbops.symbol_grid(rng, n, 20)
        worst = max(abs(sbops.asymbol_eval(params, zp, zn)) for zp, zn in grid)
        rep.add(Case(f"vanishing-lattice-{i}",
                     "symbol vanishes on the even integer lattice points",
                     "closed-form-identity", {"lam": lam_i, "nu": nu_i, "n": n},
                     worst, 1e-12, worst <= 1e-12))
    if config.csv_out:
        write_csv(config.csv_out, ["n", "l", "lam", "max_error"], rows)
    return rep


# ----------------------------------------------------------- functional-eq ---


@suite("functional-eq")
def run_functional_eq(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = np.random.default_rng(config.seed)
    tol = config.tol or 1e-10
    rows = []
    for n in config.n_values:
        for k in range(config.samples):
            lam = complex(rng.uniform(-2.5, 2.5), rng.uniform(-0.8, 0.8))
            nu = complex(rng.uniform(-2.5, 2.5), rng.uniform(-0.8, 0.8))
            params = sbops.ParamPair(lam=lam, nu=nu, n=n)
            grid = sbops.symbol_grid(rng, n, config.grid_points)
            for kind in ("TA", "AT"):
                worst = sbops.functional_eq_check(kind, params, grid)
                rows.append([kind, n, lam, nu, worst])
                rep.add(Case(f"feq-{kind}-n{n}-s{k}",
                             f"{kind} symbol-product functional equation",
                             "closed-form-identity",
                             {"n": n, "lam": lam, "nu": nu, "grid": config.grid_points},
                             worst, tol, worst <= tol))
    if config.csv_out:
        write_csv(config.csv_out, ["kind", "n", "lam", "nu", "max_error"], rows)
    return rep


# -------------------------------------------------------------- covariance ---


@suite("covariance")
def run_covariance(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = np.random.default_rng(config.seed)
    budget = Budget(config.budget)
    n = 2
    f = GaussPolyFn.gaussian(n, width=0.8, center=(0.1, -0.3)).mul_poly(
        {(0, 0): 1.0, (1, 1): 0.5}
    )
    gens = {
        "translation": confgeom.translation([0.6, 0.0]),
        "dilation": confgeom.dilation(1.7),
        "rotation": confgeom.rotation(np.array([[-1.0]])),
        "reflection": confgeom.reflection(),
        "inversion": confgeom.inversion(),
    }
    wanted = list(gens) if config.gen == "all" else [config.gen]
    if config.op == "juhl":
        for gen_name in wanted:
            motion = gens[gen_name]
            for l in [l for l in config.l_values if l <= 2]:
                params = sbops.ParamPair(lam=Fraction(2, 5), nu=Fraction(2, 5) + 2 * l, n=n)
                if gen_name == "inversion":
                    pts = [np.array([v]) for v in (-1.4, -0.9, -0.5, 0.45, 0.8, 1.3)]
                    tol = config.tol or 1e-6
                else:
                    pts = [np.array([v]) for v in np.linspace(-1.6, 1.6, 20)]
                    tol = config.tol or 1e-10
                worst = sbops.covariance_check("juhl", motion, params, f, pts, budget=budget)
                kind = "derived-oracle" if gen_name == "inversion" else "closed-form-identity"
                rep.add(Case(f"juhl-{gen_name}-l{l}", "differential operator intertwines "
                             "the weighted actions", kind,
                             {"generator": gen_name, "l": l, "n": n}, worst, tol, worst <= tol))
    elif config.op == "aop":
        params = sbops.ParamPair(lam=2.5, nu=0.7, n=n)
        fa = GaussPolyFn.gaussian(n, width=1.0, center=(0.3, -0.2)).mul_poly(
            {(0, 0): 1.0, (1, 0): 0.4}
        )
        pts = [np.array([v]) for v in (-1.1, -0.5, 0.5, 0.9)]
        tol = config.tol or 1e-5
        for gen_name in (wanted if config.gen != "all" else ["dilation", "rotation"]):
            worst = sbops.covariance_check("aop", gens[gen_name], params, fa, pts, budget=budget)
            rep.add(Case(f"aop-{gen_name}", "integral operator intertwines the weighted actions",
                         "derived-oracle", {"generator": gen_name, "n": n,
                                            "lam": 2.5, "nu": 0.7},
                         worst, tol, worst <= tol))
    elif config.op == "riesz":
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        fa = GaussPolyFn.gaussian(n, width=1.0, center=(0.3, -0.2)).mul_poly(
            {(0, 0): 1.0, (1, 0): 0.4}
        )
        tol = config.tol or 1e-5
        worst = sbops.covariance_check(
            "riesz", confgeom.rotation(q), sbops.ParamPair(lam=-0.6, nu=0.0, n=n),
            fa, [np.array([0.4, -0.3]), np.array([-0.7, 0.2])], budget=budget)
        rep.add(Case("riesz-rotation", "radial convolution commutes with rotations",
                     "derived-oracle", {"lam": -0.6, "n": n}, worst, tol, worst <= tol))
    else:
        raise ValueError(f"unknown covariance operator {config.op!r}")
    return rep


# ------------------------------------------------------------ fourier-kernel ---


@suite("fourier-kernel")
def run_fourier_kernel(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    budget = Budget(config.budget)
    tol = config.tol or 1e-4
    rows = []
    a_params = [(3.5, 1.0), (4.0, 1.25), (3.0, 0.8)]
    xis = [(1.5, 0.6), (2.0, -1.0), (1.0, 0.3)]
    for lam, nu in a_params:
        params = sbops.ParamPair(lam=lam, nu=nu, n=2)
        for xi in xis:
            num = sbops.fr_akernel_numeric(params, xi[0], xi[1], budget)
            ref = sbops.asymbol_fr(params, [xi[0]], xi[1]).real
            err = abs(num - ref) / abs(ref)
            rows.append(["akernel", lam, nu, xi[0], xi[1], num, ref, err])
            rep.add(Case(f"akernel-ft-l{lam}-n{nu}-x{xi[0]}_{xi[1]}",
                         "direct oscillatory transform of the integral kernel vs closed form",
                         "derived-oracle", {"lam": lam, "nu": nu, "xi": list(xi)},
                         err, tol, err <= tol, computed=num, reference=ref))
    for lam in (-0.75, -0.6):
        for xi in [(1.0, 0.7), (2.0, -1.0)]:
            num = sbops.fr_riesz_numeric(lam, xi, budget)
            ref = sbops.ks_symbol_fr(-lam, 2, xi).real
            err = abs(num - ref) / abs(ref)
            rows.append(["riesz", lam, "", xi[0], xi[1], num, ref, err])
            rep.add(Case(f"riesz-ft-l{lam}-x{xi[0]}_{xi[1]}",
                         "direct oscillatory transform of the convolution kernel vs closed form",
                         "derived-oracle", {"lam": lam, "xi": list(xi)},
                         err, tol, err <= tol, computed=num, reference=ref))
    if config.csv_out:
        write_csv(config.csv_out,
                  ["kernel", "lam", "nu", "xi1", "xi2", "lhs", "rhs", "rel_error"], rows)
    return rep


# ----------------------------------------------------------------- fmethod ---


@suite("fmethod")
def run_fmethod(config: RunConfig) -> VerificationReport:
    rep = _report(config)
    rng = random.Random(config.seed)
    for n in config.n_values:
        for l in config.l_values:
            lams = ([Fraction(config.lam)] if config.lam is not None else
                    [Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                     for _ in range(config.samples)])
            for k, lam in enumerate(lams):
                sols = fmethod.solve_sol_space(n, l, lam)
                dim_ok = len(sols) == 1
                prop_ok = False
                ann_ok = False
                coords = None
                if dim_ok:
                    coords = fmethod.in_invariant_span(sols[0], n, l)
                    table = fmethod.juhl_table_over_invariant_basis(n, l, lam)
                    prop_ok = coords is not None and fmethod.proportional_exact(coords, table)
                    system = fmethod.build_system(n, l, lam)
                    ann_ok = fmethod.verify_annihilation(sols[0], system)
                ok = dim_ok and prop_ok and ann_ok
                rep.add(Case(
                    f"solspace-n{n}-l{l}-s{k}",
                    "annihilation system has a one-dimensional polynomial solution space, "
                    "proportional to the operator coefficient table",
                    "exact",
                    {"n": n, "l": l, "lam": lam, "dimension": len(sols)},
                    0.0 if ok else 1.0, 0.0, ok,
                    computed=[str(c) for c in coords] if coords else None,
                    reference=[str(c) for c in
                               fmethod.juhl_table_over_invariant_basis(n, l, lam)],
                ))
    return rep
