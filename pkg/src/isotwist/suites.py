"""Check suites over loaded inputs."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import (
    GradedPresentation,
    involution,
    involution_identity_holds,
    multiply,
    quantize,
    quantize_presentation,
    star_involution,
    star_product,
)
from .calculus import check_calculus
from .parsing import (
    PresentationFile,
    SymmetryFile,
    fixture_path,
    load_presentation,
    load_symmetry,
    parse_symmetry,
)
from .report import ERROR, CheckReport, CheckResult, result
from .rng import SplitMix64, random_element, random_homogeneous
from .scalars import lam
from .spectral import (
    SpectralModel,
    check_boundedness_and_isospectrality,
    check_crossproduct_equivariance,
    check_isometry,
    check_representation,
    check_torus_relation,
)
from .symmetry import GeneratorAction, check_lie_relations, check_serre
from .twist import (
    TwistedSymmetry,
    check_antipode_axiom,
    check_antipode_u,
    check_coassociativity,
    check_cocycle_report,
    check_coproduct_conjugation,
    check_counit,
    check_module_algebra,
    check_module_algebra_negative,
    check_star_compat,
    r_matrix_checks,
)

SUITES = ("algebra", "hopf", "calculus", "spectral", "all")


@dataclass(frozen=True)
class SuiteOptions:
    max_degree: int = 5
    trials: int = 200
    seed: int = 0
    cutoff: int = 8
    theta: Fraction = Fraction(1, 5)
    calculus_degree: int = 3  # coefficient words in form checks
    calculus_trials: int = 100
    sample_trials: int = 50  # per-symbol Hopf axiom samples

    def cutoffs(self) -> dict:
        d = asdict(self)
        del d["seed"]
        d["theta"] = str(self.theta)
        return d


@dataclass
class SuiteInputs:
    presentations: list[PresentationFile] = field(default_factory=list)
    symmetries: list[SymmetryFile] = field(default_factory=list)

    @classmethod
    def from_paths(cls, paths) -> "SuiteInputs":
        inputs = cls()
        for path in paths:
            path = Path(path)
            if path.suffix == ".alg":
                inputs.presentations.append(load_presentation(path))
            elif path.suffix == ".sym":
                inputs.symmetries.append(load_symmetry(path))
            else:
                raise ValueError(f"{path}: expected a .alg or .sym file")
        return inputs

    @classmethod
    def defaults(cls, suite: str) -> "SuiteInputs":
        algs = {"algebra": ["T2.alg", "C3.alg"], "spectral": ["T2.alg"]}.get(suite, ["C3.alg", "T2.alg"])
        syms = [] if suite in ("algebra", "spectral") else ["A2.sym", "T2.sym"]
        return cls([load_presentation(fixture_path(a)) for a in algs],
                   [load_symmetry(fixture_path(s)) for s in syms])

    def actions(self) -> list[GeneratorAction]:
        """Pair symmetry files with presentations in order; the rest get the torus."""
        out = []
        torus = parse_symmetry("torus\n")
        for k, pf in enumerate(self.presentations):
            sym = self.symmetries[k] if k < len(self.symmetries) else torus
            out.append(sym.bind(pf.source))
        return out


def _tag(prefix: str, checks: list[CheckResult]) -> list[CheckResult]:
    for c in checks:
        c.id = f"{prefix}/{c.id}"
    return checks


def _guard(cid: str, fn) -> list[CheckResult]:
    """Run a check group; an exception becomes a single error entry."""
    try:
        return fn()
    except Exception as e:  # noqa: BLE001 - reported, not swallowed
        return [CheckResult(cid, ERROR, detail=f"{type(e).__name__}: {e}")]


# -- algebra ----------------------------------------------------------------------


def _sampled(cid, rng, trials, make, test) -> CheckResult:
    for _ in range(trials):
        args = make(rng)
        msg = test(*args)
        if msg:
            return result(cid, False, "; ".join(f"{n}={a}" for n, a in zip("abc", args)) + f": {msg}")
    return result(cid, True, detail=f"{trials} samples")


def algebra_checks(p: GradedPresentation, opts: SuiteOptions) -> list[CheckResult]:
    q = quantize_presentation(p)
    base = SplitMix64(opts.seed)
    md = opts.max_degree
    out = []

    def triple(rng):
        return tuple(random_element(rng, p, md) for _ in range(3))

    def pair_h(rng):
        return tuple(random_homogeneous(rng, p, md) for _ in range(2))

    def pair(rng):
        return tuple(random_element(rng, p, md) for _ in range(2))

    def assoc(a, b, c):
        x, y, z = quantize(a), quantize(b), quantize(c)
        if multiply(multiply(x, y), z) != multiply(x, multiply(y, z)):
            return "deformed product not associative"
        left = multiply(star_product(a, b), quantize(c))
        if left != multiply(quantize(a), star_product(b, c)):
            return "star product not associative"

    def oracle(a, b):
        if star_product(a, b) != multiply(quantize(a), quantize(b)):
            return "star_product differs from the intrinsic product of A_L"

    def undeformed_assoc(a, b, c):
        if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
            return "product not associative"

    out.append(_sampled("algebra.star-associativity", base.fork("assoc"), opts.trials, triple, assoc))
    out.append(_sampled("algebra.associativity", base.fork("assoc0"), opts.trials, triple, undeformed_assoc))
    out.append(_sampled("algebra.quantization-oracle", base.fork("oracle"), opts.trials, pair_h, oracle))
    out.append(_sampled("algebra.quantization-oracle-mixed", base.fork("oracle-mixed"), opts.trials // 4 or 1,
                        pair, oracle))

    bad = None
    for i in range(p.ngens):
        for j in range(p.ngens):
            gi, gj = p.gens()[i], p.gens()[j]
            if star_product(gi, gj) != star_product(gj, gi).scale(lam(q.commutation[i][j])):
                bad = f"{p.names[i]}, {p.names[j]}"
    out.append(result("algebra.deformed-relations", bad is None, bad,
                      detail="ul g_i * ul g_j = L^(c'_ij) ul g_j * ul g_i"))

    if p.star is not None:
        out.append(result("algebra.involution-exponent-identity", involution_identity_holds()))

        def anti(a, b):
            x, y = quantize(a), quantize(b)
            if star_involution(multiply(x, y)) != multiply(star_involution(y), star_involution(x)):
                return "(xy)* != y* x*"
            if star_involution(star_involution(x)) != x:
                return "** != id"
            if involution(multiply(a, b)) != multiply(involution(b), involution(a)):
                return "undeformed involution not anti-multiplicative"

        out.append(_sampled("algebra.involution", base.fork("inv"), opts.trials, pair, anti))
    return out


# -- suites -------------------------------------------------------------------------


def hopf_checks(action: GeneratorAction, opts: SuiteOptions) -> list[CheckResult]:
    hopf = TwistedSymmetry(action)
    kw = dict(trials=opts.sample_trials, max_degree=opts.max_degree, seed=opts.seed)
    groups = [
        ("lie", lambda: check_lie_relations(action, opts.max_degree)),
        ("serre", lambda: check_serre(action, opts.max_degree)),
        ("twist", check_cocycle_report),
        ("hopf.coproduct", lambda: check_coproduct_conjugation(hopf, **kw)),
        ("hopf.coassociativity", lambda: check_coassociativity(hopf, **kw)),
        ("hopf.counit", lambda: check_counit(hopf, **kw)),
        ("hopf.antipode", lambda: check_antipode_axiom(hopf, **kw)),
        ("hopf.antipode-U", lambda: check_antipode_u(hopf, **kw)),
        ("hopf.module-algebra", lambda: check_module_algebra(
            hopf, trials=opts.trials, max_degree=opts.max_degree, seed=opts.seed)),
        ("hopf.module-algebra-negative-control", lambda: check_module_algebra_negative(
            hopf, trials=opts.trials, max_degree=opts.max_degree, seed=opts.seed)),
        ("star", lambda: check_star_compat(hopf, **kw)),
        ("r-matrix", lambda: r_matrix_checks(hopf, **kw)),
    ]
    out = []
    for name, fn in groups:
        out += _guard(name, fn)
    return out


def calculus_checks(action: GeneratorAction, opts: SuiteOptions) -> list[CheckResult]:
    return check_calculus(action, trials=opts.calculus_trials,
                          max_degree=min(opts.max_degree, opts.calculus_degree),
                          seed=opts.seed, max_form_degree=3)


def spectral_checks(p: GradedPresentation, opts: SuiteOptions) -> list[CheckResult]:
    model = SpectralModel(p, opts.cutoff, opts.theta, True)
    torus = parse_symmetry("torus\n").bind(p)
    hopf = TwistedSymmetry(torus)
    gens = tuple(n for n in p.names if p.degrees[p.index(n)] in (_deg(1, 0), _deg(0, 1)))
    out = []
    out += check_isometry(model)
    out += check_boundedness_and_isospectrality(model, gens or p.names[:2])
    if len(gens) >= 2:
        out += check_torus_relation(model, gens[0], gens[1])
    out += check_representation(model, trials=opts.sample_trials, max_degree=2, seed=opts.seed)
    out += check_crossproduct_equivariance(model, hopf, seed=opts.seed)
    return out


def _deg(a, b):
    from .algebra import DegreeVector

    return DegreeVector(a, b)


def run_suite(suite: str, inputs: SuiteInputs | None = None, options: SuiteOptions | None = None,
              timing: bool = False) -> CheckReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    opts = options or SuiteOptions()
    start = time.perf_counter()
    checks: list[CheckResult] = []
    parts = ("algebra", "hopf", "calculus", "spectral") if suite == "all" else (suite,)
    for part in parts:
        inp = inputs if inputs is not None and (inputs.presentations or inputs.symmetries) else SuiteInputs.defaults(part)
        if part == "algebra":
            for pf in inp.presentations:
                checks += _tag(f"{pf.name}", _guard("algebra", lambda: algebra_checks(pf.source, opts)))
        elif part in ("hopf", "calculus"):
            if not inp.presentations:
                raise ValueError(f"suite {part} needs a .alg file")
            fn = hopf_checks if part == "hopf" else calculus_checks
            for pf, action in zip(inp.presentations, inp.actions()):
                checks += _tag(f"{pf.name}", _guard(part, lambda: fn(action, opts)))
        else:
            pfs = inp.presentations or SuiteInputs.defaults("spectral").presentations
            for pf in pfs:
                checks += _tag(f"{pf.name}", _guard("spectral", lambda: spectral_checks(pf.source, opts)))
    ids = [c.id for c in checks]
    if len(ids) != len(set(ids)):
        seen = set()
        for c in checks:
            while c.id in seen:
                c.id += "'"
            seen.add(c.id)
    elapsed = time.perf_counter() - start
    return CheckReport(suite, checks, opts.seed, opts.cutoffs(), elapsed if timing else None)

