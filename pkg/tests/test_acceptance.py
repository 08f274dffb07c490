"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are collected in ``GATE`` and echoed in pytest's terminal summary
(see ``conftest.py``); running this file as a script prints them directly.
"""

import subprocess
import sys
import time
from fractions import Fraction

import pytest

from isotwist.algebra import dequantize, multiply, quantize, star_product
from isotwist.calculus import check_calculus
from isotwist.parsing import fixture_path, load_fixture_action, load_presentation
from isotwist.rng import SplitMix64, random_element, random_homogeneous
from isotwist.scalars import form_identity_check
from isotwist.spectral import (
    SpectralModel, check_boundedness_and_isospectrality, check_isometry, check_torus_relation,
)
from isotwist.symmetry import check_lie_relations, check_serre
from isotwist.twist import (
    R_MATRIX, TwistedSymmetry, check_antipode_axiom, check_antipode_u, check_coassociativity, check_cocycle,
    check_counit, check_module_algebra, check_module_algebra_negative, check_star_compat, r_matrix_checks,
)

GATE: dict[int, str] = {}

T2 = load_presentation(fixture_path("T2.alg")).source
C3 = load_presentation(fixture_path("C3.alg")).source
SEED = 20240607


def record(n, name, ok, info=""):
    line = f"AC{n:>2} {'PASS' if ok else 'FAIL'}  {name}" + (f"  ({info})" if info else "")
    GATE[n] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def hopf():
    return TwistedSymmetry(load_fixture_action())


def failures(results):
    return [r.id for r in results if not r.ok]


def test_ac01_cocycle():
    t = time.perf_counter()
    ok = check_cocycle()
    dt = time.perf_counter() - t
    assert record(1, "cocycle condition, exact DegreeForm identity", ok and dt < 1, f"{dt:.3f}s")


def star(a, b):
    """The deformed product pulled back to A."""
    return dequantize(star_product(a, b))


def test_ac02_star_associativity():
    t = time.perf_counter()
    bad = []
    for p in (T2, C3):
        rng = SplitMix64(SEED).fork(p.name)
        for _ in range(500):
            a, b, c = (random_element(rng, p, 4) for _ in range(3))
            if star(star(a, b), c) != star(a, star(b, c)):
                bad.append((p.name, str(a), str(b), str(c)))
    dt = time.perf_counter() - t
    assert record(2, "star-product associativity, 500 triples each in T2 and C3", not bad and dt < 10,
                  f"{len(bad)} failures, {dt:.2f}s"), bad[:1]


def test_ac03_quantization_oracle():
    t = time.perf_counter()
    bad = 0
    for p in (T2, C3):
        rng = SplitMix64(SEED).fork("oracle" + p.name)
        for _ in range(500):
            a, b = random_homogeneous(rng, p, 5), random_homogeneous(rng, p, 5)
            bad += star_product(a, b) != multiply(quantize(a), quantize(b))
    dt = time.perf_counter() - t
    assert record(3, "star_product = intrinsic product of the quantized presentation, 500 pairs each",
                  bad == 0 and dt < 10, f"{bad} failures, {dt:.2f}s")


def test_ac04_lie_and_serre():
    t = time.perf_counter()
    action = load_fixture_action()
    results = check_lie_relations(action, 5) + check_serre(action, 5)
    dt = time.perf_counter() - t
    assert record(4, "Lie and signed Serre relations on all monomials of degree <= 5",
                  not failures(results) and dt < 30, f"{len(results)} relations, {dt:.2f}s"), failures(results)


def test_ac05_hopf_axioms(hopf):
    kw = dict(trials=60, max_degree=5, seed=SEED)
    results = (check_coassociativity(hopf, **kw) + check_counit(hopf, **kw)
               + check_antipode_axiom(hopf, **kw) + check_antipode_u(hopf, **kw))
    assert record(5, "coassociativity, counit and antipode of the twisted coproduct",
                  not failures(results), f"{len(results)} checks"), failures(results)


def test_ac06_module_algebra(hopf):
    t = time.perf_counter()
    results = check_module_algebra(hopf, trials=500, max_degree=5, seed=SEED)
    negative = check_module_algebra_negative(hopf, trials=500, max_degree=5, seed=SEED)
    symbols = {r.id.rsplit(".", 1)[1] for r in results}
    ok = not failures(results) and not failures(negative) and symbols == {"H1", "H2", "X1+", "X1-", "X2+", "X2-"}
    assert record(6, "module-algebra property on 500 pairs per generator; untwisted control fails", ok,
                  f"{time.perf_counter() - t:.2f}s"), failures(results) + failures(negative)


def test_ac07_star_compat(hopf):
    results = check_star_compat(hopf, trials=200, max_degree=5, seed=SEED)
    ids = {r.id for r in results}
    ok = not failures(results) and "star.U-consistency" in ids and "star.psi-unitary" in ids
    assert record(7, "star compatibility including U = L^(H1 H2)", ok, f"{len(results)} checks"), failures(results)


def test_ac08_r_matrix(hopf):
    triangular = form_identity_check(R_MATRIX.flipped().exponent, R_MATRIX.inverse().exponent)
    results = r_matrix_checks(hopf, trials=60, max_degree=5, seed=SEED)
    assert record(8, "R-matrix triangular (exact) and intertwining (sampled)",
                  triangular and not failures(results), f"{len(results)} checks"), failures(results)


def test_ac09_calculus():
    results = []
    for sym, alg in (("A2.sym", "C3.alg"), ("T2.sym", "T2.alg")):
        results += check_calculus(load_fixture_action(sym, alg), trials=100, max_degree=3, seed=SEED,
                                  max_form_degree=3)
    wanted = ("calculus.d-squared", "calculus.leibniz-deformed", "calculus.equivariance")
    covered = all(any(r.id.startswith(w) for r in results) for w in wanted)
    assert record(9, "d^2 = 0, graded Leibniz for the deformed wedge, equivariance; form degree <= 3",
                  covered and not failures(results), f"{len(results)} checks"), failures(results)


def test_ac10_spectral():
    t = time.perf_counter()
    model = SpectralModel(T2, 8, Fraction(1, 5))
    iso = {r.id: r for r in check_isometry(model)}
    bound = {r.id: r for r in check_boundedness_and_isospectrality(model, ("u", "v"), (4, 8, 16))}
    torus = check_torus_relation(model)[0]
    dt = time.perf_counter() - t
    ok = (
        iso["spectral.isometry.H1"].residual == 0.0 and iso["spectral.isometry.H2"].residual == 0.0
        and all(bound[f"spectral.commutator-norm.{g}"].residual <= 1e-12 for g in "uv")
        and all(bound[f"spectral.commutator-norm-cutoffs.{g}"].residual <= 1e-12 for g in "uv")
        and torus.residual <= 1e-12
        and bound["spectral.isospectral"].residual == 0.0
        and dt < 10
    )
    worst = max(bound[f"spectral.commutator-norm-cutoffs.{g}"].residual for g in "uv")
    assert record(10, "spectral triple at N=8, theta=1/5", ok,
                  f"norm deviation {worst:.1e}, torus residual {torus.residual:.1e}, {dt:.2f}s")


def test_ac11_determinism():
    cmd = [sys.executable, "-m", "isotwist", "check", "--suite", "all", "--seed", "7", "--format", "json"]
    procs = [subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE) for _ in range(2)]
    outs = [p.communicate() for p in procs]
    codes = [p.returncode for p in procs]
    identical = outs[0][0] == outs[1][0] and len(outs[0][0]) > 0
    assert record(11, "two `check --suite all` runs give byte-identical json", identical and codes == [0, 0],
                  f"exit codes {codes}, {len(outs[0][0])} bytes")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
