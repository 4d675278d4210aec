"""Acceptance criteria, one test each; a pass/fail line per criterion is printed.

Run alone with ``pytest tests/test_acceptance.py -v`` (the summary lines appear
in the "acceptance criteria" section) or ``python tests/test_acceptance.py``.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from models import del_pezzo_model, random_big_class, single_curve_model  # noqa: E402
from neglab.constructions import (  # noqa: E402
    construct_chain,
    construct_kollar,
    construct_plane_family,
    verify_certificate,
)
from neglab.interpolation import order_certificate  # noqa: E402
from neglab.lattice import (  # noqa: E402
    discriminant_lemma_sweep,
    gram_of,
    intersect,
    is_negative_definite,
    make_lattice,
)
from neglab.pell import convergent, negative_pell_class, pell_divisor  # noqa: E402
from neglab.shgh import PlaneClass, expected_dim  # noqa: E402
from neglab.zariski import (  # noqa: E402
    SurfaceModel,
    find_coprime_ample,
    least_integer_above,
    volume_denominator,
    volume_of_perturbed_ample,
    zariski_decompose,
)

GOLDEN = Path(__file__).parent / "golden"


def _check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def criterion_1():
    start = time.perf_counter()
    _check((convergent(0).p, convergent(0).q) == (3, 1), "seed pair")
    prev_c = 0
    for k in range(1, 21):
        rec = convergent(k)
        _check(rec.norm == (-1) ** (k + 1), f"norm at {k}")
        pd = pell_divisor(k)
        _check((2 * pd.d + 3) ** 2 - 10 * (2 * pd.m + 1) ** 2 == -1, f"Pell at {k}")
        _check(pd.c * pd.F == pd.D and pd.F.is_primitive, f"split at {k}")
        _check(pd.c > prev_c, f"c not increasing at {k}")
        prev_c = pd.c
    one, two = pell_divisor(1), pell_divisor(2)
    _check(str(one.D) == "(57;18^10)" and one.c == 3, "k=1 spot values")
    _check(str(two.D) == "(2220;702^10)" and two.c == 6, "k=2 spot values")
    elapsed = time.perf_counter() - start
    _check(elapsed < 1, f"runtime {elapsed:.2f}s")
    return f"k=1..20 in {elapsed:.3f}s"


def criterion_2():
    lat = make_lattice("blowup", 11)
    G1 = lat.plane(57, [18] * 10 + [-4])
    _check(G1.square() == -7 and negative_pell_class(1).G == G1, "k=1 class")
    _check(negative_pell_class(2).self_intersection == -1, "k=2 class")
    for k in range(1, 11):
        neg = negative_pell_class(k)
        _check(neg.G.is_primitive and neg.self_intersection < 0, f"k={k}")
    return "G_1^2=-7, G_2^2=-1, k<=10 primitive and negative"


def criterion_3():
    F1 = PlaneClass(19, (6,) * 10)
    F2 = PlaneClass(370, (117,) * 10)
    _check([expected_dim(j * F1).value for j in (1, 2, 3)] == [-1, -1, 0], "F_1")
    _check(all(expected_dim(j * F2).value < 0 for j in range(1, 6)), "F_2 below 6")
    _check(expected_dim(6 * F2).value == 0, "F_2 at 6")
    return "orders 3 and 6, conditional on SHGH"


def _decomposition_ok(model, L):
    dec = zariski_decompose(model, L)
    _check(dec.P + dec.N == L, "L = P + N")
    _check(all(intersect(dec.P, C) == 0 for C in dec.support), "P.support")
    _check(all(intersect(dec.P, C) >= 0 for C in model.negative_curves), "P nef")
    _check(all(a > 0 for a in dec.coeffs), "coefficients")
    if dec.support:
        _check(is_negative_definite(gram_of(dec.support))[0], "support negdef")
    _check(dec.volume == dec.P.square(), "volume")
    return dec


def criterion_4():
    rng = random.Random(20240)
    for i in range(200):
        model = del_pezzo_model(rng) if i % 2 else single_curve_model(rng)
        _check(model.lattice.rank <= 6, "rank")
        _decomposition_ok(model, random_big_class(rng, model))
    for _ in range(50):
        model = del_pezzo_model(rng, disjoint=True)
        L = random_big_class(rng, model)
        dec = _decomposition_ok(model, L)
        oracle = L.lattice.zero()
        for C in model.negative_curves:
            oracle = oracle + max(Fraction(0), Fraction(intersect(L, C), C.square())) * C
        _check(dec.N == oracle, "disjoint projection oracle")
    for _ in range(50):
        model = single_curve_model(rng)
        A, (C,) = model.ample, model.negative_curves
        first = least_integer_above(Fraction(-intersect(A, C), C.square()))
        for m in range(first, first + 10):
            _check(zariski_decompose(model, A + m * C).volume
                   == volume_of_perturbed_ample(A, C, m), "closed form")
    return "200 models, 50 disjoint, 50 perturbation sweeps"


def criterion_5():
    # A + mC with m the least integer above alpha = -(A.C)/C^2; for m <= alpha
    # the class is nef and no denominator appears (k=1, m=1 gives 102)
    lat = make_lattice("blowup", 11)
    details = []
    for k in range(1, 5):
        C = negative_pell_class(k).G
        model = SurfaceModel(lat, [C], lat.plane(4, [1] * 11))
        A = find_coprime_ample(model, C)
        _check(gcd(intersect(A, C), -C.square()) == 1, "coprime")
        m = least_integer_above(Fraction(-intersect(A, C), C.square()))
        den = volume_denominator(model, A + m * C)
        _check(den == -C.square(), f"k={k}: denominator {den} vs {-C.square()}")
        details.append(f"k={k}:{den}")
        if k == 1:
            _check(zariski_decompose(model, A + m * C).volume == Fraction(2739, 7), "2739/7")
            _check(zariski_decompose(model, A + C).volume == 102, "A + C is nef")
    return ", ".join(details)


def criterion_6():
    summary = discriminant_lemma_sweep(1000, random.Random(6))
    _check(summary["trials"] == 1000 and not summary["violations"], "violations")
    _check(summary["regression_abelian"] == {"g": 2, "disc": 2, "divides": True}, "abelian")
    return f"1000 trials, {summary['nontrivial_gcd']} with g > 1, no violations"


def _passes(cert):
    report = verify_certificate(cert)
    _check(report.passed, f"{cert.family_name}: {report.failed()}")
    _check(cert.D == cert.order_claim * cert.F, f"{cert.family_name}: sum")
    return cert


def _diag(cert, value):
    g = gram_of(c.cls for c in cert.components)
    n = len(g)
    return all(g[i][j] == (value if i == j else 0) for i in range(n) for j in range(n))


def criterion_7():
    cert = _passes(construct_plane_family("sextic"))
    _check(cert.D.square() == -4, "sextic D^2")
    for d in (6, 8, 10):
        _passes(construct_plane_family("rational_nodal", d=d))
    for n in (3, 6, 9):
        cert = _passes(construct_plane_family("fermat", n=n))
        _check(len(cert.components) == 3 * n and _diag(cert, -n), f"fermat({n})")
    for q in (2, 3, 4, 5):
        cert = _passes(construct_plane_family("finite_field", q=q))
        _check(len(cert.components) == q * q and _diag(cert, -q), f"finite_field({q})")
    for d, r in ((2, 3), (3, 6), (4, 10), (5, 15)):
        cert = _passes(construct_chain(d, r))
        _check(cert.components[0].cls.square() == d * d - r * d, "C^2")
        block = gram_of(c.cls for c in cert.components[1:d])
        _check(is_negative_definite(block)[1] == [(-1) ** j * (j + 1) for j in range(1, d)],
               "tridiagonal minors")
    return "sextic, 3 nodal, 3 fermat, 4 finite_field, 4 chain"


def criterion_8():
    ff = order_certificate(construct_plane_family("finite_field", q=2))
    _check(ff.order_bounds == (2, 2) and [e.rank for e in ff.non_effectivity] == [6], "ff(2)")
    fe = order_certificate(construct_plane_family("fermat", n=3))
    _check(fe.order_bounds == (3, 3), "fermat(3) bounds")
    _check([(e.prime, e.rank) for e in fe.non_effectivity] == [(7, 10), (7, 28)], "ranks")
    for cert in (ff, fe):
        _passes(cert)
    for d in range(2, 7):
        cert = order_certificate(construct_chain(d, d * (d + 1) // 2))
        _check(cert.order_bounds == (d, d), f"chain({d})")
        _passes(cert)
    return "finite_field(2)=2, fermat(3)=3, chain d=2..6"


def criterion_9():
    for m in range(2, 51):
        A, checks = construct_kollar(m)
        _check(A.square() == 2 and checks.interior, f"m={m}")
    return "m=2..50"


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "neglab", *argv], capture_output=True,
                          check=True).stdout


def criterion_10():
    runs = {
        "pell_k5.csv": ("pell", "--max-k", "5", "--format", "csv"),
        "fermat3.json": ("construct", "fermat", "--n", "3", "--order-cert"),
        "zariski_pell1.json": ("zariski", "--pell-k", "1"),
    }
    for name, argv in runs.items():
        first, second = _cli(*argv), _cli(*argv)
        _check(first == second, f"{name}: not reproducible")
        _check(first == (GOLDEN / name).read_bytes(), f"{name}: differs from golden")
    a = _cli("lemma-check", "--trials", "100", "--seed", "11")
    _check(a == _cli("lemma-check", "--trials", "100", "--seed", "11"), "seeded run")
    _check(json.loads(a)["seed"] == 11, "seed echoed")
    return "3 golden files and a seeded run reproduced byte for byte"


CRITERIA = [
    (1, "Pell suite", criterion_1),
    (2, "negative Pell classes", criterion_2),
    (3, "SHGH cross-check", criterion_3),
    (4, "Zariski suite", criterion_4),
    (5, "denominator growth witness", criterion_5),
    (6, "discriminant lemma sweep", criterion_6),
    (7, "construction certificates", criterion_7),
    (8, "order certificates", criterion_8),
    (9, "Kollar sequence", criterion_9),
    (10, "determinism", criterion_10),
]


def run_criterion(number, title, fn):
    try:
        detail = fn()
        line = f"PASS  criterion {number:2d} ({title}): {detail}"
        ok = True
    except Exception as exc:  # noqa: BLE001
        line = f"FAIL  criterion {number:2d} ({title}): {type(exc).__name__}: {exc}"
        ok = False
    print(line)
    return ok, line


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    from conftest import ACCEPTANCE_LINES

    ok, line = run_criterion(number, title, fn)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
