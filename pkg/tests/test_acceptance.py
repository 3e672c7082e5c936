"""Acceptance gate: sixteen end-to-end criteria, one test and one printed
pass/fail line each (run with -s to see the lines).

Each criterion states its own sample counts, tolerances, and, where
bounded, wall-clock limits; randomized criteria use process-independent
string seeds so reruns are identical.
"""

import math
import time
from fractions import Fraction
from math import comb
from random import Random

from symgeo.bordism import weak_bordism_group
from symgeo.jets import (JetSignature, lagrangian_pde_dims, lambda_basis,
                         lambda_dim, legendrian_pde_dims, max_isotropic,
                         metasymplectic_eval, spencer_sequence_audit)
from symgeo.jets.metasymplectic import meta_orthogonal_frame, model_dim
from symgeo.jsonio import dumps
from symgeo.linalg import Matrix, rank, spans_equal
from symgeo.maslov import (LerayLift, arnold_triple_lines, kashiwara_index,
                           leray_cyclic_sum, wall_invariant)
from symgeo.metaplectic import Mp1Context, mp1_mul, random_mp1
from symgeo.scan import SampledImmersion, check_lagrangian, corank_profile, \
    loop_maslov
from symgeo.selftest import run_selftest
from symgeo.symplectic import (LagrangianFrame, SymplecticSpace,
                               intersect_frames, lagrangian_from_angles,
                               line_lagrangian, loop_degree,
                               random_lagrangian, random_symplectic)


def _report(num, name, ok, note=""):
    status = "PASS" if ok else "FAIL"
    extra = f" ({note})" if note else ""
    print(f"ACCEPTANCE {num:02d} {name}: {status}{extra}")
    assert ok, f"criterion {num} ({name}) failed"


def _rng(num):
    return Random(f"acceptance:{num}")


def _rand_dir(rng):
    while True:
        p, q = rng.randint(-9, 9), rng.randint(-9, 9)
        if p or q:
            return Fraction(p), Fraction(q)


def _vertical_base(sp):
    cols = [[Fraction(1) if r == sp.n + c else Fraction(0)
             for c in range(sp.n)] for r in range(2 * sp.n)]
    return LagrangianFrame(sp, Matrix.exact(cols))


def test_criterion_01_triple_index_anchor():
    start = time.monotonic()
    sp = SymplecticSpace.standard(1)
    ls = [lagrangian_from_angles(sp, [a])
          for a in (0.0, math.pi / 3, 2 * math.pi / 3)]
    fwd = int(kashiwara_index(ls))
    rev = int(kashiwara_index(list(reversed(ls))))
    elapsed = time.monotonic() - start
    ok = fwd == 1 and rev == -1 and elapsed < 1.0
    _report(1, "triple index anchor", ok,
            f"forward {fwd}, reversed {rev}, {elapsed:.2f}s")


def test_criterion_02_cocycle_identity():
    start = time.monotonic()
    rng = _rng(2)
    per_dim = 350
    checked = 0
    worst = 0
    for n in (1, 2, 3):
        sp = SymplecticSpace.standard(n)
        for _ in range(per_dim):
            ls = [random_lagrangian(sp, rng) for _ in range(4)]
            s = (int(kashiwara_index(ls[1:]))
                 - int(kashiwara_index([ls[0], ls[2], ls[3]]))
                 + int(kashiwara_index([ls[0], ls[1], ls[3]]))
                 - int(kashiwara_index(ls[:3])))
            worst = max(worst, abs(s))
            checked += 1
    elapsed = time.monotonic() - start
    ok = checked >= 1000 and worst == 0 and elapsed < 60.0
    _report(2, "cocycle identity", ok,
            f"{checked} quadruples, max defect {worst}, {elapsed:.1f}s")


def test_criterion_03_wall_equals_kashiwara():
    start = time.monotonic()
    rng = _rng(3)
    per_dim = 170
    checked = 0
    agree = True
    for n in (1, 2, 3):
        sp = SymplecticSpace.standard(n)
        for _ in range(per_dim):
            l1, l2, l3 = (random_lagrangian(sp, rng) for _ in range(3))
            agree = agree and \
                int(wall_invariant(l1, l2, l3)) == int(kashiwara_index([l1, l2, l3]))
            checked += 1
    elapsed = time.monotonic() - start
    ok = checked >= 500 and agree and elapsed < 60.0
    _report(3, "wall equals kashiwara", ok, f"{checked} triples, {elapsed:.1f}s")


def test_criterion_04_arnold_equals_kashiwara():
    start = time.monotonic()
    rng = _rng(4)
    sp = SymplecticSpace.standard(1)
    agree = True
    for _ in range(100):
        ds = [_rand_dir(rng) for _ in range(3)]
        a = arnold_triple_lines(*ds)
        t = int(kashiwara_index([line_lagrangian(sp, d) for d in ds]))
        agree = agree and a == t
    elapsed = time.monotonic() - start
    ok = agree and elapsed < 10.0
    _report(4, "arnold equals kashiwara", ok, f"100 triples, {elapsed:.1f}s")


def test_criterion_05_symplectic_invariance():
    rng = _rng(5)
    moved_ok = True
    moves = 0
    for n in (1, 2, 3):
        sp = SymplecticSpace.standard(n)
        for _ in range(2):
            ls = [random_lagrangian(sp, rng) for _ in range(rng.randint(3, 5))]
            t0 = int(kashiwara_index(ls))
            for _ in range(100):
                g = random_symplectic(sp, rng)
                t1 = int(kashiwara_index(
                    [LagrangianFrame(sp, g @ l.frame) for l in ls]))
                moved_ok = moved_ok and t1 == t0
                moves += 1
    _report(5, "index invariance under transvection products", moved_ok,
            f"{moves} transformed tuples")


def test_criterion_06_leray_lift_sums():
    rng = _rng(6)
    sp = SymplecticSpace.standard(1)
    agree = True
    for _ in range(10_000):
        r = rng.randint(3, 6)
        lifts = [LerayLift.from_direction(*_rand_dir(rng), rng.randint(-2, 2))
                 for _ in range(r)]
        agree = agree and \
            leray_cyclic_sum(lifts) == int(kashiwara_index(
                [lf.line(sp) for lf in lifts]))
    _report(6, "leray lift sums", agree, "10000 lift tuples, r up to 6")


def test_criterion_07_mp1_associativity():
    rng = _rng(7)
    checked = 0
    laws = True
    for n in (1, 2):
        sp = SymplecticSpace.standard(n)
        ctx = Mp1Context(sp, _vertical_base(sp))
        for _ in range(250):
            a, b, c = (random_mp1(ctx, rng) for _ in range(3))
            lhs = mp1_mul(mp1_mul(a, b), c)
            rhs = mp1_mul(a, mp1_mul(b, c))
            laws = laws and int(lhs.w) == int(rhs.w) and (lhs.g - rhs.g).is_zero()
            checked += 1
    ok = checked >= 500 and laws
    _report(7, "metaplectic associativity", ok, f"{checked} triples")


def test_criterion_08_loop_degree():
    sp = SymplecticSpace.standard(1)
    m = 64
    single = [lagrangian_from_angles(sp, [(math.pi * i / m) % math.pi])
              for i in range(m + 1)]
    double = [lagrangian_from_angles(sp, [(2 * math.pi * i / m) % math.pi])
              for i in range(m + 1)]
    d1, d2 = loop_degree(single), loop_degree(double)
    ok = d1 == 1 and d2 == 2
    _report(8, "loop degree", ok, f"degrees {d1} and {d2}")


def test_criterion_09_lagrangian_pde_dims():
    rep = lagrangian_pde_dims(2, seed=0)
    anchors = (rep["dim_system"], rep["dim_prolongation"],
               rep["dim_prolongation_fiber"]) == (7, 11, 4)
    sums = rep["dim_system"] + rep["dim_prolongation_fiber"] == \
        rep["dim_prolongation"]
    points = 0
    verified = True
    for n in (2, 3):
        for seed in range(10):
            verified = verified and lagrangian_pde_dims(n, seed=seed)["verified"]
            points += 1
    ok = anchors and sums and verified
    _report(9, "lagrangian pde dimensions", ok,
            f"anchor (7, 11, 4), {points} rank checks")


def test_criterion_10_legendrian_pde_dims():
    rep = legendrian_pde_dims(2, seed=0)
    anchors = (rep["dim_system"], rep["dim_prolongation"],
               rep["dim_symbol_prolongation"]) == (9, 15, 6)
    cascades = True
    for n in range(1, 6):
        r = legendrian_pde_dims(n, seed=0)
        cascades = cascades and r["verified"] and r["cascade_sum_ok"] and \
            sum(r["involutivity_table"].values()) == n * n * (n + 1) // 2
    ok = anchors and cascades
    _report(10, "legendrian pde dimensions", ok,
            "anchor (9, 15, 6), cascades n <= 5")


def test_criterion_11_max_isotropic_planes():
    rng = _rng(11)
    planes = 0
    ok = True
    for n in range(1, 5):
        for m in (1, 2):
            for k in (1, 2, 3):
                sig = JetSignature(n, m, k)
                lams = lambda_basis(sig)
                for p in range(n + 1):
                    xi = _full_rank(rng, n, p) if p else Matrix.zeros(n, 0)
                    plane = max_isotropic(sig, xi)
                    ok = ok and plane.dim == m * comb(p + k - 1, k) + n - p
                    vecs = plane.vectors()
                    for lam in lams:
                        for i, v in enumerate(vecs):
                            for w in vecs[i:]:
                                ok = ok and metasymplectic_eval(lam, v, w) == 0
                    planes += 1
    _report(11, "maximal isotropic planes", ok,
            f"{planes} planes, isotropy under every slot")


def _full_rank(rng, rows, cols):
    while True:
        m = Matrix.exact([[Fraction(rng.randint(-3, 3)) for _ in range(cols)]
                          for _ in range(rows)])
        if rank(m) == min(rows, cols):
            return m


def test_criterion_12_orthogonal_duality_laws():
    rng = _rng(12)
    pairs = 0
    ok = True
    for s in ((2, 1, 1), (3, 1, 1), (1, 1, 2), (1, 1, 3)):
        sig = JetSignature(*s)
        assert lambda_dim(sig) == 1
        dim = model_dim(sig)
        for _ in range(25):
            p1 = _full_rank(rng, dim, rng.randint(1, dim - 1))
            p2 = _full_rank(rng, dim, rng.randint(1, dim - 1))
            o1 = meta_orthogonal_frame(sig, p1)
            o2 = meta_orthogonal_frame(sig, p2)
            law_a = spans_equal(meta_orthogonal_frame(sig, o1), p1)
            law_b = spans_equal(intersect_frames(o1, o2),
                                meta_orthogonal_frame(sig, Matrix.hstack(p1, p2)))
            law_c = spans_equal(
                meta_orthogonal_frame(sig, intersect_frames(p1, p2)),
                Matrix.hstack(o1, o2))
            ok = ok and law_a and law_b and law_c
            pairs += 1
    _report(12, "orthogonal duality laws", ok, f"{pairs} subspace pairs")


def test_criterion_13_spencer_exactness():
    start = time.monotonic()
    audited = 0
    ok = True
    for n in (1, 2, 3):
        for m in (1, 2):
            for k in (1, 2, 3):
                ok = ok and spencer_sequence_audit(JetSignature(n, m, k))["exact"]
                audited += 1
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 120.0
    _report(13, "spencer exactness", ok,
            f"{audited} signatures, {elapsed:.1f}s")


def test_criterion_14_contractible_bordism_ranks():
    got = tuple(weak_bordism_group([1], n).group.z2_rank for n in (1, 2, 3, 4))
    ok = got == (1, 0, 1, 0)
    _report(14, "contractible weak bordism ranks", ok, f"ranks {got}")


def test_criterion_15_circle_scan():
    sp = SymplecticSpace.standard(1)
    m = 64
    ts = [2 * math.pi * i / m for i in range(m)]
    circle = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="loop",
        params=[(t,) for t in ts],
        points=[(math.cos(t), math.sin(t)) for t in ts])
    deg = loop_maslov(circle, sp)
    lag_pass = check_lagrangian(circle, sp)["pass"]

    ts8 = [2 * math.pi * i / 8 for i in range(8)]
    analytic = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="loop",
        params=[(t,) for t in ts8],
        points=[(math.cos(t), math.sin(t)) for t in ts8],
        frames=[[[-math.sin(t)], [math.cos(t)]] for t in ts8])
    profile = corank_profile(analytic)
    loci = profile["strata"] == {"0": [0, 4]} and \
        [profile["coranks"][i] for i in (0, 4)] == [1, 1] and \
        sum(profile["coranks"]) == 2

    xs = [i / 8 for i in range(9)]
    graph = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="line",
        params=[(x,) for x in xs],
        points=[(x, x * x) for x in xs])
    flat = all(c == 0 for c in corank_profile(graph)["coranks"])

    ok = deg == 2 and lag_pass and loci and flat
    _report(15, "circle scan", ok,
            f"degree {deg}, two corank-1 loci, graph regular")


def test_criterion_16_selftest_determinism():
    a = run_selftest(seed=0, quick=False)
    b = run_selftest(seed=0, quick=False)
    identical = dumps(a).encode() == dumps(b).encode()
    ok = identical and a["all_passed"]
    _report(16, "selftest determinism", ok,
            f"{len(a['suites'])} suites, byte-identical reports")
