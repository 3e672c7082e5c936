"""Built-in invariant suites with fixed seeds and deterministic reports.

Each suite exercises one structural identity end to end on freshly drawn
random instances.  The identities themselves are the oracles, so a pass
is meaningful for any seed; the per-suite generators are seeded from the
top-level seed by suite name, which keeps reports byte-identical for
identical (seed, quick) inputs.  Details deliberately carry integers
only, never timings.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb
from random import Random

from .bordism import split_check, weak_bordism_group
from .jets import (JetSignature, lagrangian_pde_dims, legendrian_pde_dims,
                   max_isotropic, metasymplectic_eval, lambda_basis,
                   spencer_sequence_audit)
from .jets.metasymplectic import meta_orthogonal_frame, model_dim
from .linalg import Matrix, rank, spans_equal
from .maslov import (LerayLift, arnold_triple_lines, kashiwara_index,
                     leray_cyclic_sum, wall_invariant)
from .metaplectic import Mp1Context, mp1_inverse, mp1_mul, random_mp1
from .scan import SampledImmersion, check_lagrangian, corank_profile, loop_maslov
from .symplectic import (LagrangianFrame, SymplecticSpace,
                         lagrangian_from_angles, line_lagrangian, loop_degree,
                         random_lagrangian, random_symplectic)
from .witt import WittReal, ideal_power_member_real, witt_of_form_real


def _suite_rng(seed: int, name: str) -> Random:
    # string seeding hashes the bytes, so this is process-independent
    return Random(f"{seed}:{name}")


def _rand_line_dir(rng: Random) -> tuple:
    while True:
        p, q = rng.randint(-9, 9), rng.randint(-9, 9)
        if p or q:
            return Fraction(p), Fraction(q)


def _suite_kashiwara_cocycle(rng: Random, quick: bool) -> dict:
    per_dim = 8 if quick else 40
    cases = 0
    for n in (1, 2, 3):
        sp = SymplecticSpace.standard(n)
        for _ in range(per_dim):
            ls = [random_lagrangian(sp, rng) for _ in range(4)]
            s = (int(kashiwara_index(ls[1:]))
                 - int(kashiwara_index([ls[0], ls[2], ls[3]]))
                 + int(kashiwara_index([ls[0], ls[1], ls[3]]))
                 - int(kashiwara_index(ls[:3])))
            if s != 0:
                return {"cases": cases, "passed": False,
                        "detail": f"cocycle defect {s} in dim {2 * n}"}
            cases += 1
    return {"cases": cases, "passed": True, "detail": "alternating sum zero"}


def _suite_wall_kashiwara(rng: Random, quick: bool) -> dict:
    per_dim = 8 if quick else 30
    cases = 0
    for n in (1, 2, 3):
        sp = SymplecticSpace.standard(n)
        for _ in range(per_dim):
            l1, l2, l3 = (random_lagrangian(sp, rng) for _ in range(3))
            w = int(wall_invariant(l1, l2, l3))
            t = int(kashiwara_index([l1, l2, l3]))
            if w != t:
                return {"cases": cases, "passed": False,
                        "detail": f"wall {w} vs kashiwara {t} in dim {2 * n}"}
            cases += 1
    return {"cases": cases, "passed": True, "detail": "invariants agree"}


def _suite_arnold_kashiwara(rng: Random, quick: bool) -> dict:
    total = 10 if quick else 40
    sp = SymplecticSpace.standard(1)
    for i in range(total):
        ds = [_rand_line_dir(rng) for _ in range(3)]
        a = arnold_triple_lines(*ds)
        t = int(kashiwara_index([line_lagrangian(sp, d) for d in ds]))
        if a != t:
            return {"cases": i, "passed": False,
                    "detail": f"arnold {a} vs kashiwara {t}"}
    return {"cases": total, "passed": True, "detail": "line triples agree"}


def _suite_transvection_invariance(rng: Random, quick: bool) -> dict:
    tuples = 3 if quick else 6
    moves = 3 if quick else 8
    cases = 0
    for n in (1, 2):
        sp = SymplecticSpace.standard(n)
        for _ in range(tuples):
            ls = [random_lagrangian(sp, rng) for _ in range(rng.randint(3, 5))]
            t0 = int(kashiwara_index(ls))
            for _ in range(moves):
                g = random_symplectic(sp, rng)
                moved = [LagrangianFrame(sp, g @ l.frame) for l in ls]
                t1 = int(kashiwara_index(moved))
                if t1 != t0:
                    return {"cases": cases, "passed": False,
                            "detail": f"index moved {t0} -> {t1}"}
                cases += 1
    return {"cases": cases, "passed": True, "detail": "index is invariant"}


def _suite_leray_sum(rng: Random, quick: bool) -> dict:
    total = 12 if quick else 50
    sp = SymplecticSpace.standard(1)
    for i in range(total):
        r = rng.randint(3, 6)
        lifts = [LerayLift.from_direction(*_rand_line_dir(rng), rng.randint(-2, 2))
                 for _ in range(r)]
        s = leray_cyclic_sum(lifts)
        t = int(kashiwara_index([lf.line(sp) for lf in lifts]))
        if s != t:
            return {"cases": i, "passed": False,
                    "detail": f"cyclic sum {s} vs index {t} at r={r}"}
    return {"cases": total, "passed": True, "detail": "lift sums match indices"}


def _suite_mp1_associativity(rng: Random, quick: bool) -> dict:
    per_ctx = 5 if quick else 15
    cases = 0
    for n in (1, 2):
        sp = SymplecticSpace.standard(n)
        ctx = Mp1Context(sp, _vertical_base(sp))
        for _ in range(per_ctx):
            a, b, c = (random_mp1(ctx, rng) for _ in range(3))
            lhs = mp1_mul(mp1_mul(a, b), c)
            rhs = mp1_mul(a, mp1_mul(b, c))
            if int(lhs.w) != int(rhs.w) or not (lhs.g - rhs.g).is_zero():
                return {"cases": cases, "passed": False,
                        "detail": f"associativity failed in Sp({n})"}
            inv = mp1_mul(a, mp1_inverse(a))
            if int(inv.w) != 0 or not (inv.g - Matrix.identity(2 * n)).is_zero():
                return {"cases": cases, "passed": False,
                        "detail": f"inverse failed in Sp({n})"}
            cases += 1
    return {"cases": cases, "passed": True, "detail": "group laws hold"}


def _vertical_base(sp: SymplecticSpace) -> LagrangianFrame:
    cols = [[Fraction(1) if r == sp.n + c else Fraction(0)
             for c in range(sp.n)] for r in range(2 * sp.n)]
    return LagrangianFrame(sp, Matrix.exact(cols))


def _suite_loop_degree(rng: Random, quick: bool) -> dict:
    sp = SymplecticSpace.standard(1)
    m = 64
    path1 = [lagrangian_from_angles(sp, [(math.pi * i / m) % math.pi])
             for i in range(m + 1)]
    path2 = [lagrangian_from_angles(sp, [(2 * math.pi * i / m) % math.pi])
             for i in range(m + 1)]
    d1, d2 = loop_degree(path1), loop_degree(path2)
    ok = d1 == 1 and d2 == 2
    return {"cases": 2, "passed": ok, "detail": f"degrees {d1}, {d2}"}


def _suite_spencer_exact(rng: Random, quick: bool) -> dict:
    sigs = [(2, 1, 2), (1, 1, 3)] if quick else \
        [(1, 1, 2), (2, 1, 2), (1, 1, 3), (3, 1, 2), (2, 2, 2)]
    for s in sigs:
        audit = spencer_sequence_audit(JetSignature(*s))
        if not audit["exact"]:
            return {"cases": len(sigs), "passed": False,
                    "detail": f"sequence not exact at {s}"}
    return {"cases": len(sigs), "passed": True, "detail": "all sequences exact"}


def _suite_pde_dims(rng: Random, quick: bool) -> dict:
    ns = (2,) if quick else (2, 3)
    for n in ns:
        seed = rng.randint(0, 10 ** 6)
        lag = lagrangian_pde_dims(n, seed=seed)
        leg = legendrian_pde_dims(n, seed=seed)
        if not (lag["verified"] and leg["verified"] and leg["cascade_sum_ok"]):
            return {"cases": 2 * len(ns), "passed": False,
                    "detail": f"dimension audit failed at n={n}"}
        if n == 2 and (lag["dim_system"], lag["dim_prolongation"],
                       lag["dim_prolongation_fiber"]) != (7, 11, 4):
            return {"cases": 2 * len(ns), "passed": False,
                    "detail": "closed-form anchor failed at n=2"}
        if n == 2 and (leg["dim_system"], leg["dim_prolongation"],
                       leg["dim_symbol_prolongation"]) != (9, 15, 6):
            return {"cases": 2 * len(ns), "passed": False,
                    "detail": "contact anchor failed at n=2"}
    return {"cases": 2 * len(ns), "passed": True, "detail": "audits verified"}


def _rand_full_rank(rng: Random, rows: int, cols: int) -> Matrix:
    while True:
        m = Matrix.exact([[Fraction(rng.randint(-3, 3)) for _ in range(cols)]
                          for _ in range(rows)])
        if rank(m) == min(rows, cols):
            return m


def _suite_max_isotropic(rng: Random, quick: bool) -> dict:
    sigs = [(2, 1, 2)] if quick else [(2, 1, 2), (2, 2, 2), (3, 1, 2)]
    cases = 0
    for s in sigs:
        sig = JetSignature(*s)
        for p in range(sig.n + 1):
            xi = _rand_full_rank(rng, sig.n, p) if p else Matrix.zeros(sig.n, 0)
            plane = max_isotropic(sig, xi)
            want = sig.m * comb(p + sig.k - 1, sig.k) + sig.n - p
            if plane.dim != want:
                return {"cases": cases, "passed": False,
                        "detail": f"dim {plane.dim} != {want} at {s}, p={p}"}
            vecs = plane.vectors()
            for lam in lambda_basis(sig):
                for i, v in enumerate(vecs):
                    for w in vecs[i:]:
                        if metasymplectic_eval(lam, v, w) != 0:
                            return {"cases": cases, "passed": False,
                                    "detail": f"isotropy failed at {s}, p={p}"}
            cases += 1
    return {"cases": cases, "passed": True, "detail": "dimensions and isotropy"}


def _rand_span(rng: Random, sig: JetSignature) -> Matrix:
    dim = model_dim(sig)
    cols = rng.randint(1, max(1, dim - 1))
    return _rand_full_rank(rng, dim, cols)


def _suite_orthogonal_laws(rng: Random, quick: bool) -> dict:
    sigs = [(2, 1, 1), (1, 1, 2)] if quick else \
        [(2, 1, 1), (3, 1, 1), (1, 1, 2), (1, 1, 3)]
    pairs = 4 if quick else 10
    from .symplectic import intersect_frames
    cases = 0
    for s in sigs:
        sig = JetSignature(*s)
        for _ in range(pairs):
            p1, p2 = _rand_span(rng, sig), _rand_span(rng, sig)
            o1 = meta_orthogonal_frame(sig, p1)
            o2 = meta_orthogonal_frame(sig, p2)
            law_a = spans_equal(meta_orthogonal_frame(sig, o1), p1)
            law_b = spans_equal(intersect_frames(o1, o2),
                                meta_orthogonal_frame(sig, Matrix.hstack(p1, p2)))
            law_c = spans_equal(
                meta_orthogonal_frame(sig, intersect_frames(p1, p2)),
                Matrix.hstack(o1, o2))
            if not (law_a and law_b and law_c):
                return {"cases": cases, "passed": False,
                        "detail": f"law failed at {s}: a={law_a} b={law_b} c={law_c}"}
            cases += 1
    return {"cases": cases, "passed": True, "detail": "duality laws hold"}


def _diag_form(entries) -> Matrix:
    size = len(entries)
    return Matrix.exact([[Fraction(entries[r]) if r == c else Fraction(0)
                          for c in range(size)] for r in range(size)])


def _suite_witt_ring(rng: Random, quick: bool) -> dict:
    total = 8 if quick else 25
    for i in range(total):
        diag1 = [rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(1, 4))]
        diag2 = [rng.choice([-2, -1, 1, 2]) for _ in range(rng.randint(1, 4))]
        w1 = witt_of_form_real(_diag_form(diag1))
        w2 = witt_of_form_real(_diag_form(diag2))
        if int(witt_of_form_real(_diag_form(diag1 + diag2))) != int(w1) + int(w2):
            return {"cases": i, "passed": False, "detail": "additivity failed"}
        for k in range(4):
            want = int(w1) % (2 ** k) == 0
            if ideal_power_member_real(w1, k) != want:
                return {"cases": i, "passed": False,
                        "detail": f"ideal filtration failed at k={k}"}
    return {"cases": total, "passed": True, "detail": "ring laws hold"}


def _suite_bordism_table(rng: Random, quick: bool) -> dict:
    want = {1: 1, 2: 0, 3: 1, 4: 0}
    for n, r in want.items():
        got = weak_bordism_group([1], n).group.z2_rank
        if got != r:
            return {"cases": 4, "passed": False,
                    "detail": f"contractible rank {got} != {r} at n={n}"}
    reps = 5 if quick else 20
    for _ in range(reps):
        n = rng.randint(1, 4)
        b1 = [rng.randint(0, 3) for _ in range(n)]
        b2 = [rng.randint(0, 3) for _ in range(n)]
        lhs = weak_bordism_group([a + b for a, b in zip(b1, b2)], n).group.z2_rank
        rhs = (weak_bordism_group(b1, n).group.z2_rank
               + weak_bordism_group(b2, n).group.z2_rank)
        if lhs != rhs:
            return {"cases": 4 + reps, "passed": False,
                    "detail": "betti additivity failed"}
    ok = split_check(0, 5, 5) and split_check(2, 7, 5) and not split_check(1, 5, 5)
    return {"cases": 4 + reps + 3, "passed": ok, "detail": "table and additivity"}


def _suite_scan_circle(rng: Random, quick: bool) -> dict:
    sp = SymplecticSpace.standard(1)
    m = 64
    ts = [2 * math.pi * i / m for i in range(m)]
    circle = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="loop",
        params=[(t,) for t in ts],
        points=[(math.cos(t), math.sin(t)) for t in ts])
    lag = check_lagrangian(circle, sp, tol=1e-6)
    deg = loop_maslov(circle, sp, tol=1e-6)
    ts8 = [2 * math.pi * i / 8 for i in range(8)]
    analytic = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="loop",
        params=[(t,) for t in ts8],
        points=[(math.cos(t), math.sin(t)) for t in ts8],
        frames=[[[-math.sin(t)], [math.cos(t)]] for t in ts8])
    strata = corank_profile(analytic, tol=1e-6)["strata"]
    graph = SampledImmersion(
        param_dim=1, ambient_dim=2, topology="line",
        params=[(i / 7.0,) for i in range(8)],
        points=[(i / 7.0, (i / 7.0) ** 2) for i in range(8)])
    flat = corank_profile(graph, tol=1e-6)
    ok = (lag["pass"] and deg == 2 and strata == {"0": [0, 4]}
          and all(c == 0 for c in flat["coranks"]))
    return {"cases": 4, "passed": ok,
            "detail": f"degree {deg}, strata {sorted(strata)}"}


_SUITES = (
    ("kashiwara_cocycle", _suite_kashiwara_cocycle),
    ("wall_kashiwara", _suite_wall_kashiwara),
    ("arnold_kashiwara", _suite_arnold_kashiwara),
    ("transvection_invariance", _suite_transvection_invariance),
    ("leray_sum", _suite_leray_sum),
    ("mp1_associativity", _suite_mp1_associativity),
    ("loop_degree", _suite_loop_degree),
    ("spencer_exact", _suite_spencer_exact),
    ("pde_dims", _suite_pde_dims),
    ("max_isotropic", _suite_max_isotropic),
    ("orthogonal_laws", _suite_orthogonal_laws),
    ("witt_ring", _suite_witt_ring),
    ("bordism_table", _suite_bordism_table),
    ("scan_circle", _suite_scan_circle),
)


def run_selftest(seed: int = 0, quick: bool = False) -> dict:
    """Run every suite; the report is a plain dict, stable under repetition."""
    suites = []
    failures = []
    for name, fn in _SUITES:
        out = fn(_suite_rng(seed, name), quick)
        entry = {"name": name, "cases": out["cases"], "passed": out["passed"],
                 "detail": out["detail"]}
        suites.append(entry)
        if not out["passed"]:
            failures.append(name)
    return {
        "seed": seed,
        "quick": quick,
        "suites": suites,
        "failures": failures,
        "all_passed": not failures,
    }
