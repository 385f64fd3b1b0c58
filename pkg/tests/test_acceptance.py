"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are pinned here, not configured elsewhere.
"""

import time
from collections import Counter
from fractions import Fraction

import pytest

from krspectra.alcoves import (
    AffinePoint,
    ExtAffineWeylElt,
    base_walls,
    classify,
    in_alcove,
    walls_of,
)
from krspectra.bethe import (
    bethe_commuting_certificate,
    bethe_family,
    degeneration_report,
    standard_torus,
    wall_bethe_family,
)
from krspectra.gaudin import (
    GaudinConfig,
    gaudin_cdet,
    invariance_check,
    manin_cdet_trace_identity,
    manin_relations_check,
    residue_generators,
    wall_family,
)
from krspectra.glrep import (
    build_defining,
    build_irrep,
    build_tensor,
    weight_multiplicities,
)
from krspectra.pipeline import build_spectral_config, compare_pipeline
from krspectra.promotion import (
    build_kr,
    phi_operator,
    promote,
    promotion_order,
    verify_uniqueness,
)
from krspectra.scalars import Mat, QQi
from krspectra.spectra import joint_diagonalize, scan_simple_spectrum
from krspectra.tableaux import Tableau, build_crystal

from test_promotion import PR_ORBITS_2W2_N4, frozen_pr_map


GRID = [
    (n, l, r) for n in range(2, 6) for l in range(1, 4) for r in range(1, n + 1)
]

NON_RECTANGULAR = [(3, (2, 1)), (4, (3, 1)), (4, (2, 2, 1)), (5, (2, 1))]


def _announce(num, text, t0):
    print(f"\nACCEPTANCE {num}: PASS - {text} [{time.time() - t0:.1f}s]")


def test_criterion_1_paper_promotion_table():
    t0 = time.time()
    table = frozen_pr_map()
    assert len(table) == 20
    for t, expected in table.items():
        assert promote(t) == expected
    cycle_lengths = sorted(len(o) for o in PR_ORBITS_2W2_N4)
    assert cycle_lengths == [2, 2, 4, 4, 4, 4]
    for t in table:
        cur = t
        for _ in range(4):
            cur = promote(cur)
        assert cur == t
    assert time.time() - t0 < 1.0
    _announce(1, "all 20 reference arrows reproduced, pr^4 = id, < 1 s", t0)


def test_criterion_2_uniqueness_grid():
    t0 = time.time()
    for (n, l, r) in GRID:
        rep = verify_uniqueness(n, (l,) * r)
        assert rep["passed"], (n, l, r, rep)
        kr = build_kr(n, l, r)
        assert kr.check_invariants() is None
    assert len(NON_RECTANGULAR) >= 3
    for n, lam in NON_RECTANGULAR:
        rep = verify_uniqueness(n, lam)
        assert not rep["extendable"], (n, lam)
        assert rep["promotion_order"] != n
        assert rep["passed"]
    assert time.time() - t0 < 120
    _announce(
        2,
        f"verify_uniqueness on {len(GRID)} rectangles, "
        f"{len(NON_RECTANGULAR)} non-rectangular reported non-extendable",
        t0,
    )


def test_criterion_3_phi_equals_promotion():
    t0 = time.time()
    checked = 0
    for (n, l, r) in GRID:
        graph = build_crystal(n, (l,) * r)
        phi = phi_operator(graph, n)
        for b in graph.elements:
            assert phi[b] == promote(b, n)
            checked += 1
    assert time.time() - t0 < 60
    _announce(3, f"phi = xi o xi = pr pointwise on {checked} elements", t0)


def test_criterion_4_character_match():
    t0 = time.time()
    for (n, l, r) in GRID:
        rep = build_irrep(n, l, r)
        graph = build_crystal(n, (l,) * r)
        assert rep.dim == len(graph)
        counts = Counter(graph.wt[t] for t in graph.elements)
        assert counts == weight_multiplicities(rep), (n, l, r)
        if (n, l, r) == (4, 2, 2):
            assert rep.dim == 20
    _announce(4, f"crystal weight multisets equal rep weights on {len(GRID)} rectangles", t0)


GAUDIN_CASES = [
    # (n, factor specs (l, r), points, chi)
    (2, [(1, 1), (2, 1)], (0, 1), (Fraction(1, 3), Fraction(-1, 5))),
    (2, [(1, 1), (1, 1), (2, 1)], (0, 1, 3), (Fraction(1, 3), Fraction(-1, 5))),
    (3, [(1, 1), (1, 2)], (0, 1), (Fraction(1, 2), Fraction(1, 5), Fraction(-1, 3))),
    (3, [(1, 1), (1, 1), (1, 2)], (0, 1, 2),
     (Fraction(1, 2), Fraction(1, 5), Fraction(-1, 3))),
]


def _gaudin_cfg(n, facs, points, chi):
    reps = {(l, r): build_irrep(n, l, r) if (l, r) != (1, 1) else build_defining(n)
            for (l, r) in set(facs)}
    rep = build_tensor([(reps[f], QQi(Fraction(p)), QQi(0)) for f, p in zip(facs, points)])
    return GaudinConfig(rep, chi)


def test_criterion_5_gaudin_commutativity():
    t0 = time.time()
    for n, facs, points, chi in GAUDIN_CASES:
        cfg = _gaudin_cfg(n, facs, points, chi)
        assert all(d <= 20 for d in cfg.rep.dims)
        fam = residue_generators(cfg)  # raises if any pair fails
        assert fam.verify_commuting() is None
        assert invariance_check(fam)["passed"], (n, facs)
    # subregular chi: the extra sl_2 of the coincident pair
    for n, facs, points, chi0 in [
        (2, [(1, 1), (1, 1)], (0, 1), (Fraction(1, 3), Fraction(1, 3))),
        (3, [(1, 1), (1, 2)], (0, 1),
         (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 3))),
    ]:
        cfg = _gaudin_cfg(n, facs, points, chi0)
        base = residue_generators(cfg)
        inv = invariance_check(base)
        assert inv["passed"]
        assert (1, 2) in inv["checked_centralizer_basis"]
        fam = wall_family(cfg)
        assert fam.verify_commuting() is None
    # Manin relations and the antisymmetrized-trace identity at n = 2, 3
    for n in (2, 3):
        cn = build_defining(n)
        rep = build_tensor([(cn, QQi(0), QQi(0))])
        chi = tuple(Fraction(1, 2 + a) for a in range(n))
        cfg = GaudinConfig(rep, chi)
        assert manin_relations_check(cfg)["passed"]
        assert manin_cdet_trace_identity(cfg)
    assert time.time() - t0 < 300
    _announce(5, "residue families commute exactly; invariance and Manin identities hold", t0)


def test_criterion_6_quadratic_hamiltonian_oracle():
    t0 = time.time()
    chi = (Fraction(1, 3), Fraction(-1, 5))
    c2 = build_defining(2)
    rep = build_tensor([(c2, QQi(0), QQi(0)), (c2, QQi(1), QQi(0))])
    cfg = GaudinConfig(rep, chi)
    b0 = gaudin_cdet(cfg).coeff(0)

    ident = Mat.identity(2)

    def A(a, b):
        return Mat.unit(2, 2, a - 1, b - 1).kron(ident)

    def B(a, b):
        return ident.kron(Mat.unit(2, 2, a - 1, b - 1))

    for z_i, other, sgn in ((QQi(0), QQi(1), -1), (QQi(1), QQi(0), 1)):
        inv = (z_i - other).inverse()
        if z_i == QQi(0):
            main = (
                A(1, 1) * B(2, 2) + A(2, 2) * B(1, 1)
                - A(2, 1) * B(1, 2) - A(1, 2) * B(2, 1)
            ) * inv
            expected = main - A(1, 1) * QQi(chi[1]) - A(2, 2) * QQi(chi[0])
        else:
            main = (
                B(1, 1) * A(2, 2) + B(2, 2) * A(1, 1)
                - B(2, 1) * A(1, 2) - B(1, 2) * A(2, 1)
            ) * inv
            expected = main - B(1, 1) * QQi(chi[1]) - B(2, 2) * QQi(chi[0])
        assert b0.residue(z_i, 0) == expected
    _announce(6, "hand-expanded inhomogeneous quadratic Hamiltonians reproduced exactly", t0)


BETHE_CASES = [
    (2, [(1, 1), (1, 1)]),
    (3, [(1, 1), (1, 2)]),
]


def test_criterion_7_bethe_certificate():
    t0 = time.time()
    for n, facs in BETHE_CASES:
        cfg = build_spectral_config(n, facs, s=1)
        for wall in [None, 1, n]:
            C = standard_torus(n, wall=wall)
            cert = bethe_commuting_certificate(C, cfg)
            assert cert["passed"], (n, facs, wall, cert["witnesses"][:1])
            for a in range(1, n + 1):
                assert cert["grid_sizes"][a] > cert["degree_bounds"][a]
            fam = bethe_family(C, cfg)
            assert fam.normality_report()["passed"], (n, facs, wall)
    assert time.time() - t0 < 300
    _announce(7, "sampling certificates pass beyond degree bounds; members exactly normal", t0)


def test_criterion_8_degeneration_first_order():
    t0 = time.time()
    cfg = build_spectral_config(2, [(1, 1), (1, 1)], s=1)
    chi = [Fraction(1, 3), Fraction(-1, 4)]
    eps_list = [Fraction(1, 2**m) for m in range(3, 9)]
    report = degeneration_report(GaudinConfig(cfg.rep, chi), chi, eps_list, c=1)
    dists = [row["distance"] for row in report["rows"]]
    assert all(d > 0 for d in dists)
    assert len(report["ratios"]) == 5
    for r in report["ratios"]:
        assert 0.35 <= r <= 0.65, report["ratios"]
    assert report["exp_tail_bound"] < min(dists) / 100
    assert time.time() - t0 < 300
    _announce(
        8,
        "shift-cdet residues -> Gaudin generators with ratios "
        + ", ".join(f"{r:.3f}" for r in report["ratios"]),
        t0,
    )


def test_criterion_9_simple_spectrum_scan():
    t0 = time.time()
    for n, facs in BETHE_CASES:
        def build(s, n=n, facs=facs):
            cfg = build_spectral_config(n, facs, s=s)
            fam = bethe_family(standard_torus(n), cfg)
            torus = [cfg.rep.delta(a, a) for a in range(1, n + 1)]
            return fam.gens + torus, cfg.rep

        coarse = [Fraction(m, 2) for m in range(1, 7)]
        report = scan_simple_spectrum(build, coarse, tol=1e-8)
        simple_flags = [row["simple"] for row in report["rows"]]
        assert sum(simple_flags) >= len(simple_flags) - 1, report
        assert report["first_simple_s"] is not None
        refined = [Fraction(m, 4) for m in range(2, 13)]
        report2 = scan_simple_spectrum(build, refined, tol=1e-8)
        assert report2["first_simple_s"] is not None
        assert Fraction(report2["first_simple_s"]) <= Fraction(
            report["first_simple_s"]
        )
    assert time.time() - t0 < 300
    _announce(9, "joint spectra simple across the s-grid, threshold stable under refinement", t0)


def test_criterion_10_main_theorem_statistics():
    t0 = time.time()
    cases = [
        (2, [(1, 1), (1, 1)]),
        (3, [(1, 1), (1, 2)]),
        (3, [(2, 1), (1, 1)]),
    ]
    for n, facs in cases:
        report = compare_pipeline(n, facs)
        assert report["passed"], (n, facs, report)
        assert report["all_match"]
        assert report["weights_match"]
        for j, wall in report["per_wall"].items():
            assert wall["match"], (n, facs, j)
    assert time.time() - t0 < 600
    _announce(10, "spectral string statistics match KR tensor crystals for every residue class", t0)


def test_criterion_11_alcove_correctness():
    t0 = time.time()
    import random

    rng = random.Random(20240101)
    checked = 0
    for n in (3, 4):
        while checked < (500 if n == 3 else 1000):
            x = AffinePoint(
                [Fraction(rng.randint(-606, 606), 101) for _ in range(n)]
            )
            if not x.is_regular():
                continue
            w = classify(x)
            assert in_alcove(w, x, strict=True)
            assert w.is_affine_weyl()
            checked += 1
    # walls_of action-equivariance
    g = ExtAffineWeylElt((2, 3, 1, 4), (1, 0, -1, 0))
    h = ExtAffineWeylElt((4, 1, 3, 2), (0, 1, 0, 0))
    lhs = walls_of(g.compose(h))
    rhs = [g.apply_wall(wl) for wl in walls_of(h)]
    assert lhs == rhs
    assert time.time() - t0 < 10
    _announce(11, f"classify agrees with alcove membership on {checked} points; walls equivariant", t0)
