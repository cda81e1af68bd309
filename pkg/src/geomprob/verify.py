"""The full verification battery behind `geomprob verify`.

Every check compares an independently computed value against its reference
at a pinned tolerance: exact integer identities, quadrature against closed
forms, Monte Carlo means against exact constants (tolerance max(4*SE,
stated) unless strict), goodness-of-fit statistics against precomputed
chi-square tails, and the invariance properties of the geometric kernels.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import crofton, exact, geom, mc
from .exact import PiRational
from .quadrature import adaptive_simpson
from .rng import RngStream

MC_FLOOR = 100_000

KS_STRICT_LIMIT = 0.002


def _check(
    name: str,
    kind: str,
    passed: bool | None,
    value=None,
    reference=None,
    error=None,
    tolerance=None,
    detail: str = "",
    skipped: bool = False,
) -> dict:
    # numpy scalars must not leak into the JSON report
    return {
        "name": name,
        "kind": kind,
        "passed": None if passed is None else bool(passed),
        "value": None if value is None else float(value),
        "reference": None if reference is None else float(reference),
        "error": None if error is None else float(error),
        "tolerance": None if tolerance is None else float(tolerance),
        "detail": detail,
        "skipped": bool(skipped),
    }


def _rel_check(name, kind, value, reference, tol, detail="") -> dict:
    err = abs(value - reference) / abs(reference) if reference != 0 else abs(value)
    return _check(name, kind, err <= tol, float(value), float(reference), err, tol, detail)


def _abs_check(name, kind, value, reference, tol, detail="") -> dict:
    err = abs(value - reference)
    return _check(name, kind, err <= tol, float(value), float(reference), err, tol, detail)


# ---------------------------------------------------------------------------
# exact identities
# ---------------------------------------------------------------------------

def exact_checks() -> list[dict]:
    checks = []
    checks.append(
        _check(
            "exact.kingman_v_2",
            "exact",
            exact.kingman_v(2) == PiRational(1, 3),
            float(exact.kingman_v(2)),
            float(PiRational(1, 3)),
            detail="v(B^1) = 1/3 as an exact rational",
        )
    )
    checks.append(
        _check(
            "exact.kingman_v_3",
            "exact",
            exact.kingman_v(3) == PiRational(35, 48, -4),
            float(exact.kingman_v(3)),
            35.0 / (48.0 * math.pi**2),
            detail="v(B^2) = 35/(48 pi^2) exactly",
        )
    )
    checks.append(
        _check(
            "exact.kingman_v_4",
            "exact",
            exact.kingman_v(4) == PiRational(9, 715),
            float(exact.kingman_v(4)),
            9.0 / 715.0,
            detail="v(B^3) = 9/715 as an exact rational",
        )
    )
    checks.append(
        _rel_check(
            "exact.sylvester_2d",
            "exact",
            float(exact.sylvester_probability(2)),
            1.0 - 35.0 / (12.0 * math.pi**2),
            1e-12,
            detail="planar convex-position probability",
        )
    )
    checks.append(
        _check(
            "exact.sylvester_3d",
            "exact",
            exact.sylvester_probability(3) == PiRational(134, 143),
            float(exact.sylvester_probability(3)),
            134.0 / 143.0,
            detail="spatial convex-position probability = 134/143",
        )
    )
    hbi9 = exact.half_ball_integral(9)
    quad9, _ = adaptive_simpson(lambda p: (1.0 - p * p) ** 4, 0.0, 1.0)
    checks.append(
        _check(
            "exact.half_ball_9",
            "exact",
            hbi9 == PiRational(128, 315) and abs(float(hbi9) - quad9) <= 1e-10,
            float(hbi9),
            quad9,
            abs(float(hbi9) - quad9),
            1e-10,
            detail="128/315 exactly and against adaptive quadrature",
        )
    )
    duplication_ok = exact.half_integer_factorial(-1) == PiRational(1, 1, 1)
    for m in range(0, 11):
        lhs = exact.half_integer_factorial(2 * m - 1)  # (m - 1/2)!
        rhs = PiRational(math.factorial(2 * m), 2 ** (2 * m) * math.factorial(m), 1)
        duplication_ok &= lhs == rhs
        if m >= 1:
            recurrence = PiRational(2 * m - 1, 2) * exact.half_integer_factorial(2 * m - 3)
            duplication_ok &= lhs == recurrence
    checks.append(
        _check(
            "exact.duplication_formula",
            "exact",
            bool(duplication_ok),
            detail="(m-1/2)! = sqrt(pi)(2m)!/(2^{2m} m!) for m = 0..10, with (-1/2)! = sqrt(pi)",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# quadrature identities
# ---------------------------------------------------------------------------

def quadrature_checks(panels: int, polygon_seed: int = 12345) -> list[dict]:
    checks = []
    disk = geom.ConvexBody2.unit_disk()
    refs = {0: 2.0 * math.pi, 1: math.pi**2, 3: 3.0 * math.pi**2}
    for n, ref in refs.items():
        value = crofton.chord_moment(disk, n, panels).value
        checks.append(
            _rel_check(f"quadrature.disk_i{n}", "quadrature", value, ref, 1e-8)
        )

    square = geom.ConvexBody2.unit_square()
    bodies = [("square", square)]
    rng = np.random.default_rng(polygon_seed)
    for i in range(20):
        bodies.append((f"polygon_{i:02d}", geom.random_convex_polygon(rng, int(rng.integers(4, 13)))))
    worst = 0.0
    worst_name = ""
    perimeter_ok = True
    for name, body in bodies:
        i3 = crofton.chord_moment(body, 3, panels).value
        ratio = i3 / body.area**2
        if abs(ratio - 3.0) > worst:
            worst = abs(ratio - 3.0)
            worst_name = name
        i0 = crofton.chord_moment(body, 0, panels).value
        i1 = crofton.chord_moment(body, 1, panels).value
        perimeter_ok &= abs(i0 - body.perimeter) <= 1e-6
        perimeter_ok &= abs(i1 - math.pi * body.area) <= 1e-6 * max(1.0, math.pi * body.area)
    checks.append(
        _check(
            "quadrature.polygons_i3_ratio",
            "quadrature",
            worst <= 1e-6,
            3.0 + worst,
            3.0,
            worst,
            1e-6,
            detail=f"worst I3/A^2 deviation over unit square + 20 random polygons at {worst_name}",
        )
    )
    checks.append(
        _check(
            "quadrature.polygons_i0_i1",
            "quadrature",
            bool(perimeter_ok),
            detail="I0 = perimeter and I1 = pi*A for all polygon bodies",
        )
    )

    segment = crofton.Polyline.segment()
    checks.append(
        _abs_check(
            "quadrature.length_segment",
            "quadrature",
            crofton.crofton_length(segment, panels),
            1.0,
            1e-6,
        )
    )
    ngon = crofton.Polyline.regular_ngon(1024)
    checks.append(
        _abs_check(
            "quadrature.length_1024gon",
            "quadrature",
            crofton.crofton_length(ngon, panels),
            1024 * 2.0 * math.sin(math.pi / 1024),
            1e-6,
            detail="recovers the polygon perimeter, not 2 pi",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# Monte Carlo versus exact
# ---------------------------------------------------------------------------

def _mc_tolerance(stated: float, std_error: float, strict: bool) -> float:
    if strict:
        return stated
    return max(stated, 4.0 * std_error)


def mc_checks(samples: int, seed: int, workers: int, strict: bool) -> list[dict]:
    checks = []

    def run(name, runner, stated, reference):
        try:
            est = runner()
        except ValueError as err:
            checks.append(
                _check(name, "mc", False, detail=f"estimator rejected the run: {err}")
            )
            return None
        tol = _mc_tolerance(stated, est.std_error, strict)
        err = abs(est.mean - reference)
        checks.append(
            _check(
                name,
                "mc",
                err <= tol,
                est.mean,
                reference,
                err,
                tol,
                detail=f"n={est.n} se={est.std_error:.3e}",
            )
        )
        return est

    simplex2 = run(
        "mc.simplex_2d",
        lambda: mc.estimate_simplex_volume(2, samples, seed, workers),
        1e-3,
        mc.exact_reference("simplex", 2),
    )
    simplex3 = run(
        "mc.simplex_3d",
        lambda: mc.estimate_simplex_volume(3, samples, seed, workers),
        5e-4,
        mc.exact_reference("simplex", 3),
    )
    run(
        "mc.simplex_1d",
        lambda: mc.estimate_simplex_volume(1, samples, seed, workers),
        1e-3,
        mc.exact_reference("simplex", 1),
    )
    sylvester2 = run(
        "mc.sylvester_2d",
        lambda: mc.estimate_sylvester(2, samples, seed, workers),
        2e-3,
        mc.exact_reference("sylvester", 2),
    )
    sylvester3 = run(
        "mc.sylvester_3d",
        lambda: mc.estimate_sylvester(3, samples, seed, workers),
        1.5e-3,
        mc.exact_reference("sylvester", 3),
    )
    run(
        "mc.center_triangle",
        lambda: mc.estimate_center_triangle(samples, seed, workers),
        1e-3,
        mc.exact_reference("center-triangle"),
    )
    run(
        "mc.boundary_triangle",
        lambda: mc.estimate_boundary_triangle(samples, seed, workers),
        1.5e-3,
        mc.exact_reference("boundary-triangle"),
    )
    run(
        "mc.offcut",
        lambda: mc.estimate_offcut(samples, seed, workers),
        3e-3,
        mc.exact_reference("offcut"),
    )

    # the estimator and the chord-moment chain must meet in the middle
    quad_mean_distance = crofton.distance_moment(
        geom.ConvexBody2.unit_disk(), 1, normalized=True
    )
    run(
        "mc.mean_distance_vs_quadrature",
        lambda: mc.estimate_mean_distance(samples, seed, workers),
        1e-3,
        quad_mean_distance,
    )

    # convex-position probability against the simplex expectation it reduces to
    for dim, sylv, simp in ((2, sylvester2, simplex2), (3, sylvester3, simplex3)):
        if sylv is None or simp is None:
            continue
        beta = float(exact.unit_ball_volume(dim))
        combined = sylv.mean + (dim + 2) * simp.mean / beta
        tol = 4.0 * (sylv.std_error + (dim + 2) * simp.std_error / beta)
        checks.append(
            _abs_check(
                f"mc.consistency_{dim}d",
                "mc",
                combined,
                1.0,
                tol,
                detail="sylvester + (dim+2) * simplex / ball volume = 1",
            )
        )
    return checks


def gof_checks(samples: int, bins: int, seed: int, workers: int, strict: bool) -> list[dict]:
    checks = []
    runs = [
        (f"gof.secant_offset_{dim}d", lambda d=dim: mc.secant_offset_histogram(d, samples, bins, seed, workers))
        for dim in (2, 3, 4)
    ]
    runs.append(("gof.max_radius", lambda: mc.max_radius_gof(samples, seed, workers, bins=bins)))
    resampled_total = 0
    for name, runner in runs:
        try:
            hist = runner()
        except ValueError as err:
            checks.append(
                _check(name, "gof", False, detail=f"histogram run rejected: {err}")
            )
            continue
        resampled_total += hist.resampled
        checks.append(
            _check(
                name,
                "gof",
                hist.passed,
                hist.chi2,
                hist.threshold_99,
                hist.chi2,
                hist.threshold_99,
                detail=f"chi2/dof = {hist.chi2 / hist.dof:.3f}, dof={hist.dof}",
            )
        )
    checks.append(
        _check(
            "gof.degenerate_counter",
            "gof",
            resampled_total == 0,
            float(resampled_total),
            0.0,
            detail="degenerate point tuples seen across all histogram runs",
        )
    )
    ks = mc.squared_radius_ks(samples, seed, workers)
    limit = KS_STRICT_LIMIT if strict else max(KS_STRICT_LIMIT, 1.6276 / math.sqrt(samples))
    checks.append(
        _check(
            "gof.radius_squared_ks",
            "gof",
            ks < limit,
            ks,
            limit,
            ks,
            limit,
            detail="KS of squared ball(2) radii against Uniform[0,1]",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# determinism and invariance properties
# ---------------------------------------------------------------------------

def property_checks(seed: int, workers: int) -> list[dict]:
    checks = []

    run1 = mc.estimate_sylvester(2, 10_000, seed, workers).as_dict()
    run2 = mc.estimate_sylvester(2, 10_000, seed, workers).as_dict()
    hist1 = mc.secant_offset_histogram(2, 100_000, 20, seed, workers).as_dict()
    hist2 = mc.secant_offset_histogram(2, 100_000, 20, seed, workers).as_dict()
    checks.append(
        _check(
            "property.determinism",
            "property",
            json.dumps(run1, sort_keys=True) == json.dumps(run2, sort_keys=True)
            and json.dumps(hist1, sort_keys=True) == json.dumps(hist2, sort_keys=True),
            detail="bit-identical estimates and histograms for repeated (seed, workers, n)",
        )
    )

    quadruples = mc.sample_uniform_ball(2, RngStream(seed, 101), 4 * 100_000).reshape(
        100_000, 4, 2
    )
    multi = int((geom.inside_event_counts_4(quadruples) >= 2).sum())
    checks.append(
        _check(
            "property.mutual_exclusivity",
            "property",
            multi == 0,
            float(multi),
            0.0,
            detail="quadruples with two or more strictly-inside events",
        )
    )

    checks.extend(_geom_invariance_checks(seed))
    checks.extend(_crofton_invariance_checks(seed))
    return checks


def _random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    matrix, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    if np.linalg.det(matrix) < 0:
        matrix[:, 0] = -matrix[:, 0]
    return matrix


def _geom_invariance_checks(seed: int) -> list[dict]:
    rng = np.random.default_rng(seed ^ 0xA5A5)
    checks = []

    worst = 0.0
    for _ in range(300):
        tri = rng.uniform(-1, 1, size=(3, 2))
        base = geom.triangle_area(*tri)
        if base < 1e-6:
            continue
        rot = _random_rotation(rng, 2)
        shift = rng.uniform(-2, 2, size=2)
        moved = geom.triangle_area(*(tri @ rot.T + shift))
        worst = max(worst, abs(moved - base) / base)
        s = rng.uniform(0.5, 2.0)
        scaled = geom.triangle_area(*(s * tri))
        worst = max(worst, abs(scaled - s * s * base) / (s * s * base))
    for _ in range(300):
        tet = rng.uniform(-1, 1, size=(4, 3))
        base = geom.tetra_volume(*tet)
        if base < 1e-6:
            continue
        rot = _random_rotation(rng, 3)
        shift = rng.uniform(-2, 2, size=3)
        moved = geom.tetra_volume(*(tet @ rot.T + shift))
        worst = max(worst, abs(moved - base) / base)
        s = rng.uniform(0.5, 2.0)
        scaled = geom.tetra_volume(*(s * tet))
        worst = max(worst, abs(scaled - s**3 * base) / (s**3 * base))
    checks.append(
        _check(
            "property.simplex_rigid_scaling",
            "property",
            worst <= 1e-10,
            worst,
            0.0,
            worst,
            1e-10,
            detail="simplex measures under rigid motions and scalings",
        )
    )

    mismatches = 0
    for _ in range(300):
        quad = rng.uniform(-1, 1, size=(4, 2))
        matrix = rng.uniform(-1, 1, size=(2, 2))
        if abs(np.linalg.det(matrix)) < 0.1:
            continue
        shift = rng.uniform(-1, 1, size=2)
        before = geom.convex_position_4(list(quad))
        after = geom.convex_position_4(list(quad @ matrix.T + shift))
        mismatches += before != after
    checks.append(
        _check(
            "property.affine_convex_position",
            "property",
            mismatches == 0,
            float(mismatches),
            0.0,
            detail="convex_position_4 under invertible affine maps",
        )
    )

    worst = 0.0
    for _ in range(300):
        pts = rng.uniform(-1, 1, size=(2, 2))
        try:
            line = geom.line_from_points(pts[0], pts[1])
        except geom.GeometryError:
            continue
        worst = max(worst, max(abs(line.signed_distance(p)) for p in pts))
    for _ in range(300):
        pts = rng.uniform(-1, 1, size=(3, 3))
        try:
            flat = geom.flat_from_points(pts)
        except geom.GeometryError:
            continue
        worst = max(worst, max(abs(flat.signed_distance(p)) for p in pts))
    for _ in range(300):
        pts = rng.uniform(-1, 1, size=(4, 4))
        try:
            flat = geom.flat_from_points(pts)
        except geom.GeometryError:
            continue
        worst = max(worst, max(abs(flat.signed_distance(p)) for p in pts))
    checks.append(
        _check(
            "property.flat_round_trip",
            "property",
            worst <= 1e-9,
            worst,
            0.0,
            worst,
            1e-9,
            detail="sampled points satisfy the returned flat equation",
        )
    )

    disk = geom.ConvexBody2.unit_disk()
    ngon = geom.ConvexBody2.regular_polygon(4096)
    worst = 0.0
    for _ in range(1000):
        line = geom.LineCoords2(p=rng.uniform(0.0, 1.2), theta=rng.uniform(0.0, geom.TWO_PI))
        worst = max(
            worst, abs(geom.chord_length(disk, line) - geom.chord_length(ngon, line))
        )
    checks.append(
        _check(
            "property.chord_disk_vs_4096gon",
            "property",
            worst <= 1e-5,
            worst,
            0.0,
            worst,
            1e-5,
            detail="disk chord against a 4096-gon approximation",
        )
    )
    return checks


def _crofton_invariance_checks(seed: int) -> list[dict]:
    rng = np.random.default_rng(seed ^ 0x5A5A)
    checks = []

    mismatches = 0
    for _ in range(200):
        first = crofton.Polyline(rng.uniform(-1, 1, size=(3, 2)))
        second = crofton.Polyline(
            np.vstack([first.vertices[-1], rng.uniform(-1, 1, size=(2, 2))])
        )
        joined = first.concat(second)
        line = geom.LineCoords2(
            p=rng.uniform(0.0, 1.0), theta=rng.uniform(0.0, geom.TWO_PI)
        )
        junction = abs(line.signed_distance(first.vertices[-1]))
        if junction < 1e-6:
            continue
        total = crofton.eta_count(joined, line)
        split = crofton.eta_count(first, line) + crofton.eta_count(second, line)
        mismatches += total != split
    checks.append(
        _check(
            "property.eta_additivity",
            "property",
            mismatches == 0,
            float(mismatches),
            0.0,
            detail="crossing counts add over concatenated polylines",
        )
    )

    shape = crofton.Polyline.regular_ngon(48, radius=0.8)
    base = crofton.crofton_length(shape)
    worst = 0.0
    for _ in range(3):
        moved = shape.transformed(
            angle=rng.uniform(0.0, geom.TWO_PI), offset=rng.uniform(-1.0, 1.0, size=2)
        )
        worst = max(worst, abs(crofton.crofton_length(moved) - base))
    checks.append(
        _check(
            "property.crofton_length_rigid",
            "property",
            worst <= 1e-6,
            worst,
            0.0,
            worst,
            1e-6,
            detail="measured length under rigid motions",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# battery driver
# ---------------------------------------------------------------------------

def run_battery(
    samples: int = 1_000_000,
    seed: int = 20070101,
    workers: int = 1,
    strict: bool = False,
    panels: int = 4096,
    bins: int = 40,
) -> tuple[list[dict], bool, list[str]]:
    """Run every verification check; returns (checks, all_passed, warnings)."""
    warnings: list[str] = []
    checks: list[dict] = []
    checks.extend(exact_checks())
    checks.extend(quadrature_checks(panels))
    if samples < MC_FLOOR and not strict:
        warnings.append(
            f"insufficient samples ({samples} < {MC_FLOOR}): Monte Carlo and GOF checks skipped"
        )
        for name in (
            "mc.simplex_2d",
            "mc.simplex_3d",
            "mc.simplex_1d",
            "mc.sylvester_2d",
            "mc.sylvester_3d",
            "mc.center_triangle",
            "mc.boundary_triangle",
            "mc.offcut",
            "mc.mean_distance_vs_quadrature",
            "gof.secant_offset_2d",
            "gof.secant_offset_3d",
            "gof.secant_offset_4d",
            "gof.max_radius",
            "gof.radius_squared_ks",
        ):
            checks.append(
                _check(name, "mc", None, detail="skipped: insufficient samples", skipped=True)
            )
    else:
        checks.extend(mc_checks(samples, seed, workers, strict))
        checks.extend(gof_checks(samples, bins, seed, workers, strict))
    checks.extend(property_checks(seed, workers))
    all_passed = all(c["passed"] for c in checks if not c["skipped"])
    return checks, all_passed, warnings
