"""FastAPI application wrapping the core computations."""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import boundary as boundary_mod
from .. import checks as checks_mod
from .. import nrange, svgplot
from ..errors import MathValidationError, UsageError
from ..rif import RifProduct, factor_from_coeffs
from ..symbol import build_symbol, eval_symbol, render_symbol
from . import schemas as S


def create_app() -> FastAPI:
    app = FastAPI(title="rifrange", version="0.1.0",
                  description="Numerical ranges of compressed shifts for products "
                              "of degree-(1,1) rational inner functions")

    @app.exception_handler(UsageError)
    async def _usage(_, exc):
        return JSONResponse(status_code=400,
                            content={"detail": {"kind": "usage", "message": str(exc)}})

    @app.exception_handler(MathValidationError)
    async def _math(_, exc):
        return JSONResponse(status_code=422,
                            content={"detail": {"kind": "math-validation", "message": str(exc)}})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/symbol", response_model=None)
    def symbol(req: S.SymbolRequest):
        theta = _product(req.factors)
        M = build_symbol(theta)
        if req.at is not None:
            tau = complex(*req.at)
            mat = eval_symbol(M, tau)
            return S.SymbolEvalResponse(
                m=M.m,
                matrix=[[S.from_complex(mat[j, i]) for i in range(M.m)] for j in range(M.m)])
        entries = []
        for j in range(M.m):
            for i in range(M.m):
                e = M.entries[j][i]
                entries.append(S.SymbolEntry(
                    row=j + 1, col=i + 1,
                    num=[S.from_complex(c) for c in e.num.coeffs],
                    den=[S.from_complex(c) for c in e.den.coeffs]))
        return S.SymbolResponse(m=M.m, entries=entries, rendered=render_symbol(M))

    @app.post("/range", response_model=S.RangeResponse)
    def range_(req: S.RangeRequest):
        theta = _product(req.factors)
        M = build_symbol(theta)
        region = nrange.region_hull(M, req.tau_samples, req.angle_samples, dense=req.dense)
        hull = [(float(x), float(y)) for x, y in region.hull]
        pts = [(float(x), float(y)) for x, y in region.points] if req.dense else None
        return S.RangeResponse(hull=hull, radius=nrange.numerical_radius(region), points=pts)

    @app.post("/boundary", response_model=S.BoundaryResponse)
    def boundary(req: S.BoundaryRequest):
        family = _family(req.a, req.c)
        grid = 2 * np.pi * np.arange(req.samples) / req.samples
        outer, inner = boundary_mod.envelope(family, grid)
        resp = S.BoundaryResponse(outer=_rows(outer), inner=_rows(inner) if req.inner else None)
        if req.check:
            of, oft = boundary_mod.envelope_residuals(outer, family)
            inf_, inft = boundary_mod.envelope_residuals(inner, family)
            theta = _squared_product(family)
            resp.check = S.BoundaryCheck(
                outer_f_residual=of, outer_ftheta_residual=oft,
                inner_f_residual=inf_, inner_ftheta_residual=inft,
                convex=boundary_mod.convexity_check(outer),
                gap=boundary_mod.non_circularity_gap(family),
                reparam_dev=boundary_mod.reparam_consistency(family, theta, 360))
        return resp

    @app.post("/zero-test", response_model=S.ZeroTestResponse)
    def zero_test(req: S.ZeroTestRequest):
        normalized = req.c1 is not None or req.c2 is not None
        if normalized and req.factors is not None:
            raise UsageError("give either (c1, c2) or a factor config, not both")
        if normalized:
            if req.c1 is None or req.c2 is None:
                raise UsageError("both c1 and c2 are required")
            report = nrange.zero_test_normalized(req.c1, req.c2)
            theta = _product_from_quads(nrange.normalized_factors(req.c1, req.c2))
            count, example = _witness_scan(theta, req.tau_samples)
            return S.ZeroTestResponse(
                verdict=report.verdict.value, method="coefficient-product",
                product=report.product,
                quad_zeros=(report.quad_zero_low, report.quad_zero_high),
                witness_count=count, witness_example=example)
        if req.factors is None:
            raise UsageError("give either (c1, c2) or a factor config")
        theta = _product(req.factors)
        if theta.m != 2:
            raise UsageError("zero test needs exactly two factors")
        count, example = _witness_scan(theta, req.tau_samples)
        if count > 0:
            return S.ZeroTestResponse(verdict=nrange.ZeroVerdict.INTERIOR.value,
                                      method="focal-witness",
                                      witness_count=count, witness_example=example)
        M = build_symbol(theta)
        region = nrange.region_hull(M, 720, 720)
        if nrange.point_in_hull(region, 0.0, 0.0, margin=1e-7):
            verdict = nrange.ZeroVerdict.INTERIOR
        elif nrange.hull_boundary_distance(region, 0.0, 0.0) <= 1e-4:
            verdict = nrange.ZeroVerdict.BOUNDARY
        else:
            verdict = nrange.ZeroVerdict.NOT_INTERIOR
        return S.ZeroTestResponse(verdict=verdict.value, method="hull-geometry",
                                  witness_count=0)

    @app.post("/verify", response_model=S.VerifyResponse)
    def verify(req: S.VerifyRequest):
        theta = _product(req.factors)
        results = checks_mod.run_verification(theta, seed=req.seed)
        lines = [S.CheckLine(name=r.name, max_dev=r.max_dev, tol=r.tol, passed=r.passed)
                 for r in results]
        return S.VerifyResponse(checks=lines, all_pass=all(r.passed for r in results))

    @app.post("/plot", response_model=S.PlotResponse)
    def plot(req: S.PlotRequest):
        rows = req.rows
        width = len(rows[0])
        if width not in (2, 3) or any(len(r) != width for r in rows):
            raise UsageError("rows must be uniform [x, y] or [theta, x, y] records")
        if req.styles:
            unknown = set(req.styles) - set(svgplot.DEFAULT_STYLES)
            if unknown:
                raise UsageError(f"unknown style keys: {sorted(unknown)}")
            if any(s.count(":") != 2 for s in req.styles.values()):
                raise UsageError('styles must be "fill:stroke:width" triples')
        curve = np.array([(r[-2], r[-1]) for r in rows])
        circles = None
        extremes = None
        if req.with_circles or (req.a is not None and req.c is not None):
            if req.a is None or req.c is None:
                raise UsageError("family circles need both a and c")
            family = _family(req.a, req.c)
            n = req.with_circles or 0
            circles = []
            for k in range(n):
                th = 2 * np.pi * (k + 0.5) / max(n, 1)
                ctr, rad = boundary_mod.circle_at(family, th)
                circles.append((ctr.real, ctr.imag, rad))
            grid = 2 * np.pi * np.arange(max(len(rows), 256)) / max(len(rows), 256)
            extremes = boundary_mod.extreme_point_curve(family, grid)
        merged = dict(svgplot.DEFAULT_STYLES, **(req.styles or {}))
        return S.PlotResponse(svg=svgplot.render_scene(curve=curve, circles=circles,
                                                       extremes=extremes, styles=merged))

    return app


def _product(factors) -> RifProduct:
    return _product_from_quads([f.quad() for f in factors])


def _product_from_quads(quads) -> RifProduct:
    return RifProduct(tuple(factor_from_coeffs(*q) for q in quads))


def _family(a: float, c: float):
    if abs(a - c - 1.0) > 1e-9:
        raise UsageError(f"family requires a - c = 1 (got a - c = {a - c!r})")
    try:
        return boundary_mod.CircleFamily(a, a - 1.0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _squared_product(family) -> RifProduct:
    quad = (family.a, -1.0, family.c, 0.0)
    return _product_from_quads([quad, quad])


def _rows(curve) -> list[S.BoundaryRow]:
    return [S.BoundaryRow(theta=float(t), x=float(x), y=float(y))
            for t, (x, y) in zip(curve.thetas, curve.points)]


def _witness_scan(theta: RifProduct, samples: int):
    """Count interior witnesses of the focal inequality over a torus scan."""
    count = 0
    example = None
    for t in checks_mod.offset_torus_grid(samples, theta):
        report = nrange.zero_test_general(theta, complex(t))
        if report.verdict is nrange.WitnessVerdict.INTERIOR_WITNESS:
            count += 1
            if example is None:
                example = (float(t.real), float(t.imag))
    return count, example
