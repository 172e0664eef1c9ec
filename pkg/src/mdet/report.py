"""Pipeline orchestration and report rendering.

analyze() runs: density resolution -> phi certificate -> gamma estimates ->
moment table -> Carleman diagnosis -> theorem-by-theorem verdicts, entirely
deterministic for a given config (fixed grids, no randomness), and never
asserts indeterminacy: a failed sufficient condition only means "nothing
certified".

Decision table for the verdicts:
  Theorem 1 applies  iff support is the full line, the certificate is
                     valid and gamma1 is SATISFIED;
  Theorem 2 applies  iff half line, certificate valid, gamma2 SATISFIED
                     (including its phi(x)/x -> 0 side condition);
  Theorem 3 applies  iff half line, certificate valid, gamma3 SATISFIED.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import carleman as carleman_mod
from .densities import (CatalogEntry, Classification, SupportKind,
                        TailDensity, catalog_density, default_fixtures)
from .errors import InputError, MdetError, ProofCheckError
from .expr import expr_density
from .moments import MomentTable, Side, log_abs_moment, log_mass, moment_table
from .phi import ConditionCertificate, certify_conditions, forward, make_phi
from .proofs import (empirical_recursion_check, lemma1_sup,
                     lemma2_bound_check, proof_integral_bounds,
                     recursion_constants, select_x_hat0)
from .tailratio import SATISFIED, GammaEstimate, GridSpec, gamma1, gamma2, gamma3

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalyzeConfig:
    dist: Optional[str] = None          # "name" or "name:p1,p2"
    expr: Optional[str] = None          # density expression source
    support: Optional[str] = None       # "R" | "R+" (expression densities)
    x0: float = 1.0                     # tail threshold for expressions
    normalize: bool = False             # self-normalize expressions
    phi_family: str = "logpow"
    a: float = 1.0
    alpha: float = 1.0
    gamma: str = "auto"                 # g1 | g2 | g3 | auto
    nmax: int = 40
    grid_end: float = 1e8
    windows: int = 5
    margin: float = 0.05
    points_per_decade: int = 1250
    cert_points: int = 10_000


@dataclass
class DeterminacyReport:
    input_echo: str
    phi_certificate: ConditionCertificate
    gammas: list[GammaEstimate]
    carleman: list = field(default_factory=list)
    moments: Optional[MomentTable] = None
    moments_note: Optional[str] = None
    theorem_verdicts: list = field(default_factory=list)
    proof_checks: Optional[list] = None

    @property
    def any_theorem_applies(self) -> bool:
        return any(v["applies"] for v in self.theorem_verdicts)


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except MdetError as exc:
        raise type(exc)(f"[{name}] {exc}") from exc


def resolve_density(cfg: AnalyzeConfig) -> tuple[TailDensity,
                                                 Optional[CatalogEntry], str]:
    """Returns (density, catalog entry or None, echo string)."""
    if (cfg.dist is None) == (cfg.expr is None):
        raise InputError("exactly one of dist/expr must be given")
    if cfg.dist is not None:
        name, _, rest = cfg.dist.partition(":")
        params = [float(p) for p in rest.split(",")] if rest else []
        entry = catalog_density(name.strip(), params)
        return entry.density, entry, f"dist={entry.density.label}"
    if cfg.support not in ("R", "R+"):
        raise InputError("expression densities need --support R or R+")
    support = SupportKind.HAMBURGER if cfg.support == "R" else SupportKind.STIELTJES
    d = expr_density(cfg.expr, support, cfg.x0)
    if cfg.normalize:
        log_z = log_mass(d)
        d = expr_density(cfg.expr, support, cfg.x0, log_norm=log_z)
        echo = f"expr={cfg.expr!r} support={cfg.support} x0={cfg.x0} normalized"
    else:
        echo = f"expr={cfg.expr!r} support={cfg.support} x0={cfg.x0} unnormalized"
    return d, None, echo


def analyze(cfg: AnalyzeConfig) -> DeterminacyReport:
    d, entry, dens_echo = _stage("density-model", resolve_density, cfg)
    phi = _stage("phi-machinery", make_phi, cfg.phi_family, cfg.a, cfg.alpha)
    echo = (f"{dens_echo} phi={phi.label} gamma={cfg.gamma} nmax={cfg.nmax} "
            f"grid_end={cfg.grid_end:.6g} windows={cfg.windows} "
            f"margin={cfg.margin}")

    cert = _stage("phi-machinery", certify_conditions, phi,
                  grid_max=cfg.grid_end, points=cfg.cert_points)
    grid = GridSpec(x_end=cfg.grid_end, points_per_decade=cfg.points_per_decade,
                    windows=cfg.windows, margin=cfg.margin)

    gammas: list[GammaEstimate] = []
    which = cfg.gamma
    if which == "auto":
        which = "g1" if d.support is SupportKind.HAMBURGER else "g2+g3"
    if "g1" in which:
        gammas.append(_stage("tail-ratio", gamma1, d, phi, grid))
    if "g2" in which:
        gammas.append(_stage("tail-ratio", gamma2, d, phi, grid))
    if "g3" in which:
        gammas.append(_stage("tail-ratio", gamma3, d, phi, grid))

    moments = None
    moments_note = None
    if entry is not None:
        moments = _stage("moment-engine", moment_table, entry, cfg.nmax)
    elif cfg.normalize:
        moments = _stage("moment-engine", moment_table, d, cfg.nmax)
    else:
        moments_note = ("moments/Carleman skipped: unnormalized expression "
                        "kernel (pass --normalize to enable)")

    diagnoses = []
    if moments is not None:
        if d.support is SupportKind.HAMBURGER:
            diagnoses.append(_stage("carleman-diagnostics",
                                    carleman_mod.carleman_terms, moments,
                                    SupportKind.HAMBURGER))
            diagnoses.append(_stage("carleman-diagnostics",
                                    carleman_mod.carleman_terms, moments,
                                    SupportKind.STIELTJES))
        else:
            diagnoses.append(_stage("carleman-diagnostics",
                                    carleman_mod.carleman_terms, moments,
                                    SupportKind.STIELTJES))

    verdicts = _theorem_verdicts(d, cert, gammas)
    return DeterminacyReport(input_echo=echo, phi_certificate=cert,
                             gammas=gammas, carleman=diagnoses,
                             moments=moments, moments_note=moments_note,
                             theorem_verdicts=verdicts)


def _theorem_verdicts(d: TailDensity, cert: ConditionCertificate,
                      gammas: list[GammaEstimate]) -> list[dict]:
    by_kind = {g.kind: g for g in gammas}
    is_h = d.support is SupportKind.HAMBURGER
    out = []

    def row(tid, applies, conclusion):
        out.append({"theorem": tid, "applies": applies,
                    "conclusion": conclusion})

    g1 = by_kind.get("g1")
    if not is_h:
        row(1, False, "not applicable: needs a full-line density")
    elif g1 is None:
        row(1, False, "gamma1 not evaluated")
    elif cert.valid and g1.verdict == SATISFIED:
        row(1, True, "X, X^2, |X| M-det")
    else:
        row(1, False, "no sufficient condition certified")

    g2 = by_kind.get("g2")
    if is_h:
        row(2, False, "not applicable: needs a half-line density")
    elif g2 is None:
        row(2, False, "gamma2 not evaluated")
    elif cert.valid and g2.verdict == SATISFIED and g2.side_condition_ok:
        row(2, True, "Y M-det on R+")
    else:
        row(2, False, "no sufficient condition certified")

    g3 = by_kind.get("g3")
    if is_h:
        row(3, False, "not applicable: needs a half-line density")
    elif g3 is None:
        row(3, False, "gamma3 not evaluated")
    elif cert.valid and g3.verdict == SATISFIED:
        row(3, True, "Y and Y^2 M-det on R+")
    else:
        row(3, False, "no sufficient condition certified")
    return out


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _jf(x) -> Optional[float]:
    """JSON-safe float: None replaces non-finite values."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _cert_dict(c: ConditionCertificate) -> dict:
    return {
        "valid": c.valid,
        "c_plus": _jf(c.c_plus),
        "y_star": _jf(c.y_star),
        "grid_max": _jf(c.grid_max),
        "margins": [_jf(m) for m in c.margins],
        "failing_condition": c.failing_condition,
        "sup_b": _jf(c.sup_b),
        "sup_c": _jf(c.sup_c),
    }


def _gamma_dict(g: GammaEstimate) -> dict:
    return {
        "kind": g.kind,
        "verdict": g.verdict,
        "extrapolated": _jf(g.extrapolated),
        "margin": g.margin,
        "side_condition_ok": g.side_condition_ok,
        "window_sups": [{"start": _jf(a), "end": _jf(b), "sup": _jf(s)}
                        for a, b, s in g.window_sups],
    }


def _carleman_dict(c) -> dict:
    return {
        "kind": c.kind.value,
        "terms": [_jf(t) for t in c.terms],
        "partial_sums": [_jf(s) for s in c.partial_sums],
        "growth_exponent": _jf(c.growth_exponent),
        "diagnosis": c.diagnosis,
        "note": "diagnostic only: divergence is not provable from "
                "finitely many terms",
    }


def _moments_dict(m: Optional[MomentTable], note: Optional[str]):
    if m is None:
        return {"note": note} if note else None
    return [{"n": int(n),
             "log_mu_plus": _jf(m.log_mu_plus[n - 1]),
             "log_mu_minus": _jf(m.log_mu_minus[n - 1]),
             "log_mu": _jf(m.log_mu[n - 1])}
            for n in range(1, m.n_max + 1)]


def report_as_dict(r: DeterminacyReport) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "input_echo": r.input_echo,
        "phi_certificate": _cert_dict(r.phi_certificate),
        "gammas": [_gamma_dict(g) for g in r.gammas],
        "moments": _moments_dict(r.moments, r.moments_note),
        "carleman": [_carleman_dict(c) for c in r.carleman],
        "theorem_verdicts": r.theorem_verdicts,
        "proof_checks": r.proof_checks,
    }


def render(r: DeterminacyReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_as_dict(r), indent=2)
    if fmt != "text":
        raise InputError(f"unknown report format '{fmt}'")
    lines = ["mdet determinacy report", f"input: {r.input_echo}", ""]
    c = r.phi_certificate
    if c.valid:
        lines.append(f"phi conditions: certified with C+ = {c.c_plus:.6g}, "
                     f"y* = {c.y_star:.6g} (finite-range check up to "
                     f"{c.grid_max:.3g})")
        lines.append(f"  margins (a)/(b)/(c): "
                     + ", ".join(f"{m:.3g}" for m in c.margins))
    else:
        lines.append(f"phi conditions: NOT certified "
                     f"(condition {c.failing_condition} failed)")
    for g in r.gammas:
        lines.append("")
        lines.append(f"gamma {g.kind}: verdict {g.verdict}, "
                     f"extrapolated sup {g.extrapolated:.6g} "
                     f"(margin {g.margin})")
        if not g.side_condition_ok:
            lines.append("  side condition phi(x)/x -> 0 FAILED")
        lines.append("  per-window sups:")
        for lo, hi, s in g.window_sups:
            lines.append(f"    [{lo:10.4g}, {hi:10.4g}]  sup = {s:.9g}")
    for cd in r.carleman:
        lines.append("")
        lines.append(f"carleman ({cd.kind.value}): {cd.diagnosis} "
                     f"(fitted exponent p = {cd.growth_exponent:.4g}; "
                     "diagnostic, not proof)")
        lines.append(f"  last partial sum: {cd.partial_sums[-1]:.6g} over "
                     f"{len(cd.terms)} terms")
    if r.moments_note:
        lines.append("")
        lines.append(r.moments_note)
    lines.append("")
    for v in r.theorem_verdicts:
        status = "APPLIES" if v["applies"] else "does not apply"
        lines.append(f"Theorem {v['theorem']}: {status} — {v['conclusion']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verify-proofs runner
# ---------------------------------------------------------------------------

def run_proof_checks(cfg: AnalyzeConfig) -> tuple[list[dict], bool]:
    """Pass/fail rows for the proof-internal inequalities on one density.

    Returns (rows, all_ok)."""
    d, entry, _ = resolve_density(cfg)
    phi = make_phi(cfg.phi_family, cfg.a, cfg.alpha)
    rows: list[dict] = []

    def row(check: str, ok: bool, detail: str = ""):
        rows.append({"check": check, "ok": bool(ok), "detail": detail})

    # Lemma 1 identity spot grid
    try:
        for n in (1, 7, 40):
            for eps in (0.05, 0.5, 2.0):
                lemma1_sup(n, eps)
        row("lemma1 sup identity (spot grid)", True)
    except ProofCheckError as exc:
        row("lemma1 sup identity (spot grid)", False, str(exc))

    # Lemma 2 extremal bound
    slack = lemma2_bound_check(1.0, 1.0, 1.0, 100)
    row("lemma2 extremal bound (c=b=a1=1, n<=100)", slack >= 0.0,
        f"min log-slack {slack:.4g}")

    cert = certify_conditions(phi, grid_max=cfg.grid_end,
                              points=cfg.cert_points)
    row("phi conditions (a)-(c) certified", cert.valid,
        f"C+ = {cert.c_plus:.6g}" if cert.valid
        else f"failed {cert.failing_condition}")
    if not cert.valid:
        return rows, False

    grid = GridSpec(x_end=cfg.grid_end,
                    points_per_decade=cfg.points_per_decade,
                    windows=cfg.windows, margin=cfg.margin)
    if d.support is SupportKind.HAMBURGER:
        est = gamma1(d, phi, grid)
        gamma_plus = est.extrapolated_plus
    else:
        est = gamma3(d, phi, grid)
        gamma_plus = est.extrapolated
    row("plus-tail ratio estimate gamma_+ < 1", gamma_plus < 1.0,
        f"gamma_+ = {gamma_plus:.6g}")
    if not gamma_plus < 1.0:
        return rows, False

    beta = 0.5 * (1.0 + gamma_plus)
    x_hat0 = select_x_hat0(d, phi, beta, cert.y_star)
    if x_hat0 is None:
        row("x_hat0 selection", False,
            "no grid point with ratio <= beta onward; chain skipped")
        return rows, False
    rc = recursion_constants(gamma_plus, cert, x_hat0, phi)
    row("recursion constants", True,
        f"beta={rc.beta:.4g} eps={rc.eps:.4g} c_bar={rc.c_bar:.4g} "
        f"b_bar={rc.b_bar:.4g} n0={rc.n0}")
    if rc.n0 > 500:
        row("proof-integral chain", False,
            f"skipped: n0={rc.n0} exceeds the workable order range "
            "(gamma_+ too close to 1)")
        return rows, False

    n_hi = max(cfg.nmax, rc.n0)
    chain_ok = True
    detail = ""
    for n in range(rc.n0, n_hi + 1):
        try:
            proof_integral_bounds(d, phi, rc, n)
        except MdetError as exc:
            chain_ok = False
            detail = str(exc)
            break
    row(f"integral chain lower <= I <= upper, n in [{rc.n0}, {n_hi}]",
        chain_ok, detail)

    table = moment_table(entry if entry is not None else d, n_hi)
    slack9 = empirical_recursion_check(table, rc)
    row(f"moment recursion slack >= 0, n in [{rc.n0}, {n_hi}]",
        slack9 >= 0.0, f"min log-slack {slack9:.4g}")

    return rows, all(r["ok"] for r in rows)


def catalog_listing() -> list[dict]:
    out = []
    for entry in default_fixtures():
        out.append({
            "label": entry.density.label,
            "support": entry.density.support.value,
            "x0": entry.density.x0,
            "classification": entry.classification.value,
            "source": entry.classification_source,
        })
    return out
