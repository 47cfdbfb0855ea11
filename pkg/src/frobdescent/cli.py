"""Command-line entry point.

Exit codes: 0 success, 2 refused precondition, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .curves import CurveParseError, PlaneCurve, format_curve, parse_curve, places_up_to
from .descent import mu_sym2
from .differentials import holomorphic_basis
from .quartic import HypothesisError, example_quartic

SCHEMA = 1


class Refused(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    curve_c: str | None = None
    curve_d: str | None = None
    height: int = 1
    places: int = 2
    depth: int = 4
    extscan: int = 2
    format: str = "json"
    seed: int = 0
    rank: int | None = None
    p: int = 5
    input: str | None = None

    def check(self) -> None:
        if not 0 <= self.height <= 4:
            raise Refused("height must be in 0..4")
        if not 1 <= self.places <= 2:
            raise Refused("place degree bound must be 1 or 2")
        if not 0 <= self.depth <= 8:
            raise Refused("depth must be in 0..8")
        if not 1 <= self.extscan <= 2:
            raise Refused("extension scan degree must be 1 or 2")
        if self.rank is not None and self.rank < 0:
            raise Refused("rank must be nonnegative")

    def header(self) -> dict:
        d = asdict(self)
        d.pop("format")
        return d


def _load(path: str | None, what: str) -> PlaneCurve | None:
    if path is None:
        return None
    text = Path(path).read_text()
    return parse_curve(text, Path(path).stem)


def _curves(cfg: RunConfig, need_d: bool = True) -> tuple[PlaneCurve, PlaneCurve | None]:
    C, D = _load(cfg.curve_c, "C"), _load(cfg.curve_d, "D")
    if C is None:
        ex = _example(cfg.p)
        C = ex.C
        if D is None and need_d:
            D = ex.D
    if D is None and need_d:
        D = C
    if not C.smooth:
        raise Refused("C must be flagged smooth")
    if C.degree != 4:
        raise Refused("canonical-model operations are built for plane quartics (g = 3)")
    if D is not None and D.p != C.p:
        raise Refused("C and D must share the base field")
    return C, D


def _example(p: int):
    try:
        return example_quartic(p)
    except HypothesisError as e:
        raise Refused(str(e))
    except ValueError as e:
        raise Refused(str(e))


# ---------------------------------------------------------------------------
# commands


def cmd_example_quartic(cfg: RunConfig) -> dict:
    from .adelic import check_survival, construct_unobstructed, trichotomy_report
    ex = _example(cfg.p)
    basis = holomorphic_basis(ex.C)
    mus = {P.name: mu_sym2(P) for P in (ex.P_f, ex.P_g, ex.P_g_twin)}
    pls = places_up_to(ex.D, cfg.places)
    x = construct_unobstructed(ex.P_f, ex.P_g_twin, pls)
    cert = check_survival(x, mus["P_f"], cfg.depth)
    tri = trichotomy_report(x, cert, ex.D, h=2, H=cfg.height)
    return {
        "C": format_curve(ex.C).strip().splitlines(),
        "D": format_curve(ex.D).strip().splitlines(),
        "basis": basis.labels(),
        "mu": {k: [c.serialize() for c in v.comps] for k, v in mus.items()},
        "mu_equal": {"P_f=P_g": mus["P_f"] == mus["P_g"], "P_f=P_g'": mus["P_f"] == mus["P_g'"]},
        "adelic_point": x.to_json(),
        "partition": "alternating by place order",
        "survival": cert.to_json(),
        "trichotomy": tri.to_json(),
        "note": x.note,
    }


def _classified(cfg: RunConfig):
    from .symsq import classify, describe, enumerate_points
    C, D = _curves(cfg)
    pts = enumerate_points(C, D, cfg.height, frobenius_translates=1 if D == C else 0)
    return [(P, classify(P, cfg.depth)) for P in pts], describe


def cmd_classify(cfg: RunConfig) -> dict:
    rows, describe = _classified(cfg)
    return {"points": [{
        "point": describe(P),
        "label": str(lab),
        "mu": [c.serialize() for c in lab.mu.comps],
        "gamma": None if lab.gamma is None else [c.serialize() for c in lab.gamma.coords],
        "gamma_in_C": lab.gamma_in_C,
        "depth": lab.depth,
    } for P, lab in rows]}


def cmd_bound(cfg: RunConfig) -> dict:
    from .secant import has_g1d
    from .symsq import bound_check
    rows, _ = _classified(cfg)
    C, D = _curves(cfg)
    rep = bound_check(rows, cfg.rank, C.p, places_up_to(D, cfg.places))
    out = rep.to_json()
    # the count needs C without g^1_2, g^1_3, g^1_4
    found = {d: has_g1d(C, d, cfg.places).found for d in (2, 3, 4)}
    out["hypotheses_hold"] = not any(found.values())
    out["g1d_found"] = {f"g1_{d}": v for d, v in found.items()}
    out["unexplained_collisions"] = len(rep.unexplained)
    return out


def cmd_gonality(cfg: RunConfig) -> dict:
    from .secant import has_g1d
    C, _ = _curves(cfg, need_d=False)
    return {f"g1_{d}": has_g1d(C, d, cfg.places).to_json() for d in (2, 3, 4)}


def cmd_adelic(cfg: RunConfig) -> dict:
    from .adelic import (SurvivalUndecidable, UnobstructedError, check_survival, construct_unobstructed,
                         from_json, trichotomy_report)
    from .symsq import enumerate_points, describe
    C, D = _curves(cfg)
    pts = enumerate_points(C, D, cfg.height)
    if cfg.input:
        data = json.loads(Path(cfg.input).read_text())
        catalogue = {describe(P): P for P in pts}
        if cfg.curve_c is None and cfg.curve_d is None:
            ex = _example(cfg.p)
            catalogue.update({P.name: P for P in (ex.P_f, ex.P_g, ex.P_g_twin, ex.P_h)})
        x = from_json(data, C, D, catalogue)
        xi_src = next((c.provenance for c in x.components if c.provenance is not None), None)
        if xi_src is None:
            raise Refused("survival undecidable in the truncation model: no component has global provenance")
        try:
            cert = check_survival(x, mu_sym2(xi_src), cfg.depth)
        except SurvivalUndecidable as e:
            raise Refused(str(e))
        out = {"adelic_point": x.to_json(), "survival": cert.to_json()}
        if cert.passed:
            out["trichotomy"] = trichotomy_report(x, cert, D, pts, 2, cfg.height).to_json()
        return out
    mus = [(P, mu_sym2(P)) for P in pts]
    pls = places_up_to(D, cfg.places)
    for i, (P1, m1) in enumerate(mus):
        if m1.is_zero():
            continue
        for P2, m2 in mus[i + 1:]:
            if m1 == m2:
                try:
                    x = construct_unobstructed(P1, P2, pls)
                except UnobstructedError:
                    continue
                cert = check_survival(x, m1, cfg.depth)
                tri = trichotomy_report(x, cert, D, pts, 2, cfg.height)
                return {"pair": [describe(P1), describe(P2)], "adelic_point": x.to_json(),
                        "survival": cert.to_json(), "trichotomy": tri.to_json(), "note": x.note}
    return {"pair": None, "note": "no two distinct enumerated points share a nonzero mu"}


COMMANDS = {
    "example-quartic": cmd_example_quartic,
    "classify": cmd_classify,
    "bound": cmd_bound,
    "gonality": cmd_gonality,
    "adelic": cmd_adelic,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobdescent", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--curve-c", dest="curve_c")
    ap.add_argument("--curve-d", dest="curve_d")
    ap.add_argument("--height", type=int, default=1)
    ap.add_argument("--places", type=int, default=2)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--extscan", type=int, default=2)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--rank", type=int)
    ap.add_argument("--p", type=int, default=5, help="characteristic for the built-in quartic")
    ap.add_argument("--input", help="truncated adelic point (JSON) for the adelic command")
    return ap


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    lines: list[str] = []
    _text(report, 0, lines)
    return "\n".join(lines) + "\n"


def _text(obj, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _text(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                _text(v, indent + 1, out)
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(f"{pad}{obj}")


def run(argv: list[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    random.seed(cfg.seed)
    head = {"schema": SCHEMA, "config": cfg.header()}
    try:
        cfg.check()
        body = COMMANDS[cfg.command](cfg)
        return 0, render({**head, "status": "ok", "report": body}, cfg.format)
    except (Refused, CurveParseError, HypothesisError) as e:
        return 2, render({**head, "status": "refused", "reason": str(e)}, cfg.format)
    except FileNotFoundError as e:
        return 2, render({**head, "status": "refused", "reason": f"missing file: {e.filename}"}, cfg.format)
    except Exception as e:  # noqa: BLE001
        return 1, render({**head, "status": "error", "reason": f"{type(e).__name__}: {e}"}, cfg.format)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    (sys.stdout if code == 0 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
