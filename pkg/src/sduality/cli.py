"""Command-line front end.

    sduality <check|delta|gram|invariants|verify|oracle> --input FILE
             [--field rational|fp:P] [--order grevlex|lex] [--json]
             [--seed N] [--trials N] [--tolerance X]

Exit codes: 0 success, 1 input error, 2 hypothesis violation,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .algebra import HypothesisError, QuotientAlgebra, build_algebra
from .duality import (
    DualityData,
    DualityFailure,
    compute_duality,
    structural_checks,
    theta_linearity_check,
    verify_ideal_identities,
)
from .forms import CharacteristicTwoError, degree_summary, invariants
from .oracle import OracleUnavailable, compare_eta, is_etale, perturb
from .polyring import ParseError, format_poly
from .scalar import FieldError, field_from_descriptor

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_VERIFY = 3

COMMANDS = ("check", "delta", "gram", "invariants", "verify", "oracle")


class InputError(Exception):
    pass


def _schema(name: str) -> dict:
    return json.loads(resources.files("sduality").joinpath("schemas", name).read_text(encoding="utf-8"))


@dataclass
class SystemSpec:
    field: str
    vars: list
    polys: list
    order: str = "grevlex"
    seed: int | None = None
    tolerance: float | None = None
    trials: int | None = None

    def as_dict(self) -> dict:
        return {"field": self.field, "vars": list(self.vars), "polys": list(self.polys), "order": self.order}


def _parse_text_spec(text: str) -> dict:
    """``key: value`` header lines, then one polynomial per line; ``#`` comments."""
    data: dict = {"polys": []}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line and not data["polys"]:
            key, _, value = line.partition(":")
            key, value = key.strip().lower(), value.strip()
            if key == "field" and value.isdigit():
                # "field: fp:7" splits on the first colon only
                value = f"fp:{value}"
            if key == "vars":
                data["vars"] = [v.strip() for v in value.replace(",", " ").split()]
            elif key in ("seed", "trials"):
                data[key] = int(value)
            elif key == "tolerance":
                data[key] = float(value)
            else:
                data[key] = value
        else:
            data["polys"].append(line)
    return data


def load_spec(path: str) -> SystemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if path.endswith(".json") or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {path}: {exc}") from exc
    else:
        data = _parse_text_spec(text)
    try:
        jsonschema.validate(data, _schema("system_spec.schema.json"))
    except jsonschema.ValidationError as exc:
        raise InputError(f"invalid system spec: {exc.message}") from exc
    return SystemSpec(
        field=data.get("field", "rational"),
        vars=data["vars"],
        polys=data["polys"],
        order=data.get("order", "grevlex"),
        seed=data.get("seed"),
        tolerance=data.get("tolerance"),
        trials=data.get("trials"),
    )


def _fmt(F, x) -> str:
    return F.format(x)


def _algebra_section(B: QuotientAlgebra) -> dict:
    return {
        "dim": B.dim,
        "basis": B.basis_labels(),
        "groebner_basis": [format_poly(g) for g in B.gb.generators],
    }


def _delta_section(D: DualityData) -> list:
    F = D.algebra.field
    return [{"left": a, "right": b, "coeff": _fmt(F, c)} for a, b, c in D.delta.terms()]


def _oracle_section(B: QuotientAlgebra, D: DualityData, tolerance: float, seed: int,
                    allow_perturb: bool = False) -> tuple[dict, bool]:
    """Returns (section, passed).  Skips count as passing."""
    if not B.field.is_rational:
        return {"status": "skipped", "reason": "numeric oracle needs the rational field"}, True
    target, target_D, eps = B, D, None
    if not is_etale(B):
        if not allow_perturb:
            return {"status": "skipped", "reason": "not etale",
                    "suggestion": "rerun `oracle --perturb` to check a nearby etale system"}, True
        target, eps = perturb(B, seed)
        target_D = compute_duality(target)
    try:
        rep, details = compare_eta(target, target_D, tolerance=tolerance, seed=seed)
    except OracleUnavailable as exc:
        return {"status": "unavailable", "reason": str(exc)}, False
    section = {
        "status": "passed" if rep.passed else "failed",
        "checks": rep.as_list(),
        "zeros": details["zeros"],
        "max_deviation": details["max_deviation"],
        "max_residual": details["max_residual"],
        "tolerance": tolerance,
    }
    if eps is not None:
        section["perturbation"] = [str(e) for e in eps]
        section["perturbed_eta"] = [str(c) for c in target_D.eta.coords]
    return section, rep.passed


def run(command: str, spec: SystemSpec, *, seed: int, trials: int, tolerance: float,
        perturb_oracle: bool = False, timing: bool = False) -> tuple[dict, int]:
    F = field_from_descriptor(spec.field)
    clock = {}
    t0 = time.perf_counter()
    B = build_algebra(spec.vars, spec.polys, F, spec.order)
    clock["build"] = time.perf_counter() - t0
    report: dict = {"command": command, "input": spec.as_dict(), "algebra": _algebra_section(B)}
    status = EXIT_OK
    if command in ("verify", "oracle"):
        report["seed"] = seed
    if command != "check":
        t0 = time.perf_counter()
        D = compute_duality(B)
        clock["duality"] = time.perf_counter() - t0
        if command in ("delta", "verify"):
            report["delta"] = _delta_section(D)
        if command in ("gram", "invariants", "verify"):
            report["eta"] = [_fmt(F, c) for c in D.eta.coords]
            report["gram"] = [[_fmt(F, x) for x in row] for row in D.gram.matrix]
        if command == "invariants" or (command == "verify" and F.characteristic != 2):
            inv = invariants(D.gram)
            report["invariants"] = inv.as_dict()
            if F.is_rational:
                report["degree"] = degree_summary(inv)
        if command == "verify":
            t0 = time.perf_counter()
            structural = structural_checks(D)
            ideals = verify_ideal_identities(B, D.lifting, trials, seed)
            lin = theta_linearity_check(D, max(trials, 1), seed)
            clock["identities"] = time.perf_counter() - t0
            t0 = time.perf_counter()
            oracle, oracle_ok = _oracle_section(B, D, tolerance, seed)
            clock["oracle"] = time.perf_counter() - t0
            report["verification"] = {
                "structural": structural.as_list(),
                "ideals": ideals.as_list(),
                "linearity": lin.as_list(),
                "oracle": oracle,
            }
            passed = structural.passed and ideals.passed and lin.passed and oracle_ok
            report["passed"] = passed
            status = EXIT_OK if passed else EXIT_VERIFY
        if command == "oracle":
            t0 = time.perf_counter()
            oracle, oracle_ok = _oracle_section(B, D, tolerance, seed, allow_perturb=perturb_oracle)
            clock["oracle"] = time.perf_counter() - t0
            report["oracle"] = oracle
            report["passed"] = oracle_ok
            status = EXIT_OK if oracle_ok else EXIT_VERIFY
    if timing:
        report["timing"] = {k: round(v, 6) for k, v in clock.items()}
    jsonschema.validate(report, _schema("run_report.schema.json"))
    return report, status


def render_text(report: dict) -> str:
    out = []
    inp = report["input"]
    out.append(f"system: ({', '.join(inp['polys'])}) in {inp['field']}[{', '.join(inp['vars'])}], order {inp['order']}")
    alg = report["algebra"]
    out.append(f"dim B = {alg['dim']}")
    out.append(f"basis: {', '.join(alg['basis'])}")
    if "delta" in report:
        text = ""
        for t in report["delta"]:
            c = t["coeff"]
            sign, mag = ("-", c[1:]) if c.startswith("-") else ("+", c)
            body = f"{t['left']}(x){t['right']}" if mag == "1" else f"{mag}*{t['left']}(x){t['right']}"
            text = (f"-{body}" if sign == "-" else body) if not text else f"{text} {sign} {body}"
        out.append("delta = " + (text or "0"))
    if "eta" in report:
        out.append("eta on basis: (" + ", ".join(report["eta"]) + ")")
    if "gram" in report:
        out.append("gram:")
        width = max(len(x) for row in report["gram"] for x in row)
        for row in report["gram"]:
            out.append("  [" + " ".join(x.rjust(width) for x in row) + "]")
    if "invariants" in report:
        inv = report["invariants"]
        sig = "n/a" if inv["signature"] is None else inv["signature"]
        out.append(f"rank {inv['rank']}, signature {sig}, determinant {inv['determinant']}, "
                   f"discriminant class {inv['discriminant_class']}"
                   + ("" if inv["discriminant_complete"] else " (factorisation incomplete)"))
    if "degree" in report:
        deg = report["degree"]
        out.append(f"global degree: complex {deg['complex_degree']}, real {deg['real_degree']}")
    ver = report.get("verification")
    if ver:
        for section in ("structural", "ideals", "linearity"):
            for c in ver[section]:
                mark = "PASS" if c["passed"] else "FAIL"
                out.append(f"  [{mark}] {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
    oracle = (ver or {}).get("oracle") or report.get("oracle")
    if oracle:
        line = f"oracle: {oracle['status']}"
        if "reason" in oracle:
            line += f" ({oracle['reason']})"
        if "max_deviation" in oracle:
            line += f", max deviation {oracle['max_deviation']:.3e} over {oracle['zeros']} zeros"
        if "perturbation" in oracle:
            line += f" of the system shifted by ({', '.join(oracle['perturbation'])})"
        out.append(line)
    if "passed" in report:
        out.append("ALL PASSED" if report["passed"] else "VERIFICATION FAILED")
    if "timing" in report:
        out.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in report["timing"].items()))
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sduality", description="Canonical self-duality of a finite complete intersection.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", required=True, help="JSON or plain-text system file")
    ap.add_argument("--field", help="override the field: rational or fp:P")
    ap.add_argument("--order", choices=("grevlex", "lex"), help="override the monomial order")
    ap.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    ap.add_argument("--seed", type=int, help="seed for randomized checks (fallback: $SDUALITY_SEED, then 0)")
    ap.add_argument("--trials", type=int, help="alternate liftings / linearity trials (default 5)")
    ap.add_argument("--tolerance", type=float, help="oracle relative tolerance (default 1e-8)")
    ap.add_argument("--perturb", action="store_true", help="oracle: perturb non-etale systems first")
    ap.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    return ap


def _resolve_seed(flag: int | None, spec: SystemSpec) -> int:
    if flag is not None:
        return flag
    if spec.seed is not None:
        return spec.seed
    env = os.environ.get("SDUALITY_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"SDUALITY_SEED is not an integer: {env!r}") from exc
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.input)
        if args.field:
            spec.field = args.field
        if args.order:
            spec.order = args.order
        seed = _resolve_seed(args.seed, spec)
        trials = args.trials if args.trials is not None else (spec.trials if spec.trials is not None else 5)
        tolerance = args.tolerance if args.tolerance is not None else (spec.tolerance or 1e-8)
        report, status = run(args.command, spec, seed=seed, trials=trials, tolerance=tolerance,
                             perturb_oracle=args.perturb, timing=args.timing)
    except (InputError, ParseError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HypothesisError, CharacteristicTwoError) as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (DualityFailure, OracleUnavailable) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        print(render_text(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
