"""Batch front-end.

Verbs:
    validate  FILE                 check a tower spec and its hypotheses
    count     FILE --levels N      exact kappa_0..kappa_N, factored
    analyze   FILE --p P --levels N   valuation law for one prime
    classify  FILE                omega-growth verdict
    report    FILE --levels N     full machine/human report
    selftest                      recompute the built-in corpus
    sqrt      --radicand D ...    ell-adic square root helper

Exit codes: 0 success, 1 domain failure, 2 usage/parse error.  All big
integers are printed as decimal strings; --json switches to a
machine-readable document whose bytes depend only on the input and the
budget (a timing field aside).  Wall-clock budgets are converted to
fixed iteration budgets so identical inputs give identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .analysis import (
    DisconnectedTowerError,
    InconclusiveError,
    Tower,
    analyze_prime,
    iwasawa_fit_ell,
)
from .factorint import FactoredInteger, factor_kappa, is_probable_prime
from .graphs import DisconnectedGraphError, cover_connected_by_voltages, validate
from .intpoly import UnitRootMissingError, ZeroPolynomialError
from .omega import classify_omega, INAPPLICABLE
from .padics import AmbiguousBranchError, NonResidueError, PrecisionError, padic_sqrt
from .towerspec import SpecParseError, build_assignment, parse_tower_spec
from . import corpus

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

# deterministic budget conversion: 1 ms of budget buys this many rho steps
RHO_ITERATIONS_PER_MS = 500
DEFAULT_BUDGET_MS = 30_000


def _load_spec(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path} is not valid JSON: {exc}") from exc
    return parse_tower_spec(doc)


def _tower_from_file(path, mt_level=None):
    spec = _load_spec(path)
    va = build_assignment(spec)
    return spec, va, Tower(va, mt_check_level=mt_level)


def _fmt_factors(fact: FactoredInteger) -> str:
    return str(fact)


def _factorization_dict(fact: FactoredInteger) -> dict:
    omega, exact = fact.omega()
    return {
        "factors": [[str(p), e] for p, e in fact.factors],
        "cofactor": str(fact.cofactor),
        "complete": fact.complete,
        "omega": omega,
        "omega_is_lower_bound": not exact,
    }


def _print_json(doc) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        spec = _load_spec(args.file)
        va = build_assignment(spec)
    except (SpecParseError, NonResidueError, AmbiguousBranchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = validate(va.graph)
    problems = list(report.problems)
    if report.ok and not cover_connected_by_voltages(va, 1):
        problems.append("cycle voltages do not generate Z/ell: level-1 cover disconnected")
    doc = {
        "ok": not problems,
        "problems": problems,
        "vertices": va.graph.num_vertices,
        "edges": va.graph.num_edges,
        "ell": va.ell,
        "precision": va.precision,
        "integral_voltages": va.is_integral,
    }
    if args.json:
        _print_json(doc)
    else:
        if problems:
            print("INVALID:")
            for p in problems:
                print(f"  - {p}")
        else:
            print(f"OK: {va.graph.num_vertices} vertices, {va.graph.num_edges} edges, "
                  f"ell={va.ell}, precision={va.precision}, "
                  f"{'integral' if va.is_integral else 'ell-adic'} voltages")
    return EXIT_OK if not problems else EXIT_DOMAIN


def _level_rows(tower, levels, budget_ms):
    rho_budget = budget_ms * RHO_ITERATIONS_PER_MS
    per_level = max(rho_budget // (levels + 1), 1)
    rows = []
    for n in range(levels + 1):
        kappa = tower.kappa(n)
        fact = factor_kappa(kappa, rho_iterations=per_level)
        rows.append((n, kappa, fact))
    return rows


def cmd_count(args) -> int:
    try:
        spec, va, tower = _tower_from_file(args.file, args.matrix_tree_max_level)
        rows = _level_rows(tower, args.levels, args.budget_ms)
    except (SpecParseError, NonResidueError, AmbiguousBranchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        doc = {
            "levels": [
                {"n": n, "kappa": str(kappa), **_factorization_dict(fact)}
                for n, kappa, fact in rows
            ]
        }
        _print_json(doc)
    else:
        for n, kappa, fact in rows:
            print(f"kappa_{n} = {kappa} = {_fmt_factors(fact)}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        spec, va, tower = _tower_from_file(args.file, args.matrix_tree_max_level)
    except (SpecParseError, NonResidueError, AmbiguousBranchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    p = args.p
    if not is_probable_prime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    depth = args.levels
    if p == tower.ell:
        # the ell-part follows the three-parameter Iwasawa-type law
        try:
            fit = iwasawa_fit_ell(tower.ord_ell_sequence(depth), tower.ell)
        except PrecisionError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        doc = {
            "p": p, "kind": "ell-part-fit", "found": fit.found,
            "mu": fit.mu, "lambda": fit.lam, "nu": fit.nu, "onset": fit.onset,
            "observed": list(tower.ord_ell_sequence(depth)),
        }
        if args.json:
            _print_json(doc)
        elif fit.found:
            print(f"ord_{p}(kappa_n) = {fit.mu}*{p}^n + {fit.lam}*n + {fit.nu} "
                  f"for n >= {fit.onset} (empirical fit on computed levels)")
        else:
            print(f"no exact three-parameter fit for ord_{p} on the computed levels")
        return EXIT_OK
    try:
        report = analyze_prime(tower, p, depth)
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InconclusiveError as exc:
        print(f"warning: stabilization level inconclusive: {exc}")
        return EXIT_OK
    doc = {
        "p": p,
        "ell": report.ell,
        "mu": report.mu,
        "n0": report.n0,
        "n0_certified": report.certified,
        "nu": report.nu,
        "n1": report.n1,
        "log_bound": report.log_bound,
        "root_levels": list(report.root_levels),
        "observed": list(report.observed),
        "predicted": list(report.predicted),
        "divides_any": report.divides_any,
        "closed_form": report.closed_form(),
    }
    if args.json:
        _print_json(doc)
    else:
        cert = "certified" if report.certified else f"empirical to level {va.precision}"
        print(f"p = {p}: mu = {report.mu}, n0 = {report.n0} ({cert}), nu = {report.nu}")
        if report.n1 is not None:
            print(f"stabilization bounds: n1 = {report.n1}, log bound = {report.log_bound:.3f}")
        form = report.closed_form()
        if form:
            print(form)
        if not report.divides_any:
            print(f"{p} never divides kappa_n"
                  + ("" if report.certified else " (up to the computed levels)"))
        print(" n | observed | predicted")
        for n, (o, q) in enumerate(zip(report.observed, report.predicted)):
            print(f"{n:2d} | {o:8d} | {q:9d}")
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        spec, va, tower = _tower_from_file(args.file)
    except (SpecParseError, NonResidueError, AmbiguousBranchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cls = classify_omega(tower.f)
    doc = {
        "verdict": cls.verdict,
        "unit_root_multiplicity": cls.unit_root_multiplicity,
        "cyclotomic_factors": [list(x) for x in cls.cyclotomic_factors],
        "content": None if cls.content is None else str(cls.content),
        "non_cyclotomic_part": None if cls.non_cyclotomic_part is None
        else [str(c) for c in cls.non_cyclotomic_part.coeffs],
        "content_primes": [str(p) for p in cls.content_primes],
    }
    if args.json:
        _print_json(doc)
    else:
        if cls.verdict == INAPPLICABLE:
            print("inapplicable: voltages are not declared integers, "
                  "the root-of-unity criterion does not apply")
        else:
            print(f"omega(kappa_n) is {cls.verdict} as n grows")
            print(f"U = {cls.content} * (T-1)^{cls.unit_root_multiplicity}"
                  + "".join(f" * Phi_{d}^{m}" if m > 1 else f" * Phi_{d}"
                            for d, m in cls.cyclotomic_factors)
                  + f" * ({cls.non_cyclotomic_part})")
            if cls.content_primes:
                print("content primes:", ", ".join(str(p) for p in cls.content_primes))
    return EXIT_OK


def cmd_report(args) -> int:
    started = time.monotonic()
    try:
        spec, va, tower = _tower_from_file(args.file, args.matrix_tree_max_level)
        rows = _level_rows(tower, args.levels, args.budget_ms)
    except (SpecParseError, NonResidueError, AmbiguousBranchError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    fit = iwasawa_fit_ell(tower.ord_ell_sequence(args.levels), tower.ell) \
        if args.levels >= 3 else None
    cls = classify_omega(tower.f)

    prime_set = set(args.p or [])
    for _, _, fact in rows:
        prime_set.update(p for p, _ in fact.factors)
    prime_set.discard(tower.ell)
    primes_doc = []
    for p in sorted(prime_set):
        try:
            rep = analyze_prime(tower, p, args.levels)
        except InconclusiveError:
            primes_doc.append({"p": p, "inconclusive": True})
            continue
        primes_doc.append({
            "p": p, "mu": rep.mu, "n0": rep.n0, "n0_certified": rep.certified,
            "nu": rep.nu, "n1": rep.n1, "log_bound": rep.log_bound,
            "observed": list(rep.observed), "predicted": list(rep.predicted),
            "divides_any": rep.divides_any, "closed_form": rep.closed_form(),
        })

    doc = {
        "schema": "elltowers.report.v1",
        "tower": spec.to_json_dict(),
        "working_precision": va.precision,
        "integral_voltages": va.is_integral,
        "matrix_tree_checked_to": min(tower.mt_check_level, args.levels),
        "levels": [
            {"n": n, "kappa": str(kappa), "ord_ell": _ord(kappa, tower.ell),
             **_factorization_dict(fact)}
            for n, kappa, fact in rows
        ],
        "ell_fit": None if fit is None else {
            "found": fit.found, "mu": fit.mu, "lambda": fit.lam,
            "nu": fit.nu, "onset": fit.onset,
        },
        "classification": {
            "verdict": cls.verdict,
            "unit_root_multiplicity": cls.unit_root_multiplicity,
            "cyclotomic_factors": [list(x) for x in cls.cyclotomic_factors],
            "content": None if cls.content is None else str(cls.content),
            "non_cyclotomic_part": None if cls.non_cyclotomic_part is None
            else [str(c) for c in cls.non_cyclotomic_part.coeffs],
        },
        "primes": primes_doc,
        "timing_ms": int((time.monotonic() - started) * 1000),
    }
    if args.json:
        _print_json(doc)
    else:
        for n, kappa, fact in rows:
            print(f"kappa_{n} = {kappa} = {_fmt_factors(fact)}")
        if fit is not None and fit.found:
            print(f"ell-part: ord_{tower.ell}(kappa_n) = {fit.mu}*{tower.ell}^n "
                  f"+ {fit.lam}*n + {fit.nu} for n >= {fit.onset}")
        print(f"omega growth: {cls.verdict}")
        for pd in primes_doc:
            if pd.get("inconclusive"):
                print(f"p={pd['p']}: inconclusive")
            else:
                print(f"p={pd['p']}: mu={pd['mu']} n0={pd['n0']} nu={pd['nu']} "
                      f"observed={pd['observed']}")
    return EXIT_OK


def _ord(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def cmd_selftest(args) -> int:
    """Recompute the built-in corpus and compare exactly."""
    budget_s = args.budget_ms / 1000.0
    started = time.monotonic()
    corpus_entries = corpus.CORPUS
    failures = []
    skipped = 0
    for entry in corpus_entries:
        spec = parse_tower_spec(entry.spec)
        va = build_assignment(spec)
        tower = Tower(va)
        for n in range(entry.depth + 1):
            if time.monotonic() - started > budget_s:
                skipped += 1
                print(f"SKIP {entry.name} level {n}+ (budget exhausted)")
                break
            got = tower.kappa(n)
            want = entry.kappa(n)
            if got != want:
                failures.append((entry.name, n, got, want))
                print(f"FAIL {entry.name} kappa_{n}: got {got}, want {want}")
            else:
                print(f"ok   {entry.name} kappa_{n}")
        else:
            # table done; verify fit and verdict too
            if entry.ell_fit is not None:
                fit = iwasawa_fit_ell(tower.ord_ell_sequence(entry.depth), tower.ell)
                got_fit = (fit.mu, fit.lam, fit.nu, fit.onset) if fit.found else None
                if got_fit != entry.ell_fit:
                    failures.append((entry.name, "ell_fit", got_fit, entry.ell_fit))
                    print(f"FAIL {entry.name} ell fit: got {got_fit}, want {entry.ell_fit}")
                else:
                    print(f"ok   {entry.name} ell fit {got_fit}")
            verdict = classify_omega(tower.f).verdict
            if verdict != entry.verdict:
                failures.append((entry.name, "verdict", verdict, entry.verdict))
                print(f"FAIL {entry.name} verdict: got {verdict}, want {entry.verdict}")
            else:
                print(f"ok   {entry.name} verdict {verdict}")
    if skipped:
        print(f"warning: {skipped} corpus item(s) not finished within the budget")
    if failures:
        print(f"selftest: {len(failures)} mismatch(es)")
        return EXIT_DOMAIN
    print("selftest: all computed rows match" + (" (some skipped)" if skipped else ""))
    return EXIT_OK


def cmd_sqrt(args) -> int:
    try:
        root = padic_sqrt(args.radicand, args.ell, args.precision, args.branch)
    except (NonResidueError, AmbiguousBranchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    doc = {
        "radicand": args.radicand,
        "ell": args.ell,
        "precision": args.precision,
        "residue": str(root.residue),
        "digits": root.digits(),
    }
    if args.json:
        _print_json(doc)
    else:
        print(f"sqrt({args.radicand}) = {root} residue {root.residue} "
              f"mod {args.ell}^{args.precision}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="elltowers",
        description="Exact spanning-tree counts and valuation laws in "
                    "abelian ell-towers of multigraphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, levels=False):
        p.add_argument("file", help="tower spec JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--budget-ms", type=int, default=DEFAULT_BUDGET_MS,
                       help="factoring budget (converted to a fixed iteration count)")
        p.add_argument("--matrix-tree-max-level", type=int, default=None,
                       help="deepest level cross-checked by matrix-tree "
                            "(default: 5 for ell=2, 3 for ell=3, else 2)")
        if levels:
            p.add_argument("--levels", type=int, default=3, help="deepest level n")

    p = sub.add_parser("validate", help="check a tower spec")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("count", help="exact kappa table")
    add_common(p, levels=True)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("analyze", help="valuation law for one prime")
    add_common(p, levels=True)
    p.add_argument("--p", type=int, required=True, help="prime (p = ell gives the ell-part fit)")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("classify", help="omega-growth classification")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("report", help="full report")
    add_common(p, levels=True)
    p.add_argument("--p", type=int, action="append",
                   help="extra prime(s) to analyze (repeatable)")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("selftest", help="recompute the built-in corpus")
    p.add_argument("--budget-ms", type=int, default=600_000)
    p.set_defaults(fn=cmd_selftest)

    p = sub.add_parser("sqrt", help="ell-adic square root (for authoring specs)")
    p.add_argument("--radicand", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--precision", type=int, required=True)
    p.add_argument("--branch", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_sqrt)

    return ap


_DOMAIN_ERRORS = (
    DisconnectedGraphError,
    DisconnectedTowerError,
    PrecisionError,
    ZeroPolynomialError,
    UnitRootMissingError,
    ArithmeticError,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_DOMAIN
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
