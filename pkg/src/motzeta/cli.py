"""``motzeta`` command line.

Exit codes: 0 when every requested check passes, 1 on a mathematical
failure (with a counterexample dump), 2 on bad usage or an invalid dataset.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jets
from .checks import DEFAULT_ORDER, run_checks
from .errors import DatasetError, MotzetaError
from .resolution import blowup, load_resolution, resolution_to_dict
from .render import (
    crosscheck_table,
    crosscheck_to_json,
    gr_to_json,
    jetcounts_table,
    jetcounts_to_json,
    render,
    series_latex,
    series_to_json,
    terms_text,
)
from .zeta import (
    gelfand_leray_orders,
    motivic_volume,
    nearby_cycles,
    serre_invariant,
    serre_series,
    specialize_topological,
    volume_series,
    volume_terms,
    zeta_equivariant,
    zeta_naive,
    zeta_terms,
)

DEFAULT_PRIMES = (3, 5)


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _mu(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        try:
            out[int(key)] = int(val)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected id=value pairs, got {part!r}") from None
        if not sep:
            raise argparse.ArgumentTypeError(f"expected id=value pairs, got {part!r}")
    return out


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _prime(text: str) -> int:
    v = _positive(text)
    if not jets.is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not a prime")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motzeta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, dataset=True):
        if dataset:
            sp.add_argument("dataset", help="dataset JSON path or bundled name (smooth, xy, xsq, cusp)")
        sp.add_argument("--format", choices=("text", "latex", "json"), default="text")
        sp.add_argument("--order", "--D", dest="order", type=_positive, default=DEFAULT_ORDER,
                        help="expansion order D (default %(default)s)")

    sp = sub.add_parser("zeta", help="motivic zeta function Z(f;T)")
    common(sp)
    flavor = sp.add_mutually_exclusive_group()
    flavor.add_argument("--equivariant", dest="naive", action="store_false", default=False)
    flavor.add_argument("--naive", dest="naive", action="store_true")

    sp = sub.add_parser("volume", help="volume Poincare series S(X, omega; T)")
    common(sp)
    sp.add_argument("--mu", type=_mu, default=None, help="gauge-form orders id=val,... (default xi-N)")

    sp = sub.add_parser("serre", help="Serre invariants and Serre Poincare series (mod L-1)")
    common(sp)

    sp = sub.add_parser("nearby", help="motivic nearby cycles and motivic volume")
    common(sp)

    sp = sub.add_parser("blowup", help="blow up a stratum E_J and print the new dataset")
    common(sp)
    sp.add_argument("--center", type=_int_list, required=True)

    sp = sub.add_parser("check", help="run the invariant suite on a dataset")
    common(sp)

    sp = sub.add_parser("jets", help="count contact loci over F_q by enumeration")
    common(sp, dataset=False)
    sp.add_argument("--f", required=True, help="polynomial in x1..xk (aliases x, y, z)")
    sp.add_argument("--q", type=_prime, action="append")
    sp.add_argument("--d", type=_positive, action="append", help="degree(s); default 1..--order")
    sp.add_argument("--nvars", type=_positive, default=None)
    sp.add_argument("--guard", type=_positive, default=jets.DEFAULT_GUARD)

    sp = sub.add_parser("crosscheck", help="compare jet counts with the specialized series")
    common(sp, dataset=False)
    sp.add_argument("--res", required=True, help="dataset JSON path or bundled name")
    sp.add_argument("--f", required=True)
    sp.add_argument("--q", type=_prime, action="append")
    sp.add_argument("--guard", type=_positive, default=jets.DEFAULT_GUARD)
    return p


def _emit(out: list[str], fmt: str, payload) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=False)
    return "\n".join(out)


def _coefficients_text(coeffs) -> list[str]:
    return [f"  T^{d}: {c}" for d, c in enumerate(coeffs) if d and c]


def _series_block(title, series, terms, order, fmt):
    if fmt == "latex":
        return [series_latex(series)], None
    coeffs = series.expand(order)
    lines = [f"{title} =", "  " + terms_text(terms), f"normalized: {series}", f"coefficients up to T^{order}:"]
    lines += _coefficients_text(coeffs)
    payload = series_to_json(series)
    payload["coefficients"] = [str(c) for c in coeffs]
    return lines, payload


def cmd_zeta(args):
    res = load_resolution(args.dataset)
    if args.naive:
        series, terms, title = zeta_naive(res), zeta_terms(res, naive=True), "Z^naive(f;T)"
    else:
        series, terms, title = zeta_equivariant(res), zeta_terms(res), "Z(f;T)"
    lines, payload = _series_block(title, series, terms, args.order, args.format)
    return 0, _emit(lines, args.format, payload)


def cmd_volume(args):
    res = load_resolution(args.dataset)
    mu = args.mu if args.mu is not None else gelfand_leray_orders(res)
    series = volume_series(res, mu)
    lines, payload = _series_block("S(X,omega;T)", series, volume_terms(res, mu), args.order, args.format)
    if payload is not None:
        payload["mu"] = {str(k): v for k, v in sorted(mu.items())}
    return 0, _emit(lines, args.format, payload)


def cmd_serre(args):
    res = load_resolution(args.dataset)
    series = serre_series(res)
    invariants = [(d, serre_invariant(res, d)) for d in range(1, args.order + 1)]
    if args.format == "latex":
        return 0, series_latex(series)
    lines = [f"S(X;T) mod (L-1) = {series}"] + [f"  S(X({d})) = {v}" for d, v in invariants]
    payload = {"series": series_to_json(series), "invariants": {str(d): str(v) for d, v in invariants}}
    return 0, _emit(lines, args.format, payload)


def cmd_nearby(args):
    res = load_resolution(args.dataset)
    sf, vol = nearby_cycles(res), motivic_volume(res)
    if args.format == "latex":
        return 0, f"\\mathcal{{S}}_f = {sf.latex()}\n\\mathcal{{S}}_{{X_\\infty}} = {vol.latex()}"
    lines = [f"S_f = {sf}", f"S_X = {vol}"]
    payload = {"nearby_cycles": gr_to_json(sf), "motivic_volume": gr_to_json(vol)}
    if all(s.chi is not None for s in res.strata):
        top = specialize_topological(res)
        lines.append(f"Z_top(s) = {top}   [{top.origin}]")
        lines.append("candidate poles: " + ", ".join(str(p) for p in sorted(set(top.candidate_poles))))
        payload["topological_zeta"] = {"terms": str(top), "origin": top.origin,
                                       "candidate_poles": [str(p) for p in top.candidate_poles],
                                       "value_at_0": str(top(0))}
    return 0, _emit(lines, args.format, payload)


def cmd_blowup(args):
    res = load_resolution(args.dataset)
    out = blowup(res, args.center)
    data = resolution_to_dict(out)
    if args.format == "json":
        return 0, json.dumps(data, indent=2)
    lines = [f"{out.name}: divisors " + ", ".join(f"E{d.id}(N={d.N}, xi={d.xi})" for d in out.divisors)]
    for s in out.strata:
        lines.append(f"  J={{{','.join(map(str, s.J))}}}  eq: {render(s.eq_class, args.format)}"
                     + ("" if s.naive_class is None else f"  naive: {render(s.naive_class, args.format)}"))
    return 0, "\n".join(lines)


def cmd_check(args):
    res = load_resolution(args.dataset)
    results = run_checks(res, args.order)
    ok = all(r.passed for r in results)
    lines = [f"dataset {res.name} (order {args.order})"] + [str(r) for r in results]
    lines.append("all checks passed" if ok else "CHECK FAILED")
    payload = {"dataset": res.name, "order": args.order, "ok": ok,
               "results": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    return (0 if ok else 1), _emit(lines, args.format, payload)


def cmd_jets(args):
    primes = args.q or list(DEFAULT_PRIMES)
    degrees = args.d or list(range(1, args.order + 1))
    rows = []
    for q in primes:
        for d in degrees:
            rows.append(jets.count_contact_loci(args.f, q, d, n_vars=args.nvars, guard=args.guard))
    if args.format == "json":
        return 0, json.dumps([jetcounts_to_json(r) for r in rows], indent=2)
    if args.format == "latex":
        return 0, "\n".join(render(r, "latex") for r in rows)
    return 0, jetcounts_table(rows)


def cmd_crosscheck(args):
    res = load_resolution(args.res)
    primes = args.q or list(DEFAULT_PRIMES)
    reports = [jets.crosscheck_series(res, args.f, q, args.order, guard=args.guard) for q in primes]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        text = json.dumps({"dataset": res.name, "f": args.f, "ok": ok,
                           "reports": [crosscheck_to_json(r) for r in reports]}, indent=2)
    else:
        blocks = [crosscheck_table(r) for r in reports]
        for r in reports:
            bad = r.first_failure()
            if bad is not None:
                blocks.append(f"counterexample: dataset {res.name}, q={r.q}, d={bad.d}: "
                              f"#X_d={bad.count_Xd} vs {bad.expected_Xd}, #X_d,1={bad.count_Xd1} vs {bad.expected_Xd1}")
        text = "\n\n".join(blocks)
    return (0 if ok else 1), text


COMMANDS = {
    "zeta": cmd_zeta, "volume": cmd_volume, "serre": cmd_serre, "nearby": cmd_nearby,
    "blowup": cmd_blowup, "check": cmd_check, "jets": cmd_jets, "crosscheck": cmd_crosscheck,
}


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv`` and run one command; returns ``(exit_code, output)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        return COMMANDS[args.verb](args)
    except DatasetError as exc:
        lines = [f"error: {exc}"] + [f"  {d}" for d in exc.diagnostics]
        return 2, "\n".join(lines)
    except MotzetaError as exc:
        return 2, f"error: {exc}"


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        stream = sys.stdout if code != 2 else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
