"""Text, LaTeX and JSON renderings; JSON output loads back exactly."""

from __future__ import annotations

from typing import Sequence

from .grring import GrElement
from .jets import CrosscheckReport, JetCounts
from .series import RationalSeries, factor_text

FORMATS = ("text", "latex", "json")


def series_to_json(x: RationalSeries) -> dict:
    return {
        "type": "RationalSeries",
        "numerator": [{"T": j, "coeff": str(c)} for j, c in x.numerator.items()],
        "denominator": [{"a": a, "b": b, "e": e} for (a, b), e in x.denominator.items()],
        "normalized": str(x),
    }


def series_from_json(data: dict) -> RationalSeries:
    if data.get("type") != "RationalSeries":
        raise ValueError("not a serialized RationalSeries")
    num = {int(t["T"]): GrElement.parse(t["coeff"]) for t in data["numerator"]}
    den = {(int(f["a"]), int(f["b"])): int(f["e"]) for f in data["denominator"]}
    return RationalSeries(num, den)


def gr_to_json(x: GrElement) -> dict:
    return {"type": "GrElement", "text": str(x)}


def gr_from_json(data: dict) -> GrElement:
    if data.get("type") != "GrElement":
        raise ValueError("not a serialized GrElement")
    return GrElement.parse(data["text"])


def terms_text(terms) -> str:
    """``SUM_J coeff * PROD (L^a T^b)/(1 - L^a T^b)``."""
    out = []
    for t in terms:
        prod = " * ".join(f"({factor_text(a, b)})/(1 - {factor_text(a, b)})" for a, b in t.factors)
        out.append(f"[{t.coeff}] * {prod}")
    return "\n  + ".join(out) if out else "0"


def series_latex(x: RationalSeries) -> str:
    num = []
    for j, c in x.numerator.items():
        body = c.latex()
        if len(c) > 1 or any(not cf.is_monomial() for _, cf in c.items()):
            body = rf"\left({body}\right)"
        mono = "" if j == 0 else ("T" if j == 1 else f"T^{{{j}}}")
        num.append(body + mono)
    numerator = " + ".join(num) or "0"
    if not x.denominator:
        return numerator
    den = []
    for (a, b), e in x.denominator.items():
        L = "" if a == 0 else (r"\mathbb{L}" if a == 1 else rf"\mathbb{{L}}^{{{a}}}")
        T = "T" if b == 1 else f"T^{{{b}}}"
        factor = rf"\left(1 - {L}{T}\right)"
        den.append(factor if e == 1 else f"{factor}^{{{e}}}")
    return rf"\frac{{{numerator}}}{{{' '.join(den)}}}"


def jetcounts_table(rows: Sequence[JetCounts]) -> str:
    lines = [f"{'q':>3} {'d':>3} {'#X_d':>12} {'#X_d,1':>12}  per-order"]
    for c in rows:
        lines.append(f"{c.q:>3} {c.d:>3} {c.count_Xd:>12} {c.count_Xd1:>12}  {dict(c.per_ord)}")
    return "\n".join(lines)


def jetcounts_to_json(c: JetCounts) -> dict:
    return {"type": "JetCounts", "q": c.q, "d": c.d, "count_Xd": c.count_Xd, "count_Xd1": c.count_Xd1,
            "per_ord": {str(k): v for k, v in c.per_ord.items()}, "n_vars": c.n_vars}


def jetcounts_from_json(data: dict) -> JetCounts:
    return JetCounts(data["q"], data["d"], data["count_Xd"], data["count_Xd1"],
                     {int(k): v for k, v in data["per_ord"].items()}, data.get("n_vars", 0))


def crosscheck_table(rep: CrosscheckReport) -> str:
    lines = [f"q = {rep.q}",
             f"{'d':>3} {'#X_d':>12} {'expected':>12} {'#X_d,1':>12} {'expected':>12}  status"]
    for r in rep.rows:
        exp1 = "-" if r.expected_Xd1 is None else str(r.expected_Xd1)
        ok = r.naive_ok and r.equivariant_ok is not False
        lines.append(f"{r.d:>3} {r.count_Xd:>12} {str(r.expected_Xd):>12} {r.count_Xd1:>12} {exp1:>12}  "
                     f"{'ok' if ok else 'MISMATCH'}")
    if rep.skipped_equivariant:
        lines.append("equivariant column skipped: no point counts for " + ", ".join(rep.skipped_equivariant))
    return "\n".join(lines)


def crosscheck_to_json(rep: CrosscheckReport) -> dict:
    return {
        "type": "Crosscheck", "q": rep.q, "ok": rep.ok,
        "skipped_equivariant": list(rep.skipped_equivariant),
        "rows": [{"d": r.d, "count_Xd": r.count_Xd, "expected_Xd": str(r.expected_Xd),
                  "count_Xd1": r.count_Xd1,
                  "expected_Xd1": None if r.expected_Xd1 is None else str(r.expected_Xd1)}
                 for r in rep.rows],
    }


def render(value, fmt: str = "text"):
    """Render a ring element, series or jet counts; ``json`` returns a dict."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    if isinstance(value, GrElement):
        return {"text": str, "latex": GrElement.latex, "json": gr_to_json}[fmt](value)
    if isinstance(value, RationalSeries):
        return {"text": str, "latex": series_latex, "json": series_to_json}[fmt](value)
    if isinstance(value, JetCounts):
        if fmt == "json":
            return jetcounts_to_json(value)
        if fmt == "latex":
            return (r"\begin{tabular}{rrrr} $q$ & $d$ & $\#X_d$ & $\#X_{d,1}$ \\ "
                    f"{value.q} & {value.d} & {value.count_Xd} & {value.count_Xd1} \\\\ \\end{{tabular}}")
        return jetcounts_table([value])
    raise TypeError(f"cannot render {type(value).__name__}")
