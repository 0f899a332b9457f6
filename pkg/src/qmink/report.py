"""Report assembly: plain dicts of strings and booleans, rendered as JSON or
markdown.  Everything is ordered so that identical inputs give identical bytes.
"""

from __future__ import annotations

import json

from .lorentz import (
    LorentzCase, ansatz_constraints, case_checks, perturbation_sensitivity,
)
from .matalg import identity, perm, inverse, symbolic_rank
from .minkowski import (
    braided_addition_check, covariance_check, covariant_vector,
    grassmann_guard, hecke_degenerate_r4, hecke_rearrangement, length_report, metric_report,
    quantum_trace_time, reference_relations, reflection_relations, specialization_oracle,
    star_stable,
)
from .ncalg import orient
from .qgroup import (
    centrality, epsilon, epsilon_inverse_identity, dq_from_trace_formula, frt_gens,
    frt_relations, hecke_residual, qdet_via_projector, r_h, r_q, spectral, ybe,
)

CHECKS = (
    "lorentz", "relations", "length", "length-central", "trace-central", "grassmann", "star",
    "metric", "braided", "covariance", "degenerate-r4", "oracle",
)


def r_matrix(deformation: str):
    return r_h() if deformation == "h" else r_q()


# ---------------------------------------------------------------------------
# R-matrix level
# ---------------------------------------------------------------------------

def ybe_report(r, label: str) -> dict:
    return {"check": "ybe", "matrix": label, "r": r.to_strings(), "pass": ybe(r)}


def hecke_report(deformation: str) -> dict:
    sp = spectral(deformation)
    r = r_matrix(deformation)
    out = {
        "check": "hecke",
        "deformation": deformation,
        "eigenvalues": [str(e) for e in sp.eigenvalues],
        "quadratic": hecke_residual(r, sp.eigenvalues).is_zero(),
        "rearrangement": hecke_rearrangement(deformation),
    }
    if deformation == "h":
        p = perm()
        out["triangular"] = r * (p * r * p) == identity(4)
    out["pass"] = all(v for k, v in out.items() if isinstance(v, bool))
    return out


def projector_report(deformation: str) -> dict:
    sp = spectral(deformation)
    plus, minus = sp.plus, sp.minus
    zero = identity(4) * 0
    out = {
        "check": "projectors",
        "deformation": deformation,
        "p_minus": minus.to_strings(),
        "idempotent": plus * plus == plus and minus * minus == minus,
        "orthogonal": plus * minus == zero and minus * plus == zero,
        "complete": plus + minus == identity(4),
        "ranks": [symbolic_rank(plus), symbolic_rank(minus)],
    }
    out["pass"] = out["idempotent"] and out["orthogonal"] and out["complete"] and out["ranks"] == [3, 1]
    return out


def frt_report(deformation: str) -> dict:
    r = r_matrix(deformation)
    alg = frt_relations(r, frt_gens(deformation), f"frt-{deformation}")
    det = qdet_via_projector(r, spectral(deformation).minus, alg)
    central, witnesses = centrality(det, alg)
    sl_ok, sl = epsilon_inverse_identity(deformation, alg, det)
    d_trace = dq_from_trace_formula(r, spectral(deformation).rho)
    eps = epsilon(deformation)
    d_eps = -(eps * inverse(eps).transpose())
    out = {
        "check": "frt",
        "deformation": deformation,
        "order": list(alg.gens.names),
        "relations": [str(p) for p in alg.rewrite.relations()],
        "confluent": alg.confluent,
        "det": str(det),
        "det_central": central,
        "epsilon_inverse": sl_ok,
        "sl_confluent": sl.confluent,
        "d_matrix": d_trace.to_strings(),
        "d_from_epsilon": d_trace == d_eps,
    }
    out["pass"] = all(out[k] for k in ("confluent", "det_central", "epsilon_inverse", "sl_confluent", "d_from_epsilon"))
    return out


# ---------------------------------------------------------------------------
# Lorentz level
# ---------------------------------------------------------------------------

def lorentz_report(case: LorentzCase) -> dict:
    checks = case_checks(case)
    pert = perturbation_sensitivity(case)
    return {
        "case": case.id,
        "family": case.family,
        "mode": case.mode,
        "sign": case.sign,
        "assumptions": case.assumptions(),
        "r1": case.r1().to_strings(),
        "r3": case.r3().to_strings(),
        "checks": checks,
        "perturbations": pert,
        "pass": all(checks.values()) and all(pert.values()),
    }


def constraints_report(deformation: str) -> dict:
    rep = ansatz_constraints(deformation)
    return {
        "deformation": deformation,
        "constraints": [{"label": label, "poly": str(c)} for label, c in rep.constraints if c],
        "implied": rep.implied,
        "catalog": rep.catalog,
        "perturbations": rep.perturbations,
        "pass": (all(i["verified"] for i in rep.implied)
                 and not any(rep.catalog.values())
                 and all(all(p.values()) for p in rep.perturbations.values())),
    }


# ---------------------------------------------------------------------------
# Minkowski level
# ---------------------------------------------------------------------------

def _paired_relations(m) -> list[dict]:
    cmp = m.comparison
    ref = dict(orient(reference_relations(m.case, m.gens), m.gens).rule_items())
    out = []
    for w, rhs in m.rewrite.rule_items():
        lhs = m.gens.word_str(w)
        other = ref.get(w)
        out.append({
            "derived": f"{lhs} = {rhs}",
            "reference": None if other is None else f"{lhs} = {other}",
            "match": other is not None and other == rhs,
        })
    if not cmp["exact"]:
        out.append({"derived": None, "reference": cmp["reference_not_derived"], "match": False})
    return out


def minkowski_report(case: LorentzCase, checks=CHECKS, samples: int = 3, seed: int = 7) -> dict:
    """Derivation summary plus the selected check verdicts for one case."""
    checks = tuple(c for c in CHECKS if c in checks)
    m = reflection_relations(case)
    out = {
        "case": case.id,
        "family": case.family,
        "sign": case.sign,
        "assumptions": case.assumptions(),
        "order": list(m.gens.names),
        "relations": _paired_relations(m),
    }
    verdicts = {}
    lr = length_report(m)
    out["length"] = {k: lr[k] for k in ("derived", "reference", "scalar")}
    t, t_central, t_wit = quantum_trace_time(m)
    out["trace"] = {"poly": str(t), "central": t_central,
                    "witnesses": {k: str(v) for k, v in sorted(t_wit.items())}}
    mr = metric_report(m)
    out["metric"] = mr["g"]
    out["covariant_vector"] = covariant_vector(m).to_strings()
    verdicts["confluent"] = m.algebra.confluent
    for name in checks:
        if name == "lorentz":
            verdicts.update(case_checks(case))
        elif name == "relations":
            verdicts["relations_exact"] = m.comparison["exact"]
            verdicts["relations_ideal_equal"] = m.comparison["ideal_equal"]
        elif name == "length":
            verdicts["length_matches"] = lr["matches"]
        elif name == "length-central":
            verdicts["length_central"] = lr["central"]
        elif name == "trace-central":
            verdicts["trace_central"] = t_central
        elif name == "grassmann":
            verdicts["grassmann"] = grassmann_guard(m)
        elif name == "star":
            verdicts["star_stable"] = star_stable(m)
        elif name == "metric":
            verdicts["metric_contraction"] = mr["contraction"]
            verdicts["metric_trace_form"] = mr["trace_form"]
        elif name == "braided":
            verdicts["braided_addition"] = braided_addition_check(case)["holds"]
        elif name == "covariance":
            cv = covariance_check(case)
            verdicts["covariance"] = cv["holds"]
            verdicts["length_transforms"] = cv["length_rule"]
        elif name == "degenerate-r4" and case.deformation == "q":
            verdicts["degenerate_r4"] = hecke_degenerate_r4(case)["equal"]
        elif name == "oracle":
            verdicts["specialization_oracle"] = specialization_oracle(case, samples, seed)["agree"]
    out["checks"] = verdicts
    return out


def failing(report: dict, expected: dict | None = None) -> list[str]:
    """Names of checks whose verdict differs from ``expected`` (default: True)."""
    expected = expected or {}
    return [k for k, v in report.get("checks", {}).items() if v != expected.get(k, True)]


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _md_value(v) -> str:
    if isinstance(v, bool):
        return "pass" if v else "FAIL"
    if isinstance(v, list) and v and isinstance(v[0], list):
        return "<br>".join("[" + ", ".join(map(str, row)) + "]" for row in v)
    if isinstance(v, (list, tuple)):
        return "<br>".join(_md_value(x) if isinstance(x, dict) else str(x) for x in v) or "-"
    if isinstance(v, dict):
        return "; ".join(f"{k}: {_md_value(x)}" for k, x in sorted(v.items())) or "-"
    return "-" if v is None else str(v)


def to_markdown(obj, title: str = "qmink report") -> str:
    items = obj if isinstance(obj, list) else [obj]
    lines = [f"# {title}", ""]
    for item in items:
        head = item.get("case") or item.get("check") or item.get("deformation") or "result"
        lines += [f"## {head}", "", "| key | value |", "| --- | --- |"]
        for k in sorted(item):
            lines.append(f"| {k} | {_md_value(item[k]).replace('|', '/')} |")
        lines.append("")
    return "\n".join(lines)
