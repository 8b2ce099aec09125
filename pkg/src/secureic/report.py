"""Analysis report: one structured document, with the text form rendered from it."""

from __future__ import annotations

import json
from fractions import Fraction

from .bounds import analyze_bounds
from .gpartition import g_partition
from .problem import Problem, fmt_set, problem_to_dict
from .rates import MAX_N_FLPCC, MAX_N_OUTER, flpcc_symmetric, polymatroidal_outer_symmetric, sflpcc_symmetric


SHOW_MEMBERS = 8


def q(x: Fraction | int | None) -> str | None:
    """Render an exact rational as ``p/q`` (integers stay bare)."""
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def declare_csym(inner: Fraction | None, outer: Fraction | None, beta_smais: int) -> tuple[Fraction | None, str | None]:
    if inner is None:
        return None, None
    if outer is not None and inner == outer:
        return inner, "inner bound meets polymatroidal outer bound"
    if beta_smais and inner == Fraction(1, beta_smais):
        return inner, "inner bound meets 1/beta_S-MAIS"
    return None, None


def analyze(p: Problem, outer: bool = True, witness_limit: int = 64) -> dict:
    part = g_partition(p)
    bounds = analyze_bounds(p, witness_limit=witness_limit)
    doc: dict = {"problem": problem_to_dict(p)}
    doc["g_partition"] = {
        "gamma": part.gamma,
        "g_subsets": [[fmt_set(S) for S in cls] for cls in part.classes],
        "remaining_size": len(part.remaining),
    }
    res = bounds.smais
    doc["beta_mais"] = bounds.beta_mais
    doc["beta_smais"] = bounds.beta_smais
    doc["rho"] = {str(k + 1): v for k, v in enumerate(res.state.rho)}
    doc["rho_capped"] = res.hit_cap
    doc["smais_trace"] = [u.to_dict() for u in res.trace]
    doc["theorem3"] = bounds.theorem3.to_dict()
    doc["theorem5"] = bounds.theorem5.to_dict()

    inner = None
    for key, fn in (("flpcc", flpcc_symmetric), ("sflpcc", sflpcc_symmetric)):
        if p.n > MAX_N_FLPCC:
            doc[key] = {"skipped": f"n > {MAX_N_FLPCC}"}
            continue
        sol = fn(p)
        doc[key] = sol.to_dict()
        if key == "sflpcc":
            inner = sol.R
    outer_R = None
    if not outer:
        doc["outer"] = {"skipped": "disabled"}
    elif p.n > MAX_N_OUTER:
        doc["outer"] = {"skipped": f"n > {MAX_N_OUTER}"}
    else:
        ob = polymatroidal_outer_symmetric(p)
        outer_R = ob.R
        doc["outer"] = {"R": q(ob.R), "beta_lower": q(ob.broadcast_lower), "lp_shape": list(ob.lp_shape)}
    csym, why = declare_csym(inner, outer_R, bounds.beta_smais)
    doc["csym"] = {"value": q(csym), "reason": why} if csym is not None else None
    doc["status"] = "infeasible" if bounds.infeasible else "analyzed"
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_text(doc: dict) -> str:
    """Human-readable form of an :func:`analyze` document."""
    pr = doc["problem"]
    out = [f"problem: n={pr['n']}"]
    for i, (A, P) in enumerate(zip(pr["A"], pr["P"]), 1):
        out.append(f"  receiver {i}: A={fmt_list(A)} P={fmt_list(P)}")
    gp = doc["g_partition"]
    out.append(f"g-partition: gamma={gp['gamma']}, remaining class size {gp['remaining_size']}")
    for k, cls in enumerate(gp["g_subsets"], 1):
        shown = ", ".join(cls[:SHOW_MEMBERS])
        more = f", ... ({len(cls)} sets)" if len(cls) > SHOW_MEMBERS else ""
        out.append(f"  N{k} (rho={doc['rho'][str(k)]}): {shown}{more}")
    out.append(f"beta_MAIS = {doc['beta_mais']}")
    cap = " (capped)" if doc["rho_capped"] else ""
    out.append(f"beta_S-MAIS = {doc['beta_smais']}{cap} after {len(doc['smais_trace'])} update(s)")
    for key in ("theorem3", "theorem5"):
        v = doc[key]
        line = f"theorem {v['theorem']}: {v['status']}"
        w = v["witness"]
        if w and v["theorem"] == 3:
            line += f" (N{w['class']}: {w['S_prime']} + {{{w['i']}}} within {w['S']}, {w['S_prime']} within B_{w['i']})"
        elif w:
            line += f" (N{w['class']}: rho={w['rho']} > |{w['S']}|={w['min_size']})"
        if len(v["witnesses"]) > 1:
            line += f"; {len(v['witnesses'])} witnesses"
        out.append(line)
    for key, label in (("flpcc", "FLPCC"), ("sflpcc", "S-FLPCC")):
        v = doc[key]
        if "skipped" in v:
            out.append(f"{label} symmetric rate: skipped ({v['skipped']})")
            continue
        support = ", ".join(f"{J}:{w}" for J, w in v["lambda"].items())
        out.append(f"{label} symmetric rate = {v['R']}" + (f"  lambda {support}" if support else ""))
    v = doc["outer"]
    if "skipped" in v:
        out.append(f"polymatroidal outer bound: skipped ({v['skipped']})")
    else:
        out.append(f"polymatroidal outer bound: R <= {v['R']}")
    if doc["csym"]:
        out.append(f"C_sym = {doc['csym']['value']} ({doc['csym']['reason']})")
    out.append(f"status: {doc['status']}")
    return "\n".join(out) + "\n"


def fmt_list(xs) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"
