"""Machine-readable report documents.

Every value is a JSON scalar, list or dict with string keys, so a report
survives ``json.loads`` / :func:`dumps` unchanged.
"""

from __future__ import annotations

import json

from .builders import InputDocument
from .fusion import (
    FusionSum,
    FusionTable,
    QDim,
    RingReport,
    compute_R_sigma,
    global_dimension,
    qdim,
    twisted_qdim_square,
)
from .identifiers import format_label
from .lattice import fixed_discriminant_count
from .modules import ModuleLabel, Orbifold, build_orbifold


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_orbifold(doc: InputDocument) -> Orbifold:
    return build_orbifold([list(r) for r in doc.gram], [list(r) for r in doc.sigma], doc.name)


def qdim_entry(orb: Orbifold, x: ModuleLabel) -> dict:
    q = qdim(orb, x)
    return {"qdim": str(q), "square": q.square}


def setting_summary(orb: Orbifold) -> dict:
    s = orb.setting
    r = compute_R_sigma(orb)
    tw = twisted_qdim_square(orb)
    return {
        "name": s.name,
        "rank": s.n,
        "core_index": s.core_index,
        "rank_L_plus": s.L_plus.rank,
        "rank_L_minus": s.L_minus.rank,
        "qbar_over_L": len(s.transversal),
        "discriminant": {
            "Qbar": list(orb.D_Q.invariants),
            "L_plus": list(orb.D_plus.invariants),
            "L_minus": list(orb.D_minus.invariants),
        },
        "fixed_discriminant": fixed_discriminant_count(s),
        "M": list(s.M.invariants),
        "R_sigma": {"orbits": r.orbit_count, "in_M": r.m_count},
        "twisted_qdim": {"qdim": str(QDim(tw)), "square": tw},
        "characters": [c.name for c in orb.characters],
    }


def inventory(orb: Orbifold, mode: str) -> dict:
    classes = orb.equivalence_classes(mode)
    labels = []
    counts = {"type1": 0, "type2": 0, "twisted": 0}
    for c in classes:
        x = c.representative
        counts[x.kind] += 1
        entry = {"id": format_label(orb, x, mode), "kind": x.kind, **qdim_entry(orb, x)}
        if mode == "canonical":
            entry["members"] = len(c.members)
        labels.append(entry)
    out = {"mode": mode, "counts": counts, "total": len(labels), "labels": labels}
    if mode == "canonical":
        out["global_dimension"] = global_dimension(orb, classes)
    return out


def fusion_sum(orb: Orbifold, s: FusionSum, mode: str) -> dict:
    total = s.total_qdim(orb)
    return {
        "rule": s.rule,
        "terms": [{"id": format_label(orb, x, mode), "multiplicity": m} for x, m in s.terms],
        "total_qdim": {str(k): v for k, v in total.items()},
    }


def table_document(table: FusionTable, report: RingReport) -> dict:
    orb, mode = table.orb, table.mode
    ids = [format_label(orb, x, mode) for x in table.objects]
    rows = []
    for (i, j), s in sorted(table.products.items()):
        if i <= j:
            rows.append({"a": ids[i], "b": ids[j], **fusion_sum(orb, s, mode)})
    return {
        "mode": mode,
        "objects": ids,
        "products": rows,
        "verification": {k: {"ok": ok, "detail": d} for k, (ok, d) in report.checks.items()},
        "verified": report.ok,
    }
