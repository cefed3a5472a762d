"""End-to-end run: subdivide, build the map, certify every link, cusp classes, fiber."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from ..complexes import corners_by_vertex
from ..cubulation import Cubulation
from ..homology import BoundaryError
from ..game import CoorientationSystem, base_state_string, derive_seed
from ..tessellation import Tessellation, cusp_orbits
from .collapse import certify_contractible, replay
from .cusps import cusp_classes, pattern_check
from .levelset import level_set, primitive_lift
from .links import vertex_link
from .plmap import build_pl_map
from .subdivision import find_bad_families, shared_face_report, subdivide


class InvariantError(RuntimeError):
    """An internal consistency check failed (a bug or corrupted input)."""


def _certify_task(args):
    v, kind, simplices, seed, restarts = args
    res = certify_contractible(simplices, seed=seed, restarts=restarts)
    replayed = None
    if res.status == "certified":
        try:
            replayed = replay(simplices, res.steps)
        except ValueError as exc:
            replayed = str(exc)
    return v, kind, res, replayed


def certify_links(mx, f, seed=0, restarts=64, jobs=1):
    """Certify ascending and descending links at every vertex; rows in vertex order."""
    cx = mx.complex if hasattr(mx, "complex") else f.complex
    corners = corners_by_vertex(cx)
    tasks = []
    links = {}
    for v in cx.by_dim[0]:
        L = vertex_link(cx, f, v, corners[v])
        links[v] = L
        for kind, part in (("ascending", L.ascending()), ("descending", L.descending())):
            tasks.append((v, kind, sorted(part), derive_seed(seed, "link", v, kind), restarts))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_certify_task, tasks, chunksize=max(1, len(tasks) // (jobs * 8))))
    else:
        results = [_certify_task(t) for t in tasks]
    rows = {}
    certificates = []
    for (v, kind, res, replayed), task in zip(results, tasks):
        if res.status == "certified" and replayed is not True:
            raise InvariantError(f"certificate for {kind} link at vertex {v} fails replay: {replayed}")
        row = rows.setdefault(v, {"vertex": v, "key": repr(cx[v].key), "link_vertices": len(links[v].labels)})
        row[kind] = res.status
        row[kind + "_simplices"] = len(task[2])
        row[kind + "_steps"] = len(res.steps) if res.status == "certified" else None
        if res.status != "certified":
            row[kind + "_betti_gf2"] = res.betti_gf2
            row[kind + "_betti_q"] = res.betti_q
        certificates.append({"vertex": v, "kind": kind, "link_vertices": [list(e) for e in links[v].labels],
                             **res.to_dict()})
    return [rows[v] for v in cx.by_dim[0]], certificates


def run_morse(col, partition, base_state, seed=0, restarts=64, jobs=1, center=Fraction(1, 2),
              t=Fraction(1, 4), fiber=True, log=None):
    """The whole pipeline on one configuration. Returns (report, certificates)."""
    def note(msg):
        if log:
            log(msg)

    timings = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round(now - clock, 3)
        clock = now

    tess = Tessellation(col)
    sys = CoorientationSystem(col, partition, base_state)
    cub = Cubulation(tess)
    lap("cubulation")
    note("cubulation built")
    families = find_bad_families(cub, sys)
    mx = subdivide(cub, sys, families)
    shared = shared_face_report(mx)
    if not shared["ok"]:
        raise InvariantError(f"subdivided and untouched cells meet badly: {shared['violations'][:3]}")
    cc = mx.complex.chain_complex()
    try:
        cc.check_gf2()
    except BoundaryError as exc:
        raise InvariantError(str(exc)) from None
    lap("subdivision")
    note(f"subdivided {len(families)} bad squares")
    f = build_pl_map(mx, sys, center)
    lap("pl_map")
    note("PL map verified")
    rows, certificates = certify_links(mx, f, seed, restarts, jobs)
    lap("links")
    inconclusive = sum(1 for r in rows for k in ("ascending", "descending") if r[k] != "certified")
    note(f"links certified, {inconclusive} inconclusive")
    classes = cusp_classes(cusp_orbits(tess), sys)
    patterns = pattern_check(classes)
    lap("cusps")
    report = {
        "configuration": {
            "coloring": list(col.colors),
            "partition": str(partition),
            "base_state": base_state_string(base_state),
            "seed": seed,
            "restarts": restarts,
            "center_value": str(Fraction(center)),
            "t": str(Fraction(t)),
        },
        "bad_squares": len(families),
        "subdivision": {"counts": mx.complex.counts(), "euler": mx.complex.euler_characteristic(),
                        "betti_gf2": cc.betti("GF2"), "shared_faces_ok": shared["ok"]},
        "pl_map": f.meta["checks"],
        "links": {
            "vertices": len(rows),
            "original_vertices": len(mx.original_vertices()),
            "center_vertices": len(mx.center_vertices()),
            "certified": 2 * len(rows) - inconclusive,
            "inconclusive": inconclusive,
            "table": rows,
        },
        "cusps": {"classes": [k.to_dict() for k in classes], "patterns_ok": patterns["ok"],
                  "violations": patterns["violations"]},
    }
    if fiber:
        report["fiber"] = fiber_report(f, t)
        lap("fiber")
    return report, certificates, timings


def fiber_report(f, t):
    """Level set of f itself and of its primitive lift."""
    raw = level_set(f, t).summary()
    g = primitive_lift(f)
    prim = level_set(g, t).summary()
    for s in (raw, prim):
        if s["euler_from_counts"] != s["euler_from_betti"]:
            raise InvariantError("fiber Euler characteristic disagrees with its Betti numbers")
    return {"level_set": raw, "primitive_lift": prim}
