"""Command-line entry point; reports are ``key=value`` lines on standard output."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from . import linrep
from .brace import verify_skew_brace
from .catalog import CATALOG, catalog
from .errors import YBXError
from .finset import OpTable, canonical_form, group_info
from .prelie import verify_prelie
from .shelf import (
    _all_tables,
    _shelf_mask,
    classify_shelf,
    derived_solution,
    enumerate_shelves,
    racks_by_translations,
    right_zero_band,
    left_zero_band,
)
from .solution import (
    EQUIVALENCE_CAP,
    Solution,
    associated_shelf,
    build_from_twist,
    census_for_sigmas,
    classify_solution,
    derived_conjugator,
    extract_twist,
    find_equivalence,
    sigma_assignments,
    solution_key,
    tau_candidates,
    verify_braid,
)
from .textio import Document, document, parse, serialize

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def workers() -> int:
    raw = os.environ.get("YBX_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise YBXError(f"YBX_THREADS must be an integer, got {raw!r}") from None
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


class Report:
    def __init__(self, out=None):
        self.out = out or sys.stdout

    def __call__(self, key: str, value):
        if isinstance(value, (bool, np.bool_)):
            value = int(value)
        elif value is None:
            value = "none"
        elif isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        self.out.write(f"{key}={value}\n")


def fmt_table(t: np.ndarray) -> str:
    return ";".join(",".join(str(int(x)) for x in row) for row in np.atleast_2d(t))


def _load(path: str) -> Document:
    return parse(Path(path).read_bytes())


# ---------------------------------------------------------------------------
# verify


def _shelf_name(op: OpTable) -> str:
    if op == right_zero_band(op.n):
        return "right-zero-band"
    if op == left_zero_band(op.n):
        return "left-zero-band"
    rep = classify_shelf(op)
    for name in ("quandle", "rack", "spindle", "shelf"):
        if getattr(rep, name):
            return name
    return "none"


def _verify_shelf(op: OpTable, emit: Report) -> bool:
    rep = classify_shelf(op)
    for key in ("shelf", "spindle", "rack", "quandle"):
        emit(key, getattr(rep, key))
    if rep.witness is not None:
        emit("witness", rep.witness)
    return rep.shelf


def _verify_solution(s: Solution, emit: Report) -> bool:
    br = verify_braid(s)
    emit("braid", br.braid)
    if not br.braid:
        emit("braid-failed", br.failed)
        emit("braid-witness", br.witness)
    cls = classify_solution(s)
    emit("left-nd", cls.left_nd)
    emit("right-nd", cls.right_nd)
    emit("non-degenerate", cls.non_degenerate)
    emit("bijective", cls.bijective)
    emit("involutive", cls.involutive)
    emit("idempotent", cls.idempotent)
    emit("square-free", cls.square_free)
    if s.n <= EQUIVALENCE_CAP:
        f = find_equivalence(s, Solution.flip(s.n))
        emit("equivalent-to-flip", f is not None)
        if f is None:
            emit("flip-bijections-refuted", int(np.prod(np.arange(1, s.n + 1))))
    if cls.left_nd:
        shelf = associated_shelf(s)
        emit("associated-shelf", _shelf_name(shelf))
        emit("associated-shelf.table", fmt_table(shelf.table))
        emit("d-isomorphic-to-derived", derived_conjugator(s).holds)
    return br.braid


def _verify_brace(add: OpTable, mul: OpTable, emit: Report) -> bool:
    flags = verify_skew_brace(add, mul)
    emit("left-skew-brace", flags.left_skew)
    emit("two-sided", flags.two_sided)
    emit("brace", flags.brace)
    if flags.witness is not None:
        emit("brace-witness", flags.witness)
    return flags.left_skew


def _verify_prelie(add: OpTable, bullet: OpTable, emit: Report) -> bool:
    if group_info(add) is None:
        emit("prelie.error", "add is not a group")
        return False
    flags = verify_prelie(add, bullet)
    emit("distributive", flags.distr)
    emit("right-prelie", flags.prelie)
    emit("right-prelie-op", flags.prelie_op)
    emit("left-invertible", flags.left_invertible is not None)
    if flags.left_invertible is not None:
        emit("left-identity", flags.left_invertible.identity)
        emit("left-inverse", tuple(int(x) for x in flags.left_invertible.inverse.table))
    return flags.right_prelie_skew_brace


def verify_document(doc: Document, emit: Report) -> int:
    checks = []
    if "shelf" in doc.tables:
        checks.append(_verify_shelf(doc.op("shelf"), emit))
    s = doc.solution()
    if s is not None:
        checks.append(_verify_solution(s, emit))
    if "add" in doc.tables and "mul" in doc.tables:
        checks.append(_verify_brace(doc.op("add"), doc.op("mul"), emit))
    if "add" in doc.tables and "bullet" in doc.tables:
        checks.append(_verify_prelie(doc.op("add"), doc.op("bullet"), emit))
    if not checks:
        emit("error", "no verifiable blocks (shelf, sigma+tau, add+mul, add+bullet)")
        return EXIT_ERROR
    emit("checks", len(checks))
    emit("ok", all(checks))
    return EXIT_OK if all(checks) else EXIT_FAIL


def cmd_verify(args, emit: Report) -> int:
    return verify_document(_load(args.file), emit)


# ---------------------------------------------------------------------------
# enumerate


def _shelf_chunk(tables: np.ndarray) -> np.ndarray:
    return tables[_shelf_mask(tables)]


def _scan_parallel(n: int, k: int) -> list[OpTable]:
    tables = _all_tables(n)
    if k == 1:
        found = _shelf_chunk(tables)
    else:
        with ProcessPoolExecutor(max_workers=k) as ex:
            found = np.concatenate(list(ex.map(_shelf_chunk, np.array_split(tables, k))))
    return [OpTable(t) for t in found]


def enumerate_shelves_parallel(n: int, racks_only: bool, k: int) -> list[OpTable]:
    if n <= 3:
        found = _scan_parallel(n, k)
        if racks_only:
            found = [op for op in found if op.left_translations_bijective()]
        return sorted(found, key=lambda op: tuple(op.table.ravel().tolist()))
    if n == 4 and racks_only:
        return sorted(racks_by_translations(n), key=lambda op: tuple(op.table.ravel().tolist()))
    return enumerate_shelves(n, racks_only)  # raises with the supported range


def _census_chunk(job) -> list[tuple]:
    n, sigmas = job
    return [(s.sigma, s.tau) for s in census_for_sigmas(sigmas, tau_candidates(n))]


def enumerate_solutions_parallel(n: int, k: int) -> list[Solution]:
    if n > 3:
        from .solution import enumerate_left_nd_solutions
        return enumerate_left_nd_solutions(n)  # raises SearchRefused
    sigmas = sigma_assignments(n)
    chunks = [(n, c) for c in np.array_split(sigmas, max(1, k)) if len(c)]
    if k == 1:
        raw = [pair for job in chunks for pair in _census_chunk(job)]
    else:
        with ProcessPoolExecutor(max_workers=k) as ex:
            raw = [pair for part in ex.map(_census_chunk, chunks) for pair in part]
    return sorted((Solution(a, b) for a, b in raw), key=solution_key)


def cmd_enumerate(args, emit: Report) -> int:
    k = workers()
    emit("workers", k)
    if args.what == "shelves":
        found = enumerate_shelves_parallel(args.size, args.racks_only, k)
        emit("count", len(found))
        emit("isomorphism-classes", len({canonical_form(op) for op in found}))
        for i, op in enumerate(found):
            emit(f"table.{i}", fmt_table(op.table))
        return EXIT_OK
    if not args.left_nd:
        emit("error", "only left non-degenerate solutions are enumerated; pass --left-nd")
        return EXIT_ERROR
    found = enumerate_solutions_parallel(args.size, k)
    emit("count", len(found))
    totals = dict.fromkeys(("right-nd", "bijective", "involutive", "idempotent", "square-free"), 0)
    lines = []
    for i, s in enumerate(found):
        c = classify_solution(s)
        flags = {"right-nd": c.right_nd, "bijective": c.bijective, "involutive": c.involutive,
                 "idempotent": c.idempotent, "square-free": c.square_free}
        for key, v in flags.items():
            totals[key] += int(v)
        lines.append((i, s, flags))
    for key, v in totals.items():
        emit(f"total.{key}", v)
    for i, s, flags in lines:
        emit(f"solution.{i}.sigma", fmt_table(s.sigma))
        emit(f"solution.{i}.tau", fmt_table(s.tau))
        emit(f"solution.{i}.flags", ",".join(f"{k}:{int(v)}" for k, v in flags.items()))
    return EXIT_OK


# ---------------------------------------------------------------------------
# twist / derive / from-twist


def _require_solution(doc: Document, path: str) -> Solution:
    s = doc.solution()
    if s is None:
        raise YBXError(f"{path}: no 'sigma'/'tau' tables")
    return s


def cmd_twist(args, emit: Report) -> int:
    s = _require_solution(_load(args.file), args.file)
    phi = extract_twist(s)
    emit("associated-shelf", fmt_table(phi.shelf.table))
    for a in range(s.n):
        emit(f"phi.{a}", tuple(int(x) for x in phi.phi[a]))
    emit("is-twist", phi.is_twist())
    emit("nondegeneracy-criterion", phi.nondegeneracy_criterion())
    ok = build_from_twist(phi.shelf, phi) == s
    emit("round-trip", ok)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_derive(args, emit: Report) -> int:
    doc = _load(args.file)
    shelf = doc.op("shelf")
    if shelf is None:
        raise YBXError(f"{args.file}: no 'shelf' table")
    sys.stdout.write(serialize(document(shelf.n, solution=derived_solution(shelf))).decode())
    return EXIT_OK


def cmd_from_twist(args, emit: Report) -> int:
    shelf = _load(args.shelf).op("shelf")
    if shelf is None:
        raise YBXError(f"{args.shelf}: no 'shelf' table")
    tw = _load(args.twist)
    if "phi" not in tw.tables:
        raise YBXError(f"{args.twist}: no 'phi' table")
    if tw.n != shelf.n:
        raise YBXError("shelf and twist live on different carriers")
    s = build_from_twist(shelf, tw.tables["phi"])
    sys.stdout.write(serialize(document(shelf.n, solution=s)).decode())
    return EXIT_OK


# ---------------------------------------------------------------------------
# rep


def _export(m: linrep.IntMatrix, path: Path, fmt: str):
    path.write_text(m.to_sparse() if fmt == "sparse" else m.to_text())


def cmd_rep(args, emit: Report) -> int:
    doc = _load(args.file)
    s = doc.solution()
    if s is not None:
        rep = linrep.rep_from_solution(s)
    elif "shelf" in doc.tables:
        if args.twist:
            raise YBXError("--twist needs a solution file")
        rep = linrep.fundamental_rep(doc.op("shelf"))
    else:
        raise YBXError(f"{args.file}: needs a solution or a 'shelf' table")
    emit("dim", rep.n)
    emit("relations", 1)
    R = linrep.rack_R(rep)
    ok = linrep.verify_matrix_ybe(R)
    emit("ybe", ok)
    results = [ok]
    if args.frt:
        fl = linrep.frt_check(rep)
        for k in ("a", "b", "c"):
            emit(f"frt.{k}", getattr(fl, k))
        results.append(fl.all)
    RF = None
    if args.twist:
        tw = linrep.twist_admissibility(rep, strict=False)
        for k in tw.report.__dataclass_fields__:
            emit(f"twist.{k}", getattr(tw.report, k))
        results.append(tw.report.all)
        RF = tw.R_F
    if args.hopf:
        bdoc = _load(args.hopf)
        bullet = bdoc.op("bullet")
        if bullet is None:
            raise YBXError(f"{args.hopf}: no 'bullet' table")
        hr = linrep.hopf_checks(rep, bullet)
        for k in hr.__dataclass_fields__:
            emit(f"hopf.{k}", getattr(hr, k))
        emit("hopf.hopf", hr.hopf)
        results.append(hr.v1 and hr.comm_q and hr.comm_h and (hr.v2 or bool(hr.v2_weak)))
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        ext = "sparse" if args.format == "sparse" else "txt"
        _export(R, out / f"R.{ext}", args.format)
        emit("export.R", out / f"R.{ext}")
        if RF is not None:
            _export(RF, out / f"RF.{ext}", args.format)
            emit("export.RF", out / f"RF.{ext}")
    emit("ok", all(results))
    return EXIT_OK if all(results) else EXIT_FAIL


def cmd_catalog(args, emit: Report) -> int:
    if args.name is None:
        for name in CATALOG:
            emit("entry", name)
        return EXIT_OK
    sys.stdout.write(serialize(catalog(args.name)).decode())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ybx", description="Finite solutions of the braid equation.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every recognized block of a file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", help="exhaustive enumeration")
    e.add_argument("what", choices=("shelves", "solutions"))
    e.add_argument("--size", type=int, required=True)
    e.add_argument("--racks-only", action="store_true")
    e.add_argument("--left-nd", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("twist", help="extract the twist of a left non-degenerate solution")
    t.add_argument("file")
    t.set_defaults(func=cmd_twist)

    d = sub.add_parser("derive", help="derived solution of a shelf")
    d.add_argument("file")
    d.set_defaults(func=cmd_derive)

    f = sub.add_parser("from-twist", help="solution from a shelf and a twist table 'phi'")
    f.add_argument("shelf")
    f.add_argument("twist")
    f.set_defaults(func=cmd_from_twist)

    r = sub.add_parser("rep", help="fundamental representation checks")
    r.add_argument("file")
    r.add_argument("--twist", action="store_true")
    r.add_argument("--frt", action="store_true")
    r.add_argument("--hopf", metavar="BULLET_FILE")
    r.add_argument("--export", metavar="DIR")
    r.add_argument("--format", choices=("text", "sparse"), default="text")
    r.set_defaults(func=cmd_rep)

    c = sub.add_parser("catalog", help="print a built-in instance")
    c.add_argument("name", nargs="?", choices=tuple(CATALOG))
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    emit = Report()
    try:
        return args.func(args, emit)
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); not an error
        sys.stderr.close()
        return EXIT_OK
    except (YBXError, OSError, KeyError) as exc:
        sys.stderr.write(f"ybx: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
