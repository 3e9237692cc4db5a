"""Command line front end: ``moprs {compute,transform,verify,sweep} --config job.json``.

A job file looks like::

    {
      "schema": 1,
      "system": [{"kind": "lebesgue", "a": "0", "b": "1"}, ...],
      "transform": {"components": [{"phi": [["-1", 1]]}, {"phi": [["-1", 1]]}]},
      "box": [3, 3],
      "sequence": "frame",
      "geronimus": {"I": [[...], ...], "II": [[...], ...]}
    }

``indices`` (a list of multi-indices) may replace ``box``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .arith import Poly, format_rat, render_poly
from .core import System, as_index, index_box
from .errors import MoprsError, NotAdmissible, NotNormal
from .functionals import functional_from_json
from .indexseq import seq_from_json
from .transforms import (
    RationalTransform,
    TransformSpec,
    spec_from_json,
    verify_transform,
)

SCHEMA = 1
MODES = ("compute", "transform", "verify", "sweep")
_TOP_FIELDS = {"schema", "mode", "system", "transform", "box", "indices", "sequence", "tie_break", "geronimus", "kinds", "format"}
POLY_HEADER = ["index", "kind", "component", "polynomial", "Dn", "normal"]
VERIFY_HEADER = ["index", "kind", "status", "check", "component", "p", "Dn", "normal"]
SWEEP_HEADER = ["index", "system", "det", "normal"]


class ConfigProblem(Exception):
    """Raised for anything that should end with exit status 2."""


@dataclass
class Job:
    mode: str
    raw: dict
    system: System
    spec: TransformSpec | None
    indices: list[tuple[int, ...]]
    seq_kind: str = "frame"
    tie_break: str = "interleaved"
    seq_overrides: dict = field(default_factory=dict)
    choice_I: Any = None
    choice_II: Any = None
    kinds: tuple[str, ...] = ("I", "II")

    _transform: RationalTransform | None = None

    @property
    def transform(self) -> RationalTransform:
        if self._transform is None:
            self._transform = RationalTransform(self.system, self.spec)
        return self._transform


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigProblem(msg)


def load_job(data: dict, mode: str, seq_opt: str | None = None) -> Job:
    """Validate a parsed job description; raise :class:`ConfigProblem` on any defect."""
    _require(isinstance(data, dict), "config must be a JSON object")
    extra = set(data) - _TOP_FIELDS
    _require(not extra, f"unknown config fields {sorted(extra)}")
    _require(data.get("schema") == SCHEMA, f"config 'schema' must be {SCHEMA}")
    if "mode" in data:
        _require(data["mode"] == mode, f"config mode {data['mode']!r} does not match subcommand {mode!r}")
    try:
        system_desc = data.get("system")
        _require(isinstance(system_desc, list) and system_desc, "'system' must be a non-empty list of functionals")
        system = System([functional_from_json(f) for f in system_desc])
        spec = None
        if "transform" in data:
            spec = spec_from_json(data["transform"], system)
        _require(spec is not None or mode == "compute" or mode == "sweep", f"mode {mode!r} needs a 'transform'")

        _require(("box" in data) != ("indices" in data), "give exactly one of 'box' or 'indices'")
        if "box" in data:
            box = as_index(data["box"], system.r)
            indices = list(index_box(box))
        else:
            _require(isinstance(data["indices"], list), "'indices' must be a list")
            indices = [as_index(n, system.r) for n in data["indices"]]

        kinds = tuple(data.get("kinds", ["I", "II"]))
        _require(set(kinds) <= {"I", "II"} and kinds, "'kinds' must be a subset of ['I', 'II']")
        tie_break = data.get("tie_break", "interleaved")
        _require(tie_break in ("interleaved", "reversed"), f"unknown tie_break {tie_break!r}")

        seq_kind = seq_opt or data.get("sequence", "frame")
        overrides: dict = {}
        if seq_kind.startswith("file:"):
            overrides = _load_seq_file(seq_kind[5:], system.r)
            seq_kind = "frame"
        _require(seq_kind in ("frame", "path"), f"unknown sequence selection {seq_kind!r}")

        gero = data.get("geronimus", {})
        _require(isinstance(gero, dict) and set(gero) <= {"I", "II"}, "'geronimus' must map 'I'/'II' to per-component free moments")
        job = Job(mode, data, system, spec, indices, seq_kind, tie_break, overrides, gero.get("I"), gero.get("II"), kinds)
        if spec is not None:
            # Fail early on arity problems in the Geronimus choices.
            job.transform.geronimus("I", job.choice_I)
            job.transform.geronimus("II", job.choice_II)
        return job
    except ConfigProblem:
        raise
    except (MoprsError, ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise ConfigProblem(f"{type(exc).__name__}: {exc}") from None


def _load_seq_file(path: str, r: int) -> dict:
    """``[{"index": [...], "kind": "I"|"II", "sequence": {...}}, ...]``."""
    with open(path, encoding="utf-8") as fh:
        entries = json.load(fh)
    _require(isinstance(entries, list), "sequence file must hold a list")
    out = {}
    for e in entries:
        _require(isinstance(e, dict) and set(e) == {"index", "kind", "sequence"}, f"bad sequence entry {e!r}")
        _require(e["kind"] in ("I", "II"), f"bad sequence kind {e['kind']!r}")
        out[(as_index(e["index"], r), e["kind"])] = seq_from_json(e["sequence"])
    return out


# ---------------------------------------------------------------------------
# per-index work


def _idx(n) -> str:
    return "(" + ",".join(map(str, n)) + ")"


def _poly_cell(p: Poly | None) -> dict | None:
    if p is None:
        return None
    return {"coeffs": [format_rat(c) for c in p.coeffs], "text": render_poly(p)}


def _rows_compute(job: Job, n) -> list[dict]:
    s = job.system
    normal = s.is_normal(n)
    rows = []
    if "II" in job.kinds:
        p = s.type2_monic(n).poly if normal else None
        rows.append({"index": n, "kind": "II", "component": None, "polynomial": p, "Dn": None, "normal": normal})
    if "I" in job.kinds and any(n):
        vec = s.type1_normalized(n).polys if normal else [None] * s.r
        for j, a in enumerate(vec, start=1):
            rows.append({"index": n, "kind": "I", "component": j, "polynomial": a, "Dn": None, "normal": normal})
    return rows


def _seq_for(job: Job, n, kind: str):
    seq = job.seq_overrides.get((n, kind))
    if seq is not None:
        return seq
    t = job.transform
    if kind == "I":
        return t.default_seq_I(n, job.tie_break, job.seq_kind)
    return t.default_seq_II(n, job.tie_break, job.seq_kind)


def _results(job: Job, n):
    """``[(kind, result or exception)]`` for the determinantal route at ``n``."""
    t = job.transform
    out = []
    for kind in ("II", "I"):
        if kind not in job.kinds or (kind == "I" and not any(n)):
            continue
        try:
            seq = _seq_for(job, n, kind)
            if kind == "I":
                out.append((kind, t.type1(n, seq, job.choice_I)))
            else:
                out.append((kind, t.type2(n, seq, job.choice_II)))
        except (NotNormal, NotAdmissible, MoprsError) as exc:
            out.append((kind, exc))
    return out


def _rows_transform(job: Job, n) -> list[dict]:
    rows = []
    for kind, res in _results(job, n):
        if isinstance(res, Exception):
            comps = [None] if kind == "II" else range(1, job.system.r + 1)
            for j in comps:
                rows.append({"index": n, "kind": kind, "component": j, "polynomial": None, "Dn": None, "normal": None, "error": str(res)})
            continue
        normal = res.dn != 0
        if kind == "II":
            rows.append({"index": n, "kind": kind, "component": None, "polynomial": res.raw.poly, "Dn": res.dn, "normal": normal})
        else:
            for j, a in enumerate(res.raw.polys, start=1):
                rows.append({"index": n, "kind": kind, "component": j, "polynomial": a, "Dn": res.dn, "normal": normal})
    return rows


def _rows_verify(job: Job, n) -> list[dict]:
    rows = []
    for kind, res in _results(job, n):
        if isinstance(res, Exception):
            rows.append({"index": n, "kind": kind, "status": "fail", "check": f"error: {res}", "component": None, "p": None, "Dn": None, "normal": None})
            continue
        rep = verify_transform(job.system, job.spec, n, res)
        f = rep.first_failure
        rows.append({
            "index": n,
            "kind": kind,
            "status": "pass" if rep.ok else "fail",
            "check": "" if f is None else (f.check + (f": {f.detail}" if f.detail else "")),
            "component": None if f is None else f.component,
            "p": None if f is None else f.power,
            "Dn": rep.dn,
            "normal": rep.normal,
        })
    return rows


def _rows_sweep(job: Job, n) -> list[dict]:
    rows = [{"index": n, "system": "base", "det": job.system.det(n), "normal": job.system.is_normal(n)}]
    if job.spec is not None:
        tilde = job.transform.tilde
        rows.append({"index": n, "system": "transformed", "det": tilde.det(n), "normal": tilde.is_normal(n)})
    return rows


_ROWS = {"compute": _rows_compute, "transform": _rows_transform, "verify": _rows_verify, "sweep": _rows_sweep}

_worker_job: Job | None = None


def _worker_init(raw: dict, mode: str, seq_opt: str | None) -> None:
    global _worker_job
    _worker_job = load_job(raw, mode, seq_opt)


def _worker_rows(n):
    return _ROWS[_worker_job.mode](_worker_job, n)


def collect(job: Job, jobs: int = 1, seq_opt: str | None = None) -> list[dict]:
    """All rows of a job, in index order regardless of ``jobs``."""
    fn = _ROWS[job.mode]
    if jobs <= 1 or len(job.indices) < 2:
        per_index = [fn(job, n) for n in job.indices]
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init, initargs=(job.raw, job.mode, seq_opt)) as pool:
            per_index = list(pool.map(_worker_rows, job.indices, chunksize=max(1, len(job.indices) // (4 * jobs))))
    return [row for rows in per_index for row in rows]


# ---------------------------------------------------------------------------
# emission


def _cell(key: str, value) -> str:
    if value is None:
        return ""
    if key == "index":
        return _idx(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, Poly):
        return render_poly(value)
    return str(value)


def _json_value(key: str, value):
    if key == "index":
        return list(value)
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, Poly):
        return _poly_cell(value)
    return value


def header_for(mode: str) -> list[str]:
    return {"compute": POLY_HEADER, "transform": POLY_HEADER, "verify": VERIFY_HEADER, "sweep": SWEEP_HEADER}[mode]


def render(job: Job, rows: list[dict], fmt: str) -> str:
    header = header_for(job.mode)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, delimiter=";", lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(k, row.get(k)) for k in header])
        return buf.getvalue()
    if fmt == "json":
        doc: dict[str, Any] = {"schema": SCHEMA, "mode": job.mode, "version": __version__, "rows": []}
        for row in rows:
            doc["rows"].append({k: _json_value(k, v) for k, v in row.items()})
        doc["summary"] = _summary(job, rows)
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "pretty":
        table = [header] + [[_cell(k, row.get(k)) for k in header] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in table]
        summ = _summary(job, rows)
        if summ:
            lines.append("")
            lines.extend(f"{k}: {v}" for k, v in summ.items())
        return "\n".join(lines) + "\n"
    raise ConfigProblem(f"unknown format {fmt!r}")


def _summary(job: Job, rows: list[dict]) -> dict:
    if job.mode == "verify":
        failed = [r for r in rows if r["status"] != "pass"]
        return {"checked": len(rows), "failed": len(failed), "result": "fail" if failed else "pass"}
    if job.mode == "sweep":
        out = {}
        for name in ("base", "transformed"):
            sel = [r for r in rows if r["system"] == name]
            if sel:
                bad = [_idx(r["index"]) for r in sel if not r["normal"]]
                out[f"{name}_perfect"] = not bad
                out[f"{name}_non_normal"] = bad
        return out
    return {}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moprs", description="Exact multiple orthogonal polynomials and their rational transforms.")
    ap.add_argument("--version", action="version", version=f"moprs {__version__}")
    sub = ap.add_subparsers(dest="mode", required=True)
    for mode, help_text in (
        ("compute", "oracle type I / type II polynomials over the index set"),
        ("transform", "determinantal formulas with their D_n"),
        ("verify", "check the determinantal route against the transformed system"),
        ("sweep", "normality table for the base and transformed systems"),
    ):
        p = sub.add_parser(mode, help=help_text)
        p.add_argument("--config", required=True, metavar="PATH", help="JSON job description")
        p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
        p.add_argument("--format", choices=("csv", "json", "pretty"), default=None, help="output format (default csv)")
        p.add_argument("--seq", metavar="path|frame|file:PATH", help="sequence selection for determinants")
        p.add_argument("--jobs", type=int, default=None, metavar="N", help="worker processes (default $MOPRS_JOBS or 1)")
    return ap


def _jobs_from(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("MOPRS_JOBS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigProblem(f"MOPRS_JOBS must be an integer, got {env!r}") from None
    return 1


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        job = load_job(raw, args.mode, args.seq)
        fmt = args.format or raw.get("format", "csv")
        _require(fmt in ("csv", "json", "pretty"), f"unknown format {fmt!r}")
        jobs = _jobs_from(args.jobs)
        _require(jobs >= 1, "--jobs must be at least 1")
    except (OSError, json.JSONDecodeError, ConfigProblem) as exc:
        print(f"moprs: config error: {exc}", file=sys.stderr)
        return 2
    rows = collect(job, jobs, args.seq)
    text = render(job, rows, fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if job.mode == "verify" and any(r["status"] != "pass" for r in rows):
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
