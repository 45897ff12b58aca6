"""walg command line: run verification pipelines, emit JSON reports.

    walg run --algebra sl3 --nilpotent minimal --ell lagrangian-auto \
             --max-degree 6 --checks theorem,poisson,cohomology --out report.json
    walg describe --algebra sl3 --nilpotent minimal

Exit code 0 iff every requested check passes.  The JSON report has a
stable field order; the human-readable tables are rendered from the same
data.  WALG_THREADS bounds parallelism of independent kernel builds.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from walg import liealg, whittaker
from walg.context import SliceContext, build_context
from walg.errors import ConfigError, WalgError
from walg.linalg import vec
from walg.whittaker import h_basis

CHECK_NAMES = ("structure", "decomposition", "theorem", "poisson",
               "cohomology", "whittaker", "center", "ell-independence")

_SLN = re.compile(r"^sl(\d+)$")
_PARTITION = re.compile(r"^\[\s*\d+\s*(,\s*\d+\s*)*\]$")


@dataclass
class JobConfig:
    algebra: str
    nilpotent: Optional[str] = None
    ell: str = "zero"
    max_degree: int = 6
    checks: List[str] = field(default_factory=lambda: ["structure", "decomposition",
                                                       "theorem"])
    output: Optional[str] = None
    degree_overrides: dict = field(default_factory=dict)

    @classmethod
    def parse_checks(cls, text: str):
        """Split 'theorem,whittaker:4' into names and degree overrides."""
        names, overrides = [], {}
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            name, _, deg = chunk.partition(":")
            names.append(name)
            if deg:
                try:
                    overrides[name] = int(deg)
                except ValueError as exc:
                    raise ConfigError(f"bad degree override '{chunk}'") from exc
        return names, overrides

    def check_degree(self, name: str) -> int:
        return self.degree_overrides.get(name, self.max_degree)

    def validate(self):
        if self.max_degree < 0:
            raise ConfigError("max-degree must be >= 0")
        for name in self.checks:
            if name not in CHECK_NAMES:
                raise ConfigError(f"unknown check '{name}'; "
                                  f"choose from {', '.join(CHECK_NAMES)}")
        for name, deg in self.degree_overrides.items():
            if name not in CHECK_NAMES:
                raise ConfigError(f"degree override for unknown check '{name}'")
            if not 0 <= deg <= self.max_degree:
                raise ConfigError(
                    f"degree override {name}:{deg} outside [0, {self.max_degree}]"
                    " (max_degree is a ceiling)")


def _parse_vector_list(text: str, dim: int):
    """Semicolon-separated vectors of comma-separated rationals."""
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            vectors.append(vec([Fraction(x) for x in chunk.split(",")], dim))
    return vectors


class Case:
    """Algebra + triple + ell resolved from a JobConfig, with lazy products."""

    def __init__(self, config: JobConfig):
        self.config = config
        self.lie, extras = self._load_algebra(config.algebra)
        self.nilpotent_name, triple_vectors = self._resolve_nilpotent(
            config.nilpotent, extras)
        e, h, f = triple_vectors
        ell = config.ell
        if ell == "file":
            ell_vectors = [vec(v, self.lie.dim) for v in extras.get("ell", [])]
            self.sctx = build_context(self.lie, e, ell_vectors, h=h, f=f)
        elif ell in ("zero", "lagrangian-auto"):
            self.sctx = build_context(self.lie, e, ell, h=h, f=f)
        else:
            self.sctx = build_context(self.lie, e,
                                      _parse_vector_list(ell, self.lie.dim),
                                      h=h, f=f)
        self._hb = {}
        self._sctx_zero = None
        self._hb_zero = {}
        self.threads = _threads_from_env()

    def _load_algebra(self, name: str):
        m = _SLN.match(name)
        if m:
            n = int(m.group(1))
            if n < 2:
                raise ConfigError("sl_n needs n >= 2")
            return liealg.make_sln(n), {}
        if os.path.exists(name):
            return liealg.load_algebra_file(name)
        raise ConfigError(f"unknown algebra '{name}' (builtin slN or a JSON file)")

    def _resolve_nilpotent(self, spec: Optional[str], extras: dict):
        m = _SLN.match(self.config.algebra)
        n = int(m.group(1)) if m else None
        if spec is None:
            if "nilpotent" in extras:
                e = vec([Fraction(str(x)) for x in extras["nilpotent"]], self.lie.dim)
                t = liealg.complete_sl2_triple(self.lie, e)
                return "file", (t.e, t.h, t.f)
            raise ConfigError("no nilpotent given (flag or input file)")
        if spec == "regular" and n:
            return "regular", liealg.partition_triple(n, [n])
        if spec == "minimal" and n:
            return "minimal", liealg.highest_root_triple(n)
        if _PARTITION.match(spec) and n:
            parts = [int(x) for x in spec.strip("[] ").split(",")]
            return spec, liealg.partition_triple(n, parts)
        try:
            e = vec([Fraction(x) for x in spec.split(",")], self.lie.dim)
        except (ValueError, WalgError) as exc:
            raise ConfigError(f"cannot parse nilpotent '{spec}': {exc}") from exc
        t = liealg.complete_sl2_triple(self.lie, e)
        return "vector", (t.e, t.h, t.f)

    def hb_at(self, n: int):
        if n not in self._hb:
            self._hb[n] = h_basis(n, self.sctx, threads=self.threads)
        return self._hb[n]

    def zero_ell_pair(self, n: int):
        """(context, H-basis) for ell = 0, used by ell-independence."""
        if self._sctx_zero is None:
            t = self.sctx.triple
            self._sctx_zero = SliceContext(self.lie, t, [], ell_label="zero")
        if n not in self._hb_zero:
            self._hb_zero[n] = h_basis(n, self._sctx_zero,
                                       threads=self.threads)
        return self._sctx_zero, self._hb_zero[n]


def _threads_from_env() -> int:
    try:
        return max(1, int(os.environ.get("WALG_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# individual checks; each returns (status, details, witness)
# ---------------------------------------------------------------------------


def check_structure(case: Case):
    sctx = case.sctx
    flags = liealg.structure_checks(case.lie, sctx.triple, sctx.grading,
                                    sctx.pair, sctx.chi)
    bad = [k for k, v in flags.items() if not v]
    return (not bad, {"flags": flags},
            {"failed": bad} if bad else None)


def check_decomposition(case: Case):
    rep = liealg.decomposition_check(case.lie, case.sctx.triple,
                                     case.sctx.grading, case.sctx.pair)
    return True, rep.as_dict(), None


def check_theorem(case: Case):
    n = case.config.check_degree("theorem")
    hb = case.hb_at(n)
    rep = whittaker.verify_theorem(n, case.sctx, hb)
    gens = [{"degree": d, "form": str(el), "nu": str(whittaker.nu_map(el, case.sctx))}
            for d, el in zip(hb.degrees, hb.elements)]
    table = {f"{i},{j}": [str(c) for c in coeffs]
             for (i, j), coeffs in sorted(hb.multiplication_table().items())}
    return True, {"gr_dims": rep.gr_dims, "slice_dims": rep.slice_dims,
                  "multiplicative_pairs": rep.mult_pairs,
                  "generators": gens, "multiplication_table": table}, None


def check_poisson(case: Case):
    n = case.config.check_degree("poisson")
    hb = case.hb_at(n)
    pairs = 0
    for i, a in enumerate(hb.elements):
        if hb.degrees[i] == 0:
            continue
        for j in range(i, len(hb.elements)):
            if hb.degrees[j] == 0:
                continue
            if hb.degrees[i] + hb.degrees[j] > n:
                continue
            if not whittaker.gr_commutator_vs_poisson(a, hb.elements[j], hb):
                return False, {"pairs_checked": pairs}, {"pair": [i, j]}
            pairs += 1
    return True, {"pairs_checked": pairs}, None


def check_cohomology(case: Case):
    n_max = case.config.check_degree("cohomology")
    rep = whittaker.ce_cohomology(1, n_max, case.sctx)
    h0 = rep.row(0)
    h1 = rep.row(1)
    slice_dims = case.sctx.hilbert_slice(n_max)
    gr_dims = case.hb_at(n_max).gr_dims
    details = {"h0_dims": h0, "h1_dims": h1, "slice_dims": slice_dims,
               "gr_h_dims": gr_dims}
    if h0 != slice_dims:
        return False, details, {"clause": "h0 != slice Hilbert series"}
    if any(h1):
        return False, details, {"clause": "h1 != 0"}
    if gr_dims != h0:
        return False, details, {"clause": "gr H^0(Q) != H^0(gr Q)"}
    return True, details, None


def check_whittaker(case: Case):
    n_max = case.config.check_degree("whittaker")
    hb = case.hb_at(n_max)
    for n in range(n_max + 1):
        wh = whittaker.whittaker_vectors(n, case.sctx, hb.qb)
        if wh != hb.subspace_at(n):
            return False, {"degree": n}, {"degree": n}
    return True, {"max_degree": n_max}, None


def check_center(case: Case):
    n = case.config.check_degree("center")
    rep = whittaker.center_injects(n, case.sctx, case.hb_at(n))
    return True, {"canonical_form": rep.canonical_form, "degree": rep.degree,
                  "nu_image": rep.nu_image}, None


def check_ell_independence(case: Case):
    n = case.config.check_degree("ell-independence")
    if case.sctx.symp.ell.dim == 0:
        # compare against the canonical Lagrangian instead
        lag = liealg.lagrangian_auto(case.lie, case.sctx.grading, case.sctx.chi)
        other = SliceContext(case.lie, case.sctx.triple, lag,
                             ell_label="lagrangian-auto")
        hb_other = h_basis(n, other, threads=case.threads)
        rep = whittaker.ell_comparison(case.sctx, other, n, case.hb_at(n),
                                       hb_other)
    else:
        zero_ctx, zero_hb = case.zero_ell_pair(n)
        rep = whittaker.ell_comparison(zero_ctx, case.sctx, n, zero_hb,
                                       case.hb_at(n))
    return True, rep.as_dict(), None


CHECKS = {
    "structure": check_structure,
    "decomposition": check_decomposition,
    "theorem": check_theorem,
    "poisson": check_poisson,
    "cohomology": check_cohomology,
    "whittaker": check_whittaker,
    "center": check_center,
    "ell-independence": check_ell_independence,
}

_NEEDS_LAGRANGIAN = {"poisson", "whittaker"}


def run(config: JobConfig) -> dict:
    """Execute the requested checks in dependency order; deterministic report."""
    config.validate()
    t_start = time.perf_counter()
    case = Case(config)
    if _NEEDS_LAGRANGIAN & set(config.checks) and not case.sctx.is_lagrangian:
        raise ConfigError("checks "
                          f"{sorted(_NEEDS_LAGRANGIAN & set(config.checks))} "
                          "require a Lagrangian ell")
    config_doc = {
        "algebra": config.algebra,
        "nilpotent": config.nilpotent,
        "ell": config.ell,
        "max_degree": config.max_degree,
        "checks": list(config.checks),
    }
    if config.degree_overrides:
        config_doc["degree_overrides"] = dict(sorted(
            config.degree_overrides.items()))
    report = {
        "config": config_doc,
        "case": describe_case(case.sctx, config.max_degree),
        "checks": [],
        "status": "pass",
        "timing": {},
    }
    timing = {}
    ordered = [name for name in CHECK_NAMES if name in config.checks]
    for name in ordered:
        t0 = time.perf_counter()
        try:
            ok, details, witness = CHECKS[name](case)
        except WalgError as exc:
            ok = False
            details = {"error": type(exc).__name__, "message": str(exc)}
            witness = getattr(exc, "dims", None) or {
                "degree": getattr(exc, "degree", None)}
        entry = {"name": name, "status": "pass" if ok else "fail",
                 "details": details}
        if witness is not None:
            entry["witness"] = witness
        report["checks"].append(entry)
        if not ok:
            report["status"] = "fail"
        timing[name] = round(time.perf_counter() - t0, 6)
    timing["total"] = round(time.perf_counter() - t_start, 6)
    report["timing"] = timing
    return report


def describe_case(sctx: SliceContext, max_degree: int) -> dict:
    L = sctx.lie
    grading = {str(i): sp.dim for i, sp in sctx.grading.pieces.items()}
    ell_labels = [L.label_of_vector(v) or list(map(str, v))
                  for v in sctx.symp.ell.basis]
    return {
        "dim": L.dim,
        "labels": list(L.labels),
        "grading_dims": grading,
        "dim_g_minus1": sctx.grading.piece(-1).dim,
        "ell": ell_labels,
        "lagrangian": sctx.is_lagrangian,
        "dim_a": sctx.pair.a.dim,
        "dim_n_ell": sctx.pair.n_ell.dim,
        "dim_ker_ad_f": sctx.kerf.dim,
        "slice_degrees": list(sctx.slice_data.degrees),
        "slice_hilbert": sctx.hilbert_slice(max_degree),
        "pbw_order": list(sctx.basis.labels),
    }


def render_report(report: dict) -> str:
    lines = []
    cfg = report["config"]
    lines.append(f"walg report: {cfg['algebra']}, nilpotent {cfg['nilpotent']}, "
                 f"ell {cfg['ell']}, degrees <= {cfg['max_degree']}")
    case = report["case"]
    lines.append(f"  dim g = {case['dim']}, dim a = {case['dim_a']}, "
                 f"dim n_ell = {case['dim_n_ell']}, "
                 f"dim Ker ad f = {case['dim_ker_ad_f']}")
    lines.append(f"  grading dims: {case['grading_dims']}")
    lines.append(f"  slice degrees: {case['slice_degrees']}  "
                 f"Hilbert: {case['slice_hilbert']}")
    lines.append("  " + "-" * 58)
    for entry in report["checks"]:
        status = entry["status"].upper()
        lines.append(f"  {entry['name']:<18} {status}")
        det = entry["details"]
        for key in ("gr_dims", "h0_dims", "h1_dims", "nu_image",
                    "canonical_form", "pairs_checked", "multiplicative_pairs"):
            if key in det:
                lines.append(f"      {key}: {det[key]}")
        for gen in det.get("generators", [])[:12]:
            lines.append(f"      deg {gen['degree']}: {gen['form']}")
        if entry["status"] == "fail":
            lines.append(f"      details: {det}")
            if "witness" in entry:
                lines.append(f"      witness: {entry['witness']}")
    lines.append("  " + "-" * 58)
    lines.append(f"  overall: {report['status'].upper()}  "
                 f"(total {report['timing'].get('total', 0)}s)")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="walg",
        description="Slodowy slice quantization checks: finite W-algebras "
                    "computed degree by degree over exact rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run verification checks")
    p_run.add_argument("--algebra", required=True,
                       help="builtin slN or a JSON structure-constant file")
    p_run.add_argument("--nilpotent", default=None,
                       help="'regular', 'minimal', a partition like [2,1,1], "
                            "or comma-separated coordinates")
    p_run.add_argument("--ell", default="zero",
                       help="'zero', 'lagrangian-auto', 'file', or vectors "
                            "'c1,..,cd;c1,..,cd'")
    p_run.add_argument("--max-degree", type=int, default=6)
    p_run.add_argument("--checks", default="structure,decomposition,theorem",
                       help=f"comma list from: {','.join(CHECK_NAMES)}; "
                            "append ':<degree>' to cap one check below "
                            "max-degree, e.g. whittaker:4")
    p_run.add_argument("--out", default=None, help="path for the JSON report")
    p_run.add_argument("--quiet", action="store_true",
                       help="suppress the human-readable table")

    p_desc = sub.add_parser("describe", help="print grading and slice data")
    p_desc.add_argument("--algebra", required=True)
    p_desc.add_argument("--nilpotent", default=None)
    p_desc.add_argument("--ell", default="zero")
    p_desc.add_argument("--max-degree", type=int, default=6)
    p_desc.add_argument("--out", default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            names, overrides = JobConfig.parse_checks(args.checks)
            config = JobConfig(
                algebra=args.algebra, nilpotent=args.nilpotent, ell=args.ell,
                max_degree=args.max_degree, checks=names, output=args.out,
                degree_overrides=overrides)
            report = run(config)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    json.dump(report, fh, indent=2)
                    fh.write("\n")
            if not args.quiet:
                print(render_report(report))
            return 0 if report["status"] == "pass" else 1
        config = JobConfig(algebra=args.algebra, nilpotent=args.nilpotent,
                           ell=args.ell, max_degree=args.max_degree)
        case = Case(config)
        desc = describe_case(case.sctx, args.max_degree)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(desc, fh, indent=2)
                fh.write("\n")
        print(json.dumps(desc, indent=2))
        return 0
    except (ConfigError, WalgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
