"""Command-line front end: ``skewmorph enumerate|classify|analyze|verify``.

Exit codes: 0 ok, 1 usage or input error, 2 search bound exceeded,
3 cross-check (or catalog verification) failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field

from . import perm as P
from .dihedral import (
    Catalog,
    InvalidParams,
    catalog_from_json,
    classify_smooth,
    cross_check,
)
from .groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    Subgroup,
    dihedral_subgroup,
    make_group,
    make_subgroup,
)
from .oracle import DEFAULT_MAX_ORDER, PREDICATES, EnumConfig, enumerate_skew_morphisms, kernel_equals
from .skew import (
    NotSkewMorphism,
    SkewMorphism,
    core,
    fix,
    is_kernel_preserving,
    is_smooth,
    kernel,
    orbit_pi_subgroup,
    orbits,
    periodicity,
    smooth_subgroup,
    verify,
)

log = logging.getLogger("skewmorph")

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_CHECK = 0, 1, 2, 3

ENV_MAX_ORDER = "SKEWMORPH_MAX_ORDER"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for the bound
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- records ------------------------------------------------------------------


def skew_record(s: SkewMorphism) -> dict:
    return {
        "group": s.group.name,
        "perm": list(s.phi),
        "cycles": s.cycle_notation(),
        "order": s.order,
        "pi": list(s.pi),
        "kernel": list(kernel(s)),
        "smooth": is_smooth(s),
        "kernel_preserving": is_kernel_preserving(s),
        "automorphism": s.is_automorphism(),
    }


@dataclass
class Report:
    """Everything :func:`analyze` knows about one permutation."""

    group: str
    perm: str
    accepted: bool
    witness: dict | None = None
    order: int | None = None
    pi: list[int] | None = None
    kernel: list[int] | None = None
    core: list[int] | None = None
    fix: list[int] | None = None
    smooth_subgroup: list[int] | None = None
    orbits: list[list[int]] | None = None
    periodicity: int | None = None
    # "2,3" -> Orbit^{2,3}; "" is the empty prime set
    orbit_pi: dict[str, list[int]] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(**d)


def _prime_divisors(k: int) -> list[int]:
    return [p for p in range(2, k + 1) if k % p == 0 and all(p % d for d in range(2, p))]


def analyze(g: FiniteGroup, spec: str, cycles: str, extra_primes=()) -> Report:
    p = P.parse_cycles(cycles, g.order)
    try:
        s = verify(g, p)
    except NotSkewMorphism as exc:
        return Report(spec, P.format_cycles(p), False,
                      witness={"x": exc.x, "y": exc.y, "reason": str(exc)})
    prime_sets = set()
    ps = _prime_divisors(s.order)
    for r in range(len(ps) + 1):
        prime_sets.update(itertools.combinations(ps, r))
    prime_sets.update(tuple(sorted(set(q))) for q in extra_primes)
    orbit_pi = {}
    for q in sorted(prime_sets, key=lambda t: (len(t), t)):
        orbit_pi[",".join(map(str, q))] = list(orbit_pi_subgroup(s, q))
    return Report(
        spec, s.cycle_notation(), True,
        order=s.order,
        pi=list(s.pi),
        kernel=list(kernel(s)),
        core=list(core(s)),
        fix=list(fix(s)),
        smooth_subgroup=list(smooth_subgroup(s)),
        orbits=[list(c) for c in orbits(s).cycles],
        periodicity=periodicity(s),
        orbit_pi=orbit_pi,
        flags={"smooth": is_smooth(s), "kernel_preserving": is_kernel_preserving(s),
               "automorphism": s.is_automorphism()},
    )


# --- output -------------------------------------------------------------------


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return ";".join(map(str, v))
    if isinstance(v, dict):
        return ";".join(f"{k}={_csv_cell(x)}" for k, x in v.items())
    if v is None:
        return ""
    return v


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def emit(rows: list[dict], fmt: str, text_line) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt == "csv":
        return to_csv(rows)
    return "".join(text_line(r) + "\n" for r in rows)


# --- argument helpers -----------------------------------------------------------


def max_order(args) -> int:
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get(ENV_MAX_ORDER)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_ORDER}={env!r} is not an integer") from None
    return DEFAULT_MAX_ORDER


def enum_config(args) -> EnumConfig:
    threads = args.threads or 1
    return EnumConfig(max_group_order=max_order(args), parallel=threads > 1, workers=threads)


def parse_subgroup(g: FiniteGroup, text: str) -> Subgroup:
    """``a``, ``a2``, ``a2b``, ``a2ab`` (dihedral groups) or an index list ``0,2,4``."""
    text = text.strip()
    if text in ("a", "a2", "a2b", "a2ab"):
        if g.kind[0] != "dihedral":
            raise UsageError(f"subgroup name {text!r} needs a dihedral group")
        return dihedral_subgroup(g.kind[1], text, g)
    try:
        idx = [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad subgroup spec {text!r}") from None
    if any(not 0 <= x < g.order for x in idx):
        raise UsageError(f"subgroup index out of range in {text!r}")
    return make_subgroup(g, [0, *idx])


def parse_filter(g: FiniteGroup, text: str | None):
    if text is None:
        return None
    if text.startswith("kernel="):
        return kernel_equals(parse_subgroup(g, text[len("kernel="):]))
    if text not in PREDICATES:
        raise UsageError(f"unknown filter {text!r}")
    return PREDICATES[text]


# --- commands -------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    g = make_group(args.group)
    pred = parse_filter(g, args.filter)
    skews = enumerate_skew_morphisms(g, enum_config(args))
    if pred is not None:
        skews = [s for s in skews if pred(s)]
    rows = [skew_record(s) for s in skews]
    if args.out == "text":
        out.write(f"{len(rows)} skew-morphisms of {g.name}\n")
    out.write(emit(rows, args.out, lambda r: (
        f"{r['cycles']}  order={r['order']} kernel={r['kernel']}"
        f"{' smooth' if r['smooth'] else ''}")))
    return EXIT_OK


def cmd_classify(args, out) -> int:
    cfg = enum_config(args)
    if args.cross_check and 2 * args.n > cfg.max_group_order:
        raise BoundExceeded(f"cross-check needs |D_n| = {2 * args.n} <= bound {cfg.max_group_order}")
    catalog: Catalog = classify_smooth(args.n, cfg)
    rows = [r.to_dict() for r in catalog.records]
    if args.out == "json":
        out.write(catalog.to_json() + "\n")
    else:
        out.write(emit(rows, args.out, lambda r: (
            f"{r['provenance']:<19} order={r['order']:<3} kernel={r['kernel']} "
            f"params={r['params']} {P.format_cycles(r['perm'])}")))
    for phi, params in catalog.collisions:
        log.info("%d parameter tuples give %s", len(params), P.format_cycles(phi))
    if catalog.flagged():
        log.warning("%d records found only by the oracle", len(catalog.flagged()))
    if not args.cross_check:
        return EXIT_OK
    cc = cross_check(args.n, cfg, catalog)
    status = sys.stderr if args.out != "text" else out
    for name, (cat, orc) in cc.parts.items():
        status.write(f"kernel {name}: catalog {len(cat)} oracle {len(orc)}\n")
    for phi in sorted(cc.missing()):
        status.write(f"missing {P.format_cycles(phi)}\n")
    for phi in sorted(cc.extra()):
        status.write(f"extra {P.format_cycles(phi)}\n")
    status.write(f"cross-check n={args.n}: {'PASS' if cc.passed else 'FAIL'}\n")
    return EXIT_OK if cc.passed else EXIT_CHECK


def cmd_analyze(args, out) -> int:
    g = make_group(args.group)
    extra = []
    for q in args.primes or ():
        try:
            extra.append([int(t) for t in q.split(",") if t.strip()])
        except ValueError:
            raise UsageError(f"bad prime set {q!r}") from None
    rep = analyze(g, args.group, args.perm, extra)
    d = rep.to_dict()
    if args.out == "json":
        out.write(json.dumps(d, indent=1) + "\n")
    elif args.out == "csv":
        out.write(to_csv([d]))
    else:
        for k, v in d.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    """Re-verify every record of a catalog file produced by ``classify``."""
    with open(args.catalog) as fh:
        text = fh.read()
    try:
        records = catalog_from_json(text)
    except (ValueError, KeyError, InvalidParams) as exc:
        out.write(f"invalid catalog: {exc}\n")
        return EXIT_CHECK
    bad = [r for r in records if not is_smooth(r.skew)]
    for r in bad:
        out.write(f"not smooth: {r.skew.cycle_notation()}\n")
    out.write(f"{len(records)} records, {len(bad)} failing\n")
    return EXIT_CHECK if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", choices=("json", "csv", "text"), default="text")
    common.add_argument("--max-order", type=int, default=None,
                        help=f"oracle bound on |G| (env {ENV_MAX_ORDER}, default {DEFAULT_MAX_ORDER})")
    common.add_argument("--threads", type=int, default=1, help="oracle worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="skewmorph", description="Skew-morphisms of small finite groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list all skew-morphisms of a group")
    p.add_argument("--group", required=True, help="cyclic:<n>, dihedral:<n> or table:<path>")
    p.add_argument("--filter", help="smooth, kernel-preserving, automorphism or kernel=<subgroup>")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="smooth skew-morphisms of D_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cross-check", action="store_true", help="compare with the oracle")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("analyze", parents=[common], help="invariants of one permutation")
    p.add_argument("--group", required=True)
    p.add_argument("perm", help="cycle notation, e.g. '(1,2,4)(3,5)'")
    p.add_argument("--primes", action="append", metavar="P[,Q...]",
                   help="extra prime set for the Orbit^Pi subgroup (repeatable)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="re-check a catalog JSON file")
    p.add_argument("catalog")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.threads is not None and args.threads < 1:
        sys.stderr.write("--threads must be >= 1\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except BoundExceeded as exc:
        sys.stderr.write(f"bound exceeded: {exc}\n")
        return EXIT_BOUND
    except (UsageError, GroupError, InvalidParams, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
