"""Command-line front end.

    multicurve invariants rigid --n 2 --degL -3 --a 1 --k 1 --degE 0 --degF 1
    multicurve certify theo3 --n 2 --degL -3 --a 1 --k 1 --degE 0 --degF 1 \\
        --premise E=stable --premise V=stable
    multicurve scan --n 2 --g 2 --degL -3 --a 1 --k 1 --delta 0:2 --epsilon 0:0 --format csv
    multicurve verify-lemma --rank-max 2 --deg-max 3 --format json

Exit status: 0 on success, 2 on usage errors, 1 on domain errors. Slopes are
printed as exact fractions.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import random
import sys
from fractions import Fraction

from . import core, duality, moduli, sampling, stability
from .core import BundleOnC, CurveContext, Invariants, QlfType, RigidSheaf, VectorBundleCn
from .errors import InvalidInput, MulticurveError
from .stability import Certificate, Premise, Status

SCHEMA_VERSION = "1"
CSV_HEADER = "delta,epsilon,R,d,nonempty,dim"

PREMISE_SUBJECTS = {
    "theo1": {
        "bracket": "p_bracket",
        "bidual": "p_bidual",
        "dual-bracket": "p_dual_bracket",
        "dual-bidual": "p_dual_bidual",
    },
    "theo2": {"E": "p_restriction"},
    "theo3": {"E": "p_E", "F": "p_F", "V": "p_V"},
    "theo5": {"E": "p_E", "Ephi": "p_Ephi"},
}


class UsageError(Exception):
    pass


# -- serialization ------------------------------------------------------------


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _inv(inv: Invariants) -> dict:
    return {"R": inv.R, "Deg": inv.Deg, "slope": _frac(inv.slope) if inv.R else None}


def _bundle(b: BundleOnC) -> dict:
    return {"rank": b.rank, "deg": b.deg, "slope": _frac(b.slope) if b.rank else None}


def _certificate(cert: Certificate) -> tuple[dict, list]:
    result = {
        "conclusion": str(cert.conclusion),
        "rule": cert.rule,
        "premises": [
            {"subject": p.subject, "status": str(p.status), "origin": str(p.origin)}
            for p in cert.premises
        ],
        "invariants": {name: _inv(inv) for name, inv in cert.invariants},
    }
    checks = [
        {
            "description": c.description,
            "left": _frac(c.left),
            "relation": c.relation,
            "right": _frac(c.right),
            "holds": c.holds,
            "strict": c.strict,
        }
        for c in cert.checks
    ]
    return result, checks


def emit_csv(rows) -> bytes:
    """Scan rows as UTF-8 CSV: fixed header, decimal integers, ``true``/``false``, LF."""
    lines = [CSV_HEADER]
    for r in rows:
        flag = "true" if r.nonempty else "false"
        lines.append(f"{r.delta},{r.epsilon},{r.R},{r.d},{flag},{r.dim}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _scalar(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render_table(envelope: dict, stream) -> None:
    bold = stream.isatty() and "NO_COLOR" not in os.environ
    title = envelope["command"]
    stream.write(f"\033[1m{title}\033[0m\n" if bold else f"{title}\n")
    pairs = list(_flatten(envelope["result"]))
    for i, c in enumerate(envelope.get("checks", [])):
        mark = "ok" if c["holds"] else "FAILED"
        pairs.append((f"check[{i}]", f"{c['left']} {c['relation']} {c['right']}  ({c['description']}) {mark}"))
    width = max((len(k) for k, _ in pairs), default=0)
    for k, v in pairs:
        stream.write(f"  {k.ljust(width)}  {_scalar(v)}\n")


def _render_csv(envelope: dict, stream) -> None:
    stream.write("field,value\n")
    for k, v in _flatten(envelope["result"]):
        stream.write(f"{k},{_scalar(v)}\n")


def _emit(envelope: dict, fmt: str, stream, rows=None) -> None:
    if fmt == "json":
        stream.write(json.dumps(envelope, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        if rows is not None:
            stream.write(emit_csv(rows).decode("utf-8"))
        else:
            _render_csv(envelope, stream)
    else:
        _render_table(envelope, stream)


# -- argument parsing ---------------------------------------------------------


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        lo_i = int(lo)
        return lo_i, int(hi) if hi else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(curve=True, genus_required=False):
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    if curve:
        p.add_argument("--n", type=int, required=True, help="multiplicity")
        p.add_argument("--g", type=int, required=genus_required, default=0, help="genus of C")
        p.add_argument("--degL", type=int, required=True, help="deg(L) < 0")
    return p


def _premise_arg(p):
    p.add_argument(
        "--premise",
        action="append",
        default=[],
        metavar="SUBJECT=STATUS",
        help="declared status (stable, semistable, unknown); unlisted subjects are unknown",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multicurve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{invariants,certify,moduli,scan,verify-lemma,hn}"
    )
    common = _common()

    inv = sub.add_parser("invariants", help="numerical invariants").add_subparsers(
        dest="what", required=True
    )
    p = inv.add_parser("rigid", parents=[common], help="rigid-type sheaf a O_n + O_k")
    for name in ("a", "k", "degE", "degF"):
        p.add_argument(f"--{name}", type=int, required=True)
    p = inv.add_parser("vb", parents=[common], help="vector bundle on C_n")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p = inv.add_parser("qlf", parents=[common], help="quasi locally free type")
    p.add_argument("--m", type=_int_list, required=True, help="m_1,...,m_n")
    p = inv.add_parser("slice", parents=[common], help="sheaves attached to a filtration step")
    for name in ("k", "R", "Deg", "subR", "subDeg"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--t", type=int, default=0, help="torsion length of E|C_k")
    p = inv.add_parser("dual", parents=[common], help="invariants of the dual")
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--Deg", type=int, required=True)
    p.add_argument("--torsion", type=int, default=0)

    cert = sub.add_parser("certify", help="stability certificates").add_subparsers(
        dest="rule", required=True
    )
    p = cert.add_parser("theo1", parents=[common], help="general criterion at step k")
    for name in ("k", "R", "Deg", "subR", "subDeg"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--relaxed", action="store_true", help="one stable sheaf per pair suffices")
    _premise_arg(p)
    p = cert.add_parser("theo2", parents=[common], help="vector bundles")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    _premise_arg(p)
    p = cert.add_parser("theo3", parents=[common], help="rigid-type sheaves")
    for name in ("a", "k", "degE", "degF"):
        p.add_argument(f"--{name}", type=int, required=True)
    _premise_arg(p)
    p = cert.add_parser("theo5", parents=[common], help="kernel of a bundle onto O_Z")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    _premise_arg(p)

    mod = sub.add_parser("moduli", help="moduli-space numbers").add_subparsers(
        dest="what", required=True
    )
    with_genus = _common(genus_required=True)
    for name, parents in (("rd", common), ("dim", with_genus), ("nonempty", with_genus)):
        p = mod.add_parser(name, parents=[parents])
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if name != "dim":
            p.add_argument("--epsilon", type=int, required=True)
            p.add_argument("--delta", type=int, required=True)
    p = mod.add_parser("vb-rd", parents=[common])
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p = mod.add_parser("ext-dim", parents=[_common(curve=False)])
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--source", type=_int_list, required=True, metavar="RANK,DEG")
    p.add_argument("--target", type=_int_list, required=True, metavar="RANK,DEG")
    p.add_argument("--hom-dim", type=int, required=True)

    p = sub.add_parser("scan", parents=[with_genus], help="tabulate the non-emptiness band")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=_range, required=True, metavar="LO:HI")
    p.add_argument("--epsilon", type=_range, required=True, metavar="LO:HI")

    p = sub.add_parser("verify-lemma", parents=[_common(curve=False)], help="exhaustive slope-lemma oracle")
    p.add_argument("--rank-max", type=int, required=True)
    p.add_argument("--deg-max", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("hn", parents=[_common(curve=False)], help="rank-2 example on a double curve")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--degL", type=int, required=True)
    p.add_argument("--dD", type=int, required=True, help="degree of D restricted to C")

    p = sub.add_parser("selftest", parents=[_common(curve=False)])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    return parser


def _premises(args, rule: str) -> dict:
    allowed = PREMISE_SUBJECTS[rule]
    out = {}
    for item in args.premise:
        name, sep, status = item.partition("=")
        if not sep or name not in allowed:
            raise UsageError(f"bad premise {item!r}; subjects for {rule}: {', '.join(allowed)}")
        try:
            out[allowed[name]] = Premise(name, Status.parse(status))
        except InvalidInput as exc:
            raise UsageError(str(exc)) from None
    return out


# -- dispatch -----------------------------------------------------------------


def _ctx(args) -> CurveContext:
    return CurveContext(args.n, args.g, args.degL)


def _slice(args) -> duality.FiltrationSlice:
    return duality.FiltrationSlice(
        _ctx(args), Invariants(args.R, args.Deg), Invariants(args.subR, args.subDeg), args.k, args.t
    )


def _run_invariants(args):
    ctx = _ctx(args)
    if args.what == "rigid":
        s = RigidSheaf(ctx, args.a, args.k, BundleOnC(args.a + 1, args.degE), BundleOnC(args.a, args.degF))
        star = core.star_sequence(s)
        return {
            "total": _inv(core.rigid_invariants(s)),
            "E": _bundle(s.E),
            "F": _bundle(s.F),
            "V": _bundle(core.rigid_V(s)),
            "first_graded": [_bundle(b) for b in core.first_graded(s)],
            "second_graded": [_bundle(b) for b in core.second_graded(s)],
            "star_sequence": [_inv(t) for t in star.terms],
            "star_sequence_additive": core.additivity_check(star),
        }, []
    if args.what == "vb":
        v = VectorBundleCn(ctx, BundleOnC(args.r, args.delta))
        return {
            "total": _inv(core.vb_invariants(v)),
            "graded": [_bundle(b) for b in v.graded()],
        }, []
    if args.what == "qlf":
        ty = QlfType(ctx, args.m)
        cls = core.classify_rigid(ty)
        return {"m": list(ty.m), "R": core.qlf_rank(ty), "class": cls.kind, "a": cls.a, "k": cls.k}, []
    if args.what == "slice":
        sl = _slice(args)
        d = duality.slice_derived(sl)
        left, right = duality.cor2_sides(sl)
        result = {name: _inv(inv) for name, inv in d.as_dict().items()}
        checks = [
            {
                "description": "mu((E^v)|C_k) - mu((E^v)_k) == mu(E_k(-k)) - mu(E^(k)) + t(1/R(E^(k)) + 1/R(E_k))",
                "left": _frac(left),
                "relation": "==",
                "right": _frac(right),
                "holds": left == right,
                "strict": False,
            }
        ]
        return result, checks
    inv = Invariants(args.R, args.Deg)
    return {"dual": _inv(duality.dual_invariants(inv, args.torsion, ctx))}, []


def _run_certify(args):
    ctx = _ctx(args)
    prem = _premises(args, args.rule)
    if args.rule == "theo1":
        cert = stability.theo1_certify(_slice(args), relaxed=args.relaxed, **prem)
    elif args.rule == "theo2":
        cert = stability.theo2_certify(VectorBundleCn(ctx, BundleOnC(args.r, args.delta)), **prem)
    elif args.rule == "theo3":
        s = RigidSheaf.from_degrees(ctx, args.a, args.k, args.degE, args.degF)
        cert = stability.theo3_certify(s, **prem)
    else:
        cert = stability.theo5_certify(ctx, BundleOnC(args.r, args.delta), args.z, **prem)
    return _certificate(cert)


def _run_moduli(args):
    if args.what == "ext-dim":
        if len(args.source) != 2 or len(args.target) != 2:
            raise UsageError("--source and --target take RANK,DEG")
        src, tgt = BundleOnC(*args.source), BundleOnC(*args.target)
        return {"ext1": moduli.ext_dim_rr(args.g, src, tgt, args.hom_dim)}, []
    ctx = _ctx(args)
    if args.what == "vb-rd":
        return {"total": _inv(moduli.vb_moduli_rd(ctx, args.r, args.delta))}, []
    if args.what == "dim":
        return {"dim": moduli.moduli_dim(ctx, args.a, args.k)}, []
    p = moduli.ModuliPoint(ctx, args.a, args.k, args.epsilon, args.delta)
    if args.what == "rd":
        return {"total": _inv(moduli.moduli_rd(p))}, []
    return {"nonempty": moduli.moduli_nonempty(p), "total": _inv(moduli.moduli_rd(p))}, []


def _row(r) -> dict:
    return {"delta": r.delta, "epsilon": r.epsilon, "R": r.R, "d": r.d, "nonempty": r.nonempty, "dim": r.dim}


def _instance(inst) -> dict:
    return {name: _inv(getattr(inst, name)) for name in ("A", "A2", "B", "B2", "E", "E2")}


def _selftest(args):
    rng = random.Random(args.seed)
    failures = {"duality": 0, "cor2": 0, "filtrations": 0, "eqX": 0}
    for _ in range(args.count):
        sl = sampling.random_slice(rng)
        d = duality.slice_derived(sl)
        if duality.dual_invariants(d.dual_total, 0, sl.ctx) != sl.total:
            failures["duality"] += 1
        if not duality.cor2_check(sl):
            failures["cor2"] += 1
        eq = stability.eqX_check(sl)
        first_b, second_b = stability.eqX_bracket_form(sl)
        if (eq.first, eq.second) != (second_b, first_b):
            failures["eqX"] += 1
        s = sampling.random_rigid_sheaf(rng)
        deg = core.rigid_invariants(s).Deg
        ok = (
            core.total_invariants(core.first_graded(s)).Deg == deg
            and core.total_invariants(core.second_graded(s)).Deg == deg
            and core.additivity_check(core.star_sequence(s))
        )
        failures["filtrations"] += not ok
    return {"seed": args.seed, "count": args.count, "failures": failures}, []


def _dispatch(args):
    if args.command == "invariants":
        return _run_invariants(args), None
    if args.command == "certify":
        return _run_certify(args), None
    if args.command == "moduli":
        return _run_moduli(args), None
    if args.command == "scan":
        ctx = _ctx(args)
        rows = moduli.scan(moduli.ModuliPoint(ctx, args.a, args.k), args.delta, args.epsilon)
        return ({"rows": [_row(r) for r in rows]}, []), rows
    if args.command == "verify-lemma":
        bad = stability.lemma_oracle(args.rank_max, args.deg_max, workers=args.workers)
        n_pool = args.rank_max * (2 * args.deg_max + 1)
        return ({"instances": n_pool**4, "counterexamples": [_instance(i) for i in bad]}, []), None
    if args.command == "hn":
        rep = stability.hn_analysis(CurveContext(args.n, args.g, args.degL), args.dD)
        return (
            {
                "mu_ideal": _frac(rep.mu_ideal),
                "mu_sub": _frac(rep.mu_sub),
                "mu_total": _frac(rep.mu_total),
                "delta_restriction": rep.delta_restriction,
                "destabilizes": rep.destabilizes,
                "semistable_boundary": rep.semistable_boundary,
            },
            [],
        ), None
    return _selftest(args), None


def _inputs(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("format", "command", "what", "rule"):
            continue
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _command_name(args) -> str:
    extra = getattr(args, "what", None) or getattr(args, "rule", None)
    return f"{args.command} {extra}" if extra else args.command


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    fmt = args.format
    name = _command_name(args)
    try:
        (result, checks), rows = _dispatch(args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except (MulticurveError, RecursionError, MemoryError) as exc:
        if not isinstance(exc, MulticurveError):
            stderr.write(f"error: {type(exc).__name__}: {exc}\n")
            return 1
        code = 2 if isinstance(exc, InvalidInput) else 1
        stderr.write(f"error: {exc.code}: {exc}\n")
        if fmt == "json":
            err = {"schema_version": SCHEMA_VERSION, "command": name, "inputs": _inputs(args),
                   "error": {"name": exc.code, "message": str(exc)}}
            stdout.write(json.dumps(err, indent=2, ensure_ascii=False) + "\n")
        else:
            stdout.write(f"error: {exc.code}\n")
        return code
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": name,
        "inputs": _inputs(args),
        "result": result,
        "checks": checks,
    }
    buf = io.StringIO()
    _emit(envelope, fmt, buf, rows)
    stdout.write(buf.getvalue())
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
