"""Command-line front end.

    pangular eval    --space l2:2 --x 3,0 --y 0,4 --p 2
    pangular bounds  --triple 1,4,4 --p -1 [--id NEW_k]
    pangular chain   --p 2 --triple 1,4,4
    pangular verify  --property chain_p_ge_1 --space l2:3 --p 2
    pangular probe   --space linf:2 --ineq POMOCNA --r -1
    pangular probe   --space lp:1:2 --classify
    pangular catalog

Exit codes: 0 success, 1 violation found (verify, probe, chain), 2 usage or
input error. Errors go to stderr as one line ``pangular: error <CODE>: ...``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import bounds as B
from .bounds import BoundId
from .distance import DistanceParams, alpha_p, beta_p, ips_alpha_p_sq
from .errors import PangularError
from .probe import SearchConfig, classify_space, search_violation
from .space import norm, parse_space, triple_of, validate_triple
from .verify import SampleConfig, check_property, property_ids

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2

# built-in defaults; a --config file overrides these and explicit flags override both
DEFAULTS = {
    "space": "l2:2",
    "p": 0.0,
    "q": None,
    "r": None,
    "seed": None,
    "n_samples": 10_000,
    "tol": 1e-9,
    "format": None,
    "output": None,
    "restarts": 8,
    "steps": 400,
    "step_scale": 0.5,
}


class UsageError(Exception):
    code = "E_USAGE"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(s: str) -> float:
    return float(s)


def _vec(s: str) -> list[float]:
    try:
        return [float(t) for t in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {s!r}") from None


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--space", help="l2:3, lp:1.0:2, linf:2 or wl2:2:w=1,4")
    common.add_argument("--p", type=_num)
    common.add_argument("--q", type=_num)
    common.add_argument("--r", type=_num, help="power-mean index; inf and -inf allowed")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--config", help="JSON file with defaults for any flag")
    common.add_argument("--seed", type=int, help="default: $PANGULAR_SEED or 0")
    common.add_argument("--n-samples", dest="n_samples", type=int)
    common.add_argument("--tol", type=_num)

    parser = _Parser(prog="pangular", description="p-angular distance bounds and inner-product tests")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate distances for one pair")
    p.add_argument("--x", type=_vec, required=True)
    p.add_argument("--y", type=_vec, required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate registry bounds")
    p.add_argument("--triple", type=_vec)
    p.add_argument("--x", type=_vec)
    p.add_argument("--y", type=_vec)
    p.add_argument("--alpha", type=_num, help="angular distance, for ids that need it")
    p.add_argument("--alpha-q", dest="alpha_q", type=_num)
    p.add_argument("--id", dest="ids", action="append", help="repeatable; default all")

    p = sub.add_parser("chain", parents=[common], help="ordering chain for one triple")
    p.add_argument("--triple", type=_vec, required=True)
    p.add_argument("--alpha-p", dest="alpha_p", type=_num,
                   help="measured alpha_p; default is the inner-product value")

    p = sub.add_parser("verify", parents=[common], help="seeded property check")
    p.add_argument("--property", required=True, help="property id, or 'list'")

    p = sub.add_parser("probe", parents=[common], help="counterexample search")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ineq")
    g.add_argument("--classify", action="store_true")
    p.add_argument("--restarts", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--step-scale", dest="step_scale", type=_num)

    sub.add_parser("catalog", parents=[common], help="list the bound registry")
    return parser


def _resolve(args) -> dict:
    """Merge built-in defaults, the optional JSON config and explicit flags."""
    opts = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        unknown = set(cfg) - set(DEFAULTS) - {"x", "y", "triple", "alpha", "alpha_q",
                                                "alpha_p", "ids", "property", "ineq"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(cfg)
    for k, v in vars(args).items():
        if v is not None and v is not False:
            opts[k] = v
        else:
            opts.setdefault(k, v)
    if opts["seed"] is None:
        env = os.environ.get("PANGULAR_SEED")
        try:
            opts["seed"] = int(env) if env else 0
        except ValueError:
            raise UsageError(f"PANGULAR_SEED is not an integer: {env!r}") from None
    return opts


def _params(o) -> DistanceParams:
    return DistanceParams(float(o["p"]), o["q"], o["r"])


def _cmd_eval(o):
    space = parse_space(o["space"])
    x, y = o["x"], o["y"]
    p = float(o["p"])
    row = {
        "p": p,
        "alpha_p": alpha_p(space, x, y, p),
        "beta_p": beta_p(space, x, y, p),
        "alpha": alpha_p(space, x, y, 0.0),
        "norm_x": norm(space, x),
        "norm_y": norm(space, y),
        "norm_diff": norm(space, [u - v for u, v in zip(x, y)]),
    }
    if o["format"] == "json":
        return _json({"schema": 1, "space": space.to_syntax(), **row}), EXIT_OK
    return _csv(list(row), [list(row.values())]), EXIT_OK


def _cmd_bounds(o):
    params = _params(o)
    alpha, alpha_q = o.get("alpha"), o.get("alpha_q")
    if o.get("x") is not None or o.get("y") is not None:
        if o.get("x") is None or o.get("y") is None:
            raise UsageError("--x and --y go together")
        space = parse_space(o["space"])
        t = triple_of(space, o["x"], o["y"])
        alpha = alpha_p(space, o["x"], o["y"], 0.0) if alpha is None else alpha
        if alpha_q is None and params.q is not None:
            alpha_q = alpha_p(space, o["x"], o["y"], params.q)
    elif o.get("triple") is not None:
        if len(o["triple"]) != 3:
            raise UsageError("--triple takes exactly three numbers a,b,c")
        t = validate_triple(*o["triple"])
    else:
        raise UsageError("bounds needs --triple or --x/--y")

    explicit = o.get("ids")
    ids = [B.get_spec(i).id for i in explicit] if explicit else [s.id for s in B.bound_catalog()]
    rows = []
    for bid in ids:
        spec = B.get_spec(bid)
        missing = ("alpha" in spec.needs and alpha is None) or (
            "alpha_q" in spec.needs and alpha_q is None)
        if missing:
            if explicit:
                raise UsageError(f"{bid.value} needs --alpha/--alpha-q or --x/--y")
            continue
        try:
            res = B.evaluate_bound(bid, params, t, alpha=alpha, alpha_q=alpha_q)
        except PangularError:
            if explicit:
                raise
            continue
        rows.append(res)
    if o["format"] == "json":
        return _json({"schema": 1, "params": params.to_dict(), "triple": list(t.as_tuple()),
                      "results": [r.to_dict() for r in rows]}), EXIT_OK
    header = ["id", "regime", "direction", "value", "meaningful", "requires_ips"]
    table = [[r.id.value, r.regime, r.direction.value, r.value, r.meaningful, r.requires_ips]
             for r in rows]
    return _csv(header, table), EXIT_OK


def _cmd_chain(o):
    if len(o["triple"]) != 3:
        raise UsageError("--triple takes exactly three numbers a,b,c")
    t = validate_triple(*o["triple"])
    p = float(o["p"])
    ap = o.get("alpha_p")
    if ap is None:
        ap = math.sqrt(ips_alpha_p_sq(t, p))
    rep = B.chain_values(p, t, ap)
    code = EXIT_OK if rep.passed else EXIT_FOUND
    if o["format"] == "json":
        return _json(rep.to_dict()), code
    header = ["p", "regime", *B.CHAIN_KEYS, "violations"]
    row = [p, rep.regime, *(v for _, v in rep.ordered()), ";".join(rep.violations)]
    return _csv(header, [row]), code


def _cmd_verify(o):
    if o["property"] == "list":
        return "\n".join(property_ids()) + "\n", EXIT_OK
    cfg = SampleConfig(o["seed"], int(o["n_samples"]), parse_space(o["space"]))
    rep = check_property(o["property"], cfg, _params(o), float(o["tol"]))
    code = EXIT_OK if rep.passed else EXIT_FOUND
    if o["format"] == "csv":
        return rep.violations_csv(), code
    return rep.to_json() + "\n", code


def _cmd_probe(o):
    space = parse_space(o["space"])
    cfg = SearchConfig(restarts=int(o["restarts"]), steps_per_restart=int(o["steps"]),
                       seed=o["seed"], step_scale=float(o["step_scale"]))
    if o.get("classify"):
        verdict = classify_space(space, cfg)
        code = EXIT_FOUND if verdict.status == "NOT_IPS" else EXIT_OK
        if o["format"] == "csv":
            rows = [[r.ineq_id.value, r.params.p, r.params.q, r.params.r, r.margin, r.found]
                    for r in verdict.results]
            return _csv(["ineq_id", "p", "q", "r", "margin", "found"], rows), code
        return _json(verdict.to_dict()), code
    res = search_violation(o["ineq"], _params(o), space, cfg)
    code = EXIT_FOUND if res.found else EXIT_OK
    if o["format"] == "csv":
        x, y = res.best_pair
        row = [res.ineq_id.value, res.margin, res.found,
               " ".join(_fmt(float(v)) for v in x), " ".join(_fmt(float(v)) for v in y)]
        return _csv(["ineq_id", "margin", "found", "x", "y"], [row]), code
    return _json(res.to_dict()), code


def _cmd_catalog(o):
    rows = [s.to_row() for s in B.bound_catalog()]
    if o["format"] == "json":
        return _json({"schema": 1, "bounds": rows}), EXIT_OK
    header = ["id", "direction", "param_domain", "scope", "citation"]
    return _csv(header, [[r[h] for h in header] for r in rows]), EXIT_OK


_COMMANDS = {
    "eval": (_cmd_eval, "csv"),
    "bounds": (_cmd_bounds, "csv"),
    "chain": (_cmd_chain, "csv"),
    "verify": (_cmd_verify, "json"),
    "probe": (_cmd_probe, "json"),
    "catalog": (_cmd_catalog, "csv"),
}


def run(argv=None) -> int:
    """Run one CLI invocation and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        opts = _resolve(args)
        handler, default_format = _COMMANDS[args.command]
        opts["format"] = opts["format"] or default_format
        text, code = handler(opts)
        if opts["output"]:
            with open(opts["output"], "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except (UsageError, PangularError) as exc:
        msg = " ".join(str(exc).split())
        print(f"pangular: error {exc.code}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"pangular: error E_INPUT: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
