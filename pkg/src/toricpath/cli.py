"""Command-line front end.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for errors.
Stdout carries exactly one JSON document (or a table with
``--output table``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .config import RunConfig
from .disguised import connect_members, disguised_locus_membership, disguised_membership
from .dynamics import equivalence_residual, realize_on
from .egraph import complete_graph, weakly_reversible_subgraphs
from .errors import MembershipFailure, ToricPathError
from .flux import flux_membership, is_complex_balanced_flux
from .io import dumps, load_config, load_network, load_vector
from .toric import complex_balance_residual, toric_membership

_TOL_FLAGS = {"tol": "tol", "tol_lin": "tol_lin", "tol_loglin": "tol_loglin", "pos_eps": "pos_eps"}
_BUDGET_FLAGS = {"starts": "starts", "iters": "iters", "subset_cap": "subset_cap", "seed": "seed"}


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    tol = {v: getattr(args, k) for k, v in _TOL_FLAGS.items() if getattr(args, k) is not None}
    bud = {v: getattr(args, k) for k, v in _BUDGET_FLAGS.items() if getattr(args, k) is not None}
    cfg = replace(cfg, tolerances=replace(cfg.tolerances, **tol), budget=replace(cfg.budget, **bud))
    if args.samples is not None:
        cfg = replace(cfg, samples=args.samples)
    if args.output is not None:
        cfg = replace(cfg, output=args.output)
    return cfg


def _emit(doc: dict, cfg: RunConfig, table_rows=None):
    if cfg.output == "table" and table_rows is not None:
        for row in table_rows:
            print("  ".join(str(c) for c in row))
    else:
        print(dumps(doc))


def cmd_check_cb(args, cfg: RunConfig) -> int:
    G = load_network(args.network)
    k = load_vector(args.rates)
    if args.state:
        x = load_vector(args.state)
        res = complex_balance_residual(G, k, x)
        member = bool(np.all(k > 0)) and res <= cfg.tolerances.tol
        doc = {"member": member, "state": x.tolist(), "balance_residual": res}
    else:
        doc = toric_membership(G, k, cfg.tolerances).to_dict()
        member = doc["member"]
    _emit(doc, cfg, [("member", doc["member"]), ("reason", doc.get("reason", ""))])
    return 0 if member else 1


def cmd_equiv(args, cfg: RunConfig) -> int:
    G, k = load_network(args.network_a), load_vector(args.rates_a)
    H, h = load_network(args.network_b), load_vector(args.rates_b)
    res = equivalence_residual(G, k, H, h)
    ok = res <= cfg.tolerances.tol
    _emit({"equivalent": ok, "max_residual": res}, cfg, [("equivalent", ok), ("max_residual", res)])
    return 0 if ok else 1


def cmd_realize(args, cfg: RunConfig) -> int:
    H, h, G = load_network(args.source), load_vector(args.rates), load_network(args.target)
    t = cfg.tolerances
    k = realize_on(H, h, G, not args.signed, t.tol, t.pos_eps)
    doc = {"realizable": k is not None, "rates": None if k is None else k.tolist()}
    _emit(doc, cfg, [("realizable", k is not None)])
    return 0 if k is not None else 1


def cmd_flux(args, cfg: RunConfig) -> int:
    H, J, G = load_network(args.source), load_vector(args.flux), load_network(args.target)
    t = cfg.tolerances
    wit = flux_membership(H, J, G, not args.signed, t.tol, t.pos_eps)
    doc = {
        "member": wit is not None,
        "complex_balanced": is_complex_balanced_flux(H, J, t.tol),
        "witness_flux": None if wit is None else wit.tolist(),
    }
    _emit(doc, cfg, [("member", wit is not None)])
    return 0 if wit is not None else 1


def cmd_disguised(args, cfg: RunConfig) -> int:
    G, k = load_network(args.network), load_vector(args.rates)
    if args.target:
        cert = disguised_membership(
            G, k, load_network(args.target), args.signed, cfg.budget, cfg.tolerances
        )
    else:
        cert = disguised_locus_membership(G, k, args.signed, cfg.budget, cfg.tolerances)
    doc = cert.to_dict()
    _emit(doc, cfg, [("member", cert.member), ("search_exhausted", cert.search_exhausted), ("reason", cert.reason)])
    return 0 if cert.member else 1


def cmd_path(args, cfg: RunConfig) -> int:
    G = load_network(args.network)
    ka, kb = load_vector(args.rates_a), load_vector(args.rates_b)
    x0 = load_vector(args.x0) if args.x0 else None
    target = load_network(args.target) if args.target else None
    try:
        path = connect_members(
            G, ka, kb, args.signed, x0, cfg.budget, cfg.samples, cfg.tolerances, target=target
        )
    except MembershipFailure as exc:
        _emit({"error": "MembershipFailure", "message": str(exc)}, cfg, [("MembershipFailure", str(exc))])
        return 1
    rows = [("segment", "kind", "length", "max_residual")]
    rows += [(i, r["kind"], f"{r['length']:.6g}", f"{r['max_residual']:.3g}") for i, r in enumerate(path.summary())]
    _emit(path.to_dict(), cfg, rows)
    return 0


def cmd_enum_wr(args, cfg: RunConfig) -> int:
    G = load_network(args.network)
    base = complete_graph(G) if args.complete else G
    found = []
    for sub in weakly_reversible_subgraphs(base, args.max, cap=cfg.budget.subset_cap):
        idx = base.vertex_index
        found.append(sorted([idx[s], idx[t]] for s, t in sub.edge_keys))
    _emit({"count": len(found), "subgraphs": found}, cfg, [(json.dumps(e),) for e in found])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config; explicit flags override it")
    common.add_argument("--tol", type=float)
    common.add_argument("--tol-lin", dest="tol_lin", type=float)
    common.add_argument("--tol-loglin", dest="tol_loglin", type=float)
    common.add_argument("--pos-eps", dest="pos_eps", type=float)
    common.add_argument("--starts", type=int)
    common.add_argument("--iters", type=int)
    common.add_argument("--subset-cap", dest="subset_cap", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--output", choices=["json", "table"])

    p = argparse.ArgumentParser(prog="toricpath", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-cb", parents=[common], help="toric locus membership")
    s.add_argument("network")
    s.add_argument("rates")
    s.add_argument("--state", help="check this particular state instead of searching")
    s.set_defaults(func=cmd_check_cb)

    s = sub.add_parser("equiv", parents=[common], help="dynamical equivalence")
    for name in ("network_a", "rates_a", "network_b", "rates_b"):
        s.add_argument(name)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("realize", parents=[common], help="realize a mass-action system on a target graph")
    s.add_argument("source")
    s.add_argument("rates")
    s.add_argument("target")
    s.add_argument("--signed", action="store_true")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("flux", parents=[common], help="membership in J(H, G) or J_R(H, G)")
    s.add_argument("source")
    s.add_argument("flux")
    s.add_argument("target")
    s.add_argument("--signed", action="store_true")
    s.set_defaults(func=cmd_flux)

    s = sub.add_parser("disguised", parents=[common], help="disguised toric locus membership")
    s.add_argument("network")
    s.add_argument("rates")
    s.add_argument("--target")
    s.add_argument("--signed", action="store_true")
    s.set_defaults(func=cmd_disguised)

    s = sub.add_parser("path", parents=[common], help="certified path between two locus members")
    s.add_argument("network")
    s.add_argument("rates_a")
    s.add_argument("rates_b")
    s.add_argument("--signed", action="store_true")
    s.add_argument("--x0", help="JSON state used as the shared steady state")
    s.add_argument("--target", help="restrict realizations to this graph")
    s.set_defaults(func=cmd_path)

    s = sub.add_parser("enum-wr", parents=[common], help="enumerate weakly reversible subgraphs")
    s.add_argument("network")
    s.add_argument("--complete", action="store_true", help="enumerate inside the complete graph")
    s.add_argument("--max", type=int, default=None)
    s.set_defaults(func=cmd_enum_wr)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (ToricPathError, ValueError, TypeError, KeyError, IndexError, OSError, json.JSONDecodeError) as exc:
        print(f"toricpath {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
