"""Command-line front end.

Exit codes: 0 when every requested trial or verification completed and
passed, 1 when a verification failed, 2 for unreadable or malformed input.

Seeds: ``--seed`` is a 64-bit master seed.  Trial ``t`` runs with
``SeedSequence(seed, spawn_key=(t,))`` and round ``i`` inside a run with
``SeedSequence(trial_seed, spawn_key=(i,))``, so every trial and round can be
regenerated independently.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import io as fileio
from .certificates.cuts import CutCertificate
from .certificates.learn import learn_simple_graph_one_query
from .certificates.linalg import exact_rank
from .certificates.verify import con_cert_report, verify_at_least_tau
from .certificates.witness import (CutRankWitness, cert_to_witness, cycle_rank_check,
                                   witness_to_cert)
from .connectivity import SpanningForestConfig, recover_one_from_all
from .experiments import ADAPTERS, FAMILIES, build_adapter, master_calls, run_experiment, scaling_rows
from .graph import generate
from .grouptesting import BatchedOrOracle, estimate_row_counts
from .oracles import QueryOracle
from .quantum import ChargePolicy
from .seeding import derive_rng

BUILTIN_CERTS = ("identity", "empty", "cut-incidence")


class InputError(Exception):
    """Missing or inconsistent command-line input; exit code 2."""


class VerificationFailed(Exception):
    """Raised after output is written, to select exit code 1."""


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flat_record(rec: dict) -> dict:
    row = {k: v for k, v in rec.items() if k not in ("ledger", "q_trace")}
    for model, count in rec["ledger"].items():
        row[f"ledger_{model}"] = count
    row["success"] = int(row["success"])
    return row


def _graph(args):
    if args.graph:
        return fileio.read_graph(args.graph)
    if args.family is None or args.n is None:
        raise InputError("give --graph or both --family and --n")
    return generate(args.family, args.n, args.seed, p=args.p, max_weight=args.max_weight)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="graph file (text 'n m' + 'u v w' lines, or JSON)")
    p.add_argument("--family", choices=FAMILIES + ("er",))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, default=None, help="edge probability for erdos_renyi")
    p.add_argument("--max-weight", type=int, default=1)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--out", help="write output here instead of stdout")


def _add_policy(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c-bel", type=float, default=2.0, help="BIS queries per attempt / sqrt(n)")
    p.add_argument("--c-rep", type=float, default=1.0, help="repetitions / ln n")
    p.add_argument("--inject-failures", action="store_true",
                   help="corrupt each simulated BIS master query with probability 1/n^3")


def _policy(args) -> ChargePolicy:
    return ChargePolicy(args.c_bel, args.c_rep, args.inject_failures)


# --- spanning forest ----------------------------------------------------

def cmd_spanning_forest(args) -> None:
    if args.graph:
        graph, family, n = fileio.read_graph(args.graph), None, None
    elif args.family is not None and args.n is not None:
        graph, family, n = None, args.family, args.n
    else:
        raise InputError("give --graph or both --family and --n")
    rep = run_experiment(model=args.model, seed=args.seed, trials=args.trials, family=family,
                         n=n, graph=graph, threads=args.threads, policy=_policy(args),
                         trace=args.trace, p=args.p, max_weight=args.max_weight)
    data = rep.to_dict()
    if args.format == "csv":
        _emit(_csv([_flat_record(r) for r in data["records"]]), args.out)
    else:
        _emit(_dumps(data), args.out)


def cmd_scaling(args) -> None:
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    rows = scaling_rows(family=args.family, n_list=n_list, model=args.model, seed=args.seed,
                        trials=args.trials, threads=args.threads)
    if args.format == "csv":
        _emit(_csv(rows), args.out)
    else:
        _emit(_dumps({"family": args.family, "model": args.model, "seed": args.seed,
                      "rows": rows}), args.out)


# --- group testing --------------------------------------------------------

def _split(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    red = derive_rng(seed, 0).random(n) < 0.5
    return np.flatnonzero(red) + 1, np.flatnonzero(~red) + 1


def cmd_recover(args) -> None:
    g = _graph(args)
    R, S = _split(g.n, args.seed)
    oracle, adapter = build_adapter(g, args.model, args.seed)
    delta = args.delta if args.delta is not None else SpanningForestConfig(g.n).delta
    res = recover_one_from_all(adapter, R, S, delta, derive_rng(args.seed, 1))
    S_set = set(S.tolist())
    need = sorted(int(i) for i in R if any(g.has_edge(int(i), j) for j in S_set))
    covered = sorted({i for i, _ in res.pairs})
    valid = all(g.has_edge(i, j) and j in S_set for i, j in res.pairs)
    ok = valid and covered == need
    _emit(_dumps({
        "n": g.n, "R": R.tolist(), "S": S.tolist(), "delta": delta,
        "pairs": sorted(res.pairs), "rows_with_neighbours": need,
        "failed_rows": sorted(res.failed_rows), "pairs_valid": valid, "ok": ok,
        "master_calls": master_calls(oracle, adapter), "ledger": oracle.ledger.as_dict(),
    }), args.out)
    if not ok:
        raise VerificationFailed


def cmd_estimate(args) -> None:
    g = _graph(args)
    R, S = _split(g.n, args.seed)
    oracle = QueryOracle(g, models=("master",))
    delta = args.delta if args.delta is not None else 0.01
    est = estimate_row_counts(BatchedOrOracle(oracle, R, S), delta, derive_rng(args.seed, 1))
    S_set = set(S.tolist())
    counts = [sum(1 for j in S_set if g.has_edge(int(i), j)) for i in est.rows]
    good = est.is_good(counts)
    _emit(_dumps({
        "n": g.n, "delta": delta, "queries": est.queries,
        "rows": [{"row": int(i), "count": c, "estimate": float(b), "good": bool(ok)}
                 for i, c, b, ok in zip(est.rows, counts, est.estimates, good)],
        "good_fraction": float(np.mean(good)) if len(good) else 1.0,
        "ledger": oracle.ledger.as_dict(),
    }), args.out)


def cmd_learn(args) -> None:
    g = _graph(args)
    oracle = QueryOracle(g, models=("linear",))
    learned = learn_simple_graph_one_query(oracle, g.n)
    ok = learned.edges == g.edges
    _emit(_dumps({"n": g.n, "edges": [[u, v] for u, v, _ in learned.edges], "exact": ok,
                  "ledger": oracle.ledger.as_dict()}), args.out)
    if not ok:
        raise VerificationFailed


# --- certificates -----------------------------------------------------------

def _certificate(source: str, n: int) -> CutCertificate:
    if source == "identity":
        return CutCertificate.identity(n)
    if source == "empty":
        return CutCertificate.empty(n)
    if source == "cut-incidence":
        return CutCertificate.cut_incidence(n)
    A = fileio.read_certificate(source)
    if A.n != n:
        raise fileio.FormatError(f"certificate is for n={A.n}, graph has n={n}")
    return A


def cmd_certificate(args) -> None:
    action = args.action
    if action == "cycle-bound":
        n = args.n
        if args.witness in (None, "cut-incidence"):
            X = CutRankWitness(n, CutCertificate.cut_incidence(n).rows, 1)
        else:
            X = fileio.read_witness(args.witness)
            n = X.n
        res = cycle_rank_check(X, n)
        _emit(_dumps({"n": n, "certified": res.certified, "bound": res.bound,
                      "rank_lower_bound": math.ceil(res.bound) if res.certified else None,
                      "rank_y_prime": res.rank_y_prime, "rank_x": res.rank_x,
                      "reason": res.reason}), args.out)
        if not res.certified:
            raise VerificationFailed
        return

    g = _graph(args)
    A = _certificate(args.cert, g.n)
    if action == "verify-con":
        rep = con_cert_report(A, g)
        out = {"ok": rep.ok, "tau_star": rep.tau_star, "k": A.k, "rank": exact_rank(A.rows),
               "shores_checked": rep.shores_checked}
        if not rep.ok:
            out["counterexample"] = {"shore": sorted(rep.shore), "weights": rep.counterexample}
        _emit(_dumps(out), args.out)
        if not rep.ok:
            raise VerificationFailed
    elif action == "verify-tau":
        if args.tau is None:
            raise InputError("verify-tau needs --tau")
        ok = verify_at_least_tau(A, g, Fraction(args.tau))
        _emit(_dumps({"ok": ok, "tau": Fraction(args.tau), "k": A.k}), args.out)
        if not ok:
            raise VerificationFailed
    elif action == "roundtrip":
        tau = Fraction(args.tau) if args.tau is not None else con_cert_report(A, g).tau_star
        if tau <= 0 or not verify_at_least_tau(A, g, tau):
            _emit(_dumps({"ok": False, "tau": tau, "reason": "certificate does not verify"}), args.out)
            raise VerificationFailed
        X = cert_to_witness(A, g, tau)
        B = witness_to_cert(X, g)
        rank_a, rank_x = exact_rank(A.rows), X.rank()
        ok = rank_x <= rank_a and B.k <= rank_a and verify_at_least_tau(B, g, tau)
        _emit(_dumps({"ok": ok, "tau": tau, "rank_cert": rank_a, "rank_witness": rank_x,
                      "rank_rebuilt": B.k, "witness": fileio.witness_to_json(X)}), args.out)
        if not ok:
            raise VerificationFailed


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="connquery",
        description=__doc__.split("\n\n")[0],
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spanning-forest", help="seeded spanning-forest trials")
    _add_graph_args(p)
    _add_common(p)
    _add_policy(p)
    p.add_argument("--model", choices=ADAPTERS, default="master")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1, help="worker processes for trials")
    p.add_argument("--trace", action="store_true", help="record active-set counts per round")
    p.set_defaults(func=cmd_spanning_forest)

    p = sub.add_parser("scaling", help="mean master queries across n")
    p.add_argument("--family", choices=FAMILIES + ("er",), default="cycle")
    p.add_argument("--n-list", default="64,256,1024")
    p.add_argument("--model", choices=ADAPTERS, default="master")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("recover", help="one recover-one-from-all call on a random split")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--model", choices=ADAPTERS, default="master")
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("estimate", help="row-count estimates on a random split")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--delta", type=float, default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("certificate", help="certificate verification jobs")
    p.add_argument("action", choices=("verify-con", "verify-tau", "roundtrip", "cycle-bound"))
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--cert", default="identity",
                   help="certificate JSON file or one of: " + ", ".join(BUILTIN_CERTS))
    p.add_argument("--witness", help="witness JSON for cycle-bound (default: cut incidence)")
    p.add_argument("--tau", help="rational threshold, e.g. 3/2")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("learn-one-query", help="learn a simple graph from one linear query")
    _add_graph_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_learn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except VerificationFailed:
        return 1
    except (OSError, ValueError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
