"""Command-line front end.

    freemonoid compute --backend span --input graph.json --stages 5
    freemonoid check-lemmas --count 50 --seed 1

Every flag can also be set through an environment variable named
FREEMONOID_<FLAG> (e.g. FREEMONOID_BACKEND, FREEMONOID_STAGES); explicit
flags win.  Exit codes: 0 success, 1 a verification failed, 2 bad input or
usage, 3 the request exceeds a backend capability or configured bound.

JSON reports are canonical (sorted keys, no timing), so the same config and
seed produce byte-identical output; the text report includes wall time.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, checks, engine, kernel, oracles
from .fingrp import FinGrpBackend, TableGroup, element_orders, group_by_name, pointed_group
from .finset import FinSetBackend, pointed_set
from .kernel import CapabilityError, KernelError, ValidationError
from .span import SpanBackend, pointed_graph

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_CAPABILITY = 0, 1, 2, 3

BACKENDS = ("finset", "span", "fingrp")
CHECK_NAMES = ("laws", "universal", "lemmas", "alg-free")


def _env(name: str, cast, fallback):
    raw = os.environ.get("FREEMONOID_" + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise ValidationError(f"FREEMONOID_{name}={raw!r} is not a valid value")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stages", type=int, default=_env("STAGES", int, 5),
                        help="stage bound for the chain (default 5)")
    common.add_argument("--mode", choices=("reflexive", "dubuc", "both"),
                        default=_env("MODE", str, "reflexive"),
                        help="quotient assembly: joint pass, pushout chain, or both")
    common.add_argument("--checks", action="append", metavar="NAME",
                        default=None,
                        help="comma-separated subset of: " + ",".join(CHECK_NAMES))
    common.add_argument("--emit", choices=("text", "json", "dot"),
                        default=_env("EMIT", str, "text"))
    common.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    common.add_argument("--max-order", type=int, dest="max_order",
                        default=_env("MAX_ORDER", int, 12),
                        help="largest admissible finite-group order (default 12)")
    common.add_argument("--parallel", type=int, default=_env("PARALLEL", int, 0),
                        help="worker threads for per-slot stage work (0 = off)")

    p = argparse.ArgumentParser(prog="freemonoid",
                                description="free monoid chains over finite backends")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common],
                       help="build the stage chain for one input object")
    c.add_argument("--backend", choices=BACKENDS,
                   default=_env("BACKEND", str, "finset"))
    c.add_argument("--input", default=_env("INPUT", str, None),
                   help="input JSON file ('-' for stdin)")

    l = sub.add_parser("check-lemmas", parents=[common],
                       help="run the seeded colimit-preservation suites")
    l.add_argument("--backend", choices=BACKENDS + ("all",),
                   default=_env("BACKEND", str, "all"))
    l.add_argument("--count", type=int, default=_env("COUNT", int, 50),
                   help="instances per suite (default 50)")
    return p


def _parse_checks(args) -> list[str]:
    if not args.checks:
        return []
    out = []
    for chunk in args.checks:
        for name in chunk.split(","):
            name = name.strip()
            if not name:
                continue
            if name not in CHECK_NAMES:
                raise ValidationError(f"unknown check {name!r} "
                                      f"(expected one of {', '.join(CHECK_NAMES)})")
            if name not in out:
                out.append(name)
    return out


# --- input loading ---

def _load_json(path: str):
    try:
        data = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc}")
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}")


def load_pointed(backend_name: str, payload, max_order: int):
    """(pointed object, input summary dict) from a parsed JSON payload."""
    if backend_name == "finset":
        if not isinstance(payload, list) or not all(isinstance(s, str) for s in payload):
            raise ValidationError("finset input must be a JSON list of letters")
        be = FinSetBackend()
        return pointed_set(be, payload), {"letters": payload}
    if backend_name == "span":
        if not isinstance(payload, dict) or "vertices" not in payload \
                or "edges" not in payload:
            raise ValidationError(
                'span input must be {"vertices": [...], "edges": [[label,src,tgt],...]}')
        be = SpanBackend(payload["vertices"])
        return pointed_graph(be, payload["edges"]), {
            "vertices": list(payload["vertices"]),
            "edges": [list(e) for e in payload["edges"]]}
    if backend_name == "fingrp":
        be = FinGrpBackend()
        if isinstance(payload, str):
            g = group_by_name(payload)
            summary = {"group": payload.strip().lower(), "order": g.order}
        else:
            table = payload.get("table") if isinstance(payload, dict) else payload
            if not isinstance(table, list):
                raise ValidationError(
                    "fingrp input must be a catalogue name or a Cayley table")
            g = TableGroup(np.asarray(table, dtype=np.int64))
            summary = {"group": "table", "order": g.order}
        if g.order > max_order:
            raise CapabilityError(
                f"group order {g.order} exceeds bound {max_order} (--max-order)")
        return pointed_group(be, g), summary
    raise ValidationError(f"unknown backend {backend_name!r}")


# --- report assembly ---

def _plain(x):
    """Recursively strip numpy scalars so json.dumps output is canonical."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def _chain_block(chain: engine.ChainResult) -> dict:
    block = {
        "sizes": chain.sizes(),
        "connecting_iso": [kernel.is_iso(j) for j in chain.connecting[1:]],
        "quotient_tables": [s.epi.arrow.table.tolist() for s in chain.stages],
        "connecting_tables": [j.table.tolist() for j in chain.connecting[1:]],
        "stabilized_at": chain.stabilized_at,
        "top_stage": chain.top,
    }
    if chain.stabilized_at is not None:
        stable = chain.stage_obj(chain.stabilized_at)
        if stable.size <= 200:
            block["stable_labels"] = stable.labels()
    return block


def _oracle_block(backend_name: str, summary: dict, chain: engine.ChainResult) -> dict:
    sizes = chain.sizes()
    if backend_name == "finset":
        k = len(summary["letters"])
        expected = [oracles.word_count(k, n) for n in range(chain.top + 1)]
        return {"kind": "words-up-to-length", "expected_sizes": expected,
                "agrees": expected == sizes}
    if backend_name == "span":
        v, e = summary["vertices"], summary["edges"]
        expected = [len(oracles.enumerate_paths(v, e, n))
                    for n in range(chain.top + 1)]
        out = {"kind": "paths-up-to-length", "expected_sizes": expected,
               "agrees": expected == sizes}
        if oracles.graph_is_acyclic(v, e):
            want = oracles.longest_path_length(v, e)
            out["expected_stabilized_at"] = want
            out["agrees"] = out["agrees"] and chain.stabilized_at == want
        return out
    # fingrp: the stable object must be the independently computed quotient
    # by all commutators
    g = chain.pointed.carrier.factors[0] if chain.pointed.carrier.factors \
        else TableGroup(np.zeros((1, 1), dtype=np.int64))
    order, orders = oracles.brute_abelianization(g.table.tolist())
    out = {"kind": "abelianization", "expected_order": order,
           "expected_element_orders": orders}
    s = chain.stabilized_at
    if s is None:
        out["agrees"] = False
    else:
        stable = chain.stage_obj(s)
        got = element_orders(stable.factors[0]) if stable.factors else [1]
        out["agrees"] = stable.size == order and got == orders
    return out


def _universal_block(trunc: engine.MonoidTruncation, seed: int) -> dict:
    instances = []
    cases = [("seeded", 0), ("seeded", 1)]
    if trunc.chain.stabilized_at is not None and trunc.chain.stabilized_at >= 1:
        cases.append(("self", 0))
    for tag, i in cases:
        if tag == "self":
            target, f = checks.self_universal(trunc)
        else:
            rng = random.Random(("universal", seed, i).__repr__())
            target, f = checks.universal_for(trunc, rng)
        try:
            rep = engine.universal_map(trunc, target, f, uniqueness=True)
        except CapabilityError:  # uniqueness scan over budget; keep existence
            rep = engine.universal_map(trunc, target, f, uniqueness=False)
        instances.append({"kind": tag, "target_size": target.carrier.size,
                          "squares": rep.squares_checked, "unique": rep.unique})
    ok = all(inst["unique"] is not False for inst in instances)
    return {"instances": instances, "ok": ok}


def _lemma_suites(backend_name: str, count: int, seed: int) -> list[checks.SuiteReport]:
    if backend_name == "finset":
        return [
            checks.run_suite("pushout-tensoring (finset)",
                             lambda r: checks.lemma1_check("finset", r), count, seed),
            checks.run_suite("coequalizer-grid (finset)",
                             checks.lemma2_check, count, seed),
            checks.run_suite("diagonal-cointersection (finset)",
                             checks.proposition_check, count, seed),
        ]
    if backend_name == "span":
        return [checks.run_suite("pushout-tensoring (span)",
                                 lambda r: checks.lemma1_check("span", r), count, seed)]
    raise CapabilityError(
        "fingrp: the colimit-preservation suites need coproducts")


def _alg_free_block(pointed: engine.PointedObject, seed: int) -> dict:
    instances = []
    for i in range(3):
        rng = random.Random(("alg-free", seed, i).__repr__())
        act = checks.action_for(pointed, rng)
        instances.append({"carrier_size": act.carrier.size,
                          "holds": engine.alg_free_condition(pointed, act)})
    return {"instances": instances, "ok": all(i["holds"] for i in instances)}


def _emit_dot(chain: engine.ChainResult, out) -> None:
    """DOT digraph for span; other backends get a plain element table."""
    n = chain.stabilized_at if chain.stabilized_at is not None else chain.top
    obj = chain.stage_obj(n)
    backend = chain.pointed.backend
    if backend.name != "span":
        print(f"# stage {n} object ({obj.size} elements)", file=out)
        for i in range(obj.size):
            print(f"{i}\t{obj.label(i)}", file=out)
        if backend.name == "fingrp" and obj.factors:
            print("# multiplication", file=out)
            for row in obj.factors[0].table.tolist():
                print(" ".join(map(str, row)), file=out)
        return
    print("digraph stage {", file=out)
    print("  rankdir=LR;", file=out)
    for v in backend.vertices:
        print(f'  "{v}";', file=out)
    for i in range(obj.size):
        s = backend.vertices[int(obj.src_arr[i])]
        t = backend.vertices[int(obj.tgt_arr[i])]
        print(f'  "{s}" -> "{t}" [label="{obj.label(i)}"];', file=out)
    print("}", file=out)


def _print_text(report: dict, elapsed: float, out) -> None:
    cfg = report["config"]
    print(f"backend: {cfg['backend']}  mode: {cfg['mode']}  "
          f"stages: {cfg['stages']}  seed: {cfg['seed']}", file=out)
    for mode, block in sorted(report["chains"].items()):
        iso = " ".join("yes" if b else "no" for b in block["connecting_iso"])
        print(f"[{mode}] sizes: {' '.join(map(str, block['sizes']))}", file=out)
        print(f"[{mode}] connecting iso: {iso or '-'}", file=out)
        print(f"[{mode}] stabilized at: {block['stabilized_at']}", file=out)
        if "stable_labels" in block:
            print(f"[{mode}] stable object ({len(block['stable_labels'])}): "
                  + " ".join(block["stable_labels"]), file=out)
    if "modes_agree" in report:
        print(f"modes agree: {report['modes_agree']}", file=out)
    orc = report["oracle"]
    extra = ""
    if "expected_sizes" in orc:
        extra = f" expected sizes {orc['expected_sizes']}"
    elif "expected_order" in orc:
        extra = (f" expected order {orc['expected_order']}, element orders "
                 f"{orc['expected_element_orders']}")
    print(f"oracle [{orc['kind']}]: {'agrees' if orc['agrees'] else 'DISAGREES'}"
          + extra, file=out)
    for name, block in sorted(report.get("checks", {}).items()):
        if name == "laws":
            print(f"check laws: {'ok' if block['ok'] else 'FAIL'} "
                  f"({block['checked']} identities"
                  + (f", failures: {block['failures']}" if block["failures"] else "")
                  + ")", file=out)
        elif name == "universal":
            uniq = [i["unique"] for i in block["instances"]]
            print(f"check universal: {'ok' if block['ok'] else 'FAIL'} "
                  f"({len(uniq)} targets, unique={uniq})", file=out)
        elif name == "lemmas":
            for s in block["suites"]:
                print(f"check lemmas [{s['name']}]: "
                      f"{'ok' if s['ok'] else 'FAIL'} ({s['instances']} instances)",
                      file=out)
        elif name == "alg-free":
            print(f"check alg-free: {'ok' if block['ok'] else 'FAIL'} "
                  f"({len(block['instances'])} actions)", file=out)
    print(f"elapsed: {elapsed:.3f} s", file=out)
    print(f"overall: {'PASS' if report['ok'] else 'FAIL'}", file=out)


# --- subcommands ---

def cmd_compute(args) -> int:
    if not args.input:
        raise ValidationError("compute needs --input (path or '-')")
    if args.stages < 1:
        raise ValidationError("--stages must be at least 1")
    check_names = _parse_checks(args)
    payload = _load_json(args.input)
    pointed, summary = load_pointed(args.backend, payload, args.max_order)

    t0 = time.perf_counter()
    pool = ThreadPoolExecutor(args.parallel) if args.parallel > 1 else None
    try:
        modes = ["reflexive", "dubuc"] if args.mode == "both" else [args.mode]
        chains = {m: engine.run_chain(pointed, args.stages, m, pool) for m in modes}
        primary = chains[modes[0]]

        report = {
            "config": {"backend": args.backend, "mode": args.mode,
                       "stages": args.stages, "seed": args.seed,
                       "max_order": args.max_order},
            "input": summary,
            "chains": {m: _chain_block(c) for m, c in chains.items()},
            "oracle": _oracle_block(args.backend, summary, primary),
        }
        ok = report["oracle"]["agrees"]
        if len(chains) == 2:
            report["modes_agree"] = engine.chains_agree(*chains.values())
            ok = ok and report["modes_agree"]

        if check_names:
            trunc = engine.truncation(primary, pool)
            report["checks"] = {}
            for name in check_names:
                if name == "laws":
                    law = engine.monoid_laws(trunc)
                    block = {"checked": law.checked, "failures": law.failures,
                             "ok": law.ok}
                elif name == "universal":
                    block = _universal_block(trunc, args.seed)
                elif name == "lemmas":
                    suites = _lemma_suites(args.backend, 25, args.seed)
                    block = {"suites": [s.as_dict() for s in suites],
                             "ok": all(s.ok for s in suites)}
                else:
                    block = _alg_free_block(pointed, args.seed)
                report["checks"][name] = block
                ok = ok and block["ok"]
        report["ok"] = ok
    finally:
        if pool is not None:
            pool.shutdown()
    elapsed = time.perf_counter() - t0

    if args.emit == "json":
        print(json.dumps(_plain(report), sort_keys=True, separators=(",", ":")))
    elif args.emit == "dot":
        _emit_dot(primary, sys.stdout)
    else:
        _print_text(report, elapsed, sys.stdout)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_check_lemmas(args) -> int:
    if args.emit == "dot":
        raise ValidationError("check-lemmas emits text or json")
    kinds = ("finset", "span") if args.backend == "all" else (args.backend,)
    t0 = time.perf_counter()
    suites = []
    for kind in kinds:
        suites.extend(_lemma_suites(kind, args.count, args.seed))
    ok = all(s.ok for s in suites)
    report = {"config": {"backend": args.backend, "count": args.count,
                         "seed": args.seed},
              "suites": [s.as_dict() for s in suites], "ok": ok}
    if args.emit == "json":
        print(json.dumps(_plain(report), sort_keys=True, separators=(",", ":")))
    else:
        for s in suites:
            print(f"{s.name}: {'ok' if s.ok else 'FAIL'} "
                  f"({s.instances} instances"
                  + (f", failures: {s.failures}" if s.failures else "") + ")")
        print(f"elapsed: {time.perf_counter() - t0:.3f} s")
        print(f"overall: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if args.command == "compute":
            return cmd_compute(args)
        return cmd_check_lemmas(args)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except KernelError as exc:  # a verification failed mid-run
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
