"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (not distinguishable / key
rejected), 2 attack inapplicable, 3 attack failure, 64 bad parameters,
66 unreadable or malformed input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import codes, hull, keyfile
from .attack import full_attack, verify_key
from .errors import ParamError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INAPPLICABLE = 2
EXIT_FAILURE = 3
EXIT_PARAM = 64
EXIT_FILE = 66

_OUTCOME_EXIT = {"success": EXIT_OK, "inapplicable": EXIT_INAPPLICABLE, "failure": EXIT_FAILURE}


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _params(args):
    return args.q, args.m, args.r, args.n


def cmd_keygen(args) -> int:
    inst = codes.keygen(*_params(args), args.seed, kind=args.kind)
    prefix = Path(args.out)
    pub_path = prefix.with_name(prefix.name + ".pub")
    sec_path = prefix.with_name(prefix.name + ".sec")
    keyfile.write(pub_path, keyfile.public_file(inst))
    keyfile.write(sec_path, keyfile.secret_file(inst))
    payload = {"public": str(pub_path), "secret": str(sec_path), "q": inst.q, "m": inst.m,
               "r": inst.r, "n": inst.n, "seed": inst.seed, "kind": inst.kind}
    _emit(args, payload, [f"wrote {pub_path} and {sec_path}",
                          f"{inst.kind} code q={inst.q} m={inst.m} r={inst.r} n={inst.n} seed={inst.seed}"])
    return EXIT_OK


def cmd_distinguish(args) -> int:
    q, m, r, n = _params(args)
    codes._check_params(q, m, r, n)
    rep = hull.regime(q, m, r, n, args.kind)
    lines = [
        f"params            q={q} m={m} r={r} n={n} kind={args.kind}",
        f"exponent e        {rep.e}",
        f"I2 lower bound    {rep.bound}",
        f"threshold         {rep.threshold}",
        f"distinguishable   {'yes' if rep.distinguishable else 'no'}",
        f"weil-proper       {'expected' if rep.weil_proper_expected else 'not expected'}",
    ]
    _emit(args, rep.as_dict(), lines)
    return EXIT_OK if rep.distinguishable else EXIT_NEGATIVE


def _report_lines(rep) -> list[str]:
    d = rep.diagnostics
    lines = [f"outcome           {rep.outcome}", f"message           {rep.message}"]
    for key in ("i2_dim", "modal_tangent_dim", "tangent_histogram", "points_used",
                "points_to_m", "equations", "algebra_dim", "attempts"):
        if key in d:
            lines.append(f"{key:<18}{d[key]}")
    if "timings" in d:
        lines.append("timings           " + ", ".join(f"{k}={v:.3f}s" for k, v in d["timings"].items()))
    return lines


def cmd_attack(args) -> int:
    pub = keyfile.read(args.public)
    H_pub = pub.get("H_pub")
    rep = full_attack(pub.tower, H_pub, pub.r, seed=args.seed, max_restarts=args.max_restarts)
    if rep.success:
        # success is re-verified before anything is written
        x, y = rep.recovered.x, rep.recovered.y
        if not verify_key(pub.tower, H_pub, x, y, pub.r, seed=args.seed):
            rep.outcome = "failure"
            rep.message = "final verification failed"
        elif args.out:
            keyfile.write(args.out, keyfile.recovered_file(pub, x, y))
    lines = _report_lines(rep)
    if rep.success and args.out:
        lines.append(f"wrote recovered key to {args.out}")
    _emit(args, rep.as_dict(), lines)
    return _OUTCOME_EXIT[rep.outcome]


def cmd_verify(args) -> int:
    pub = keyfile.read(args.public)
    key = keyfile.read(args.key)
    ok = key.n == pub.n and key.r == pub.r and verify_key(
        pub.tower, pub.get("H_pub"), key.vector("x"), key.vector("y"), pub.r, seed=args.seed
    )
    _emit(args, {"valid": bool(ok)}, [f"key {'valid' if ok else 'REJECTED'}"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_bench(args) -> int:
    q, m, r, n = _params(args)
    runs = []
    for i in range(args.runs):
        seed = args.seed + i
        inst = codes.keygen(q, m, r, n, seed, kind=args.kind)
        t = time.perf_counter()
        rep = full_attack(inst.tower, inst.H_pub, r, seed=seed, max_restarts=args.max_restarts)
        runs.append({"seed": seed, "outcome": rep.outcome, "seconds": time.perf_counter() - t})
    counts = {k: sum(1 for run in runs if run["outcome"] == k) for k in _OUTCOME_EXIT}
    secs = [run["seconds"] for run in runs]
    payload = {"params": {"q": q, "m": m, "r": r, "n": n, "kind": args.kind},
               "runs": runs, "counts": counts,
               "mean_seconds": float(np.mean(secs)), "max_seconds": float(np.max(secs))}
    lines = [f"{run['seed']:>6}  {run['outcome']:<13} {run['seconds']:.3f}s" for run in runs]
    lines.append(" ".join(f"{k}={v}" for k, v in counts.items())
                 + f"  mean={payload['mean_seconds']:.3f}s max={payload['max_seconds']:.3f}s")
    _emit(args, payload, lines)
    return EXIT_FAILURE if counts["failure"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; computation is sequential")
    common.add_argument("-v", "--verbose", action="store_true")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("-q", type=int, required=True, help="base field size")
    params.add_argument("-m", type=int, required=True, help="extension degree")
    params.add_argument("-r", type=int, required=True, help="GRS dimension (degree)")
    params.add_argument("-n", type=int, required=True, help="code length")
    params.add_argument("--kind", choices=("alternant", "goppa"), default="alternant")

    p = argparse.ArgumentParser(prog="quadhull", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("keygen", parents=[common, params], help="generate a key pair")
    k.add_argument("--out", default="key", help="output prefix (writes PREFIX.pub and PREFIX.sec)")
    k.set_defaults(func=cmd_keygen)

    d = sub.add_parser("distinguish", parents=[common, params], help="square-distinguishability report")
    d.set_defaults(func=cmd_distinguish)

    a = sub.add_parser("attack", parents=[common], help="recover a key from a public key file")
    a.add_argument("public", help="public key file")
    a.add_argument("--out", help="where to write the recovered key")
    a.add_argument("--max-restarts", type=int, default=3)
    a.set_defaults(func=cmd_attack)

    v = sub.add_parser("verify", parents=[common], help="check a key against a public key")
    v.add_argument("public")
    v.add_argument("key", help="secret or recovered key file")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common, params], help="keygen + attack over several seeds")
    b.add_argument("--runs", type=int, default=5)
    b.add_argument("--max-restarts", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except keyfile.KeyFileError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_FILE


if __name__ == "__main__":
    sys.exit(main())
