"""Command line entry point: ``galoismax <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .cyclotomic import gamma_conjugates
from .driver import DEFAULT_CAP, RunConfig
from .errors import CheckpointCorrupt, GaloisMaxError
from .harness import ScanConfig, fit_constants, read_scan_csv, scan, simulate, verify_lemmas
from .ntheory import kappa, make_context, mirimanoff_zero_count

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CHECKPOINT = 3


def _dump(obj, path=None) -> None:
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_kappa(args) -> None:
    print(kappa(make_context(args.p)))


def _cmd_eta(args) -> None:
    print(mirimanoff_zero_count(make_context(args.p)))


def _cmd_gamma(args) -> None:
    table = gamma_conjugates(make_context(args.p))
    if args.json:
        _dump(table.to_json())
        return
    for a, v in enumerate(table.values):
        print(f"{a}\t{v:.12g}")
    print(f"gamma_max\t{table.gamma_max:.12g}\targmax\t{sorted(table.argmax)}")


def _cmd_simulate(args) -> None:
    config = RunConfig(t=args.t, k=args.k, rep_cap=args.cap, seed=args.seed, log_base=args.log_base)
    _dump(simulate(args.p, config).to_json(), args.out)


def _cmd_verify(args) -> int:
    primes = [int(x) for x in args.primes.split(",") if x.strip()]
    report = verify_lemmas(primes)
    _dump(report.to_json())
    return EXIT_OK


def _cmd_scan(args) -> None:
    config = ScanConfig(
        p_min=args.p_from,
        p_max=args.p_to,
        s=args.s,
        out=args.out,
        checkpoint_path=args.checkpoint,
        workers=args.workers,
    )
    result = scan(config, restart=args.restart)
    _dump(
        {
            "complete": result.complete,
            "resumed_from": result.resumed_from,
            "summary": result.summary.to_json() if result.summary else None,
        }
    )


def _cmd_fit(args) -> None:
    _dump(fit_constants(read_scan_csv(args.input)).to_json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galoismax", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", help="least q >= 1 with nonzero Fermat quotient")
    p.add_argument("p", type=int)
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("eta", help="number of roots of the Mirimanoff polynomial mod p")
    p.add_argument("p", type=int)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("gamma", help="Gauss-period conjugates and their maximum")
    p.add_argument("p", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("simulate", help="run the sampling algorithm once")
    p.add_argument("p", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=13, help="repetition exponent: R = (ln p)^k")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--t", type=int, default=1, help="MAXGAMMA exponent")
    p.add_argument("--log-base", choices=("e", "2"), default="e")
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify-lemmas", help="closed form vs statevector oracle")
    p.add_argument("--primes", default="3,5,7,11,13")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="per-prime kappa, eta, Gamma_max to CSV")
    p.add_argument("--from", dest="p_from", type=int, default=3)
    p.add_argument("--to", dest="p_to", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--restart", action="store_true")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("fit", help="fit constants from a scan CSV")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=_cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        code = args.func(args)
    except CheckpointCorrupt as exc:
        print(f"error: {exc} (use --restart to discard it)", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (GaloisMaxError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
