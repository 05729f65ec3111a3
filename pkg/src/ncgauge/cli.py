"""ncgauge command line: list the catalog, run verification suites.

Exit status: 0 all cases pass, 1 some case fails or is undecided, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import Example, catalog, load
from .comodule import ComoduleAlgebra, check_comodule_algebra, regular_comodule
from .errors import AxiomPrecheckError, NcgaugeError, NotFree, NotGalois, ParseError
from .hopf import check_hopf_axioms
from .serialize import load_json
from .suites import SUITES, Options, run_suite, strip_timings

__all__ = ["main", "resolve_input"]


def resolve_input(spec: str) -> Example:
    """A catalog name, or a path to a Hopf algebra or bundle JSON file."""
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        kind, obj = load_json(path)
        if kind == "hopf":
            H, R = obj
            rep = check_hopf_axioms(H)
            if not rep.ok:
                bad = rep.failures()[0]
                raise AxiomPrecheckError(f"not a Hopf algebra: {bad.name}", bad.witness)
            H.name = H.name or path.stem
            return Example(H.name, hopf=H, dqt=R, total=ComoduleAlgebra(H.algebra, regular_comodule(H), H.name),
                           regular=True)
        rep = check_comodule_algebra(obj)
        if not rep.ok:
            bad = rep.failures()[0]
            raise AxiomPrecheckError(f"not a comodule algebra: {bad.name}", bad.witness)
        ex = Example(obj.name, total=obj)
        try:
            ex.bundle
        except (NotFree, NotGalois) as e:
            raise AxiomPrecheckError(f"not a principal bundle: {e}", e.witness) from None
        return ex
    return load(spec)


def _cmd_catalog(args) -> int:
    rows = catalog()
    if args.json:
        print(json.dumps(rows, indent=2, ensure_ascii=False))
    else:
        for r in rows:
            flags = f" [{', '.join(r['flags'])}]" if r["flags"] else ""
            print(f"{r['name']:<18} {r['description']}{flags}")
    return 0


def _cmd_run(args) -> int:
    try:
        ex = resolve_input(args.input)
        rep = run_suite(ex, args.suite, Options(max_degree=args.max_degree, seed=args.seed))
    except (ParseError, AxiomPrecheckError) as e:
        _input_error(e, args.json)
        return 2
    if args.json:
        out = rep.to_dict()
        if args.no_timings:
            out = strip_timings(out)
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        print(rep.text(timings=not args.no_timings))
    return 0 if rep.ok else 1


def _input_error(e: NcgaugeError, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": type(e).__name__, "message": str(e), "witness": e.witness}, ensure_ascii=False))
    else:
        loc = e.witness.get("location")
        print(f"error: {e}" + (f" (at {loc})" if loc else ""), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncgauge", description="Exact verification of quantum and braided gauge theory.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", help="list built-in examples")
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=_cmd_catalog)
    r = sub.add_parser("run", help="run a verification suite")
    r.add_argument("input", help="catalog name (e.g. taft:3) or JSON file")
    r.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    r.add_argument("--json", action="store_true", help="machine-readable report")
    r.add_argument("--max-degree", type=int, default=2, help="highest form degree for d∘d = 0")
    r.add_argument("--seed", type=int, default=0, help="seed for the random exact test data")
    r.add_argument("--no-timings", action="store_true", help="omit timings so reports are byte-identical")
    r.set_defaults(fn=_cmd_run)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
