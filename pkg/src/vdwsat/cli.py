"""Command line: vdwsat {generate,solve,split,verify,stats,compute}.

Exit codes: 10 SAT, 20 UNSAT, 30 unknown, 1 usage error, 2 soundness
failure; verify exits 0 on a good certificate and 3 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .certificates import (CertificateParseError, PartitionCertificate, emit_compact, expand_half,
                           is_palindrome, parse_compact, stats, verify_good)
from .cnf import (CnfFormula, DimacsError, cnf_filename, emit_dimacs, encode_pd, encode_vdw,
                  parse_dimacs, pd_middle_unit)
from .dpll import (CheckpointError, SearchState, Verdict, checkpoint_load, checkpoint_save,
                   cubes_from_text, cubes_to_text, dpll, solve_cubes, split)
from .local_search import LsConfig, Scheme, local_search
from .numbers import IncompleteCertification, Limits, SoundnessError, compute_pd, compute_vdw

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 30
EXIT_USAGE = 1
EXIT_SOUNDNESS = 2
EXIT_VERIFY_FAIL = 3

_VERDICT_EXIT = {Verdict.SAT: EXIT_SAT, Verdict.UNSAT: EXIT_UNSAT, Verdict.INDETERMINATE: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (Verdict, Scheme)):
        return x.value
    if isinstance(x, PartitionCertificate):
        return x.compact()
    if isinstance(x, Path):
        return str(x)
    raise TypeError(type(x))


def _fmt(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, default=_jsonable)
    if v is None or isinstance(v, (bool, int, float, str)):
        return str(v)
    return str(_jsonable(v))


def _emit(args, command: str, params: dict, result: dict, t0: float, outputs=()):
    rec = {"command": command, "parameters": params, "result": result,
           "wall_time": round(time.perf_counter() - t0, 6), "outputs": list(outputs)}
    if args.json:
        print(json.dumps(rec, default=_jsonable))
        return
    print(f"command={command}")
    for k, v in {**params, **result}.items():
        print(f"{k}={_fmt(v)}")
    print(f"wall_time={rec['wall_time']}")
    for o in outputs:
        print(f"output={o}")


def _formula_for(kind: str, t0: int, t1: int, n: int, middle_unit: bool = True) -> CnfFormula:
    if kind == "vdw":
        return encode_vdw(t0, t1, n)
    if kind == "pd":
        f = encode_pd(t0, t1, n)
        return pd_middle_unit(f, t0, n, t1) if middle_unit else f
    raise UsageError(f"unknown kind {kind!r} (expected vdw or pd)")


def _check_lengths(t0, t1, n=0):
    if not 2 <= t0 <= t1 or n < 0:
        raise UsageError(f"need 2 <= t0 <= t1 and n >= 0, got t0={t0} t1={t1} n={n}")


# --- generate -------------------------------------------------------------------

def cmd_generate(args) -> int:
    t_start = time.perf_counter()
    _check_lengths(args.t0, args.t1, args.n)
    f = _formula_for(args.kind, args.t0, args.t1, args.n, args.middle_unit)
    text = emit_dimacs(f)
    out = args.out or cnf_filename(args.kind, args.t0, args.t1, args.n)
    outputs = []
    if out == "-":
        sys.stdout.write(text)
        return 0
    Path(out).write_text(text)
    outputs.append(out)
    _emit(args, "generate", {"kind": args.kind, "t0": args.t0, "t1": args.t1, "n": args.n},
          {"variables": f.num_vars, "clauses": f.num_clauses}, t_start, outputs)
    return 0


# --- solve ----------------------------------------------------------------------

_ENGINES = ("dpll", "gsat-tabu", "walksat")


def _parse_instance(args):
    """Returns (formula, kind or None, t0, t1, n, engine)."""
    spec = list(args.instance)
    engine = args.engine
    if args.cnf:
        if len(spec) > 1:
            raise UsageError("with --cnf only an engine may follow")
        if spec:
            engine = spec[0]
        try:
            f = parse_dimacs(Path(args.cnf).read_text())
        except OSError as e:
            raise UsageError(f"cannot read {args.cnf}: {e.strerror}") from None
        except DimacsError as e:
            raise UsageError(f"{args.cnf}: {e}") from None
        return f, None, None, None, None, engine or "dpll"
    if len(spec) not in (4, 5):
        raise UsageError("expected KIND T0 T1 N [ENGINE] or --cnf FILE")
    if len(spec) == 5:
        engine = spec[4]
    kind = spec[0]
    try:
        t0, t1, n = int(spec[1]), int(spec[2]), int(spec[3])
    except ValueError:
        raise UsageError("T0 T1 N must be integers") from None
    _check_lengths(t0, t1, n)
    return _formula_for(kind, t0, t1, n), kind, t0, t1, n, engine or "dpll"


def _certificate_text(kind, n, witness):
    bits = "".join("1" if b else "0" for b in witness)
    if kind == "pd":
        return expand_half(bits, n).compact()
    if kind == "vdw":
        return emit_compact(bits)
    return None


def cmd_solve(args) -> int:
    t_start = time.perf_counter()
    f, kind, t0, t1, n, engine = _parse_instance(args)
    if engine not in _ENGINES:
        raise UsageError(f"unknown engine {engine!r} (choose from {', '.join(_ENGINES)})")
    params = {"engine": engine, "kind": kind, "t0": t0, "t1": t1, "n": n, "cnf": args.cnf}
    result: dict = {}
    outputs = []
    witness = None
    if engine == "dpll":
        if args.cube_file:
            try:
                cubes = cubes_from_text(Path(args.cube_file).read_text())
            except OSError as e:
                raise UsageError(f"cannot read {args.cube_file}: {e.strerror}") from None
            rep = solve_cubes(f, cubes, jobs=args.jobs, budget_per_cube=args.budget)
            verdict, witness = rep.verdict, rep.witness
            params.update(cube_file=args.cube_file, jobs=args.jobs)
            result.update(cubes=len(cubes), cubes_solved=len(rep.results), nodes=rep.nodes,
                          cube_nodes=[r.nodes for r in rep.results])
        else:
            resume = None
            ck = Path(args.checkpoint) if args.checkpoint else None
            if ck is not None and ck.exists():
                try:
                    resume = checkpoint_load(ck.read_text(), f)
                except CheckpointError as e:
                    raise UsageError(f"{ck}: {e}") from None
                params["resumed"] = True

            def save(state: SearchState):
                ck.write_text(checkpoint_save(state, f))

            r = dpll(f, args.budget, resume=resume,
                     on_checkpoint=save if ck is not None else None,
                     checkpoint_every=args.checkpoint_every if ck is not None else None)
            if ck is not None:
                # a SAT answer ends the search; there is nothing left to resume
                if r.is_sat:
                    ck.unlink(missing_ok=True)
                else:
                    save(r.state if r.state is not None else SearchState((), exhausted=True))
                    outputs.append(str(ck))
            verdict, witness = r.verdict, r.witness
            result.update(nodes=r.stats.nodes, propagations=r.stats.propagations,
                          max_depth=r.stats.max_depth)
    else:
        cfg = LsConfig(engine, args.runs, args.cutoff, args.seed, args.tabu_tenure, args.noise)
        params.update(runs=args.runs, cutoff=args.cutoff, seed=args.seed)
        out = local_search(f, cfg)
        verdict = Verdict.SAT if out.found else Verdict.INDETERMINATE
        witness = out.witness
        result.update(flips=out.flips_used, runs_used=out.runs_used, best_unsat=out.best_unsat)
    result = {"verdict": verdict.value, **result}
    if witness is not None:
        if not f.is_satisfied_by(witness):
            print("error: witness does not satisfy the formula", file=sys.stderr)
            return EXIT_SOUNDNESS
        cert = _certificate_text(kind, n, witness)
        if cert is not None:
            result["certificate"] = cert
        else:
            result["model"] = " ".join(str(v if b else -v) for v, b in enumerate(witness, 1))
    _emit(args, "solve", params, result, t_start, outputs)
    return _VERDICT_EXIT[verdict]


# --- split ----------------------------------------------------------------------

def cmd_split(args) -> int:
    t_start = time.perf_counter()
    _check_lengths(args.t0, args.t1, args.n)
    if args.level < 0:
        raise UsageError("--level must be >= 0")
    f = _formula_for(args.kind, args.t0, args.t1, args.n)
    cubes = split(f, args.level)
    text = cubes_to_text(cubes, icnf=args.icnf)
    outputs = []
    if args.out == "-":
        sys.stdout.write(text)
        return 0
    out = args.out or f"{Path(cnf_filename(args.kind, args.t0, args.t1, args.n)).stem}_l{args.level}.cubes"
    Path(out).write_text(text)
    outputs.append(out)
    _emit(args, "split", {"kind": args.kind, "t0": args.t0, "t1": args.t1, "n": args.n,
                          "level": args.level},
          {"cubes": len(cubes), "max_cubes": 2 ** args.level}, t_start, outputs)
    return 0


# --- verify / stats -------------------------------------------------------------

def _read_cert(path: str) -> PartitionCertificate:
    try:
        return parse_compact(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except CertificateParseError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_verify(args) -> int:
    t_start = time.perf_counter()
    cert = _read_cert(args.cert)
    _check_lengths(args.t0, args.t1)
    params = {"cert": args.cert, "t0": args.t0, "t1": args.t1, "palindrome": args.palindrome}
    if args.n is not None:
        params["n"] = args.n
        if len(cert) != args.n:
            try:
                cert = expand_half(cert, args.n)
            except ValueError as e:
                raise UsageError(str(e)) from None
    result: dict = {"n": cert.n}
    v = verify_good(cert, args.t0, args.t1)
    ok = v is None
    if v is not None:
        result.update(violation_block=v.block, violation_start=v.start,
                      violation_difference=v.difference,
                      violation_progression=list(v.progression()))
    if args.palindrome:
        pal = is_palindrome(cert)
        result["palindrome"] = pal
        ok = ok and pal
    result = {"status": "OK" if ok else "FAIL", **result}
    _emit(args, "verify", params, result, t_start)
    return 0 if ok else EXIT_VERIFY_FAIL


def cmd_stats(args) -> int:
    t_start = time.perf_counter()
    cert = _read_cert(args.cert)
    s = stats(cert)
    _emit(args, "stats", {"cert": args.cert}, s.to_record(), t_start)
    return 0


# --- compute --------------------------------------------------------------------

def cmd_compute(args) -> int:
    t_start = time.perf_counter()
    _check_lengths(args.t0, args.t1)
    limits = Limits(n_max=args.n_max, node_budget=args.node_budget, seed=args.seed)
    params = {"kind": args.kind, "t0": args.t0, "t1": args.t1, "strategy": args.strategy,
              "n_max": args.n_max, "node_budget": args.node_budget, "seed": args.seed}
    if args.kind == "vdw":
        r = compute_vdw(args.t0, args.t1, args.strategy, limits)
        lo, hi = r.interval()
        result = {"value": r.value, "interval": [lo, hi], "exact": r.exact,
                  "witness": r.witness.compact() if r.witness is not None else None,
                  "unsat_nodes": r.unsat_evidence.nodes if r.unsat_evidence else None}
        code = 0 if r.exact else EXIT_UNKNOWN
    else:
        r = compute_pd(args.t0, args.t1, args.strategy, limits)
        if r.number is None:
            result = {"pd": None, "first_unsat": {("odd" if k else "even"): v
                                                  for k, v in r.first_unsat.items()}}
            code = EXIT_UNKNOWN
        else:
            num = r.number
            result = {"pd": [num.p, num.q], "span": num.span,
                      "first_unsat": {("odd" if k else "even"): v for k, v in r.first_unsat.items()}}
            code = 0
    _emit(args, "compute", params, result, t_start)
    return code


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vdwsat", description="van der Waerden numbers via SAT")
    p.add_argument("--json", action="store_true", help="one JSON record instead of key=value lines")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write the DIMACS file of an instance")
    g.add_argument("kind", choices=("vdw", "pd"))
    g.add_argument("t0", type=int)
    g.add_argument("t1", type=int)
    g.add_argument("n", type=int)
    g.add_argument("-o", "--out", help="output path ('-' for stdout); default: standard file name")
    g.add_argument("--middle-unit", action="store_true",
                   help="pd only: add the unit clause for the middle vertex (odd n, t0 = 3)")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="decide an instance")
    s.add_argument("instance", nargs="*", metavar="KIND T0 T1 N [ENGINE]")
    s.add_argument("--cnf", help="read the instance from a DIMACS file")
    s.add_argument("--engine", choices=_ENGINES)
    s.add_argument("--budget", type=int, help="DPLL node limit (per cube with --cube-file)")
    s.add_argument("--cube-file", help="solve the listed cubes instead of the whole instance")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint", help="resume from / save the search state to this file")
    s.add_argument("--checkpoint-every", type=int, default=1 << 20, metavar="NODES")
    s.add_argument("--runs", type=int, default=10)
    s.add_argument("--cutoff", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tabu-tenure", type=int, default=10)
    s.add_argument("--noise", type=float, default=0.4)
    s.set_defaults(func=cmd_solve)

    sp = sub.add_parser("split", help="cube the DPLL tree at a fixed depth")
    sp.add_argument("kind", choices=("vdw", "pd"))
    sp.add_argument("t0", type=int)
    sp.add_argument("t1", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("-l", "--level", type=int, required=True)
    sp.add_argument("-o", "--out", help="cube file ('-' for stdout)")
    sp.add_argument("--icnf", action="store_true", help="write 'a <lits> 0' lines")
    sp.set_defaults(func=cmd_split)

    v = sub.add_parser("verify", help="check a certificate in compact notation")
    v.add_argument("cert")
    v.add_argument("t0", type=int)
    v.add_argument("t1", type=int)
    v.add_argument("--palindrome", action="store_true", help="also require a palindrome")
    v.add_argument("--n", type=int, help="full length; a shorter input is a palindrome half")
    v.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="pattern statistics of a certificate")
    st.add_argument("cert")
    st.set_defaults(func=cmd_stats)

    c = sub.add_parser("compute", help="compute w(2;t0,t1) or vdw_pd(2;t0,t1)")
    c.add_argument("kind", choices=("vdw", "pd"))
    c.add_argument("t0", type=int)
    c.add_argument("t1", type=int)
    c.add_argument("--strategy", choices=("hybrid", "dpll"), default="hybrid")
    c.add_argument("--n-max", type=int)
    c.add_argument("--node-budget", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_compute)

    for sp_ in (g, s, sp, v, st, c):
        sp_.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                         help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"vdwsat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SoundnessError, AssertionError) as e:
        print(f"vdwsat: soundness failure: {e}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except IncompleteCertification as e:
        print(f"vdwsat: {e}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
