"""Command-line front end.

Exit codes: 0 ok, 2 usage, 3 data/shape, 4 numerical/degenerate, 5 I/O.
Errors are reported as a single ``ERROR <code>: <detail>`` line on stderr.
"""
import argparse
import json
import os
import sys

import numpy as np

from . import serialization as ser
from .eqcmm import EqcmmModel, QueryMode, fit, query
from .ensembles import EnsembleKind, EnsembleSpec, generate
from .errors import (DegenerateSetError, DomainError, EnergyError, ShapeError,
                     SingularSolveError, ZeroVectorError)
from .experiments import SweepConfig, emit_csv, emit_plot, run_sweep
from .qcmm import MemoryMatrix, capacity_check, make_pairs, recall, train_batch
from .qop import DEFAULT_TOL, GSMode, gram_schmidt, orthonormality_residual

EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC, EXIT_IO = 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code, detail):
        super().__init__(detail)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, message)


def _build_parser():
    p = _Parser(prog="eqcmm", description="Correlation matrix memories with key orthonormalization.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a seeded ensemble")
    g.add_argument("--kind", choices=[k.value for k in EnsembleKind], required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--noise-eps", type=float, default=0.0)
    g.add_argument("--pairs", action="store_true",
                   help="write a training set: keys of --kind with Haar memorized vectors")
    g.add_argument("--out", required=True)

    o = sub.add_parser("ortho", help="orthonormalize a key ensemble")
    o.add_argument("--in", dest="inp", required=True)
    o.add_argument("--mode", choices=[m.value for m in GSMode], default=GSMode.MODIFIED.value)
    o.add_argument("--tol", type=float, default=DEFAULT_TOL)
    o.add_argument("--out", required=True)

    t = sub.add_parser("train", help="train a memory from a training set")
    t.add_argument("--pairs", required=True)
    t.add_argument("--method", choices=["qcmm", "eqcmm"], default="eqcmm")
    t.add_argument("--mode", choices=[m.value for m in GSMode], default=GSMode.MODIFIED.value)
    t.add_argument("--tol", type=float, default=DEFAULT_TOL)
    t.add_argument("--out", required=True)

    r = sub.add_parser("recall", help="recall a stimulus")
    r.add_argument("--model", required=True)
    r.add_argument("--stimulus", required=True, help="state JSON file, or - for stdin")
    r.add_argument("--query-mode", choices=[q.value for q in QueryMode], default=QueryMode.X.value)
    r.add_argument("--expected")

    s = sub.add_parser("sweep", help="run a load sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--csv", required=True)
    s.add_argument("--plot", required=True)

    i = sub.add_parser("inspect", help="summarize a model file")
    i.add_argument("--model", required=True)
    return p


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        return ser.load(path)
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_DATA, f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _write_json(obj, path):
    try:
        ser.dump(obj, path)
    except OSError as exc:
        raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from None


def _load_model(path):
    d = _read_json(path)
    if isinstance(d, dict) and "factors" in d:
        return ser.model_from_dict(d)
    if isinstance(d, dict) and "M" in d:
        return ser.memory_from_dict(d)
    raise CliError(EXIT_DATA, f"{path}: neither a memory nor an EQCMM model")


def _cmd_gen(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("EQCMM_SEED")
        try:
            seed = int(env) if env is not None else 0
        except ValueError:
            raise CliError(EXIT_USAGE, f"EQCMM_SEED={env!r} is not an integer") from None
    spec = EnsembleSpec(EnsembleKind(args.kind), args.dim, args.count, args.noise_eps)
    keys = generate(spec, seed, "keys")
    if args.pairs:
        ys = generate(EnsembleSpec(EnsembleKind.HAAR, args.dim, args.count), seed, "memorized")
        _write_json(ser.pairs_to_list(make_pairs(keys, ys)), args.out)
    else:
        _write_json(ser.ensemble_to_dict(keys, spec, seed), args.out)


def _cmd_ortho(args):
    keys = ser.states_from_json(_read_json(args.inp))
    f = gram_schmidt(keys, mode=GSMode(args.mode), tol=args.tol)
    _write_json(ser.factors_to_dict(f), args.out)
    print(f"rank {f.rank}")
    print(f"residual {orthonormality_residual(f.Z):.3e}")
    if f.dropped:
        print(f"dropped {list(f.dropped)}")


def _cmd_train(args):
    pairs = ser.pairs_from_list(_read_json(args.pairs))
    if args.method == "qcmm":
        _write_json(ser.memory_to_dict(train_batch(pairs)), args.out)
        return
    model = fit(pairs, mode=GSMode(args.mode), tol=args.tol)
    _write_json(ser.model_to_dict(model), args.out)
    verdict = capacity_check(model.dim, model.n_pairs, model.factors.rank)
    if model.dropped:
        print(f"WARNING dropped pairs {list(model.dropped)}: {verdict}", file=sys.stderr)


def _cmd_recall(args):
    model = _load_model(args.model)
    stim = ser.states_from_json(_read_json(args.stimulus))[0]
    if isinstance(model, MemoryMatrix):
        out = recall(model, stim)
    else:
        out = query(model, stim, QueryMode(args.query_mode))
    print(json.dumps(ser.state_to_dict(out)))
    if args.expected:
        expected = ser.states_from_json(_read_json(args.expected))[0]
        if expected.shape != out.shape:
            raise ShapeError(f"expected state has dim {expected.shape[0]}, response has {out.shape[0]}")
        den = np.linalg.norm(out) * np.linalg.norm(expected)
        cos = abs(np.vdot(out, expected)) / den if den > 0 else 0.0
        print(f"|cosine| = {cos:.9f}")


def _cmd_sweep(args):
    cfg = SweepConfig.from_dict(_read_json(args.config))
    report = run_sweep(cfg)
    for path, emit in ((args.csv, emit_csv), (args.plot, emit_plot)):
        try:
            emit(report, path)
        except OSError as exc:
            raise CliError(EXIT_IO, f"{path}: {exc.strerror or exc}") from None


def _cmd_inspect(args):
    model = _load_model(args.model)
    if isinstance(model, EqcmmModel):
        f = model.factors
        print("type eqcmm")
        print(f"dims {model.Y.shape[0]}x{model.dim}")
        print(f"pairs {model.n_pairs}")
        print(f"rank {f.rank}")
        print(f"dropped {list(f.dropped)}")
        print(f"residual {orthonormality_residual(f.Z):.3e}")
    else:
        print("type qcmm")
        print(f"dims {model.m_out}x{model.m_in}")
        print(f"pairs {model.pairs_trained}")
        print(f"rank {int(np.linalg.matrix_rank(model.M))}")
        print("dropped []")


_COMMANDS = {"gen": _cmd_gen, "ortho": _cmd_ortho, "train": _cmd_train,
             "recall": _cmd_recall, "sweep": _cmd_sweep, "inspect": _cmd_inspect}


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        _COMMANDS[args.command](args)
    except CliError as exc:
        code, detail = exc.code, str(exc)
    except (ShapeError, DomainError, EnergyError, KeyError, TypeError, ValueError) as exc:
        code, detail = EXIT_DATA, f"{type(exc).__name__}: {exc}"
    except (ZeroVectorError, DegenerateSetError, SingularSolveError, ArithmeticError) as exc:
        code, detail = EXIT_NUMERIC, f"{type(exc).__name__}: {exc}"
    except OSError as exc:
        code, detail = EXIT_IO, str(exc)
    else:
        return 0
    print(f"ERROR {code}: {' '.join(detail.split())}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
