"""Command-line interface.

Verbs:
    trace   -- trace tables, traces of objects and of tensor words
    end     -- internal End of a module object, or a catalog of them
    fuse    -- products in the base ring or in a package's module ring
    dims    -- Frobenius-Perron dimensions
    verify  -- validation and identity suites (nonzero exit on failure)
    derive  -- regenerate a module fusion tensor and diff against the data

Object expressions are sums `term (+ term)*` with `term = [mult*]label`
(as in `1+2*9`); word expressions are products `factor (* factor)*`
where each factor is a label or a parenthesised object expression, so
`(1+9)*(1+9')` is the tensor square root of the usual example.  The
environment variable TRACECAT_DATA overrides the builtin package
directory.  Exit codes: 0 success, 1 verification failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import re
import sys

from .algebra import (
    AlgebraCandidate,
    enumerate_internal_ends,
    semisimplicity_witness,
)
from .fusion import (
    FusionError,
    FusionRing,
    ObjectVec,
    fp_dimensions,
    fuse,
    validate_ring,
    verlinde_su2,
)
from .modules import (
    AmbiguousFusion,
    ModuleAction,
    ModuleError,
    ModuleTensorData,
    NoConsistentFusion,
    derive_module_fusion,
    validate_action,
    validate_tensor_data,
)
from .packages import (
    BUILTIN_FILES,
    PackageError,
    data_dir,
    load_builtin,
    load_package,
    package_text,
)
from .tl import identity_suite
from .trace import (
    check_adjunction,
    check_forgetful,
    check_splitting_iso,
    check_traciator_iso,
    decomposition,
    internal_end,
    trace_object,
    trace_of_word,
    trace_table,
)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- expression parsing ----------------------------------------------------------

_TOKEN = re.compile(r"\s*([0-9A-Za-z_']+|[()*+])")


def _tokenize(expr: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m:
            raise CliError(f"cannot tokenize object expression at {expr[pos:]!r}", 2)
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_object(expr: str, labels: tuple[str, ...], space: str) -> ObjectVec:
    """`term (+ term)*` with `term = [mult*]label`."""
    return _object_from_tokens(_tokenize(expr), labels, space)


def _object_from_tokens(tokens: list[str], labels, space) -> ObjectVec:
    mult = [0] * len(labels)
    terms: list[list[str]] = [[]]
    for tok in tokens:
        if tok == "+":
            terms.append([])
        else:
            terms[-1].append(tok)
    for term in terms:
        if not term:
            raise CliError("empty term in object expression", 2)
        if len(term) == 1:
            count, label = 1, term[0]
        elif len(term) == 3 and term[1] == "*":
            try:
                count = int(term[0])
            except ValueError:
                raise CliError(f"multiplicity {term[0]!r} is not an integer", 2)
            label = term[2]
        else:
            raise CliError(f"cannot parse term {' '.join(term)!r}", 2)
        if label not in labels:
            raise CliError(f"unknown label {label!r}", 2)
        mult[labels.index(label)] += count
    return ObjectVec(space, tuple(mult))


def parse_word(expr: str, labels, space) -> list[ObjectVec]:
    """`factor (* factor)*`, factors being labels or parenthesised sums."""
    tokens = _tokenize(expr)
    factors: list[ObjectVec] = []
    pos = 0
    expect_factor = True
    while pos < len(tokens):
        tok = tokens[pos]
        if expect_factor:
            if tok == "(":
                depth = 1
                j = pos + 1
                while j < len(tokens) and depth:
                    if tokens[j] == "(":
                        depth += 1
                    elif tokens[j] == ")":
                        depth -= 1
                    j += 1
                if depth:
                    raise CliError("unbalanced parentheses in word expression", 2)
                factors.append(
                    _object_from_tokens(tokens[pos + 1 : j - 1], labels, space)
                )
                pos = j
            else:
                factors.append(_object_from_tokens([tok], labels, space))
                pos += 1
            expect_factor = False
        else:
            if tok != "*":
                raise CliError(f"expected '*' between factors, got {tok!r}", 2)
            pos += 1
            expect_factor = True
    if expect_factor or not factors:
        raise CliError("word expression ends unexpectedly", 2)
    return factors


# -- shared helpers ---------------------------------------------------------------


def _load(args) -> ModuleAction | ModuleTensorData:
    if getattr(args, "package", None):
        return load_package(args.package)
    if getattr(args, "builtin", None):
        return load_builtin(args.builtin)
    raise CliError("select a category with --builtin <name> or --package <path>", 2)


def _module_labels(data) -> tuple[str, ...]:
    action = data.action if isinstance(data, ModuleTensorData) else data
    return action.msimples


def _emit(vec: ObjectVec, labels, fmt: str) -> str:
    return decomposition(vec, labels, "machine" if fmt == "tsv" else "text")


# -- verbs ------------------------------------------------------------------------


def cmd_trace(args) -> int:
    data = _load(args)
    action = data.action if isinstance(data, ModuleTensorData) else data
    mspace = f"{action.name}.module"
    if args.word:
        if not isinstance(data, ModuleTensorData):
            raise CliError(f"{action.name} has no module fusion data for words", 2)
        word = parse_word(args.word, action.msimples, mspace)
        result = trace_of_word(data, word)
        print(_emit(result, action.base.labels, args.format))
        return 0
    if args.object:
        obj = parse_object(args.object, action.msimples, mspace)
        result = trace_object(data, obj)
        print(_emit(result, action.base.labels, args.format))
        return 0
    sys.stdout.write(trace_table(data, fmt=args.format))
    return 0


def cmd_end(args) -> int:
    data = _load(args)
    action = data.action if isinstance(data, ModuleTensorData) else data
    mspace = f"{action.name}.module"
    if args.object:
        obj = parse_object(args.object, action.msimples, mspace)
        result = internal_end(action, obj)
        print(_emit(result, action.base.labels, args.format))
        if args.identify:
            catalogs = [
                enumerate_internal_ends(load_builtin(name), args.bound or 3)
                for name in args.identify.split(",")
            ]
            cand = AlgebraCandidate(
                result, f"internal_end({action.name})", action.base.unit
            )
            report = semisimplicity_witness(cand, catalogs)
            print(report.line(action.base.labels))
        return 0
    bound = args.bound or 1
    catalog = enumerate_internal_ends(action, bound)
    for entry in catalog.entries:
        lhs = decomposition(entry.x, action.msimples, "machine")
        rhs = _emit(entry.end, action.base.labels, args.format)
        sep = "\t" if args.format == "tsv" else " : "
        print(f"{lhs}{sep}{rhs}")
    return 0


def _select_ring(args) -> FusionRing:
    if args.k is not None:
        return verlinde_su2(args.k)
    data = _load(args)
    if isinstance(data, ModuleTensorData):
        return data.module_ring()
    raise CliError("fuse needs --k or a module tensor package", 2)


def cmd_fuse(args) -> int:
    ring = _select_ring(args)
    if not args.word:
        raise CliError("fuse needs --word <expr>", 2)
    factors = parse_word(args.word, ring.labels, ring.name)
    acc = factors[0]
    for factor in factors[1:]:
        acc = fuse(ring, acc, factor)
    print(_emit(acc, ring.labels, args.format))
    return 0


def cmd_dims(args) -> int:
    if args.k is not None:
        ring = verlinde_su2(args.k)
        dims = fp_dimensions(ring)
        labels = ring.labels
    else:
        data = _load(args)
        action = data.action if isinstance(data, ModuleTensorData) else data
        dims = action.module_dims()
        labels = action.msimples
    for label, value in zip(labels, dims):
        print(f"{label}\t{value:.12f}")
    return 0


def cmd_verify(args) -> int:
    failures = 0
    lines: list[str] = []

    def record(report) -> None:
        nonlocal failures
        lines.extend(report.lines())
        if not report.ok:
            failures += 1

    run_packages = args.all or args.suite in (None, "packages")
    run_tl = args.all or args.suite == "tl"
    if args.builtin or args.package:
        run_packages = True

    if run_packages:
        names = (
            [args.builtin]
            if args.builtin
            else ([None] if args.package else list(BUILTIN_FILES) + ["a5_su2_4"])
        )
        for name in names:
            data = load_package(args.package) if name is None else load_builtin(name)
            action = data.action if isinstance(data, ModuleTensorData) else data
            record(validate_ring(action.base))
            record(validate_action(action))
            if isinstance(data, ModuleTensorData):
                record(validate_tensor_data(data))
                record(check_splitting_iso(data))
                record(check_traciator_iso(data))
            if action.unit_module is not None:
                record(check_adjunction(data))
                record(check_forgetful(data))

    if run_tl:
        levels = [args.k] if args.k is not None else [2, 4, 10, 16]
        for k in levels:
            caps = {}
            if args.bound:
                caps = {"pair_cap": args.bound, "triple_cap": args.bound}
            report = identity_suite(k, exact=not args.float, **caps)
            lines.append(f"-- identity suite, level {k} --")
            lines.extend(report.lines())
            if not report.ok:
                failures += 1

    print("\n".join(lines))
    return 1 if failures else 0


def cmd_derive(args) -> int:
    data = _load(args)
    action = data.action if isinstance(data, ModuleTensorData) else data
    unit = args.unit if args.unit else None
    try:
        result = derive_module_fusion(action, unit_module=unit)
    except AmbiguousFusion as exc:
        print(f"error: {exc}")
        labels = action.msimples
        for idx, sol in enumerate(exc.solutions, start=1):
            print(f"-- solution {idx} --")
            for x, xl in enumerate(labels):
                for y, yl in enumerate(labels):
                    vec = ObjectVec(f"{action.name}.module", tuple(int(v) for v in sol[x, y]))
                    print(f"{xl} * {yl} = {decomposition(vec, labels, 'machine')}")
        return 1
    except NoConsistentFusion as exc:
        print(f"error: {exc}")
        return 1
    regenerated = package_text(result.data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(regenerated)
        print(f"wrote {args.out}")
    symmetry = len(result.symmetries)
    print(
        f"derived module fusion for {action.name}: unique up to symmetry "
        f"(raw solutions: {result.n_solutions}, graph symmetries: {symmetry})"
    )
    if args.builtin:
        committed = (data_dir() / f"{args.builtin}.pkg")
        if committed.exists():
            if committed.read_text(encoding="utf-8") == regenerated:
                print(f"regenerated package is byte-identical to {committed.name}")
            else:
                print(f"regenerated package DIFFERS from {committed.name}")
                return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracecat",
        description="exact categorified traces over ADE module categories",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, with_k=False):
        p.add_argument("--builtin", help="shipped package name (e.g. d10_su2_16)")
        p.add_argument("--package", help="path to a package file")
        p.add_argument("--object", help="object expression, e.g. '1+2*9'")
        p.add_argument("--word", help="word expression, e.g. \"(1+9)*(1+9')\"")
        p.add_argument("--k", type=int, default=None, help="SU(2) level")
        p.add_argument("--bound", type=int, default=None, help="search/enumeration bound")
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument("--float", action="store_true", help="complex-double fast path")

    p = sub.add_parser("trace", help="trace tables and traces of words")
    common(p)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("end", help="internal End objects and catalogs")
    common(p)
    p.add_argument(
        "--identify",
        help="comma-separated builtin names whose catalogs identify the End",
    )
    p.set_defaults(fn=cmd_end)

    p = sub.add_parser("fuse", help="fusion products")
    common(p)
    p.set_defaults(fn=cmd_fuse)

    p = sub.add_parser("dims", help="Frobenius-Perron dimensions")
    common(p)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("verify", help="validation and identity suites")
    common(p)
    p.add_argument("--all", action="store_true", help="run every suite")
    p.add_argument("--suite", choices=("packages", "tl"))
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("derive", help="regenerate module fusion tensors")
    common(p)
    p.add_argument("--unit", help="unit module label override")
    p.add_argument("--out", help="write the regenerated package here")
    p.set_defaults(fn=cmd_derive)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PackageError, ModuleError, FusionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
