"""Command-line front end: ``bialgebras <verb> ...``.

Errors are written to stderr as one JSON object and the exit status is 2;
a verification that runs but fails exits with status 1.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from . import incidence, simplicial, species, verify
from .partition import (
    BoundError,
    Lambda,
    Partition,
    automorphisms,
    enumerate_transversals,
    lambda_type,
    lambdas_up_to,
    transversal_orbit_key,
)
from .poly import Poly, TensorPoly, frac_str
from .series import fdb_duality_check, plethystic_duality_check, random_pairs


class UsageError(ValueError):
    def __init__(self, message: str, kind: str = "invalid-argument", **extra):
        self.kind, self.extra = kind, extra
        super().__init__(message)


class LambdaSyntaxError(UsageError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}", "parse-error", input=text, position=position)


# -- lambda literals --------------------------------------------------------------

_LEX = re.compile(r"\s*(?:(\d+)|(.))")


def _lex(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _LEX.finditer(text):
        if m.group(1) is not None:
            tokens.append((m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append((m.group(2), m.start(2)))
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def take(self, expected: str | None = None) -> tuple[str, int]:
        tok, pos = self.tokens[self.i]
        if expected == "int":
            if not tok.isdigit():
                self.fail("expected an integer", pos)
        elif expected is not None and tok != expected:
            self.fail(f"expected {expected!r}", pos)
        self.i += 1
        return tok, pos

    def fail(self, message: str, pos: int):
        found = self.tokens[self.i][0] if self.i < len(self.tokens) else ""
        raise LambdaSyntaxError(f"{message}, found {found!r}" if found else f"{message}, found end of input", self.text, pos)

    def done(self):
        tok, pos = self.peek()
        if tok:
            self.fail("unexpected trailing input", pos)

    def multiplicity_map(self) -> Lambda:
        self.take("{")
        parts = []
        if self.peek()[0] != "}":
            while True:
                k, kpos = self.take("int")
                self.take(":")
                m, _ = self.take("int")
                if int(k) < 1:
                    raise LambdaSyntaxError("block sizes start at 1", self.text, kpos)
                parts.append((int(k), int(m)))
                if self.peek()[0] == ",":
                    self.take(",")
                    continue
                break
        self.take("}")
        self.done()
        return Lambda(tuple(parts))

    def block_list(self) -> Partition:
        self.take("[")
        blocks: list[list[int]] = []
        seen: dict[int, int] = {}
        if self.peek()[0] != "]":
            while True:
                self.take("[")
                block = []
                while True:
                    x, xpos = self.take("int")
                    if int(x) in seen:
                        raise LambdaSyntaxError(f"element {x} appears twice", self.text, xpos)
                    seen[int(x)] = xpos
                    block.append(int(x))
                    if self.peek()[0] == ",":
                        self.take(",")
                        continue
                    break
                self.take("]")
                blocks.append(block)
                if self.peek()[0] == ",":
                    self.take(",")
                    continue
                break
        self.take("]")
        self.done()
        n = len(seen)
        for x, pos in seen.items():
            if x >= n:
                raise LambdaSyntaxError(f"elements must be 0..{n - 1}, got {x}", self.text, pos)
        return Partition.from_blocks(blocks, n)


def parse_partition(text: str) -> Partition:
    return _Parser(text).block_list()


def parse_lambda(text: str) -> Lambda:
    """``{2:1,3:1}`` (size: multiplicity) or a block list ``[[0,1],[2]]``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        lam = _Parser(text).multiplicity_map()
    elif stripped.startswith("["):
        lam = lambda_type(parse_partition(text))
    else:
        raise LambdaSyntaxError("expected '{' or '['", text, len(text) - len(stripped))
    if not lam:
        raise LambdaSyntaxError("lambda must be nonempty", text, len(text) - len(stripped))
    return lam


# -- output --------------------------------------------------------------------------

def _csv(rows: list[list[str]], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_tensor(t: TensorPoly, fmt: str, fdb: bool) -> str:
    if fmt == "json":
        return json.dumps(t.to_json(), indent=2)
    if fmt == "csv":
        return _csv(t.csv_rows(fdb), ["left-monomial", "right-monomial", "numerator", "denominator"])
    return t.to_str(fdb) + "\n"


def render_poly(p: Poly, fmt: str, fdb: bool) -> str:
    if fmt == "json":
        return json.dumps(p.to_json(), indent=2)
    if fmt == "csv":
        from .poly import mono_str

        rows = [[mono_str(m, fdb), str(c.numerator), str(c.denominator)] for m, c in sorted(p.terms.items())]
        return _csv(rows, ["monomial", "numerator", "denominator"])
    return p.to_str(fdb) + "\n"


def render_record(data: dict, fmt: str, text: str, rows: list[list[str]] | None = None, header: list[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv" and rows is not None:
        return _csv(rows, header or [])
    return text


# -- verbs -----------------------------------------------------------------------------

def cmd_fdb_coproduct(args) -> tuple[str, int]:
    return render_tensor(incidence.fdb_coproduct(args.n, max_n=args.max_n), args.format, fdb=True), 0


def cmd_pleth_coproduct(args) -> tuple[str, int]:
    lam = parse_lambda(args.lam)
    t = incidence.plethystic_coproduct(lam, args.basis, max_weight=args.max_weight)
    return render_tensor(t, args.format, fdb=False), 0


def cmd_bell(args) -> tuple[str, int]:
    if args.n > args.max_n:
        raise BoundError("n", args.n, args.max_n, "--max-n")
    if not 1 <= args.k <= args.n:
        raise UsageError(f"need 1 <= k <= n, got n={args.n}, k={args.k}")
    return render_poly(incidence.bell_polynomial(args.n, args.k), args.format, fdb=True), 0


def cmd_transversals(args) -> tuple[str, int]:
    sigma = parse_partition(args.sigma)
    pairs = enumerate_transversals(sigma, limit=args.max_weight)
    symmetries = automorphisms(sigma)
    classes: dict[tuple, list] = {}
    for pi, tau in pairs:
        classes.setdefault(transversal_orbit_key(sigma, pi, tau, symmetries), []).append((pi, tau))
    data = {
        "sigma": sigma.to_json(),
        "labeled_count": len(pairs),
        "iso_class_count": len(classes),
        "labeled": [{"pi": p.to_json(), "tau": t.to_json()} for p, t in pairs],
        "iso_classes": [
            {"pi": members[0][0].to_json(), "tau": members[0][1].to_json(), "orbit_size": len(members)}
            for members in classes.values()
        ],
    }
    lines = [f"sigma = {sigma}", f"labeled transversals: {len(pairs)}", f"isomorphism classes: {len(classes)}"]
    lines += [f"  pi = {p}  tau = {t}" for p, t in pairs]
    rows = [[json.dumps(p.to_json()), json.dumps(t.to_json())] for p, t in pairs]
    return render_record(data, args.format, "\n".join(lines) + "\n", rows, ["pi", "tau"]), 0


def cmd_segal_check(args) -> tuple[str, int]:
    families = ["NS", "TS"] if args.family == "both" else [args.family.upper()]
    data = {}
    ok = True
    for fam in families:
        bound = args.bound
        if fam == "NS":
            counts = simplicial.segal_counts_ns(bound)
            passed = simplicial.segal_check_ns(bound)
        else:
            counts = simplicial.segal_counts_ts(bound)
            passed = simplicial.segal_check_ts(bound)
        ok &= passed
        data[fam] = {
            "bound": bound,
            "passed": passed,
            "counts": {str(m): {"two_simplices": frac_str(a), "glued_pairs": frac_str(b)} for m, (a, b) in counts.items()},
        }
    text = "".join(
        f"{fam}: {'PASS' if d['passed'] else 'FAIL'} (bound {d['bound']})\n"
        + "".join(f"  m={m}: {c['two_simplices']} = {c['glued_pairs']}\n" for m, c in d["counts"].items())
        for fam, d in data.items()
    )
    rows = [[fam, m, c["two_simplices"], c["glued_pairs"]] for fam, d in data.items() for m, c in d["counts"].items()]
    return render_record(data, args.format, text, rows, ["family", "m", "two_simplices", "glued_pairs"]), 0 if ok else 1


def cmd_duality_check(args) -> tuple[str, int]:
    results = []
    if args.kind in ("fdb", "both"):
        ns = [args.n] if args.n else list(range(1, args.max_n + 1))
        for n in ns:
            d = incidence.fdb_coproduct(n, max_n=args.max_n)
            passed = sum(fdb_duality_check(n, f, g, d) for f, g in random_pairs(args.seed + n, args.trials, "fdb", n))
            results.append({"kind": "fdb", "generator": str(n), "seed": args.seed + n, "passed": passed, "trials": args.trials})
    if args.kind in ("pleth", "both"):
        lams = [parse_lambda(args.lam)] if args.lam else lambdas_up_to(min(args.max_weight, 5))
        for i, lam in enumerate(lams):
            d = incidence.plethystic_coproduct(lam, max_weight=args.max_weight)
            seed = args.seed + 100 + i
            passed = sum(
                plethystic_duality_check(lam, f, g, d) for f, g in random_pairs(seed, args.trials, "pleth", lam.weight)
            )
            results.append({"kind": "pleth", "generator": str(lam), "seed": seed, "passed": passed, "trials": args.trials})
    ok = all(r["passed"] == r["trials"] for r in results)
    text = "".join(f"{r['kind']:5} {r['generator']:10} seed {r['seed']:4}  {r['passed']}/{r['trials']}\n" for r in results)
    rows = [[r["kind"], r["generator"], str(r["seed"]), str(r["passed"]), str(r["trials"])] for r in results]
    data = {"passed": ok, "results": results}
    return render_record(data, args.format, text, rows, ["kind", "generator", "seed", "passed", "trials"]), 0 if ok else 1


def cmd_cycle_index(args) -> tuple[str, int]:
    sp = species.species_by_name(args.species)
    limit = min(args.max_n, species.SPECIES_LIMIT)
    if args.n > limit:
        raise BoundError("n", args.n, limit, "--max-n")
    fps = species.fixed_point_sum(sp, args.n)
    text = verify.fixed_point_sum_text(fps) if fps else "0"
    data = {
        "species": sp.name,
        "n": args.n,
        "fixed_point_sum": [{"monomial": lam.to_json(), "coeff": str(c)} for lam, c in sorted(fps.items())],
        "series_coefficients": [
            {"monomial": lam.to_json(), "coeff": frac_str(Fraction(c, _factorial(args.n)))}
            for lam, c in sorted(fps.items())
        ],
    }
    rows = [[str(lam), str(c), str(_factorial(args.n))] for lam, c in sorted(fps.items())]
    return render_record(data, args.format, text + "\n", rows, ["monomial", "numerator", "denominator"]), 0


def _factorial(n: int) -> int:
    import math

    return math.factorial(n)


def cmd_report(args) -> tuple[str, int]:
    results = verify.run_all(args.max_n, args.max_weight, args.seed, args.trials)
    ok = all(r.ok for r in results)
    data = {"passed": ok, "checks": [r.to_json() for r in results]}
    text = "".join(r.line() + "\n" for r in results)
    text += f"{sum(r.ok for r in results)}/{len(results)} checks passed\n"
    rows = [[r.name, "PASS" if r.ok else "FAIL", f"{r.seconds:.3f}", r.detail] for r in results]
    return render_record(data, args.format, text, rows, ["check", "status", "seconds", "detail"]), 0 if ok else 1


# -- argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-weight", type=int, default=incidence.DEFAULT_MAX_WEIGHT, help="largest lambda weight / ground set size (default 6)")
    common.add_argument("--max-n", type=int, default=incidence.DEFAULT_MAX_N, help="largest n for Faa di Bruno and species (default 8)")
    common.add_argument("--seed", type=int, default=0, help="base seed for random series")
    common.add_argument("--trials", type=int, default=20, help="random series pairs per generator")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="bialgebras", description="Faa di Bruno and plethystic bialgebras by enumeration.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("fdb-coproduct", parents=[common], help="Delta(A_n) in the Faa di Bruno bialgebra")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_fdb_coproduct)

    p = sub.add_parser("pleth-coproduct", parents=[common], help="Delta(A_lambda) in the plethystic bialgebra")
    p.add_argument("lam", metavar="LAMBDA", help="'{2:1,3:1}' or '[[0,1],[2]]'")
    p.add_argument("--basis", choices=["coefficient", "delta"], default="coefficient")
    p.set_defaults(func=cmd_pleth_coproduct)

    p = sub.add_parser("bell", parents=[common], help="partial Bell polynomial B_{n,k}")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("transversals", parents=[common], help="transversals of a partition")
    p.add_argument("--sigma", required=True, help="block list, e.g. '[[0,1],[2]]'")
    p.set_defaults(func=cmd_transversals)

    p = sub.add_parser("segal-check", parents=[common], help="Segal condition for NS and TS")
    p.add_argument("--family", choices=["ns", "ts", "both"], default="both")
    p.add_argument("--bound", type=int, default=6, help="largest top set size (default 6)")
    p.set_defaults(func=cmd_segal_check)

    p = sub.add_parser("duality-check", parents=[common], help="coproducts against series substitution")
    p.add_argument("--kind", choices=["fdb", "pleth", "both"], default="both")
    p.add_argument("--n", type=int, help="only this Faa di Bruno generator")
    p.add_argument("--lambda", dest="lam", help="only this plethystic generator")
    p.set_defaults(func=cmd_duality_check)

    p = sub.add_parser("cycle-index", parents=[common], help="fixed-point sum of a species on n points")
    p.add_argument("species", help="pi, singleton or uniform (suffix + for the nonempty part)")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_cycle_index)

    p = sub.add_parser("report", parents=[common], help="run every acceptance check")
    p.set_defaults(func=cmd_report)
    return parser


def _error(kind: str, message: str, **extra) -> str:
    return json.dumps({"error": kind, "message": message, **extra}, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.max_weight < 1 or args.max_n < 1 or args.trials < 0:
            raise UsageError("--max-weight and --max-n must be positive, --trials non-negative")
        if args.verb == "segal-check" and args.bound > 8:
            raise BoundError("bound", args.bound, 8, "--bound")
        output, status = args.func(args)
    except BoundError as e:
        print(_error("bound-exceeded", str(e), limit=e.limit, value=e.value, option=e.option), file=sys.stderr)
        return 2
    except UsageError as e:
        print(_error(e.kind, str(e), **e.extra), file=sys.stderr)
        return 2
    except ValueError as e:
        print(_error("invalid-argument", str(e)), file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output if output.endswith("\n") else output + "\n")
    else:
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
