"""Command-line front end: merging, postulate checking, fixture reproduction.

Problem files are line oriented, `#` starts a comment:

    atoms: a b c
    base K1: a & (b | !c)
    base K2: models {a} {a,b}
    constraint: !a | !b

A base is either a formula or an explicit model list; several constraint
lines are conjoined.  Exit codes for `merge`: 0 success, 2 parse/flag error,
3 inconsistent base, 4 result not expressible in the selected fragment
without a refinement.  `check` exits 1 when witnesses were found, `reproduce`
exits 1 on any mismatching cell; both use 2 for bad arguments.
"""

import argparse
import re
import sys
from dataclasses import dataclass

from .formula import (
    HORN,
    KROM,
    NoSyntacticFragmentError,
    NotClosedError,
    ParseError,
    UnknownAtomError,
    classify,
    models,
    parse,
    synthesize,
    to_text,
)
from .interp import ModelSet, Universe
from .merge import (
    Aggregator,
    Base,
    CountingDistance,
    InconsistentBaseError,
    MergeOperator,
    Profile,
)
from .postulates import (
    PostulateId,
    SearchSpace,
    SpaceTooLargeError,
    UnknownFixtureError,
    reproduce,
    search,
)
from .refine import (
    ClosureRefinement,
    LexClosureRefinement,
    LexOrder,
    LexRefinement,
    RefinedOperator,
    cardintersection,
)

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3
EXIT_NOT_EXPRESSIBLE = 4


class ProblemFileError(ValueError):
    pass


@dataclass
class ProblemFile:
    universe: Universe
    bases: list  # (name, Base)
    constraints: list  # ModelSet

    @property
    def profile(self) -> Profile:
        return Profile(tuple(b for _, b in self.bases))

    def constraint(self) -> ModelSet:
        mu = ModelSet.full(self.universe)
        for c in self.constraints:
            mu = mu & c
        return mu


_MODEL_RE = re.compile(r"\{([^{}]*)\}")


def _parse_model_list(text, universe, lineno):
    chunks = _MODEL_RE.findall(text)
    if not chunks or _MODEL_RE.sub("", text).strip():
        raise ProblemFileError(f"line {lineno}: expected model sets like {{a,b}}")
    masks = []
    for chunk in chunks:
        names = [n.strip() for n in chunk.split(",") if n.strip()]
        masks.append(universe.interpretation(names).mask)
    return ModelSet(universe, masks)


def parse_problem_file(text: str) -> ProblemFile:
    universe = None
    bases = []
    constraints = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("atoms:"):
            if universe is not None:
                raise ProblemFileError(f"line {lineno}: atoms declared twice")
            names = line[len("atoms:"):].split()
            if not names:
                raise ProblemFileError(f"line {lineno}: empty atom list")
            universe = Universe(names)
            continue
        if universe is None:
            raise ProblemFileError(f"line {lineno}: atoms must be declared first")
        if line.startswith("base"):
            m = re.match(r"base\s+([A-Za-z0-9_]+)\s*:\s*(.*)$", line)
            if not m:
                raise ProblemFileError(f"line {lineno}: malformed base line")
            name, body = m.group(1), m.group(2).strip()
            if body.startswith("models"):
                mset = _parse_model_list(body[len("models"):], universe, lineno)
                source = None
            else:
                try:
                    phi = parse(body, universe)
                except (ParseError, UnknownAtomError) as exc:
                    raise ProblemFileError(f"line {lineno}: {exc}") from exc
                mset = models(phi, universe)
                source = (phi,)
            if not mset:
                raise InconsistentBaseError(f"line {lineno}: base {name} has no models")
            bases.append((name, Base(mset, source)))
            continue
        if line.startswith("constraint:"):
            body = line[len("constraint:"):].strip()
            try:
                phi = parse(body, universe)
            except (ParseError, UnknownAtomError) as exc:
                raise ProblemFileError(f"line {lineno}: {exc}") from exc
            constraints.append(models(phi, universe))
            continue
        raise ProblemFileError(f"line {lineno}: unrecognized line {line!r}")
    if universe is None:
        raise ProblemFileError("missing atoms declaration")
    if not bases:
        raise ProblemFileError("problem file declares no bases")
    return ProblemFile(universe, bases, constraints)


_FRAGMENTS = {"horn": HORN, "krom": KROM, "none": None}


def _build_distance(choice: str, n: int) -> CountingDistance:
    if choice == "hamming":
        return CountingDistance.hamming(n)
    if choice == "drastic":
        return CountingDistance.drastic(n)
    if choice.startswith("table:"):
        try:
            values = [int(v) for v in choice[len("table:"):].split(",") if v.strip()]
        except ValueError:
            raise ValueError(f"bad distance table in {choice!r}") from None
        if len(values) < n:
            raise ValueError(
                f"distance table needs {n} values for {n} atoms, got {len(values)}"
            )
        return CountingDistance.from_gauge(values)
    raise ValueError(f"unknown distance {choice!r}")


def _build_refinement(name: str, fragment, order):
    if name == "none":
        return None
    if fragment is None:
        raise ValueError("a refinement needs --fragment horn or krom")
    beta = fragment.beta
    if name == "closure":
        return ClosureRefinement(beta)
    if name == "lex":
        return LexRefinement(beta, order)
    if name == "lex-closure":
        return LexClosureRefinement(beta, order)
    raise ValueError(f"unknown refinement {name!r}")


def _parse_lex_order(text, universe) -> LexOrder:
    chunks = _MODEL_RE.findall(text)
    if not chunks or _MODEL_RE.sub("", text).strip():
        raise ValueError("bad --lex-order: expected interpretations like {} {a} {a,b}")
    ordered = []
    for chunk in chunks:
        names = [n.strip() for n in chunk.split(",") if n.strip()]
        ordered.append(universe.interpretation(names))
    try:
        return LexOrder(universe, ordered)
    except ValueError as exc:
        raise ValueError(f"bad --lex-order: {exc}") from exc


def cmd_merge(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with open(args.file, encoding="utf-8") as fh:
            problem = parse_problem_file(fh.read())
    except OSError as exc:
        print(f"cannot read problem file: {exc}", file=err)
        return EXIT_USAGE
    except InconsistentBaseError as exc:
        print(f"inconsistent base: {exc}", file=err)
        return EXIT_INCONSISTENT
    except ProblemFileError as exc:
        print(f"problem file error: {exc}", file=err)
        return EXIT_USAGE

    universe = problem.universe
    fragment = _FRAGMENTS[args.fragment]
    try:
        distance = _build_distance(args.distance, len(universe))
        order = _parse_lex_order(args.lex_order, universe) if args.lex_order else None
        refinement = _build_refinement(args.refinement, fragment, order)
    except ValueError as exc:
        print(f"bad arguments: {exc}", file=err)
        return EXIT_USAGE

    aggregator = Aggregator(args.aggregator)
    profile = problem.profile
    mu = problem.constraint()
    base_op = MergeOperator(distance, aggregator)
    merged = base_op(profile, mu)

    records = [("universe", " ".join(universe.atoms))]
    for name, b in problem.bases:
        records.append(("base", name, b.models.compact() or "none"))
    records.append(("constraint", mu.compact() or "none"))
    records.append(("merged", merged.compact() or "none"))
    records.append(("merged-overlap", cardintersection(merged, profile)))

    final = merged
    if refinement is not None:
        refined = RefinedOperator(base_op, refinement)(profile, mu)
        records.append(("refined", refined.compact() or "none"))
        records.append(("refined-overlap", cardintersection(refined, profile)))
        final = refined

    code = EXIT_OK
    if fragment is not None:
        try:
            phi = synthesize(final, fragment, minimize=True)
        except NotClosedError as exc:
            print(f"not expressible in {fragment.name} without a refinement: {exc}", file=err)
            return EXIT_NOT_EXPRESSIBLE
        except NoSyntacticFragmentError as exc:
            print(f"synthesis failed: {exc}", file=err)
            return EXIT_NOT_EXPRESSIBLE
        records.append(("formula", to_text(phi)))
        records.append(("formula-class", classify(phi).verdict))

    if args.format == "machine":
        for record in records:
            print("\t".join(str(p) for p in record), file=out)
    else:
        labels = {
            "universe": "atoms",
            "base": "base",
            "constraint": "constraint",
            "merged": "merged models",
            "merged-overlap": "bases met by merge",
            "refined": "refined models",
            "refined-overlap": "bases met by refinement",
            "formula": "fragment formula",
            "formula-class": "formula class",
        }
        model_keys = {"base", "constraint", "merged", "refined"}
        for record in records:
            key, rest = record[0], record[1:]
            value = str(rest[-1])
            if key in model_keys:
                value = value.replace("|", ", ")
            if key == "base":
                print(f"base {rest[0]}: {value}", file=out)
            else:
                print(f"{labels[key]}: {value}", file=out)
    return code


_POSTULATE_ALIASES = {p.value: (p,) for p in PostulateId}


def _parse_postulates(listing: str):
    if listing == "all":
        return tuple(PostulateId)
    out = []
    for part in listing.split(","):
        part = part.strip()
        m = re.fullmatch(r"(ic\d)-(ic\d)", part)
        if m:
            lo, hi = m.group(1), m.group(2)
            if lo not in _POSTULATE_ALIASES or hi not in _POSTULATE_ALIASES:
                raise ValueError(f"unknown postulate range {part!r}")
            ids = [p for p in PostulateId if lo <= p.value <= hi]
            if not ids:
                raise ValueError(f"empty postulate range {part!r}")
            out.extend(ids)
            continue
        if part not in _POSTULATE_ALIASES:
            raise ValueError(f"unknown postulate {part!r}")
        out.extend(_POSTULATE_ALIASES[part])
    return tuple(dict.fromkeys(out))


def cmd_check(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        parts = args.op.split(",")
        if len(parts) != 3:
            raise ValueError("--op needs distance,aggregator,refinement")
        dist_spec, agg_spec, ref_spec = (p.strip() for p in parts)
        fragment = _FRAGMENTS[args.fragment]
        distance = _build_distance(dist_spec, args.atoms)
        aggregator = Aggregator(agg_spec)
        refinement = _build_refinement(ref_spec, fragment, None)
        postulates = _parse_postulates(args.postulates)
    except (KeyError, ValueError) as exc:
        print(f"bad arguments: {exc}", file=err)
        return EXIT_USAGE

    op = MergeOperator(distance, aggregator)
    if refinement is not None:
        op = RefinedOperator(op, refinement)
    space = SearchSpace(
        atoms=args.atoms,
        fragment=fragment,
        max_profile_size=args.max_profile_size,
        max_bases=args.max_bases,
        postulates=postulates,
    )
    try:
        witnesses = search(space, op, limit=args.limit)
    except SpaceTooLargeError as exc:
        print(f"bad arguments: {exc}", file=err)
        return EXIT_USAGE

    if args.format == "machine":
        for w in witnesses:
            print(
                "\t".join(("witness", w.postulate.value, w.operator, w.instance.encode(), w.message)),
                file=out,
            )
        print(f"witnesses\t{len(witnesses)}", file=out)
    else:
        print(f"operator: {op.label}", file=out)
        print(
            f"space: {args.atoms} atoms, fragment {args.fragment}, "
            f"profiles up to {args.max_profile_size} bases",
            file=out,
        )
        print(f"postulates: {', '.join(p.value for p in postulates)}", file=out)
        for w in witnesses:
            print(w.render(), file=out)
        print(f"{len(witnesses)} witness(es) found", file=out)
    return EXIT_WITNESS if witnesses else EXIT_OK


def cmd_reproduce(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    from .postulates import fixture_ids

    if args.list:
        for fid in fixture_ids():
            print(fid, file=out)
        return EXIT_OK
    if args.fixture is None:
        print("bad arguments: a fixture id is required (or use --list)", file=err)
        return EXIT_USAGE
    try:
        report = reproduce(args.fixture)
    except UnknownFixtureError as exc:
        print(f"bad arguments: {exc.args[0]}", file=err)
        return EXIT_USAGE
    if args.format == "machine":
        for record in report.records():
            print("\t".join(str(p) for p in record), file=out)
    else:
        print(report.render_text(), file=out)
    return EXIT_OK if report.ok else EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fragmerge",
        description="distance-based belief merging with fragment refinements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_merge = sub.add_parser("merge", help="merge the bases of a problem file")
    p_merge.add_argument("file", help="problem file (see module docs for the format)")
    p_merge.add_argument("--distance", default="hamming",
                         help="hamming | drastic | table:g1,g2,...")
    p_merge.add_argument("--aggregator", default="sigma", choices=("sigma", "gmax"))
    p_merge.add_argument("--refinement", default="none",
                         choices=("none", "closure", "lex", "lex-closure"))
    p_merge.add_argument("--fragment", default="none", choices=("horn", "krom", "none"))
    p_merge.add_argument("--lex-order", default=None,
                         help="interpretations ranked first, e.g. '{} {b} {a}'")
    p_merge.add_argument("--format", default="text", choices=("text", "machine"))
    p_merge.set_defaults(func=cmd_merge)

    p_check = sub.add_parser("check", help="search a bounded space for postulate violations")
    p_check.add_argument("--op", required=True, help="distance,aggregator,refinement")
    p_check.add_argument("--fragment", default="none", choices=("horn", "krom", "none"))
    p_check.add_argument("--postulates", default="all",
                         help="e.g. ic0-ic3 or ic4 or ic5,ic7 or all")
    p_check.add_argument("--atoms", type=int, default=2)
    p_check.add_argument("--max-profile-size", type=int, default=2)
    p_check.add_argument("--max-bases", type=int, default=None)
    p_check.add_argument("--limit", type=int, default=None,
                         help="stop after this many witnesses")
    p_check.add_argument("--format", default="text", choices=("text", "machine"))
    p_check.set_defaults(func=cmd_check)

    p_rep = sub.add_parser("reproduce", help="recompute a shipped fixture table")
    p_rep.add_argument("fixture", nargs="?", default=None,
                       help="fixture id; see 'reproduce --list'")
    p_rep.add_argument("--list", action="store_true", help="list fixture ids")
    p_rep.add_argument("--format", default="text", choices=("text", "machine"))
    p_rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
