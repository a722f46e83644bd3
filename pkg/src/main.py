import argparse
import json
import logging
import sys

import classifier
import enumerator
import orbits
import report
import verify
from errors import EXIT_OK, EXIT_PROPERTY_FAILURE, DegenerationError, ValidationError
from events import EventBus
from linalg import FieldSpec
from problem import Problem, canonical_hash
from quiver import DimVector

log = logging.getLogger("flagdegen")

DEFAULT_PRIME = 2
FORMATS = ("table", "dot", "json")


def parse_d(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError("--d must be a comma separated list of integers, got {!r}".format(text))


def dimension_vector(args):
    if args.m is None or args.d is None:
        raise ValidationError("--m and --d are required")
    d = DimVector(args.m, parse_d(args.d))
    if args.n is not None and args.n != d.n:
        raise ValidationError("n={} needs a dimension vector of length {}, got {}".format(args.n, args.n, d.n))
    return d


def flags_hash(command, **values):
    return canonical_hash(dict(values, command=command))


def load_problem(args):
    if not args.input:
        raise ValidationError("--input FILE is required")
    return Problem.load(args.input)


def orbit_flags(r, d):
    flat, flat_irr, _ = classifier.flat_flags(r, d)
    return {"smooth": classifier.is_smooth(r), "irreducible": classifier.is_irreducible(r, d),
            "flat": flat, "flat_irr": flat_irr}


def cmd_classify(args):
    problem = load_problem(args)
    r = orbits.RankSequence.of(problem.to_rep())
    result = classifier.classify(r, problem.d).to_dict()
    if args.format == "json":
        return report.to_json(report.envelope("classify", result, problem.input_hash())), EXIT_OK

    summary = {"orbit": r.label(), "decomposition": r.decomposition().label(),
               "stratum": result["stratum"], "dimension": result["dimension"], "flags": result["flags"]}
    if result["singular"]:
        summary["singular"] = result["singular"]
    return report.key_values(summary) + report.footer(problem.input_hash()), EXIT_OK


def cmd_orbits(args):
    d = dimension_vector(args)
    orbit_list = orbits.enumerate_orbits(d.m, d.n)
    flags = {r: orbit_flags(r, d) for r in orbit_list}
    input_hash = flags_hash("orbits", m=d.m, d=list(d.d))
    if args.format == "dot":
        names = ("flat", "flat_irr", "smooth")
        annotations = {r: [x.replace("_", "-") for x in names if flags[r][x]] for r in orbit_list}
        return orbits.hasse_dot(orbit_list, annotations) + report.footer(input_hash, "// "), EXIT_OK

    rows = orbits.orbit_table(orbit_list, lambda r: flags[r])
    for row, r in zip(rows, orbit_list):
        row.update(row.pop("flags"))
        row["dimension"] = classifier.dimension(r, d) if row["flat"] else None
    if args.format == "json":
        return report.to_json(report.envelope("orbits", rows, input_hash)), EXIT_OK
    columns = ["ranks", "decomposition", "smooth", "irreducible", "flat", "flat_irr", "dimension"]
    return report.table(rows, columns) + report.footer(input_hash), EXIT_OK


def cmd_strata(args):
    d = dimension_vector(args)
    input_hash = flags_hash("strata", m=d.m, d=list(d.d))
    if args.format == "dot":
        return orbits.strata_dot(d.n) + report.footer(input_hash, "// "), EXIT_OK
    rows = []
    for stratum in orbits.strata(d.n):
        r1, r2 = orbits.stratum_rank_targets(stratum, d)
        rows.append({"stratum": stratum.label(), "r1": r1.label(), "r2": r2.label()})
    if args.format == "json":
        return report.to_json(report.envelope("strata", rows, input_hash)), EXIT_OK
    return report.table(rows, ["stratum", "r1", "r2"]) + report.footer(input_hash), EXIT_OK


def enumeration_field(args, problem):
    if args.prime is not None:
        return FieldSpec.prime(args.prime)
    if problem.field.is_prime:
        return problem.field
    return FieldSpec.prime(DEFAULT_PRIME)


def cmd_enumerate(args):
    problem = load_problem(args)
    field = enumeration_field(args, problem)
    M = problem.to_rep(field)
    result = {"field": field.to_dict()}
    if args.census:
        result["points"], result["singular_points"] = enumerator.singular_point_census(M, problem.d)
    else:
        result["points"] = enumerator.point_count(M, problem.d)
    J = problem.projection_tuple()
    if J is not None:
        result["fixed_points"] = len(enumerator.fixed_points(J, problem.d))
    input_hash = problem.input_hash()
    if args.format == "json":
        return report.to_json(report.envelope("enumerate", result, input_hash)), EXIT_OK
    return report.key_values(result) + report.footer(input_hash), EXIT_OK


def cmd_fixed_points(args):
    problem = load_problem(args)
    J = problem.projection_tuple()
    if J is None:
        raise ValidationError("fixed points need every map to be a coordinate projection")
    points = enumerator.fixed_points(J, problem.d)
    input_hash = problem.input_hash()
    if args.format == "json":
        result = {"count": len(points), "points": [p.to_dict()["subsets"] for p in points]}
        return report.to_json(report.envelope("fixed-points", result, input_hash)), EXIT_OK
    rows = [{"point": " ".join("{" + ",".join(str(x) for x in S) + "}" for S in p.subsets)} for p in points]
    text = report.table(rows, ["point"]) + "count: {}\n".format(len(points))
    return text + report.footer(input_hash), EXIT_OK


def cmd_singular(args):
    if args.h is not None:
        d = dimension_vector(args)
        result = classifier.singular_model_Mh(d.m, d, args.h).to_dict()
        input_hash = flags_hash("singular", m=d.m, d=list(d.d), h=args.h)
    else:
        problem = load_problem(args)
        r = orbits.RankSequence.of(problem.to_rep())
        result = classifier.singular_summary(r, problem.d).to_dict()
        J = problem.projection_tuple()
        if J is not None and result["kind"] != classifier.EMPTY and not orbits.stratum_of(r).indices:
            result["witness"] = classifier.construct_singular_witness(J, problem.d).subsets
        input_hash = problem.input_hash()
    if args.format == "json":
        return report.to_json(report.envelope("singular", result, input_hash)), EXIT_OK
    return report.key_values(result) + report.footer(input_hash), EXIT_OK


def cmd_verify(args):
    results = verify.run(args.suite, args.seed)
    summary = [r.to_dict() for r in results]
    code = EXIT_OK if all(r.ok for r in results) else EXIT_PROPERTY_FAILURE
    input_hash = flags_hash("verify", suite=args.suite, seed=args.seed)
    if args.format == "json":
        return report.to_json(report.envelope("verify", summary, input_hash)), code
    return report.table(summary, ["suite", "passed", "failed"]) + report.footer(input_hash), code


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--output", metavar="FILE", help="write the report to FILE instead of stdout")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument("--m", type=int)
    shape.add_argument("--n", type=int)
    shape.add_argument("--d", help="comma separated dimension vector, e.g. 1,2")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", metavar="FILE", help="JSON problem file")

    parser = argparse.ArgumentParser(prog="flagdegen",
                                     description="Classify linear degenerations of partial flag varieties.")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("classify", parents=[common, source], help="full report for a problem file")
    p.set_defaults(func=cmd_classify)

    p = commands.add_parser("orbits", parents=[common, shape], help="all orbits with their flags")
    p.set_defaults(func=cmd_orbits)

    p = commands.add_parser("strata", parents=[common, shape], help="strata and their rank thresholds")
    p.set_defaults(func=cmd_strata)

    p = commands.add_parser("enumerate", parents=[common, source], help="count points over a prime field")
    p.add_argument("--prime", type=int)
    p.add_argument("--census", action="store_true", help="also count singular points")
    p.set_defaults(func=cmd_enumerate)

    p = commands.add_parser("fixed-points", parents=[common, source], help="torus fixed points of a projection tuple")
    p.set_defaults(func=cmd_fixed_points)

    p = commands.add_parser("singular", parents=[common, source, shape], help="singular locus data")
    p.add_argument("--h", type=int, help="model of Gr_d(M^h)")
    p.set_defaults(func=cmd_singular)

    p = commands.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=sorted(verify.SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    return parser


def log_failure(event, payload):
    log.warning("%s: %s", event, json.dumps(payload, sort_keys=True, default=str))


def log_case(event, payload):
    log.debug("%s: %s", event, json.dumps(payload, sort_keys=True, default=str))


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    EventBus.sub("verify.failure", log_failure)
    EventBus.sub("verify.case", log_case)
    try:
        output, code = args.func(args)
    except DegenerationError as e:
        log.error("%s failed: %s", args.command, e)
        sys.stderr.write(json.dumps(e.to_dict(), sort_keys=True) + "\n")
        return e.exit_code
    finally:
        EventBus.unsub("verify.failure", log_failure)
        EventBus.unsub("verify.case", log_case)

    if args.output:
        with open(args.output, "w") as f:
            f.write(output)
        log.info("wrote %s report to %s", args.command, args.output)
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
