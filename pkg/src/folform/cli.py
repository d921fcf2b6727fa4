"""Command-line front end emitting human-readable and JSON certificate reports.

Subcommands: check, decompose, rotational, intersect, classify, sing-probe,
series-decompose, divide (saito | derham | cofoliation | intfactor), and
fixtures (kn-theta | log-example | case-a | case-b | pencil).

Forms are written in the expression grammar of ``folform.formexpr``; a
``--form`` value starting with ``@`` names a .frm file (UTF-8, one form,
``#`` comments).  Machine output (--json) is a single document with stable
key order, so reports are diffable; timing appears only under --timing.

Exit status: 0 for verified outcomes, 2 for "none found within bounds",
1 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import fixtures
from .deform import FormFamily, family_decompose, family_square_zero_check
from .divide import (
    containing_foliation_search,
    derham_vector_solve,
    integrating_factor_search,
    saito_solve,
)
from .foliate import (
    complete_intersection,
    frobenius_integrable1,
    is_decomposable2,
    is_dicritical,
    is_integrable2,
    kupka_point,
    mero_decompose,
    rotational4,
)
from .formexpr import ParseError, form_to_str, parse_form, parse_vfield, poly_to_str, vfield_to_str
from .forms import PForm
from .homog import classify
from .ratpoly import ANY_DEGREE, Poly
from .singloc import (
    codim1_certificate,
    enumerate_line_certificates,
    line_in_sing_check,
    projective_point_scan,
    quadric_map,
    sing_line_search,
    singular_ideal,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NONE_FOUND = 2


class CliError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def frac_str(value) -> str:
    return str(Fraction(value))


def read_form_argument(text: str, nvars: int):
    if text.startswith("@"):
        path = text[1:]
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise CliError(f"cannot read form file {path}: {exc}") from exc
    return parse_form(text, nvars)


def homogeneity_report(form):
    degree = form.homogeneous_degree()
    if degree is ANY_DEGREE:
        return "any"
    if degree is None:
        return "mixed"
    return degree


def check_verdicts(form) -> dict:
    verdicts = {
        "degree": form.degree,
        "zero": form.is_zero(),
        "homogeneous_degree": homogeneity_report(form),
        "dicritical": is_dicritical(form),
    }
    if form.degree == 2:
        verdicts["decomposable"] = is_decomposable2(form)
        verdicts["integrable"] = is_integrable2(form)
    elif form.degree == 1:
        verdicts["integrable"] = frobenius_integrable1(form)
    return verdicts


def cmd_check(args) -> tuple[dict, int]:
    form = read_form_argument(args.form, args.n)
    return {"command": "check", "n": args.n, "form": form_to_str(form), "verdicts": check_verdicts(form)}, EXIT_OK


def cmd_decompose(args) -> tuple[dict, int]:
    form = read_form_argument(args.form, args.n)
    report = {"command": "decompose", "n": args.n, "form": form_to_str(form)}
    if not is_decomposable2(form):
        report["decomposable"] = False
        return report, EXIT_OK
    witness = mero_decompose(form)
    report["decomposable"] = True
    report["witness"] = {
        "omega1_numerator": form_to_str(witness.omega1.numerator),
        "omega1_denominator": poly_to_str(witness.pivot),
        "omega2": form_to_str(witness.omega2),
        "z1": vfield_to_str(witness.z1),
        "z2": vfield_to_str(witness.z2),
        "pivot": poly_to_str(witness.pivot),
        "identity_verified": witness.verify(),
    }
    return report, EXIT_OK


def cmd_rotational(args) -> tuple[dict, int]:
    form = read_form_argument(args.form, 4)
    rot = rotational4(form)
    return {
        "command": "rotational",
        "n": 4,
        "form": form_to_str(form),
        "rotational": vfield_to_str(rot),
        "rotational_zero": rot.is_zero(),
        "contraction_vanishes": form.interior(rot).is_zero(),
    }, EXIT_OK


def cmd_intersect(args) -> tuple[dict, int]:
    forms = [read_form_argument(text, args.n) for text in args.form]
    result = complete_intersection(forms)
    return {
        "command": "intersect",
        "n": args.n,
        "factors": [form_to_str(f) for f in forms],
        "eta": form_to_str(result.eta),
        "content": poly_to_str(result.content),
        "complete": result.complete,
    }, EXIT_OK


def serialize_witness(value):
    from .forms import PForm, PolyMap, VField
    from .homog import PairAnalysis

    if isinstance(value, Poly):
        return poly_to_str(value)
    if isinstance(value, PForm):
        return form_to_str(value)
    if isinstance(value, VField):
        return vfield_to_str(value)
    if isinstance(value, PolyMap):
        return [poly_to_str(c) for c in value.components]
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, PairAnalysis):
        out = {
            "branch": value.branch,
            "x": vfield_to_str(value.x),
            "y": vfield_to_str(value.y),
            "lambda": frac_str(value.lam),
            "trace_y": frac_str(value.trace_y),
        }
        if value.rho is not None:
            out["rho"] = frac_str(value.rho)
        if value.chain_coordinates is not None:
            out["chain_coordinates"] = [poly_to_str(c) for c in value.chain_coordinates]
        return out
    if isinstance(value, dict):
        return {str(k): serialize_witness(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [serialize_witness(v) for v in value]
    return value


def cmd_classify(args) -> tuple[dict, int]:
    if args.fixture:
        return fixture_classify(args)
    if not args.form:
        raise CliError("classify needs --form or --fixture")
    form = read_form_argument(args.form, args.n)
    report_obj = classify(form)
    report = {
        "command": "classify",
        "n": args.n,
        "form": form_to_str(form),
        "degree": report_obj.degree,
        "branch": report_obj.branch,
        "verified": report_obj.verified,
        "witnesses": serialize_witness(report_obj.witnesses),
    }
    if report_obj.notes:
        report["notes"] = list(report_obj.notes)
    return report, EXIT_OK


def fixture_classify(args) -> tuple[dict, int]:
    name = args.fixture
    if name == "case-b":
        rho = Fraction(args.rho) if args.rho else Fraction(3, 2)
        lam = Fraction(args.lam) if args.lam else Fraction(1)
        data = fixtures.case_b(rho, lam)
        report_obj = classify(data.eta)
        a_const, b_const, c_const = data.log_constants
        report = {
            "command": "classify",
            "fixture": "case-b",
            "rho": frac_str(rho),
            "lambda": frac_str(lam),
            "branch": report_obj.branch,
            "verified": report_obj.verified,
            "constants": {"A": frac_str(a_const), "B": frac_str(b_const), "C": frac_str(c_const)},
            "witnesses": serialize_witness(report_obj.witnesses),
        }
        return report, EXIT_OK
    form = fixture_form(name)
    report_obj = classify(form)
    report = {
        "command": "classify",
        "fixture": name,
        "branch": report_obj.branch,
        "verified": report_obj.verified,
        "witnesses": serialize_witness(report_obj.witnesses),
    }
    return report, EXIT_OK


def fixture_form(name: str):
    if name == "kn-theta":
        return fixtures.kn_theta()
    if name == "log-example":
        return fixtures.log_example()
    if name == "case-a":
        return fixtures.case_a().eta
    if name == "case-b":
        return fixtures.case_b().eta
    raise CliError(f"fixture {name!r} does not name a single form")


def cmd_sing_probe(args) -> tuple[dict, int]:
    if args.fixture:
        form = fixture_form(args.fixture)
        n = form.nvars
    elif args.form:
        form = read_form_argument(args.form, args.n)
        n = args.n
    else:
        raise CliError("sing-probe needs --form or --fixture")
    report = {"command": "sing-probe", "n": n, "form": form_to_str(form), "height": args.height}
    content = codim1_certificate(form)
    if content is not None:
        report["codim1_factor"] = poly_to_str(content.witness)
    cert = sing_line_search(form, height=args.height)
    if cert.kind == "line":
        report["line"] = list(cert.witness)
        report["line_verified"] = line_in_sing_check(form, cert.witness)
    else:
        report["line"] = None
    if cert.notes:
        report["notes"] = list(cert.notes)
    points = projective_point_scan(singular_ideal(form), args.height)
    report["projective_points"] = [list(p) for p in points]
    found = cert.kind == "line" or points or content is not None
    return report, EXIT_OK if found else EXIT_NONE_FOUND


def cmd_series_decompose(args) -> tuple[dict, int]:
    coefficients = [read_form_argument(text, args.n) for text in args.form]
    if args.order is not None:
        want = args.order + 1
        if len(coefficients) < want:
            coefficients += [coefficients[0] - coefficients[0]] * (want - len(coefficients))
        coefficients = coefficients[:want]
    fam = FormFamily(tuple(coefficients))
    alpha0 = read_form_argument(args.alpha0, args.n)
    beta0 = read_form_argument(args.beta0, args.n)
    report = {
        "command": "series-decompose",
        "n": args.n,
        "order": fam.order,
        "dmax": args.dmax,
        "square_zero": family_square_zero_check(fam),
    }
    result = family_decompose(fam, alpha0, beta0, args.dmax)
    if result is None:
        report["decomposed"] = False
        return report, EXIT_NONE_FOUND
    report["decomposed"] = True
    report["alpha"] = [form_to_str(a) for a in result.alphas]
    report["beta"] = [form_to_str(b) for b in result.betas]
    report["residual_zero"] = all(r.is_zero() for r in result.residual(fam))
    return report, EXIT_OK


def cmd_divide(args) -> tuple[dict, int]:
    mode = args.mode
    if mode == "saito":
        alpha0 = read_form_argument(args.alpha0, args.n)
        beta0 = read_form_argument(args.beta0, args.n)
        mu = read_form_argument(args.mu, args.n)
        result = saito_solve(alpha0, beta0, mu, args.dmax)
        report = {"command": "divide saito", "n": args.n, "dmax": args.dmax}
        if result is None:
            report["solution"] = None
            return report, EXIT_NONE_FOUND
        alphap, betap = result
        report["alphaP"] = form_to_str(alphap)
        report["betaP"] = form_to_str(betap)
        report["identity_verified"] = True
        return report, EXIT_OK
    if mode == "derham":
        eta = read_form_argument(args.form, 4)
        field = parse_vfield(args.vfield, 4)
        result = derham_vector_solve(eta, field, args.dmax)
        report = {"command": "divide derham", "n": 4, "dmax": args.dmax}
        if result is None:
            report["solution"] = None
            return report, EXIT_NONE_FOUND
        report["y"] = vfield_to_str(result)
        report["identity_verified"] = True
        return report, EXIT_OK
    if mode == "cofoliation":
        eta = read_form_argument(args.form, args.n)
        search = containing_foliation_search(eta, args.dmax)
        report = {
            "command": "divide cofoliation",
            "n": args.n,
            "dmax": args.dmax,
            "basis": [form_to_str(w) for w in search.basis],
            "integrable_witnesses": [form_to_str(w) for w in search.integrable],
        }
        return report, EXIT_OK
    if mode == "intfactor":
        omega = read_form_argument(args.form, args.n)
        factor = integrating_factor_search(omega, args.degree)
        report = {"command": "divide intfactor", "n": args.n, "degree": args.degree}
        if factor is None:
            report["factor"] = None
            return report, EXIT_NONE_FOUND
        report["factor"] = poly_to_str(factor)
        report["identity_verified"] = True
        return report, EXIT_OK
    raise CliError(f"unknown divide mode {mode!r}")


def _fixture_kn_theta(args) -> dict:
    theta = fixtures.kn_theta()
    coeffs = quadric_map(theta)
    points = projective_point_scan(singular_ideal(theta), args.height)
    line = sing_line_search(theta, height=args.height)
    return {
        "command": "fixtures",
        "fixture": "kn-theta",
        "n": 4,
        "form": form_to_str(theta),
        "checks": {
            "decomposable": is_decomposable2(theta),
            "integrable": is_integrable2(theta),
            "quadric_residual": poly_to_str(coeffs.residual),
            "rotational": vfield_to_str(rotational4(theta)),
            "rotational_contraction_zero": theta.interior(rotational4(theta)).is_zero(),
        },
        "singular": {
            "height": args.height,
            "projective_points": [list(p) for p in points],
            "line_search": line.kind,
        },
        "witnesses": [
            {
                "name": "theta",
                "n": 4,
                "form": form_to_str(theta),
                "expect": {"decomposable": True, "integrable": False},
            }
        ],
    }


def _fixture_log_example(args) -> dict:
    from .foliate import invariant_hyperplane
    from .singloc import codim1_content

    eta = fixtures.log_example()
    content, _ = codim1_content(eta)
    hyperplanes = [
        poly_to_str(Poly.variable(4, j))
        for j in range(4)
        if invariant_hyperplane(eta, Poly.variable(4, j))
    ]
    lines = enumerate_line_certificates(eta, height=args.height)
    return {
        "command": "fixtures",
        "fixture": "log-example",
        "n": 4,
        "lambda": list(fixtures.LOG_EXAMPLE_LAMBDA),
        "mu": list(fixtures.LOG_EXAMPLE_MU),
        "form": form_to_str(eta),
        "checks": {
            "integrable": is_integrable2(eta),
            "invariant_hyperplanes": hyperplanes,
            "content": poly_to_str(content),
        },
        "line_certificates": [list(v) for v in lines],
        "witnesses": [
            {
                "name": "eta",
                "n": 4,
                "form": form_to_str(eta),
                "expect": {"decomposable": True, "integrable": True},
            }
        ],
    }


def _fixture_case_a(args) -> dict:
    data = fixtures.case_a()
    rho = {f"{i + 1}{j + 1}": frac_str(v) for (i, j), v in sorted(data.rho.items())}
    deta = data.eta.d()
    df = PForm.from_poly(data.factor).d()
    return {
        "command": "fixtures",
        "fixture": "case-a",
        "n": 4,
        "lambda": [frac_str(v) for v in fixtures.CASE_A_LAMBDA],
        "mu": [frac_str(v) for v in fixtures.CASE_A_MU],
        "eta": form_to_str(data.eta),
        "integrating_factor": poly_to_str(data.factor),
        "rho": rho,
        "checks": {
            "integrable": is_integrable2(data.eta),
            "factor_identity": deta * data.factor == df.wedge(data.eta),
        },
        "witnesses": [
            {
                "name": "eta",
                "n": 4,
                "form": form_to_str(data.eta),
                "expect": {"decomposable": True, "integrable": True},
            }
        ],
    }


def _fixture_case_b(args) -> dict:
    rho = Fraction(args.rho) if args.rho else Fraction(3, 2)
    lam = Fraction(args.lam) if args.lam else Fraction(1)
    data = fixtures.case_b(rho, lam)
    a_const, b_const, c_const = data.log_constants
    return {
        "command": "fixtures",
        "fixture": "case-b",
        "n": 4,
        "rho": frac_str(rho),
        "lambda": frac_str(lam),
        "eta": form_to_str(data.eta),
        "alpha": form_to_str(data.alpha),
        "beta": form_to_str(data.beta),
        "g": poly_to_str(data.g),
        "h": poly_to_str(data.h),
        "constants": {"A": frac_str(a_const), "B": frac_str(b_const), "C": frac_str(c_const)},
        "checks": {
            "integrable": is_integrable2(data.eta),
            "identities_verified": True,
        },
        "witnesses": [
            {
                "name": "eta",
                "n": 4,
                "form": form_to_str(data.eta),
                "expect": {"decomposable": True, "integrable": True},
            },
            {
                "name": "alpha",
                "n": 4,
                "form": form_to_str(data.alpha),
                "expect": {"decomposable": True},
            },
            {
                "name": "beta",
                "n": 4,
                "form": form_to_str(data.beta),
                "expect": {"decomposable": True, "integrable": True},
            },
        ],
    }


def _fixture_pencil(args) -> dict:
    f_lin, g_lin, omega_lin = fixtures.pencil_linear()
    f_quad, g_quad, omega_quad = fixtures.pencil_quadratic()
    point = (0, 0, 1, 0)
    domega = omega_quad.d()
    line = (0, 0, 0, 1)
    t = Poly.variable(1, 0)
    images = [t * v for v in line]
    on_line = all(
        c.substitute(images).is_zero() for c in domega.coefficients()
    ) and f_quad.substitute(images).is_zero() and g_quad.substitute(images).is_zero()
    return {
        "command": "fixtures",
        "fixture": "pencil",
        "n": 4,
        "linear": {
            "f": poly_to_str(f_lin),
            "g": poly_to_str(g_lin),
            "omega": form_to_str(omega_lin),
            "kupka_point": list(point),
            "kupka": kupka_point(omega_lin, point),
        },
        "quadratic": {
            "f": poly_to_str(f_quad),
            "g": poly_to_str(g_quad),
            "omega": form_to_str(omega_quad),
            "dicritical": is_dicritical(omega_quad),
            "base_locus_line": list(line),
            "derivative_vanishes_on_line": on_line,
        },
        "witnesses": [
            {
                "name": "omega_linear",
                "n": 4,
                "form": form_to_str(omega_lin),
                "expect": {"integrable": True, "dicritical": True},
            },
            {
                "name": "omega_quadratic",
                "n": 4,
                "form": form_to_str(omega_quad),
                "expect": {"integrable": True, "dicritical": True},
            },
        ],
    }


FIXTURE_BUILDERS = {
    "kn-theta": _fixture_kn_theta,
    "log-example": _fixture_log_example,
    "case-a": _fixture_case_a,
    "case-b": _fixture_case_b,
    "pencil": _fixture_pencil,
}


def cmd_fixtures(args) -> tuple[dict, int]:
    builder = FIXTURE_BUILDERS.get(args.name)
    if builder is None:
        raise CliError(f"unknown fixture {args.name!r}")
    return builder(args), EXIT_OK


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--timing", action="store_true", help="include timing in the report")
    parser = Parser(prog="folform", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=Parser)

    def add_sub(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def add_n(p, default=None):
        p.add_argument("--n", type=int, default=default, required=default is None, help="variable count (1..8)")

    p = add_sub("check", help="decomposability/integrability/dicriticality verdicts")
    add_n(p)
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_check)

    p = add_sub("decompose", help="meromorphic decomposition witness for a 2-form")
    add_n(p)
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_decompose)

    p = add_sub("rotational", help="the rotational vector field on four variables")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_rotational)

    p = add_sub("intersect", help="topological intersection of integrable 1-forms")
    add_n(p)
    p.add_argument("--form", action="append", required=True, help="repeatable")
    p.set_defaults(func=cmd_intersect)

    p = add_sub("classify", help="homogeneous small-degree classification")
    add_n(p, default=4)
    p.add_argument("--form")
    p.add_argument("--fixture", choices=sorted(FIXTURE_BUILDERS))
    p.add_argument("--rho")
    p.add_argument("--lambda", dest="lam")
    p.set_defaults(func=cmd_classify)

    p = add_sub("sing-probe", help="line/point certificates for the singular set")
    add_n(p, default=4)
    p.add_argument("--form")
    p.add_argument("--fixture", choices=sorted(FIXTURE_BUILDERS))
    p.add_argument("--height", type=int, default=10)
    p.set_defaults(func=cmd_sing_probe)

    p = add_sub("series-decompose", help="order-by-order decomposition of a family")
    add_n(p)
    p.add_argument("--form", action="append", required=True, help="family coefficients, repeatable")
    p.add_argument("--alpha0", required=True)
    p.add_argument("--beta0", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--dmax", type=int, default=2)
    p.set_defaults(func=cmd_series_decompose)

    p = add_sub("divide", help="degree-bounded division solvers")
    p.add_argument("mode", choices=["saito", "derham", "cofoliation", "intfactor"])
    add_n(p, default=4)
    p.add_argument("--form")
    p.add_argument("--alpha0")
    p.add_argument("--beta0")
    p.add_argument("--mu")
    p.add_argument("--vfield")
    p.add_argument("--dmax", type=int, default=2)
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_divide)

    p = add_sub("fixtures", help="built-in fixture reports")
    p.add_argument("name", choices=sorted(FIXTURE_BUILDERS))
    p.add_argument("--height", type=int, default=10)
    p.add_argument("--rho")
    p.add_argument("--lambda", dest="lam")
    p.set_defaults(func=cmd_fixtures)

    return parser


def render_human(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(render_human(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.extend(render_human(item, indent + "  "))
                lines.append(f"{indent}  --")
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    started = time.monotonic()
    try:
        args = parser.parse_args(argv)
        report, status = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ParseError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.timing:
        report["timing_ms"] = round((time.monotonic() - started) * 1000, 3)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(render_human(report)))
    return status


if __name__ == "__main__":
    sys.exit(main())
