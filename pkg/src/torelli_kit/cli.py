"""Batch command line interface.

Every subcommand builds a JSON-serialisable report.  Exit status is 0 on
success, 1 when a hypothesis of the certificate fails, and 2 for malformed
input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Callable

from .certificate import (BoundaryProfile, CertificateInput, Realizability, certify,
                          dehn_twist_realizability, stein_certify, xn_input, zn_input)
from .errors import (HypothesisFailed, InjectivityUnverified, NotPoincare, NotTorelli,
                     TorelliKitError)
from .families import xn_family, z_fixture
from .groupring import basic_classes, pairwise_distinct, sw_knot_surgery_family
from .legendrian import (FrontDiagram, chern_class, classical_invariants, distinguish_boundaries,
                         linking_number, nontorsion_test, stein_trace)
from .linalg import IntMatrix, smith_normal_form
from .presentation import SCHEMA, LinkTrace, betti_sanity, boundary_homology
from .variation import (SkewForm, Variation, induced_automorphism, is_poincare, is_torelli,
                        skew_from_variation, torelli_rank, variation_from_skew)

EXIT_OK, EXIT_HYPOTHESIS, EXIT_MALFORMED = 0, 1, 2


class MalformedInput(TorelliKitError, ValueError):
    pass


class Report(dict):
    """A report dict plus the exit status it should produce."""

    status = EXIT_OK
    summary: list[str]

    def __init__(self, *args, summary=None, status=EXIT_OK, **kw):
        super().__init__(*args, **kw)
        self.summary = list(summary or [])
        self.status = status


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------


def parse_range(spec: str) -> list[int]:
    """``"3"``, ``"1..5"`` or ``"1,3,7"`` (pieces may be combined)."""
    out: list[int] = []
    for piece in spec.split(","):
        piece = piece.strip()
        m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", piece)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise MalformedInput(f"empty range {piece!r}")
            out.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", piece):
            out.append(int(piece))
        else:
            raise MalformedInput(f"cannot parse {piece!r} as an integer or range a..b")
    return out


def read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def parse_matrix_text(text: str) -> IntMatrix:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if line:
            try:
                rows.append([int(x) for x in line.split()])
            except ValueError:
                raise MalformedInput(f"non-integer entry in row {line!r}") from None
    if not rows:
        raise MalformedInput("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise MalformedInput("rows have different lengths")
    return IntMatrix(rows)


def _matrix_arg(data) -> IntMatrix:
    if isinstance(data, dict):
        data = data.get("matrix")
    if (not isinstance(data, list) or not data
            or not all(isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                                   for x in r) for r in data)
            or len({len(r) for r in data}) != 1):
        raise MalformedInput("expected a rectangular integer matrix")
    return IntMatrix(data)


def load_front(text: str) -> FrontDiagram:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return FrontDiagram.from_json(load_json(text))
    return FrontDiagram.from_text(text)


def family_traces(args) -> list[tuple[str, LinkTrace]]:
    if args.family == "xn":
        return [(f"X_{n}", xn_family(n)[0]) for n in parse_range(args.n)]
    if args.family == "zn":
        return [(f"Z_{n}", z_fixture()[0]) for n in parse_range(args.n)]
    data = load_json(read_input(args.input))
    return [("input", LinkTrace.from_json(data.get("trace", data) if isinstance(data, dict) else data))]


def _positive(ns: list[int]) -> list[int]:
    if any(n < 1 for n in ns):
        raise MalformedInput("family parameter n must be >= 1")
    return ns


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_snf(args) -> Report:
    text = read_input(args.input)
    M = _matrix_arg(load_json(text)) if text.lstrip().startswith(("{", "[")) else parse_matrix_text(text)
    s = smith_normal_form(M)
    return Report(
        matrix=M.tolist(), U=s.U.tolist(), S=s.S.tolist(), V=s.V.tolist(),
        rank=s.rank, invariant_factors=list(s.invariant_factors),
        summary=[f"rank {s.rank}", "invariant factors: " + " ".join(map(str, s.invariant_factors))],
    )


def _homology_entry(name: str, t: LinkTrace) -> dict:
    bd = boundary_homology(t)
    betti = betti_sanity(t)
    return {
        "name": name,
        "trace": t.to_json(),
        "h2": f"Z^{t.n}" if t.n != 1 else "Z",
        "intersection_form": t.linking.tolist(),
        "form_vanishes": t.linking.is_zero(),
        "h1_boundary": str(bd.h1),
        "b1_boundary": bd.b1,
        "torsion": list(bd.h1.torsion),
        "h2_boundary_basis": [list(c) for c in bd.h2_boundary.columns()],
        "duality": bd.duality.tolist(),
        "betti_violations": list(betti.violations),
    }


def cmd_homology(args) -> Report:
    entries = [_homology_entry(name, t) for name, t in family_traces(args)]
    return Report(results=entries,
                  summary=[f"{e['name']}: H_2 = {e['h2']}, H_1(boundary) = {e['h1_boundary']}" for e in entries])


def cmd_variation(args) -> Report:
    data = load_json(read_input(args.input))
    if not isinstance(data, dict) or "trace" not in data:
        raise MalformedInput("variation input needs a 'trace' and either 'skew' or 'matrix'")
    t = LinkTrace.from_json(data["trace"])
    if "skew" in data:
        v = variation_from_skew(SkewForm(_matrix_arg(data["skew"])), t)
    elif "matrix" in data:
        v = Variation.from_json(data)
    else:
        raise MalformedInput("variation input needs 'skew' or 'matrix'")
    poincare = is_poincare(v)
    out = Report(trace=t.to_json(), matrix=v.matrix.tolist(), poincare=poincare)
    if not poincare:
        out["torelli"] = False
        out.summary = ["not a Poincare variation: D + D^T != D L D^T"]
        out.status = EXIT_HYPOTHESIS
        return out
    torelli = is_torelli(v)
    out["torelli"] = torelli
    out["induced_automorphism"] = induced_automorphism(v).tolist()
    if torelli:
        out["skew_form"] = skew_from_variation(v).matrix.tolist()
    out.summary = [f"Poincare variation, {'Torelli' if torelli else 'not Torelli'}"]
    return out


def cmd_torelli(args) -> Report:
    entries = []
    for name, t in family_traces(args):
        bd = boundary_homology(t)
        r = torelli_rank(t)
        entries.append({"name": name, "b1_boundary": bd.b1, "torelli_rank": r,
                        "trivial": r == 0})
    return Report(results=entries,
                  summary=[f"{e['name']}: Torelli group Z^{e['torelli_rank']}" if e["torelli_rank"]
                           else f"{e['name']}: trivial Torelli group" for e in entries])


def _cert_report(pairs) -> Report:
    entries, lines, status = [], [], EXIT_OK
    for name, cert in pairs:
        entries.append({"name": name, **cert.to_json()})
        if cert.ok:
            lines.append(f"{name}: d = {cert.d}, infinitely many non-smoothable = "
                         f"{str(cert.infinitely_many_nonsmoothable).lower()}, all non-trivial = "
                         f"{str(cert.all_nontrivial_nonsmoothable).lower()}")
        else:
            lines.append(f"{name}: hypothesis failed ({cert.failure_reason})")
            status = EXIT_HYPOTHESIS
    return Report(certificates=entries, summary=lines, status=status)


def cmd_certify(args) -> Report:
    if args.family == "xn":
        return _cert_report((f"X_{n}", certify(xn_input(n))) for n in _positive(parse_range(args.n)))
    if args.family == "zn":
        return _cert_report((f"Z_{n}", certify(zn_input(n))) for n in _positive(parse_range(args.n)))
    inp = CertificateInput.from_json(load_json(read_input(args.input)))
    return _cert_report([("input", certify(inp))])


def cmd_stein_certify(args) -> Report:
    if args.family == "xn":
        return _cert_report((f"X_{n}", stein_certify(xn_family(n)[1])) for n in _positive(parse_range(args.n)))
    front = load_front(read_input(args.input))
    return _cert_report([("input", stein_certify(front))])


def _front_entry(name: str, f: FrontDiagram) -> dict:
    comps = []
    for i, label in enumerate(f.component_labels()):
        ci = classical_invariants(f, i)
        comps.append({"label": label, "tb": ci.tb, "rot": ci.rot, "writhe": ci.writhe,
                      "right_cusps": ci.right_cusps, "framing": ci.tb - 1})
    t = stein_trace(f)
    c1 = chern_class(f)
    nt = nontorsion_test(c1, t)
    return {
        "name": name,
        "components": comps,
        "linking": {f"{i},{j}": linking_number(f, i, j)
                    for i in range(f.ncomponents) for j in range(i + 1, f.ncomponents)},
        "stein_trace": t.to_json(),
        "c1": list(c1),
        "c1_boundary": None if nt is None else {"d": nt.d, "v1": list(nt.v1)},
    }


def cmd_legendrian(args) -> Report:
    if args.family == "xn":
        fronts = [(f"X_{n}", xn_family(n)[1]) for n in _positive(parse_range(args.n))]
    else:
        fronts = [("input", load_front(read_input(args.input)))]
    entries = [_front_entry(name, f) for name, f in fronts]
    lines = []
    for e in entries:
        inv = ", ".join(f"{c['label']}: tb {c['tb']} rot {c['rot']}" for c in e["components"])
        lines.append(f"{e['name']}: {inv}; c1 = {tuple(e['c1'])}")
    return Report(results=entries, summary=lines)


def cmd_sw(args) -> Report:
    if args.family != "zn":
        raise MalformedInput("sw supports --family zn")
    ns = _positive(parse_range(args.n))
    family = [sw_knot_surgery_family(n) for n in ns]
    entries = [{"n": n, "sw": sw.to_json(), "expansion": str(sw),
                "basic_classes": len(basic_classes(sw)),
                "e1e2_coefficient": sw.coefficient((1, 1, 0))}
               for n, sw in zip(ns, family)]
    out = Report(results=entries, summary=[f"n={e['n']}: {e['expansion']}" for e in entries])
    if args.check_distinct:
        rep = pairwise_distinct(family)
        out["all_distinct"] = rep.all_distinct
        out["equal_pairs"] = [[ns[i], ns[j]] for i, j in rep.equal_pairs]
        out.summary.append("all distinct" if rep.all_distinct
                           else "equal pairs: " + ", ".join(f"{ns[i]}={ns[j]}" for i, j in rep.equal_pairs))
    return out


def cmd_distinguish(args) -> Report:
    if args.r == args.m:
        raise MalformedInput("--r and --m must differ")
    if min(args.r, args.m) < 1:
        raise MalformedInput("--r and --m must be >= 1")
    b = distinguish_boundaries(args.r, args.m)
    return Report(r=b.r, m=b.m, n_r=b.n_r, n_m=b.n_m, upper=b.upper, lower=b.lower,
                  literal_lower=b.literal_lower, distinct=b.distinct, verdict=b.verdict,
                  summary=[str(b)])


def cmd_dehn_twist(args) -> Report:
    if args.input is not None:
        data = load_json(read_input(args.input))
        if not isinstance(data, dict) or not isinstance(data.get("b1"), int):
            raise MalformedInput("profile needs an integer 'b1'")
        keys = ("is_prime", "is_T3", "seifert_over_T2")
        if any(not isinstance(data.get(k, False), bool) for k in keys):
            raise MalformedInput("profile flags must be booleans")
        profile = BoundaryProfile(data["b1"], **{k: data[k] for k in keys if k in data})
    else:
        if args.b1 is None:
            raise MalformedInput("give --b1 or a profile file")
        profile = BoundaryProfile(args.b1, not args.not_prime, args.t3, args.seifert_over_t2)
    verdict: Realizability = dehn_twist_realizability(profile)
    return Report(profile={"b1": profile.b1, "is_prime": profile.is_prime, "is_T3": profile.is_T3,
                           "seifert_over_T2": profile.seifert_over_T2},
                  verdict=verdict.value, summary=[verdict.value])


COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "snf": cmd_snf,
    "homology": cmd_homology,
    "variation": cmd_variation,
    "torelli": cmd_torelli,
    "certify": cmd_certify,
    "stein-certify": cmd_stein_certify,
    "legendrian": cmd_legendrian,
    "sw": cmd_sw,
    "distinguish": cmd_distinguish,
    "dehn-twist": cmd_dehn_twist,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    parser = _Parser(prog="torelli-kit", description="Torelli groups and non-smoothability certificates")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, family=None, input=True):
        p = sub.add_parser(name, help=help, parents=[common])
        if input:
            p.add_argument("input", nargs="?", help="input file (default: stdin)")
        if family:
            p.add_argument("--family", choices=family)
            p.add_argument("--n", default="1", help="parameter, range a..b or list")
        return p

    add("snf", "Smith normal form of an integer matrix")
    add("homology", "homology of a link trace and its boundary", ("xn", "zn"))
    add("variation", "check a variation or build one from a skew form")
    add("torelli", "rank of the Torelli group of a link trace", ("xn", "zn"))
    add("certify", "non-smoothability certificate", ("xn", "zn"))
    add("stein-certify", "certificate for a Stein domain given by a front", ("xn",))
    add("legendrian", "classical invariants of a front", ("xn",))
    p = add("sw", "Seiberg-Witten invariants of the knot-surgery family", ("zn",), input=False)
    p.add_argument("--check-distinct", action="store_true")
    p = add("distinguish", "genus obstruction between boundaries of X_{n_r} and X_{n_m}", input=False)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = add("dehn-twist", "is the Torelli group generated by generalised Dehn twists?")
    p.add_argument("--b1", type=int)
    p.add_argument("--not-prime", action="store_true")
    p.add_argument("--t3", action="store_true")
    p.add_argument("--seifert-over-t2", action="store_true")
    return parser


def render(report: Report, command: str, fmt: str) -> str:
    body = {"schema": SCHEMA, "command": command, **report}
    if fmt == "json":
        return json.dumps(body, sort_keys=True, indent=2) + "\n"
    return "\n".join(report.summary) + "\n"


def run_cli(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report = COMMANDS[args.command](args)
    except (HypothesisFailed, NotPoincare, NotTorelli, InjectivityUnverified) as exc:
        print(f"torelli-kit: hypothesis failed: {exc}", file=stderr)
        return EXIT_HYPOTHESIS
    except (TorelliKitError, ValueError, KeyError, IndexError) as exc:
        print(f"torelli-kit: malformed input: {exc}", file=stderr)
        return EXIT_MALFORMED
    text = render(report, args.command, args.format)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"torelli-kit: cannot write {args.output}: {exc.strerror}", file=stderr)
            return EXIT_MALFORMED
    else:
        stdout.write(text)
    return report.status


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
