"""Command-line surface: workspace parsing, command dispatch, report emission.

Workspaces are JSON; polynomial strings are the only embedded mini-language.
JSON output is canonical (sorted keys, no insignificant whitespace) so golden
files are byte-stable.  Exit codes: 0 success, 1 check failure, 2 input error.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .classify import Catalogue, SuiteReport, classify_catalogue, run_suite
from .complexes import PerfectComplex, cohomology, koszul_object
from .errors import CertificateError, InputError, TtgError
from .fields import Field
from .modules import generic_rank
from .rings import GradedRing
from .serialize import canonical_json, render_text
from .spectrum import PrimePoint, residue_field_object


@dataclass
class Workspace:
    catalogue: Catalogue
    path: str

    def to_json_dict(self):
        ring = self.catalogue.ring
        return {
            "ring": {
                "char": ring.field.characteristic,
                "vars": [{"name": n, "degree": w} for n, w in ring.variables],
            },
            "primes": [p.to_json_dict() for p in self.catalogue.primes],
            "complexes": [
                dict(self.catalogue.objects[name].to_json_dict(), name=name)
                for name in self.catalogue.objects
            ],
        }


def _expect(mapping, key, kind, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise InputError(f"{where}: missing key {key!r}")
    value = mapping[key]
    if not isinstance(value, kind):
        raise InputError(f"{where}.{key}: expected {kind.__name__}")
    return value


def parse_workspace(path: str) -> Workspace:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except FileNotFoundError:
        raise InputError(f"workspace file not found: {path}") from None
    except json.JSONDecodeError as err:
        raise InputError(
            f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from None

    ring_spec = _expect(raw, "ring", dict, path)
    char = _expect(ring_spec, "char", int, f"{path}:ring")
    var_specs = _expect(ring_spec, "vars", list, f"{path}:ring")
    variables = []
    for i, v in enumerate(var_specs):
        name = _expect(v, "name", str, f"{path}:ring.vars[{i}]")
        degree = _expect(v, "degree", int, f"{path}:ring.vars[{i}]")
        variables.append((name, degree))
    ring = GradedRing(Field(char), tuple(variables))

    def parse_poly(text, where):
        if not isinstance(text, str):
            raise InputError(f"{where}: expected a polynomial string")
        try:
            return ring.parse(text)
        except InputError as err:
            raise InputError(f"{where}: {err}") from None

    primes = []
    for i, spec in enumerate(raw.get("primes", [])):
        where = f"{path}:primes[{i}]"
        name = _expect(spec, "name", str, where)
        gens = [parse_poly(t, f"{where}.gens[{j}]")
                for j, t in enumerate(_expect(spec, "gens", list, where))]
        seq = [parse_poly(t, f"{where}.seq[{j}]")
               for j, t in enumerate(_expect(spec, "seq", list, where))]
        cert = parse_poly(spec.get("cert", "1"), f"{where}.cert")
        try:
            primes.append(PrimePoint.create(ring, name, gens, seq, cert))
        except (InputError, CertificateError) as err:
            raise InputError(f"{where}: {err}") from None

    objects = {}
    for i, spec in enumerate(raw.get("complexes", [])):
        where = f"{path}:complexes[{i}]"
        name = _expect(spec, "name", str, where)
        gen_specs = _expect(spec, "gens", list, where)
        gen_names = []
        degrees = []
        for j, g in enumerate(gen_specs):
            gen_names.append(_expect(g, "name", str, f"{where}.gens[{j}]"))
            degrees.append(_expect(g, "degree", int, f"{where}.gens[{j}]"))
        index = {n: k for k, n in enumerate(gen_names)}
        entries = {}
        for j, e in enumerate(spec.get("d", [])):
            src = _expect(e, "from", str, f"{where}.d[{j}]")
            dst = _expect(e, "to", str, f"{where}.d[{j}]")
            coef = parse_poly(_expect(e, "coef", str, f"{where}.d[{j}]"), f"{where}.d[{j}].coef")
            for gen, label in ((src, "from"), (dst, "to")):
                if gen not in index:
                    raise InputError(f"{where}.d[{j}].{label}: unknown generator {gen!r}")
            key = (index[src], index[dst])
            entries[key] = entries.get(key, ring.zero()) + coef
        try:
            objects[name] = PerfectComplex(ring, degrees, entries, names=tuple(gen_names))
        except (InputError, TtgError) as err:
            raise InputError(f"{where}: {err}") from None

    return Workspace(Catalogue(ring, primes, objects), path)


def serialize_workspace(workspace: Workspace) -> str:
    return canonical_json(workspace.to_json_dict())


def emit_report(payload, fmt: str) -> bytes:
    """Canonical bytes for a report payload; text uses deterministic rendering."""
    if fmt == "json":
        return canonical_json(payload).encode("utf-8")
    if fmt == "text":
        return render_text(payload).encode("utf-8")
    raise InputError(f"unknown format {fmt!r}")


def _window(complex_: PerfectComplex, max_degree):
    if max_degree is None:
        return complex_.probe_window()
    return (-max_degree, max_degree)


def _hilbert_payload(complex_, max_degree):
    lo, hi = _window(complex_, max_degree)
    return cohomology(complex_).dimension_table(lo, hi).to_json_dict()


def execute(args, workspace: Workspace):
    """Run one command; returns (payload_or_text, exit_code)."""
    cat = workspace.catalogue
    command = args.command
    if command == "validate":
        return {
            "ring": workspace.to_json_dict()["ring"],
            "primes": [{"name": p.name, "status": p.status} for p in cat.primes],
            "complexes": sorted(cat.objects),
            "ok": True,
        }, 0
    if command == "cohomology":
        obj = cat.object(args.name)
        module = cohomology(obj)
        return {
            "object": args.name,
            "module": module.to_json_dict(),
            "annihilator": list(module.annihilator().display_basis()),
            "hilbert": _hilbert_payload(obj, args.max_degree),
        }, 0
    if command == "support":
        obj = cat.object(args.name)
        support = cat.support(obj)
        payload = {
            "object": args.name,
            "minimal": list(support.ideal_strings()),
            "names": list(support.names()),
        }
        if cat.warn_uncatalogued(cohomology(obj)):
            payload["warning"] = (
                "annihilator has a minimal prime outside the declared catalogue"
            )
        return payload, 0
    if command == "koszul":
        obj = cat.object(args.name)
        ring = cat.ring
        try:
            sequence = [ring.parse(t) for t in args.elements]
        except InputError as err:
            raise InputError(f"koszul element: {err}") from None
        built = koszul_object(obj, sequence)
        support = cat.support(built)
        label = f"{args.name}//({','.join(str(f) for f in sequence)})"
        return {
            "object": label,
            "gens": list(built.degrees),
            "hilbert": _hilbert_payload(built, args.max_degree),
            "support": list(support.ideal_strings()),
        }, 0
    if command == "residue":
        prime = cat.prime(args.name)
        residue = residue_field_object(prime)
        return {
            "prime": prime.name,
            "status": prime.status,
            "hilbert": _hilbert_payload(residue.complex, args.max_degree),
            "annihilator": list(residue.cohomology.annihilator().display_basis()),
            "generic_rank": generic_rank(residue.cohomology, prime),
        }, 0
    if command == "classify":
        return classify_catalogue(cat), 0
    if command == "check":
        if args.seed is None:
            raise InputError("check requires an explicit --seed; no hidden entropy")
        report = run_suite(cat, args.suite, args.seed, args.n)
        return report, 0 if report.all_passed() else 1
    if command == "report":
        payload = {
            "ring": workspace.to_json_dict()["ring"],
            "primes": [p.to_json_dict() for p in cat.primes],
            "objects": [
                {
                    "name": name,
                    "gens": list(cat.objects[name].degrees),
                    "support": list(cat.support(cat.objects[name]).ideal_strings()),
                }
                for name in sorted(cat.objects)
            ],
            "classification": classify_catalogue(cat),
        }
        return payload, 0
    raise InputError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttgkit",
        description="Exact workbench for perfect complexes over weighted graded rings",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="workspace JSON file")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--n", type=int, default=25)
    common.add_argument("--max-degree", type=int, default=None, dest="max_degree",
                        help="override the Hilbert probe window to [-N, N]")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common])
    p = sub.add_parser("cohomology", parents=[common])
    p.add_argument("name")
    p = sub.add_parser("support", parents=[common])
    p.add_argument("name")
    p = sub.add_parser("koszul", parents=[common])
    p.add_argument("name")
    p.add_argument("elements", nargs="+", help="homogeneous polynomial strings")
    p = sub.add_parser("residue", parents=[common])
    p.add_argument("name")
    sub.add_parser("classify", parents=[common])
    p = sub.add_parser("check", parents=[common])
    p.add_argument("suite")
    sub.add_parser("report", parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        workspace = parse_workspace(args.input)
        result, code = execute(args, workspace)
    except (InputError, CertificateError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if isinstance(result, SuiteReport):
        out = result.to_json() if args.format == "json" else result.to_text()
        sys.stdout.write(out)
    else:
        sys.stdout.buffer.write(emit_report(result, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
