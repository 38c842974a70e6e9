"""Command line front end: parse code-description documents, run the
pipelines, and emit reports.

A code document is UTF-8 JSON:

    {
      "label": "optional name",
      "field": {"p": 2, "s": 1},            # modulus digits for s > 1
      "generator": [["1+z+z^3", "z^2", "z^2", "1", "z"],
                    ["1", "1", "0", "1", "0"]]
    }

Exit codes: 0 verified/ok, 1 usage or parse error, 2 size guard
exceeded, 3 counterexample candidate or rejected witness.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import adjacency as adjmod
from . import duality as dualmod
from .errors import GuardExceeded
from .field import FieldSpec
from .linalg import FMat
from .polymat import (PolyMatrix, basic_diagnostic, code_degree, dual_generator,
                      is_basic, is_minimal)
from .statespace import coefficient_code, constant_code, controller_form


class CodeDocument:
    """Parsed code description: a field and a generator matrix."""

    def __init__(self, field: FieldSpec, generator: PolyMatrix,
                 label: str | None = None):
        self.field = field
        self.generator = generator
        self.label = label

    @classmethod
    def from_dict(cls, data: dict) -> "CodeDocument":
        if not isinstance(data, dict):
            raise ValueError("document root must be a JSON object")
        if "field" not in data or "generator" not in data:
            raise ValueError('document needs "field" and "generator" keys')
        fdecl = data["field"]
        if not isinstance(fdecl, dict) or "p" not in fdecl:
            raise ValueError('"field" must be an object with at least "p"')
        field = FieldSpec(int(fdecl["p"]), int(fdecl.get("s", 1)),
                          fdecl.get("modulus"))
        grid = data["generator"]
        if (not isinstance(grid, list) or not grid
                or any(not isinstance(r, list) or not r for r in grid)):
            raise ValueError('"generator" must be a non-empty grid of strings')
        widths = {len(r) for r in grid}
        if len(widths) != 1:
            raise ValueError("generator rows have inconsistent lengths")
        gen = PolyMatrix.from_strings(field, grid)
        label = data.get("label")
        return cls(field, gen, label)

    @classmethod
    def from_path(cls, path: str) -> "CodeDocument":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as e:
            raise ValueError(f"cannot read {path}: {e}") from None
        except json.JSONDecodeError as e:
            raise ValueError(
                f"{path}: JSON error at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from None
        return cls.from_dict(data)

    def field_dict(self) -> dict:
        out = {"p": self.field.p, "s": self.field.s}
        if self.field.modulus is not None:
            out["modulus"] = list(self.field.modulus)
        return out

    def to_dict(self) -> dict:
        out = {}
        if self.label is not None:
            out["label"] = self.label
        out["field"] = self.field_dict()
        out["generator"] = self.generator.to_strings()
        return out


def _emit_json(obj) -> int:
    print(json.dumps(obj, indent=2))
    return 0


def _parse_limits(pairs) -> dict:
    out = {}
    for item in pairs or []:
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"--limit wants NAME=VALUE, got {item!r}")
        if name not in ("transitions", "pairs", "grid", "search"):
            raise ValueError(f"unknown limit {name!r}")
        out[name] = int(value)
    return out


def _require_minimal(doc: CodeDocument) -> PolyMatrix:
    G = doc.generator
    if not is_basic(G):
        raise ValueError(
            "generator is not basic: " + (basic_diagnostic(G) or "no reason")
        )
    minimal, _ = is_minimal(G)
    if not minimal:
        raise ValueError(
            "generator is basic but not minimal; re-encode with a minimal "
            "generator (row degrees must sum to the code degree)"
        )
    return G


def cmd_info(args) -> int:
    doc = CodeDocument.from_path(args.file)
    G = doc.generator
    basic = is_basic(G)
    info: dict = {
        "label": doc.label,
        "field": doc.field_dict(),
        "n": G.ncols,
        "k": G.nrows,
        "basic": basic,
    }
    if not basic:
        info["diagnostic"] = basic_diagnostic(G)
        if args.format == "json":
            _emit_json(info)
        else:
            print(f"(n, k) = ({G.ncols}, {G.nrows})")
            print("basic: no")
            print(f"diagnostic: {info['diagnostic']}")
        return 1
    minimal, indices = is_minimal(G)
    info["minimal"] = minimal
    cf = controller_form(G) if minimal else None
    if not minimal:
        from .polymat import make_minimal_basic
        cf = controller_form(make_minimal_basic(G))
        info["note"] = "invariants computed from a canonicalized minimal encoder"
    prof = cf.profile
    const = constant_code(cf)
    coeff, r_hat = coefficient_code(cf)
    info.update({
        "delta": prof.delta,
        "forney_indices": list(prof.forney_indices),
        "r": prof.r,
        "r_hat": r_hat,
        "dim_constant_code": const.dim,
        "dim_coefficient_code": coeff.dim,
        "constant_code_basis": [[a.code for a in row] for row in const.basis],
        "coefficient_code_basis": [[a.code for a in row] for row in coeff.basis],
    })
    if args.format == "json":
        return _emit_json(info)
    if doc.label:
        print(f"label: {doc.label}")
    print(f"field: {doc.field}")
    print(f"(n, k, delta) = ({prof.n}, {prof.k}, {prof.delta})")
    print(f"basic: yes")
    print(f"minimal: {'yes' if minimal else 'no (canonicalized for invariants)'}")
    print("forney indices: " + ", ".join(str(d) for d in prof.forney_indices))
    print(f"r = {prof.r}")
    print(f"r_hat = {r_hat}")
    print(f"dim constant code = {info['dim_constant_code']}")
    print(f"dim coefficient code = {info['dim_coefficient_code']}")

    def dump_basis(tag, basis):
        print(f"{tag} basis (reduced rows):")
        if not basis:
            print("  (zero space)")
        for row in basis:
            print("  " + " ".join(str(a).rjust(2) for a in row))

    dump_basis("constant code", const.basis)
    dump_basis("coefficient code", coeff.basis)
    return 0


def cmd_adjacency(args) -> int:
    doc = CodeDocument.from_path(args.file)
    limits = _parse_limits(args.limit)
    G = _require_minimal(doc)
    cf = controller_form(G)
    adj = adjmod.adjacency_by_cosets(
        cf, limits.get("pairs", adjmod.PAIR_LIMIT))
    oracle_entries = None
    if args.oracle:
        oracle = adjmod.adjacency_by_transitions(
            cf, limits.get("transitions", adjmod.TRANSITION_LIMIT))
        if oracle != adj:
            raise AssertionError("oracle adjacency disagrees with coset route")
        oracle_entries = adj.support_size()
    if args.format == "json":
        payload = adj.to_json_dict()
        if oracle_entries is not None:
            payload["oracle"] = {"match": True, "entries": oracle_entries}
        return _emit_json(payload)
    print(adj.render_text())
    if oracle_entries is not None:
        print(f"oracle: match ({oracle_entries} entries)")
    return 0


def cmd_dual(args) -> int:
    doc = CodeDocument.from_path(args.file)
    G = _require_minimal(doc)
    H = dual_generator(G)
    label = f"{doc.label} (dual)" if doc.label else None
    out = CodeDocument(doc.field, H, label).to_dict()
    product_zero = (H @ G.transpose()).is_zero()
    out["certificate"] = {
        "orthogonal_to_input": product_zero,
        "delta": code_degree(H) if H.nrows else 0,
    }
    if not product_zero:
        raise AssertionError("dual certificate failed")
    return _emit_json(out)


def _witness_matrix(text: str, field: FieldSpec) -> FMat:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"witness is not valid JSON: {e.msg}") from None
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValueError("witness must be a nested integer array")
    rows = [[field.element(int(v) % field.q) for v in r] for r in data]
    return FMat.from_rows(field, rows, len(data)) if data else FMat(field, 0, 0, [])


def _report_out(report, fmt: str) -> int:
    if fmt == "json":
        _emit_json(report.to_json_dict())
    else:
        prof = report.profiles["code"]
        dprof = report.profiles["dual"]

        def line(tag, p):
            idx = ",".join(str(d) for d in p["forney_indices"])
            print(f"{tag}: ({p['n']},{p['k']},{p['delta']}) indices ({idx}) "
                  f"r={p['r']} r_hat={p['r_hat']}")

        line("code", prof)
        line("dual", dprof)
        print(f"theorem: {report.theorem_used}")
        print(f"witness: {report.witness}")
        print(f"verdict: {report.verdict}")
        print(f"entry mismatches: {report.entry_mismatch_count}")
        print(f"elapsed: {report.elapsed_ms} ms")
    return 0 if report.verdict == "verified" else 3


def cmd_verify(args) -> int:
    doc = CodeDocument.from_path(args.file)
    limits = _parse_limits(args.limit)
    G = _require_minimal(doc)
    witness = None
    if args.check_witness is not None:
        witness = _witness_matrix(args.check_witness, doc.field)
    report = dualmod.run_verification(
        G, mode=args.mode, witness=witness,
        zeta_exponent=args.zeta_exponent,
        grid_limit=limits.get("grid", dualmod.GRID_LIMIT),
        search_limit=limits.get("search", dualmod.SEARCH_LIMIT),
    )
    return _report_out(report, args.format)


def cmd_search_p(args) -> int:
    doc = CodeDocument.from_path(args.file)
    limits = _parse_limits(args.limit)
    G = _require_minimal(doc)
    report = dualmod.run_verification(
        G, mode="search",
        grid_limit=limits.get("grid", dualmod.GRID_LIMIT),
        search_limit=limits.get("search", dualmod.SEARCH_LIMIT),
    )
    return _report_out(report, args.format)


def cmd_macw(args) -> int:
    field = FieldSpec(args.p, args.s,
                      [int(d) for d in args.modulus.split(",")] if args.modulus else None)
    limits = _parse_limits(args.limit)
    charm = dualmod.CharacterMatrix.build(
        field, args.delta, zeta_exponent=args.zeta_exponent,
        limit=limits.get("grid", dualmod.GRID_LIMIT))
    if args.format == "json":
        return _emit_json({
            "p": field.p,
            "q": field.q,
            "delta": args.delta,
            "zeta_exponent": args.zeta_exponent,
            "scale_pow": charm.scale_pow,
            "exponents": [[int(e) for e in row] for row in charm.exponents],
        })
    if field.p == 2:
        grid = charm.signed_grid()
        width = max(len(str(v)) for row in grid for v in row)
        for row in grid:
            print(" ".join(str(v).rjust(width) for v in row))
    else:
        for row in charm.exponents:
            print(" ".join(f"z^{int(e)}" for e in row))
    print(f"scale: q^({charm.scale_pow}/2) with q = {field.q}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convmacw",
        description="Weight adjacency matrices and MacWilliams duality for "
                    "convolutional codes, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_limit=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if with_limit:
            p.add_argument("--limit", action="append", metavar="NAME=VALUE",
                           help="override a size guard (transitions, pairs, "
                                "grid, search)")

    p = sub.add_parser("info", help="print code invariants")
    p.add_argument("file")
    add_common(p, with_limit=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("adjacency", help="print the weight adjacency matrix")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true",
                   help="also run the transition-enumeration oracle and compare")
    add_common(p)
    p.set_defaults(func=cmd_adjacency)

    p = sub.add_parser("dual", help="emit a code document for the dual code")
    p.add_argument("file")
    add_common(p, with_limit=False)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="verify the duality transformation")
    p.add_argument("file")
    p.add_argument("--mode", default="auto",
                   choices=("auto", "weak", "theorem-q", "theorem-p",
                            "search", "unit-memory"))
    p.add_argument("--check-witness", metavar="JSON",
                   help="validate a given witness matrix (nested int arrays)")
    p.add_argument("--zeta-exponent", type=int, default=1,
                   help="use the d-th power of the primitive root")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-p", help="projective witness search only")
    p.add_argument("file")
    add_common(p)
    p.set_defaults(func=cmd_search_p)

    p = sub.add_parser("macw", help="dump the character matrix for (q, delta)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--modulus", help="comma-separated digits, constant first")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--zeta-exponent", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_macw)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
