"""Command-line driver.

Every subcommand prints one JSON document (or a plain table) on stdout.
Verdicts such as "invalid code" or "no homomorphism" are part of that
output; the exit status only reports operational trouble:

    0  ok          2  budget exceeded
    3  bad input   4  a property that must hold was violated
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import bounds_report
from .digraph import digraph_to_json, format_digraph, load_digraph
from .errors import BudgetExceeded, IndexCodingError, InvalidInput, PropertyViolation
from .field import make_field
from .hfamily import build_hk, explicit_code_hk
from .homsearch import VertexMap, find_homomorphism, precedes
from .lincode import DEFAULT_BUDGET, LinearCode, extract_homomorphism, is_valid_linear_code, lind
from .sweeps import classify, monotonicity_sweep
from .translate import GroupCode, translate_group, translate_linear

BUDGET_ENV = "INDEXCODING_BUDGET"

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_INPUT = 3
EXIT_PROPERTY = 4


@dataclass
class RunConfig:
    budget: int
    fmt: str = "json"
    output: Optional[str] = None

    def __post_init__(self):
        if self.budget < 1:
            raise InvalidInput(f"budget must be positive, got {self.budget}")


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{BUDGET_ENV}={raw!r} is not an integer") from None


def _q_list(text: str) -> list[int]:
    try:
        qs = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidInput(f"bad field list {text!r}") from None
    if not qs:
        raise InvalidInput("empty field list")
    for q in qs:
        make_field(q)
    return qs


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _encode(data, indent: int = 0) -> str:
    # like json.dumps(indent=2), but lists of scalars stay on one line
    pad = "  " * (indent + 1)
    if isinstance(data, dict):
        if not data:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent + 1)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(data, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in data):
            return json.dumps(list(data))
        items = [pad + _encode(x, indent + 1) for x in data]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(data)


def _dump(data) -> str:
    return _encode(data) + "\n"


# -- subcommands -------------------------------------------------------------------

def _render_bounds_table(reports: list[dict]) -> str:
    header = f"{'graph':<16} {'q':>3} {'lower':>6} {'exact':>6} {'cover':>6} {'field change':<24}"
    lines = [header, "-" * len(header)]
    for rep in reports:
        for e in rep["entries"]:
            fc = ", ".join(f"{f['value']} (from q={f['from_q']}, {f['method']})" for f in e["upper"]["field_change"])
            cells = [e["lower"]["chromatic_log"], e["exact"], e["upper"]["clique_cover"]]
            cells = ["-" if c is None else str(c) for c in cells]
            lines.append(f"{rep['graph']:<16} {e['q']:>3} {cells[0]:>6} {cells[1]:>6} {cells[2]:>6} {fc or '-':<24}".rstrip())
        if rep["fractional_chi_complement"] is not None:
            lines.append(f"{'':<16} fractional clique cover {rep['fractional_chi_complement']}")
    return "\n".join(lines) + "\n"


def cmd_bounds(args, cfg: RunConfig):
    qs = _q_list(args.q)
    reports = []
    for path in args.graphs:
        G = load_digraph(path)
        gid = os.path.basename(path)
        reports.append(bounds_report(G, qs, cfg.budget, exact=args.exact, graph_id=gid).to_json())
    if cfg.fmt == "table":
        return _render_bounds_table(reports), EXIT_OK
    return _dump(reports[0] if len(reports) == 1 else reports), EXIT_OK


def cmd_lind(args, cfg: RunConfig):
    G = load_digraph(args.graph)
    q = _q_list(args.q)[0]
    k_max = G.m if args.kmax is None else args.kmax
    found = lind(G, q, k_max, cfg.budget) if G.m else None
    data = {"q": q, "m": G.m, "k_max": min(k_max, G.m)}
    if found is None:
        data.update({"lind": None, "code": None})
    else:
        data.update({"lind": found[0], "code": found[1].to_json()})
    return _dump(data), EXIT_OK


def cmd_hk(args, cfg: RunConfig):
    hk = build_hk(args.q, args.k)
    if args.format == "text":
        return format_digraph(hk.graph), EXIT_OK
    data = {"q": args.q, "k": args.k, "graph": digraph_to_json(hk.graph)}
    if args.code:
        data["code"] = explicit_code_hk(args.q, args.k).to_json()
    return _dump(data), EXIT_OK


def cmd_hom(args, cfg: RunConfig):
    G, H = load_digraph(args.G), load_digraph(args.H)
    phi = precedes(G, H) if args.complement else find_homomorphism(G, H)
    data = {
        "between": "complements" if args.complement else "graphs",
        "exists": phi is not None,
        "map": None if phi is None else list(phi.map),
    }
    return _dump(data), EXIT_OK


def cmd_verify_code(args, cfg: RunConfig):
    G = load_digraph(args.graph)
    code = LinearCode.from_json(_read_json(args.code))
    decoders = is_valid_linear_code(G, code.encoder)
    data = {
        "valid": decoders is not None,
        "q": code.q,
        "l": code.length,
        "decoders": None if decoders is None else [d.to_json() for d in decoders],
    }
    return _dump(data), EXIT_OK


def cmd_translate(args, cfg: RunConfig):
    G, H = load_digraph(args.G), load_digraph(args.H)
    phi = VertexMap.from_json(_read_json(args.map), H.m)
    raw = _read_json(args.code)
    if "alphabet" in raw:
        out = translate_group(G, H, phi, GroupCode.from_json(raw), budget=cfg.budget)
        data = {"kind": "group", "code": out.to_json()}
    else:
        out = translate_linear(G, H, phi, LinearCode.from_json(raw))
        valid = is_valid_linear_code(G, out.encoder) is not None
        if not valid:
            raise PropertyViolation("translated code failed validation")
        data = {"kind": "linear", "valid": valid, "code": out.to_json()}
    return _dump(data), EXIT_OK


def cmd_extract(args, cfg: RunConfig):
    G = load_digraph(args.graph)
    code = LinearCode.from_json(_read_json(args.code))
    ext = extract_homomorphism(G, code, general_field=args.general_field)
    if not ext.certified:
        raise PropertyViolation("extracted map is not a homomorphism of the complements")
    return _dump(ext.to_json()), EXIT_OK


def cmd_classify(args, cfg: RunConfig):
    res = classify(args.m, args.k, cfg.budget)
    status = EXIT_OK if res.ok else EXIT_PROPERTY
    return _dump(res.to_json()), status


def cmd_monotone(args, cfg: RunConfig):
    res = monotonicity_sweep(args.m, args.pairs, args.q, args.seed, cfg.budget)
    status = EXIT_OK if not res.violations else EXIT_PROPERTY
    return _dump(res.to_json()), status


# -- wiring ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="indexcoding", description="Scalar linear index coding toolkit.")
    parser.add_argument("--budget", type=int, default=None, help=f"search budget (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="lower/upper bounds (and optionally the exact index)")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--q", default="2,3", help="comma separated field sizes")
    p.add_argument("--exact", action="store_true", help="also search for the exact index")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lind", help="exact scalar linear index with a witness code")
    p.add_argument("graph")
    p.add_argument("--q", required=True)
    p.add_argument("--kmax", type=int)
    p.set_defaults(func=cmd_lind)

    p = sub.add_parser("hk", help="emit the universal graph H^q_k")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--code", action="store_true", help="include the explicit length-k code")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_hk)

    p = sub.add_parser("hom", help="search for a homomorphism G -> H")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--complement", action="store_true", help="search between the complements instead")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("verify-code", help="check a linear code against a graph")
    p.add_argument("graph")
    p.add_argument("code")
    p.set_defaults(func=cmd_verify_code)

    p = sub.add_parser("translate", help="carry a code for H back to G along a map of complements")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("map")
    p.add_argument("code")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("extract-hom", help="turn a length-k code into a map into H^q_k")
    p.add_argument("graph")
    p.add_argument("code")
    p.add_argument("--general-field", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("classify", help="code-exists vs homomorphism-exists sweep over all m-vertex digraphs")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("monotone", help="seeded check that lind never drops along the preorder")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_monotone)
    return parser


def _error(kind: str, exc: Exception) -> None:
    sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}) + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget = args.budget if args.budget is not None else _default_budget()
        cfg = RunConfig(budget, getattr(args, "format", "json"), args.output)
        text, status = args.func(args, cfg)
    except BudgetExceeded as exc:
        _error("budget", exc)
        return EXIT_BUDGET
    except PropertyViolation as exc:
        _error("property", exc)
        return EXIT_PROPERTY
    except (IndexCodingError, OSError) as exc:
        _error("input", exc)
        return EXIT_INPUT
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
