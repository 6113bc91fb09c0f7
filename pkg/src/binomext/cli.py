"""Command-line interface: JSON input documents, JSON reports, stable output.

Commands: validate, ideal, decompose, hilbert, color, reduce, oracle.
Exit codes: 0 success, 1 verification failed, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from dataclasses import dataclass

from . import poly
from .color import (
    Coloration,
    NotADTree,
    dtree_coloration,
    g_prime_graph,
    is_binomial_coloration,
    is_good_coloration,
    reduction_vectors,
    search_binomial_coloration,
)
from .complexes import (
    DuplicateVertexInFacet,
    EmptyFacet,
    ProperStar,
    is_generalized_d_tree,
    skeleton_graph,
    stanley_reisner_generators,
    validate_complex,
)
from .extension import (
    DuplicatePointName,
    ExtensionComplex,
    FacetExtension,
    NotAProperEdge,
    OriginMismatch,
    binomial_extension_ideal,
    build_extension_complex,
    component_ideals,
    facet_minors,
    reduced_graph,
    scroll_matrix,
)
from .poly import (
    Ring,
    buchberger,
    field_by_name,
    groebner_equal,
    hilbert_data,
    ideal_intersection_many,
    krull_dimension_lt,
    monomials_of_degree,
    normal_form,
)
from .reduce import (
    BothXVariables,
    ContainmentFailed,
    HypothesisFailed,
    NoColorationFound,
    NotSOP,
    WrongCount,
    degree_containment,
    modB_normal_pair,
    monomial_covered,
    reduction_number,
    verify_main_theorem,
)

COMMANDS = ("validate", "ideal", "decompose", "hilbert", "color", "reduce", "oracle")
ORDERS = ("lex", "deglex", "degrevlex")

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3

INPUT_ERRORS = (
    EmptyFacet,
    DuplicateVertexInFacet,
    NotAProperEdge,
    OriginMismatch,
    DuplicatePointName,
)


class SchemaError(ValueError):
    """Input document violates the expected structure."""


class UnknownName(ValueError):
    """A vertex name in the document does not resolve."""


# ---------------------------------------------------------------------------
# input documents


@dataclass(frozen=True)
class EdgeInput:
    target: str
    points: tuple[str, ...]


@dataclass(frozen=True)
class ExtensionInput:
    facet: int
    origin: str
    edges: tuple[EdgeInput, ...]


@dataclass(frozen=True)
class InputDocument:
    facets: tuple[tuple[str, ...], ...]
    extensions: tuple[ExtensionInput, ...] = ()
    vertices: tuple[str, ...] | None = None
    comment: str | None = None
    field_spec: int | str = 32003
    order: str = "degrevlex"
    rho_max: int = 10
    seed: int = 0


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {what}")


def _str_list(value, where: str) -> tuple[str, ...]:
    _expect(isinstance(value, list), where, "expected a list of strings")
    for i, n in enumerate(value):
        _expect(isinstance(n, str) and n, f"{where}[{i}]", "expected a non-empty string")
    return tuple(value)


def parse_document(data) -> InputDocument:
    """Validate a decoded JSON object and normalize defaults."""
    _expect(isinstance(data, dict), "document", "top level must be an object")
    known = {"comment", "vertices", "facets", "extensions", "field", "order", "options"}
    for k in data:
        _expect(k in known, "document", f"unknown field {k!r}")

    comment = data.get("comment")
    if comment is not None:
        _expect(isinstance(comment, str), "comment", "expected a string")

    vertices = None
    if "vertices" in data:
        vertices = _str_list(data["vertices"], "vertices")
        _expect(len(set(vertices)) == len(vertices), "vertices", "names must be unique")

    _expect("facets" in data, "document", "missing required field 'facets'")
    raw_facets = data["facets"]
    _expect(isinstance(raw_facets, list) and raw_facets, "facets", "expected a non-empty list")
    facets = tuple(_str_list(f, f"facets[{i}]") for i, f in enumerate(raw_facets))

    extensions: list[ExtensionInput] = []
    for i, raw in enumerate(data.get("extensions", [])):
        where = f"extensions[{i}]"
        _expect(isinstance(raw, dict), where, "expected an object")
        for k in raw:
            _expect(k in {"facet", "origin", "edges"}, where, f"unknown field {k!r}")
        _expect(
            isinstance(raw.get("facet"), int) and not isinstance(raw.get("facet"), bool),
            f"{where}.facet",
            "expected an integer facet index",
        )
        _expect(isinstance(raw.get("origin"), str), f"{where}.origin", "expected a vertex name")
        raw_edges = raw.get("edges")
        _expect(
            isinstance(raw_edges, list) and raw_edges,
            f"{where}.edges",
            "expected a non-empty list",
        )
        edges = []
        for j, e in enumerate(raw_edges):
            ewhere = f"{where}.edges[{j}]"
            _expect(isinstance(e, dict), ewhere, "expected an object")
            for k in e:
                _expect(k in {"target", "points"}, ewhere, f"unknown field {k!r}")
            _expect(isinstance(e.get("target"), str), f"{ewhere}.target", "expected a vertex name")
            points = _str_list(e.get("points", []), f"{ewhere}.points")
            edges.append(EdgeInput(e["target"], points))
        extensions.append(ExtensionInput(raw["facet"], raw["origin"], tuple(edges)))

    field_spec = data.get("field", 32003)
    if isinstance(field_spec, bool) or not isinstance(field_spec, (int, str)):
        raise SchemaError("field: expected a prime integer or 'rational'")
    if isinstance(field_spec, str) and field_spec != "rational":
        raise SchemaError(f"field: unknown field name {field_spec!r}")
    if isinstance(field_spec, int):
        try:
            field_by_name(field_spec)
        except ValueError as exc:
            raise SchemaError(f"field: {exc}") from exc

    order = data.get("order", "degrevlex")
    _expect(order in ORDERS, "order", f"expected one of {', '.join(ORDERS)}")

    options = data.get("options", {})
    _expect(isinstance(options, dict), "options", "expected an object")
    for k in options:
        _expect(k in {"rho_max", "seed"}, "options", f"unknown field {k!r}")
    rho_max = options.get("rho_max", 10)
    _expect(
        isinstance(rho_max, int) and not isinstance(rho_max, bool) and rho_max >= 1,
        "options.rho_max",
        "expected a positive integer",
    )
    seed = options.get("seed", 0)
    _expect(isinstance(seed, int) and not isinstance(seed, bool), "options.seed", "expected an integer")

    return InputDocument(
        facets=facets,
        extensions=tuple(extensions),
        vertices=vertices,
        comment=comment,
        field_spec=field_spec,
        order=order,
        rho_max=rho_max,
        seed=seed,
    )


def parse_input(path: str) -> InputDocument:
    """Read and validate a JSON input document from a file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_document(data)


def document_dict(doc: InputDocument) -> dict:
    """Canonical JSON-ready form of a document, defaults materialized."""
    out: dict = {}
    if doc.comment is not None:
        out["comment"] = doc.comment
    if doc.vertices is not None:
        out["vertices"] = list(doc.vertices)
    out["facets"] = [list(f) for f in doc.facets]
    out["extensions"] = [
        {
            "facet": e.facet,
            "origin": e.origin,
            "edges": [{"target": d.target, "points": list(d.points)} for d in e.edges],
        }
        for e in doc.extensions
    ]
    out["field"] = doc.field_spec
    out["order"] = doc.order
    out["options"] = {"rho_max": doc.rho_max, "seed": doc.seed}
    return out


def emit_document(doc: InputDocument) -> str:
    """Serialize a document so parse_document(json.loads(.)) round-trips."""
    return json.dumps(document_dict(doc), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# model construction


@dataclass(frozen=True)
class Model:
    doc: InputDocument
    ext: ExtensionComplex
    ring: Ring


def build_model(doc: InputDocument) -> Model:
    """Resolve names, normalize the complex, and attach extensions."""
    if doc.vertices is not None:
        declared = set(doc.vertices)
        for i, f in enumerate(doc.facets):
            for n in f:
                if n not in declared:
                    raise UnknownName(f"facets[{i}]: vertex {n!r} is not in the vertex list")
        used = {n for f in doc.facets for n in f}
        for n in doc.vertices:
            if n not in used:
                raise SchemaError(f"vertices: {n!r} appears in no facet")
    base = validate_complex(doc.facets, doc.vertices)
    known = {v.name for v in base.vertices}
    kept_index = {f: i for i, f in enumerate(base.facets)}

    exts: list[FacetExtension] = []
    seen: set[int] = set()
    for i, e in enumerate(doc.extensions):
        where = f"extensions[{i}]"
        if not 0 <= e.facet < len(doc.facets):
            raise SchemaError(f"{where}.facet: index {e.facet} out of range")
        fs = frozenset(base.id_of(n) for n in doc.facets[e.facet])
        if fs not in kept_index:
            raise SchemaError(
                f"{where}.facet: facet {e.facet} was dropped as contained in another facet"
            )
        l = kept_index[fs]
        if l in seen:
            raise SchemaError(f"{where}.facet: facet {e.facet} already has an extension")
        seen.add(l)
        if e.origin not in known:
            raise UnknownName(f"{where}.origin: unknown vertex {e.origin!r}")
        targets = []
        for j, d in enumerate(e.edges):
            if d.target not in known:
                raise UnknownName(f"{where}.edges[{j}].target: unknown vertex {d.target!r}")
            targets.append(base.id_of(d.target))
        star = ProperStar(l, base.id_of(e.origin), tuple(targets))
        exts.append(FacetExtension(star, tuple(d.points for d in e.edges)))

    ext = build_extension_complex(base, exts)
    ring = ext.ring(field_by_name(doc.field_spec), doc.order)
    return Model(doc, ext, ring)


# ---------------------------------------------------------------------------
# report sections


def _coloration_section(ext: ExtensionComplex, col: Coloration, method: str) -> dict:
    names = ext.var_names
    ok, diagnostics = is_binomial_coloration(ext, col)
    good = is_good_coloration(g_prime_graph(ext), col)
    return {
        "method": method,
        "found": True,
        "num_classes": col.num_classes,
        "classes": [sorted(names[v] for v in cls) for cls in col.classes],
        "binomial_ok": ok,
        "good_on_g_prime": good,
        "diagnostics": list(diagnostics),
    }


def _find_coloration(ext: ExtensionComplex, require_good: bool) -> tuple[Coloration | None, str]:
    try:
        return dtree_coloration(ext), "dtree"
    except NotADTree:
        return search_binomial_coloration(ext, require_good=require_good), "search"


def _reduction_section(rep) -> dict:
    return {
        "vectors": [str(g) for g in rep.vectors.forms],
        "is_sop": rep.is_sop,
        "verdicts": [[rho, ok] for rho, ok in rep.verdicts],
        "witnesses": [[rho, list(ms)] for rho, ms in rep.witnesses],
        "reduction_number": rep.reduction_number,
        "bound_exceeded": rep.bound_exceeded,
    }


def _cmd_validate(model: Model) -> tuple[bool, dict]:
    ext, base = model.ext, model.ext.base
    red = reduced_graph(ext)
    verdict = is_generalized_d_tree(skeleton_graph(base), base.dim)
    sr = stanley_reisner_generators(base)
    matrices = []
    for l in range(len(base.facets)):
        entry: dict = {"facet": l, "trivial": ext.is_trivial(l)}
        if not ext.is_trivial(l):
            m = scroll_matrix(ext, l)
            entry["blocks"] = [[ext.var_names[v] for v in blk.run] for blk in m.blocks]
        matrices.append(entry)
    section = {
        "vertices": [v.name for v in base.vertices],
        "facets": [sorted(base.name_of(v) for v in f) for f in base.facets],
        "dim": base.dim,
        "variables": list(ext.var_names),
        "is_generalized_dtree": verdict.verdict,
        "dtree_reason": verdict.reason,
        "stanley_reisner_count": len(sr),
        "scroll_matrices": matrices,
        "reduced_graph": {
            "vertices": sorted(ext.var_names[v] for v in red.vertex_ids),
            "edges": sorted(
                sorted((ext.var_names[u], ext.var_names[v])) for u, v in red.edges
            ),
        },
    }
    return True, {"complex": section}


def _cmd_ideal(model: Model) -> tuple[bool, dict]:
    b = binomial_extension_ideal(model.ext, model.ring)
    return True, {
        "generators": {
            "label": b.label,
            "count": len(b.generators),
            "polynomials": [str(p) for p in b.generators],
        }
    }


def _cmd_decompose(model: Model) -> tuple[bool, dict]:
    ext, ring = model.ext, model.ring
    b = binomial_extension_ideal(ext, ring)
    comps = component_ideals(ext, ring)
    gb_b = buchberger(list(b.generators), ring)
    inter = ideal_intersection_many([list(c.generators) for c in comps], ring)
    equal = groebner_equal(gb_b, inter)
    section = [
        {
            "label": c.label,
            "count": len(c.generators),
            "polynomials": [str(p) for p in c.generators],
        }
        for c in comps
    ]
    return equal, {
        "components": {
            "ideals": section,
            "groebner_size": len(gb_b),
            "intersection_size": len(inter),
            "intersection_equals_ideal": equal,
        }
    }


def _cmd_hilbert(model: Model) -> tuple[bool, dict]:
    ext, ring = model.ext, model.ring
    b = binomial_extension_ideal(ext, ring)
    gb_b = buchberger(list(b.generators), ring)
    hd = hilbert_data(gb_b, ring)
    expected = 1 + ext.base.dim
    comps = []
    ok = hd.dimension == expected
    for c in component_ideals(ext, ring):
        gb_c = buchberger(list(c.generators), ring)
        dim_c = hilbert_data(gb_c, ring).dimension
        l = int(c.label.split("_")[1])
        want = 1 + (len(ext.base.facets[l]) - 1)
        ok = ok and dim_c == want
        comps.append({"label": c.label, "dimension": dim_c, "expected": want})
    section = {
        "dimension": hd.dimension,
        "codimension": hd.codimension,
        "degree": hd.degree,
        "numerator": list(hd.numerator),
        "expected_dimension": expected,
        "components": comps,
    }
    return ok, {"hilbert": section}


def _cmd_color(model: Model) -> tuple[bool, dict]:
    ext = model.ext
    col, method = _find_coloration(ext, require_good=True)
    if col is None:
        return False, {
            "coloration": {
                "method": method,
                "found": False,
                "num_classes": None,
                "classes": None,
                "binomial_ok": False,
                "good_on_g_prime": False,
                "diagnostics": ["no coloration satisfies the binomial conditions"],
            }
        }
    section = _coloration_section(ext, col, method)
    return section["binomial_ok"] and section["good_on_g_prime"], {"coloration": section}


def _cmd_reduce(model: Model) -> tuple[bool, dict]:
    ext, ring, rho_max = model.ext, model.ring, model.doc.rho_max
    try:
        rep = verify_main_theorem(ext, ring, rho_max)
        sections = {
            "coloration": _coloration_section(
                ext, rep.coloration, "dtree" if rep.used_dtree else "search"
            ),
            "reduction": {
                "theorem_applies": True,
                "failure": None,
                "facet_conditions": [
                    {"facet": fc.facet, "route": fc.route, "details": list(fc.details)}
                    for fc in rep.facet_conditions
                ],
                **_reduction_section(rep.reduction),
            },
        }
        return True, sections
    except (NoColorationFound, HypothesisFailed, ContainmentFailed) as exc:
        failure = f"{type(exc).__name__}: {exc}"

    col, method = _find_coloration(ext, require_good=False)
    if col is None:
        return False, {
            "coloration": None,
            "reduction": {"theorem_applies": False, "failure": failure},
        }
    sections = {"coloration": _coloration_section(ext, col, method)}
    b = binomial_extension_ideal(ext, ring)
    try:
        vectors = reduction_vectors(col, ring)
        rep = reduction_number(vectors, b, rho_max)
    except (NotSOP, WrongCount, ValueError) as exc:
        sections["reduction"] = {
            "theorem_applies": False,
            "failure": f"{failure}; then {type(exc).__name__}: {exc}",
        }
        return False, sections
    sections["reduction"] = {
        "theorem_applies": False,
        "failure": failure,
        "facet_conditions": None,
        **_reduction_section(rep),
    }
    return rep.reduction_number is not None, sections


# ---------------------------------------------------------------------------
# oracle cross-checks


def _oracle_checks(model: Model) -> tuple[bool, dict]:
    """Recompute fast-path answers against Groebner-basis ground truth."""
    ext, ring, rho_max = model.ext, model.ring, model.doc.rho_max
    base = ext.base
    checks: list[dict] = []

    def record(name: str, ok: bool, detail: str) -> None:
        checks.append({"name": name, "ok": ok, "detail": detail})

    b = binomial_extension_ideal(ext, ring)
    gb_b = buchberger(list(b.generators), ring)
    comps = component_ideals(ext, ring)
    comp_gbs = [buchberger(list(c.generators), ring) for c in comps]

    inter = ideal_intersection_many([list(c.generators) for c in comps], ring)
    record(
        "intersection",
        groebner_equal(gb_b, inter),
        f"basis sizes {len(gb_b)} vs {len(inter)}",
    )

    expected = 1 + base.dim
    dims_ok = True
    details = []
    kd = krull_dimension_lt(gb_b, ring)
    hd = hilbert_data(gb_b, ring)
    dims_ok &= kd == hd.dimension == expected
    details.append(f"ideal: lt {kd}, series {hd.dimension}, expected {expected}")
    for c, gb_c in zip(comps, comp_gbs):
        l = int(c.label.split("_")[1])
        want = 1 + (len(base.facets[l]) - 1)
        kd_c = krull_dimension_lt(gb_c, ring)
        hd_c = hilbert_data(gb_c, ring).dimension
        dims_ok &= kd_c == hd_c == want
        details.append(f"{c.label}: lt {kd_c}, series {hd_c}, expected {want}")
    record("dimensions", bool(dims_ok), "; ".join(details))

    pairs = 0
    rewrite_ok = True
    for l in range(len(base.facets)):
        if ext.is_trivial(l):
            continue
        m = scroll_matrix(ext, l)
        gb_l = buchberger(facet_minors(ext, ring, l), ring)
        entries = sorted({v for blk in m.blocks for v in blk.run})
        for i, u in enumerate(entries):
            for v in entries[i + 1 :]:
                try:
                    trace = modB_normal_pair(m, u, v, ring)
                except BothXVariables:
                    continue
                pairs += 1
                a, c = trace.start
                d, e = trace.final
                diff = ring.var(a).mul(ring.var(c)).sub(ring.var(d).mul(ring.var(e)))
                if not normal_form(diff, gb_l).is_zero():
                    rewrite_ok = False
                if trace.family not in (1, 2, 3, 4, 5):
                    rewrite_ok = False
    record("rewriter", rewrite_ok, f"{pairs} variable pairs checked")

    col, method = _find_coloration(ext, require_good=False)
    if col is None:
        record("containment", True, "skipped: no coloration available")
    else:
        vectors = reduction_vectors(col, ring)
        gb_bg = buchberger(list(b.generators) + list(vectors.forms), ring)
        rhos = [1]
        try:
            rep = reduction_number(vectors, b, rho_max)
            if rep.reduction_number not in (None, 1):
                rhos.append(rep.reduction_number)
        except (NotSOP, WrongCount):
            pass
        cont_ok = True
        checked = 0
        for rho in rhos:
            covered, _ = degree_containment(vectors, b, rho)
            all_zero = True
            for mono in monomials_of_degree(len(ring.names), rho + 1):
                mono_poly = ring.monomial(mono, ring.field.one)
                nf_zero = normal_form(mono_poly, gb_bg).is_zero()
                fast = monomial_covered(vectors, b, mono)
                checked += 1
                if nf_zero != fast:
                    cont_ok = False
                all_zero &= nf_zero
            if covered != all_zero:
                cont_ok = False
        record(
            "containment",
            cont_ok,
            f"{checked} monomials cross-checked via {method} coloration",
        )

    member_ok = True
    for c, gb_c in zip(comps, comp_gbs):
        for g in b.generators:
            if not normal_form(g, gb_c).is_zero():
                member_ok = False
    record("membership", member_ok, f"{len(b.generators)} generators vs {len(comps)} components")

    diffs = [c["name"] for c in checks if not c["ok"]]
    return not diffs, {"oracle": {"checks": checks, "diffs": diffs}}


# ---------------------------------------------------------------------------
# report assembly


def run(command: str, doc: InputDocument, with_oracle: bool = False) -> dict:
    """Execute a command and assemble its report (deterministic for a given input)."""
    assert command in COMMANDS, command
    poly.reset_counters()
    model = build_model(doc)
    report: dict = {
        "command": command,
        "input": document_dict(doc),
        "verdict": None,
        "complex": None,
        "generators": None,
        "components": None,
        "hilbert": None,
        "coloration": None,
        "reduction": None,
        "oracle": None,
        "timing": None,
    }
    handlers = {
        "validate": _cmd_validate,
        "ideal": _cmd_ideal,
        "decompose": _cmd_decompose,
        "hilbert": _cmd_hilbert,
        "color": _cmd_color,
        "reduce": _cmd_reduce,
        "oracle": _oracle_checks,
    }
    verdict, sections = handlers[command](model)
    report.update(sections)
    if with_oracle and command != "oracle":
        oracle_ok, oracle_section = _oracle_checks(model)
        report.update(oracle_section)
        verdict = verdict and oracle_ok
    report["verdict"] = verdict
    report["timing"] = dict(sorted(poly.counters.items()))
    return report


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# entry point


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="binomext",
        description="Binomial extension ideals of simplicial complexes.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="path to a JSON input document")
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--field", help="override the document field (prime or 'rational')")
    parser.add_argument("--order", choices=ORDERS, help="override the monomial order")
    parser.add_argument("--rho-max", type=int, help="override the containment search bound")
    parser.add_argument("--seed", type=int, help="override the document seed")
    parser.add_argument("--oracle", action="store_true", help="add Groebner cross-checks")
    args = parser.parse_args(argv)

    started = time.monotonic()
    try:
        doc = parse_input(args.input)
        overrides: dict = {}
        if args.field is not None:
            spec: int | str = args.field if args.field == "rational" else None
            if spec is None:
                try:
                    spec = int(args.field)
                except ValueError:
                    raise SchemaError("field: expected a prime integer or 'rational'") from None
                try:
                    field_by_name(spec)
                except ValueError as exc:
                    raise SchemaError(f"field: {exc}") from exc
            overrides["field_spec"] = spec
        if args.order is not None:
            overrides["order"] = args.order
        if args.rho_max is not None:
            if args.rho_max < 1:
                raise SchemaError("options.rho_max: expected a positive integer")
            overrides["rho_max"] = args.rho_max
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            doc = dataclasses.replace(doc, **overrides)
        report = run(args.command, doc, with_oracle=args.oracle)
    except (SchemaError, UnknownName, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR

    text = render_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    elapsed = time.monotonic() - started
    print(
        f"{args.command}: verdict={'pass' if report['verdict'] else 'fail'} "
        f"wall={elapsed:.3f}s",
        file=sys.stderr,
    )
    return EXIT_OK if report["verdict"] else EXIT_VERDICT_FALSE


if __name__ == "__main__":
    sys.exit(main())
