"""Command-line interface.

Exit codes: 0 success, 1 user or data error (message on stderr), 2 usage error.
Datasets are N-Triples files (``.nt``); any other path is read as a
collection manifest and ingested on the fly.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import collection, services, sparql, vocab
from .errors import SamskitError
from .rdf_model import Iri, InvalidTerm, serialize_term
from .store import Dataset, export_ntriples, import_ntriples


class UsageError(Exception):
    pass


def load_dataset(path: str) -> Dataset:
    p = Path(path)
    if p.suffix == ".nt":
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise SamskitError(f"cannot read dataset {p}: {exc.strerror}") from None
        return import_ntriples(text, Iri(p.resolve().as_uri()))
    return collection.ingest(p)


def _iri(text: str) -> Iri:
    try:
        return Iri(text.strip().removeprefix("<").removesuffix(">"))
    except InvalidTerm as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _table(header: Sequence[str], rows: List[Sequence[str]], pretty: bool) -> str:
    if not pretty:
        return "".join("\t".join(r) + "\n" for r in [header, *rows])
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _text(t) -> str:
    return t.value if isinstance(t, Iri) else serialize_term(t)


# commands


def cmd_ingest(args) -> int:
    ds = collection.ingest(args.manifest)
    graph = args.graph
    if graph is not None and graph not in ds.graphs:
        raise SamskitError(f"no named graph {graph} in this collection")
    _write(export_ntriples(ds, graph), args.out)
    return 0


def cmd_export(args) -> int:
    ds = load_dataset(args.dataset)
    if args.graph is not None and args.graph not in ds.graphs:
        raise SamskitError(f"no named graph {args.graph} in {args.dataset}")
    _write(export_ntriples(ds, args.graph), args.out)
    return 0


def cmd_query(args) -> int:
    ds = load_dataset(args.dataset)
    try:
        text = Path(args.query).read_text(encoding="utf-8")
    except OSError as exc:
        raise SamskitError(f"cannot read query {args.query}: {exc.strerror}") from None
    q = sparql.parse_query(text)
    solutions = sparql.evaluate(q, ds)
    if args.pretty:
        rows = [[serialize_term(b[v]) if v in b else "" for v in q.projection] for b in solutions]
        sys.stdout.write(_table(["?" + v for v in q.projection], rows, True))
    else:
        sys.stdout.write(sparql.to_tsv(q.projection, solutions))
    return 0


def cmd_substitute(args) -> int:
    ds = load_dataset(args.dataset)
    found = services.find_substitute(ds, args.employee, args.cutoff)
    rows = sorted([p.value, name] for p, name in found)
    sys.stdout.write(_table(["person", "name"], rows, args.pretty))
    return 0


def cmd_impact(args) -> int:
    ds = load_dataset(args.dataset)
    report = services.impact_set(ds, args.object)
    rows = sorted(["object", _text(o)] for o in report.objects)
    rows += sorted(["document", _text(d)] for d in report.documents)
    sys.stdout.write(_table(["kind", "iri"], rows, args.pretty))
    return 0


def cmd_recert(args) -> int:
    ds = load_dataset(args.dataset)
    docs = services.recertification_set(ds, args.since)
    sys.stdout.write(_table(["document"], sorted([_text(d)] for d in docs), args.pretty))
    return 0


def cmd_coverage(args) -> int:
    ds = load_dataset(args.dataset)
    c = services.verification_coverage(ds)
    sys.stdout.write(_table(["total", "verified", "unverified"],
                            [[str(c.total), str(c.verified), str(c.unverified)]], args.pretty))
    return 0


def cmd_whois(args) -> int:
    ds = load_dataset(args.dataset)
    rows = sorted([role, _text(p), name] for role, p, name in services.whois(ds, args.object))
    sys.stdout.write(_table(["role", "person", "name"], rows, args.pretty))
    return 0


def cmd_lookup_definition(args) -> int:
    ds = load_dataset(args.dataset)
    if args.symbol is not None:
        found = {args.symbol: services.definition_lookup(ds, args.symbol)}
    else:
        found = services.definitions_for_name(ds, args.name)
    rows = sorted([_text(s), _text(d)] for s, defs in found.items() for d in defs)
    sys.stdout.write(_table(["symbol", "definition"], rows, args.pretty))
    return 0


def cmd_state(args) -> int:
    state = services.CertificationState.load(args.state_file)
    if args.action == "get":
        print(state.get(args.subject))
        return 0
    if args.action == "approve":
        state = state.approve(args.subject)
    else:
        if args.dataset is None:
            raise UsageError("state reject needs --dataset to propagate the rejection")
        state = services.reject(load_dataset(args.dataset), state, args.subject)
    state.save(args.state_file)
    return 0


def cmd_validate(args) -> int:
    report = collection.validate(load_dataset(args.dataset))
    rows = [[f.severity, f.document, f.message] for f in report.findings]
    sys.stdout.write(_table(["severity", "document", "message"], rows, args.pretty))
    return 0 if report.ok() else 1


def cmd_stats(args) -> int:
    manifest = collection.load_manifest(args.manifest)
    ds = collection.ingest(manifest)
    rows = [[r.format, str(r.documents), str(r.triples)] for r in collection.stats(ds, manifest)]
    sys.stdout.write(_table(["format", "documents", "triples"], rows, args.pretty))
    return 0


def cmd_dimensions(args) -> int:
    try:
        keep = {vocab.Dimension.parse(k) for item in args.keep for k in item.split(",") if k.strip()}
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ds = vocab.filter_by_dimensions(load_dataset(args.dataset), keep)
    _write(export_ntriples(ds), args.out)
    return 0


def cmd_vocab_dump(args) -> int:
    sys.stdout.write(vocab.dump_tsv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="samskit", description="Extract, store and query RDFa metadata of document collections.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help, dataset=True, pretty=True):
        p = sub.add_parser(name, help=help)
        if dataset:
            p.add_argument("dataset", help=".nt dataset or collection manifest")
        if pretty:
            p.add_argument("--pretty", action="store_true", help="aligned table instead of TSV")
        p.set_defaults(func=func)
        return p

    p = add("ingest", cmd_ingest, "ingest a manifest and write sorted N-Triples", dataset=False, pretty=False)
    p.add_argument("manifest")
    p.add_argument("--out", "-o")
    p.add_argument("--graph", type=_iri, help="export only this document's named graph")

    p = add("export", cmd_export, "write a dataset as sorted N-Triples", pretty=False)
    p.add_argument("--out", "-o")
    p.add_argument("--graph", type=_iri)

    p = add("query", cmd_query, "evaluate a SPARQL SELECT query")
    p.add_argument("query", help="file holding the query text")

    p = add("substitute", cmd_substitute, "find substitutes for an employee")
    p.add_argument("--employee", type=_iri, required=True)
    p.add_argument("--cutoff", required=True, help="only documents dated after this day (YYYY-MM-DD)")

    p = add("impact", cmd_impact, "objects and documents affected by an object")
    p.add_argument("--object", type=_iri, required=True)

    p = add("recert", cmd_recert, "documents needing re-certification")
    p.add_argument("--since", required=True, help="last certification day (YYYY-MM-DD)")

    add("coverage", cmd_coverage, "count assertions with and without verified proofs")

    p = add("whois", cmd_whois, "people responsible for or reviewing an object")
    p.add_argument("--object", type=_iri, required=True)

    p = add("lookup-definition", cmd_lookup_definition, "definitions of a symbol")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--symbol", type=_iri)
    which.add_argument("--name", help="display name, may match several symbols")

    p = add("state", cmd_state, "read or change certification state", dataset=False, pretty=False)
    p.add_argument("state_file")
    p.add_argument("action", choices=("get", "approve", "reject"))
    p.add_argument("subject", type=_iri)
    p.add_argument("--dataset", help="dataset used to propagate a rejection")

    add("validate", cmd_validate, "check link integrity")

    p = add("stats", cmd_stats, "documents and triples per format", dataset=False)
    p.add_argument("manifest")

    p = add("dimensions", cmd_dimensions, "keep only triples of some dimensions", pretty=False)
    p.add_argument("--keep", nargs="+", required=True, metavar="DIMENSION")
    p.add_argument("--out", "-o")

    add("vocab-dump", cmd_vocab_dump, "list registered terms and their dimensions", dataset=False, pretty=False)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"samskit: error: {exc}", file=sys.stderr)
        return 2
    except (SamskitError, OSError) as exc:
        print(f"samskit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
