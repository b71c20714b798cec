"""Command-line front end.

Exit codes: 0 success, 1 validation or fixture failure, 2 usage error.
The pricebook store path comes from --pricebook or the GHBOQ_PRICEBOOK
environment variable; without either, the built-in book is used
read-only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .building import parse_spec
from .errors import EngineError, UnknownRegion
from .estimator import Estimate, EstimateFlags, categorize, estimate
from .export import ENGINE_VERSION, export_boq, gap_to_dict
from .fixtures import CASE_IDS, run_case
from .gap import gap as gap_report
from .geometry import parse_layout
from .pricebook import (
    PriceBook,
    Region,
    apply_override,
    default_pricebook,
    dump_pricebook,
    load_pricebook,
    parse_price,
    resolve_price,
    save_pricebook,
)

__all__ = ["main"]

ENV_PRICEBOOK = "GHBOQ_PRICEBOOK"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghboq",
        description="Parametric construction cost estimation for Ghanaian residential buildings.",
    )
    parser.add_argument("--version", action="version", version=f"ghboq {ENGINE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="itemised bill of quantities and total")
    _estimate_args(est)
    est.add_argument("--format", default="table",
                     choices=("table", "csv", "structured", "markdown"))
    est.set_defaults(handler=_cmd_estimate)

    gp = sub.add_parser("gap", help="completeness gap against the informal per-m2 band")
    _estimate_args(gp)
    gp.add_argument("--format", default="table", choices=("table", "structured"))
    gp.set_defaults(handler=_cmd_gap)

    rep = sub.add_parser("reproduce", help="run a published worked example and grade it")
    rep.add_argument("case", help=f"one of {', '.join(CASE_IDS)}")
    rep.add_argument("--pricebook", default=None)
    rep.set_defaults(handler=_cmd_reproduce)

    prices = sub.add_parser("prices", help="inspect or edit the pricebook")
    psub = prices.add_subparsers(dest="prices_command", required=True)
    show = psub.add_parser("show", help="list effective prices")
    show.add_argument("--pricebook", default=None)
    show.add_argument("--region", default=None)
    show.set_defaults(handler=_cmd_prices_show)
    pset = psub.add_parser("set", help="write a price override")
    pset.add_argument("material")
    pset.add_argument("price")
    pset.add_argument("--pricebook", default=None)
    pset.set_defaults(handler=_cmd_prices_set)
    pimp = psub.add_parser("import", help="validate and install a pricebook file")
    pimp.add_argument("source")
    pimp.add_argument("--pricebook", default=None)
    pimp.set_defaults(handler=_cmd_prices_import)
    pexp = psub.add_parser("export", help="write the current pricebook to a file")
    pexp.add_argument("destination")
    pexp.add_argument("--pricebook", default=None)
    pexp.set_defaults(handler=_cmd_prices_export)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8321)
    srv.add_argument("--pricebook", default=None)
    srv.set_defaults(handler=_cmd_serve)

    exp = sub.add_parser("export", help="estimate and write a document")
    _estimate_args(exp)
    exp.add_argument("--format", default="csv", choices=("csv", "structured", "markdown"))
    exp.add_argument("--output", default=None, help="destination path (default stdout)")
    exp.set_defaults(handler=_cmd_export)

    return parser


def _estimate_args(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--spec", required=True, help="building spec JSON path")
    cmd.add_argument("--layout", default=None, help="floor-plan layout JSON path")
    cmd.add_argument("--pricebook", default=None)
    cmd.add_argument("--region", default=None)
    cmd.add_argument("--w-cut", type=float, default=None,
                     help="block cutting waste fraction (default 0.05)")
    cmd.add_argument("--set", dest="overrides", action="append", default=[],
                     metavar="MATERIAL=PRICE", help="inline price override, repeatable")


def _region(value: str) -> Region:
    try:
        return Region(value)
    except ValueError:
        raise UnknownRegion(value) from None


def _store_path(args) -> str | None:
    return args.pricebook or os.environ.get(ENV_PRICEBOOK)


def _load_book(args) -> PriceBook:
    path = _store_path(args)
    if path and os.path.exists(path):
        return load_pricebook(path)
    if args.pricebook:  # explicit path must exist
        raise FileNotFoundError(args.pricebook)
    return default_pricebook()


def _apply_inline_overrides(book: PriceBook, pairs: list[str]) -> PriceBook:
    for pair in pairs:
        material, sep, price = pair.partition("=")
        if not sep:
            raise EngineError(f"override {pair!r} must look like material=price")
        material = material.strip()
        book = apply_override(book, material, parse_price(material, price.strip()))
    return book


def _run_estimate(args) -> tuple[Estimate, PriceBook]:
    with open(args.spec, encoding="utf-8") as fh:
        spec = parse_spec(json.load(fh))
    layout = None
    if args.layout:
        with open(args.layout, encoding="utf-8") as fh:
            layout = parse_layout(json.load(fh))
    book = _apply_inline_overrides(_load_book(args), args.overrides)
    region = _region(args.region) if args.region else None
    flags = EstimateFlags() if args.w_cut is None else EstimateFlags(w_cut=args.w_cut)
    return estimate(spec, book, layout, region=region, flags=flags), book


def _cmd_estimate(args) -> int:
    est, _ = _run_estimate(args)
    if args.format == "table":
        print(_render_table(est), end="")
    else:
        print(export_boq(est, args.format), end="")
    return 0


def _cmd_export(args) -> int:
    est, _ = _run_estimate(args)
    document = export_boq(est, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(document)
    else:
        print(document, end="")
    return 0


def _cmd_gap(args) -> int:
    est, book = _run_estimate(args)
    report = gap_report(est, book.informal_band)
    if args.format == "structured":
        print(json.dumps(gap_to_dict(report), indent=2))
        return 0
    low, high = report.informal_low, report.informal_high
    print(f"Estimate total:      GHS {est.total.format(grouped=True)}")
    print(f"Informal band:       GHS {low.format(grouped=True)} to {high.format(grouped=True)}"
          f"  ({report.area_m2:g} m2)")
    print(f"Gap vs low rate:     +{report.gap_vs_low_pct}%")
    print(f"Gap vs high rate:    +{report.gap_vs_high_pct}%")
    print()
    print("Work typically omitted from informal quotes:")
    for line in report.omitted_lines:
        print(f"  {line.description:<38} GHS {line.cost.format(grouped=True):>12}")
    print(f"  {'Total omitted':<38} GHS {report.omitted_total.format(grouped=True):>12}")
    return 0


def _cmd_reproduce(args) -> int:
    result = run_case(args.case, _load_book(args) if _store_path(args) else None)
    print(f"Case {result.case_id}: expected vs computed")
    header = f"{'check':<38} {'expected':>12} {'actual':>12} {'tolerance':>14}  result"
    print(header)
    print("-" * len(header))
    for row in result.rows:
        print(
            f"{row.label:<38} {_num(row.expected):>12} {_num(row.actual):>12}"
            f" {row.tolerance:>14}  {'PASS' if row.ok else 'FAIL'}"
        )
    print("-" * len(header))
    verdict = "PASS" if result.ok else "FAIL"
    print(f"Case {result.case_id}: {verdict}")
    return 0 if result.ok else 1


def _cmd_prices_show(args) -> int:
    book = _load_book(args)
    region = _region(args.region) if args.region else Region.GREATER_ACCRA
    print(f"Pricebook version: {book.version}")
    print(f"Region: {region.value}")
    print(f"{'material':<26} {'base':>10} {'effective':>10}")
    for material in sorted(book.defaults, key=lambda m: m.value):
        base = book.base_price(material)
        effective = resolve_price(book, material, region)
        override = " (override)" if material in book.overrides else ""
        print(f"{material.value:<26} {base.format():>10} {effective.format():>10}{override}")
    return 0


def _writable_store(args) -> str:
    path = _store_path(args)
    if not path:
        raise EngineError(
            f"no pricebook store path; pass --pricebook or set {ENV_PRICEBOOK}"
        )
    return path


def _cmd_prices_set(args) -> int:
    path = _writable_store(args)
    book = load_pricebook(path) if os.path.exists(path) else default_pricebook()
    price = parse_price(args.material, args.price)
    book = apply_override(book, args.material, price)
    save_pricebook(book, path)
    print(f"{args.material} = {price.format()} (version {book.version})")
    return 0


def _cmd_prices_import(args) -> int:
    book = load_pricebook(args.source)
    save_pricebook(book, _writable_store(args))
    print(f"imported pricebook version {book.version}")
    return 0


def _cmd_prices_export(args) -> int:
    book = _load_book(args)
    with open(args.destination, "w", encoding="utf-8") as fh:
        fh.write(dump_pricebook(book))
    print(f"wrote pricebook version {book.version}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(store_path=_store_path(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _num(value: float) -> str:
    if value == int(value):
        return f"{int(value):,}"
    return f"{value:,.4g}" if abs(value) < 1000 else f"{value:,.1f}"


def _render_table(est: Estimate) -> str:
    out: list[str] = []
    spec = est.spec
    out.append(
        f"Estimate: {spec.total_area_m2:g} m2, {spec.storeys} storey(s), "
        f"{spec.bedrooms} bed / {spec.bathrooms} bath, region {est.region.value}"
    )
    out.append(f"Pricebook {est.pricebook_version}, wall model: {est.mode}")
    out.append("")
    header = f"{'item':<42} {'qty':>9} {'unit':<6} {'unit price':>11} {'cost':>12}"
    out.append(header)
    out.append("-" * len(header))
    for line in est.lines:
        qty = "" if line.quantity is None else f"{line.quantity:g}"
        price = line.unit_price.format(grouped=True) if line.unit_price else ""
        cost = line.cost.format(grouped=True) if line.cost else ""
        mark = "*" if line.omitted_in_informal else " "
        info = " (info)" if line.informational else ""
        out.append(
            f"{line.description + info:<42}{mark}{qty:>9} {line.unit:<6} {price:>11} {cost:>12}"
        )
    out.append("-" * len(header))
    subtotals = categorize(est)
    for cat, amount in subtotals.items():
        out.append(f"{'  ' + cat + ' subtotal':<60} {amount.format(grouped=True):>12}")
    out.append("")
    out.append(f"{'Variable subtotal':<60} {est.variable_subtotal.format(grouped=True):>12}")
    out.append(f"{'Contingency (15%)':<60} {est.contingency.format(grouped=True):>12}")
    out.append(f"{'Fixed fees':<60} {est.fixed_fees.format(grouped=True):>12}")
    if est.post_total_cost:
        out.append(f"{'Optional extras (quoted after total)':<60} {est.post_total_cost.format(grouped=True):>12}")
    out.append(f"{'TOTAL':<60} {est.total.format(grouped=True):>12}")
    out.append(f"{'Rate per m2':<60} {est.rate_per_m2.format(grouped=True):>12}")
    out.append("")
    out.append("Lines marked * are typically omitted from informal flat-rate quotes.")
    return "\n".join(out) + "\n"


if __name__ == "__main__":
    raise SystemExit(main())
