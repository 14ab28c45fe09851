"""Reproducible demo reports for the three application domains"""

from pathlib import Path

from tanglekit.aqc.scan import (
    FEASIBILITY_THRESHOLD,
    GRID_POINTS,
    aqc_report,
    default_grid,
    scan_gaps,
    single_family,
    triple_family,
    write_csv,
)
from tanglekit.config import to_number
from tanglekit.info.entropy import EntropySpec
from tanglekit.info.triple import capacity_report
from tanglekit.markov.units import markov_report

import tanglekit.log as log


def run_demo_info(**kwargs) -> dict:
    """Capacity triple for an entropy spec"""

    spec = EntropySpec(
        h0=kwargs["h0"],
        h1=kwargs["h1"],
        h2=kwargs["h2"],
        h1g2=kwargs["h1g2"],
        h1g02=kwargs["h1g02"],
        h1g0=kwargs.get("h1g0"),
    )
    report = capacity_report(spec)

    return {"ok": True, **report}


def run_demo_aqc(**kwargs) -> dict:
    """Gap scans of the adiabatic machines, optionally with CSV trajectories"""

    points = kwargs["grid"]
    report = aqc_report(points, kwargs["threshold"])

    csv_file = kwargs.get("csv")
    if csv_file:
        grid = default_grid(points)
        scans = {**scan_gaps(single_family, grid), **scan_gaps(triple_family, grid)}
        with Path(csv_file).open("w", encoding="utf-8", newline="") as stream:
            write_csv(scans, stream)
        log.info("Wrote gap trajectories to {}", csv_file)
        report["csv"] = csv_file

    return {"ok": True, **report}


def run_demo_markov(**kwargs) -> dict:
    """Markov chain machine, its rewrites and the Kauffman criterion"""

    s1, s2, s3 = (to_number(kwargs[name]) for name in ("s1", "s2", "s3"))
    report = markov_report(s1, s2, s3, copies=kwargs["copies"])

    return {"ok": True, **report}


def add_demo_info_subparser(subparsers):
    """Add the demo-info subparser

    Args:
        subparsers (subparsers): The subparsers to add the demo-info subparser to

    """

    parser = subparsers.add_parser("demo-info", help="Information capacity of three equivalent machines")
    parser.set_defaults(command="demo-info")

    for flag, dest, default, text in (
        ("--H0", "h0", "0.5", "H(0)"),
        ("--H1", "h1", "1.0", "H(1)"),
        ("--H2", "h2", "0.3", "H(2)"),
        ("--H1g2", "h1g2", "0.6", "H(1|2)"),
        ("--H1g02", "h1g02", "0.45", "H(1|0,2)"),
    ):
        parser.add_argument(
            flag, dest=dest, type=str, default=default, metavar="<bits>", help=f"{text}. Default is {default}"
        )
    parser.add_argument("--H1g0", dest="h1g0", type=str, default=None, metavar="<bits>", help="H(1|0), optional")


def add_demo_aqc_subparser(subparsers):

    parser = subparsers.add_parser("demo-aqc", help="Spectral gaps of the adiabatic quantum computation machines")
    parser.set_defaults(command="demo-aqc")
    parser.add_argument(
        "--grid",
        dest="grid",
        type=int,
        default=GRID_POINTS,
        metavar="<n>",
        help=f"Grid points on [0, 1]. Default is {GRID_POINTS}",
    )
    parser.add_argument(
        "--threshold",
        dest="threshold",
        type=float,
        default=FEASIBILITY_THRESHOLD,
        metavar="<g>",
        help=f"Gaps below this are vanishing. Default is {FEASIBILITY_THRESHOLD}",
    )
    parser.add_argument("--csv", dest="csv", type=str, default=None, metavar="<file>", help="Write trajectories here")


def add_demo_markov_subparser(subparsers):

    parser = subparsers.add_parser("demo-markov", help="Markov chain machines and their feed-forward/back rewrites")
    parser.set_defaults(command="demo-markov")
    parser.add_argument("--s1", dest="s1", type=str, default="0.3", metavar="<s>")
    parser.add_argument("--s2", dest="s2", type=str, default="0.5", metavar="<s>")
    parser.add_argument("--s3", dest="s3", type=str, default="0.9", metavar="<s>")
    parser.add_argument("--copies", dest="copies", type=int, default=10, metavar="<n>")
