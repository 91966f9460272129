"""Command-line front end.

Exit codes: 0 on success, 1 on a value mismatch (including failed
acceptance criteria), 2 when a construction is infeasible or a contract
fails to screen, 3 on configuration errors.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import acceptance as acceptance_mod
from .config import belief_from, contract_from, cost_model_from, load_config
from .costs import PosteriorSeparable, neg_entropy
from .errors import (
    AssumptionViolated,
    BoundaryPrior,
    CavscreenError,
    ConfigError,
    NoFeasibleU,
    SearchExhausted,
)
from .informed import default_resolution, informed_value
from .screening import (
    construct_screening_contract,
    design_binary_contract,
    prop2_contract,
    screens,
    seu_uninformed_value,
    uninformed_maximin,
    xi_screen_search,
)
from .simplex import ball_grid, belief2
from .traces import (
    binary_figure_traces,
    figure_table,
    learning_regions,
    write_csv,
    write_svg,
)
from .values import SimpleAnnouncement, gross_value

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INFEASIBLE = 2
EXIT_CONFIG = 3


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="YAML run configuration")
    sub.add_argument("--seed", type=int, default=0, metavar="N")
    sub.add_argument("--grid", type=int, metavar="N", help="belief grid resolution")
    sub.add_argument("--out", metavar="DIR", default=".", help="output directory")
    sub.add_argument(
        "--format", choices=("csv", "svg", "both"), default="csv", dest="fmt"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavscreen",
        description="Contract screening with endogenous information acquisition.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("example-one", "verify the worked two-state menu scenario"),
        ("figure", "emit payoff/objective/envelope traces for a two-state contract"),
        ("screen", "verify that a configured contract screens"),
        ("prop2", "build a contract with fines equalized against a belief"),
        ("xi-screen", "search for a contract rejected by most uninformed beliefs"),
        ("acceptance", "run the acceptance criteria"),
    ):
        _add_common(subs.add_parser(name, help=help_))
    return parser


def _load(args) -> dict:
    return load_config(args.config) if args.config else {}


def _cmd_example_one(args) -> int:
    menu = acceptance_mod.worked_menu()
    contract = acceptance_mod.worked_contract()
    value = SimpleAnnouncement(contract)
    ok = True
    rows = []
    for mu in (0.35, 0.45, 0.5, 0.55, 0.65):
        got = informed_value(menu, value, belief2(mu))
        rows.append((mu, gross_value(contract, belief2(mu)), got.value))
        flag = abs(got.value - 50.0) <= 1e-9
        ok &= flag
        print(
            f"prior {mu:4.2f}: informed {got.value:10.4f}  "
            f"(learning pays) {'ok' if flag else 'MISMATCH: expected 50'}"
        )
    for mu in (0.1, 0.25, 1.0 / 3.0, 2.0 / 3.0, 0.9):
        stay = gross_value(contract, belief2(mu))
        got = informed_value(menu, value, belief2(mu))
        rows.append((mu, stay, got.value))
        want = contract.u - contract.d * min(mu, 1.0 - mu)
        flag = abs(got.value - want) <= 1e-9
        ok &= flag
        print(
            f"prior {mu:4.2f}: stay-put {got.value:10.4f}  "
            f"{'ok' if flag else f'MISMATCH: expected {want:g}'}"
        )
    outside = uninformed_maximin(contract, 2).value
    flag = abs(outside - (-50.0)) <= 1e-9
    ok &= flag
    print(f"uninformed maximin: {outside:.4f} {'ok' if flag else 'MISMATCH'}")
    if args.fmt in ("csv", "both"):
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "example_one.csv")
        write_csv(
            path,
            ["prior", "stay_put", "informed"],
            [[format(v, ".12g") for v in row] for row in rows],
        )
        print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_figure(args) -> int:
    cfg = _load(args)
    if "model" in cfg:
        model = cost_model_from(cfg)
        if not isinstance(model, PosteriorSeparable):
            raise ConfigError("figure traces need a posterior-separable model")
    else:
        model = PosteriorSeparable(1.0, neg_entropy())
    contract = contract_from(cfg)
    if contract is None:
        contract = design_binary_contract(model)
        print(f"designed contract: u={contract.u:.6g} d={contract.d:.6g}")
    priors = tuple(cfg.get("priors", (0.47, 0.50, 0.53)))
    resolution = args.grid or cfg.get("resolution", 1000)
    traces = binary_figure_traces(model, contract, priors=priors, resolution=resolution)
    for k, p in enumerate(traces.priors):
        plan = traces.plans[k]
        how = (
            "stays put"
            if plan.is_degenerate()
            else "splits onto " + ", ".join(f"{b[0]:.4g}" for b in plan.support)
        )
        print(f"prior {p:g}: value {traces.values[k]:.6g}, {how}")
    regions = learning_regions(traces)
    print("learning regions: " + (", ".join(f"[{a:g}, {b:g}]" for a, b in regions) or "none"))
    os.makedirs(args.out, exist_ok=True)
    if args.fmt in ("csv", "both"):
        header, rows = figure_table(traces)
        path = os.path.join(args.out, "figure.csv")
        write_csv(path, header, rows)
        print(f"wrote {path}")
    if args.fmt in ("svg", "both"):
        series = [
            ("payoff", traces.gross),
            ("objective", traces.objective),
            ("envelope", traces.envelope),
        ] + [(f"curve mu={p:g}", traces.curve(k)) for k, p in enumerate(traces.priors)]
        path = os.path.join(args.out, "figure.svg")
        write_svg(path, traces.x, series, title="value of information traces")
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_screen(args) -> int:
    cfg = _load(args)
    model = cost_model_from(cfg)
    contract = None if cfg.get("contract") == "search" else contract_from(cfg)
    rho = belief_from(cfg["rho"], "rho") if "rho" in cfg else None
    kind = cfg.get("uninformed", "maximin")
    variant = cfg.get("variant", "simple")
    n = cfg.get("n")
    resolution = args.grid or cfg.get("resolution")
    if contract is None:
        assumption = None
        if "assumption" in cfg:
            a = cfg["assumption"]
            assumption = (
                float(a["epsilon"]), float(a["eta"]), float(a["T"])
            )
        built = construct_screening_contract(
            model,
            assumption,
            center=rho,
            eta=float(cfg.get("eta", 0.1)),
            margin=float(cfg.get("margin", 0.05)),
            resolution=resolution,
            norm=cfg.get("norm", "euclidean"),
            n=n,
        )
        print(
            f"constructed contract u={built.contract.u:.6g} d={built.contract.d:.6g} "
            f"from certificate (epsilon={built.certificate.epsilon:.6g}, "
            f"T={built.certificate.T:.6g})"
        )
        report = built.report
    else:
        grid = None
        if "ball" in cfg:
            section = cfg["ball"]
            center = belief_from(section.get("center"), "ball.center")
            grid = ball_grid(
                center,
                float(section.get("eta", 0.1)),
                resolution or default_resolution(center.n),
                norm=section.get("norm", "euclidean"),
            )
        report = screens(
            model, contract, n, grid=grid, resolution=resolution,
            uninformed=kind, rho=rho, variant=variant,
        )
    print(report.to_text())
    return EXIT_OK if report.screens else EXIT_INFEASIBLE


def _cmd_prop2(args) -> int:
    cfg = _load(args)
    if "rho" not in cfg:
        raise ConfigError("prop2 needs rho: the belief to equalize against")
    rho = belief_from(cfg["rho"], "rho")
    d_last = float(cfg.get("d_last", 1.0))
    u = float(cfg.get("u", 0.999 * rho[rho.n - 1] * d_last))
    contract = prop2_contract(rho, u, d_last)
    fines = ", ".join(f"{d:.6g}" for d in contract.fines())
    print(f"contract: u={contract.u:.6g} fines=({fines})")
    expected = np.asarray(contract.fines()) * rho.probs
    print(
        f"expected fines at rho: {expected[0]:.6g} "
        f"(spread {expected.max() - expected.min():.3g})"
    )
    print(f"uninformed value at rho: {seu_uninformed_value(contract, rho):.6g}")
    if "model" in cfg:
        model = cost_model_from(cfg)
        report = screens(
            model,
            contract,
            rho.n,
            resolution=args.grid or cfg.get("resolution"),
            uninformed="seu",
            rho=rho,
        )
        print(report.to_text())
        return EXIT_OK if report.screens else EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_xi_screen(args) -> int:
    cfg = _load(args)
    model = cost_model_from(cfg) if "model" in cfg else PosteriorSeparable(
        0.01, neg_entropy()
    )
    xi = float(cfg.get("xi", 0.1))
    n = int(cfg.get("n", 2))
    found = xi_screen_search(
        model,
        xi,
        n=n,
        resolution=args.grid or cfg.get("resolution"),
        seed=args.seed,
    )
    print(f"contract: u={found.contract.u:.6g} d={found.contract.d:.6g}")
    print(
        f"rejection mass: {found.rejection:.4f} +/- {found.half_width:.4f} "
        f"({found.samples} samples), target >= {1.0 - xi:.4f}"
    )
    print(f"informed worst net value: {found.informed_min:.6g}")
    if n == 2:
        analytic = 1.0 - 2.0 * found.contract.u / found.contract.d
        print(f"analytic rejection mass: {analytic:.6f}")
    return EXIT_OK


def _cmd_acceptance(args) -> int:
    results = acceptance_mod.run_all()
    for result in results:
        print(result.line())
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


_COMMANDS = {
    "example-one": _cmd_example_one,
    "figure": _cmd_figure,
    "screen": _cmd_screen,
    "prop2": _cmd_prop2,
    "xi-screen": _cmd_xi_screen,
    "acceptance": _cmd_acceptance,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AssumptionViolated, NoFeasibleU, BoundaryPrior) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        if exc.best is not None:
            print(
                f"best near miss: u={exc.best.contract.u:.6g} "
                f"d={exc.best.contract.d:.6g} rejection {exc.best.rejection:.4f}",
                file=sys.stderr,
            )
        return EXIT_INFEASIBLE
    except CavscreenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    raise SystemExit(main())
