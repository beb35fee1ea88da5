"""
維度與壓力指令
"""

import logging
from fractions import Fraction

import numpy as np

from core.errors import ValidationError
from dimension.lyapunov import (
    branch,
    chi,
    dim_fibre,
    dim_level_set,
    dimension_report,
    entropy,
    lyapunov_dim,
)
from dimension.pressure import (
    dim_variational,
    minimize_pressure,
    pressure,
    pressure_bruteforce,
    pressure_dual,
    weight_sweep,
)
from handlers.common import build_config, config_parser, finish, notify, parse_numbers, render

logger = logging.getLogger(__name__)

MODES = ("all", "closed", "variational", "lyapunov", "fibre")


def cmd_dim(args) -> int:
    """依 --mode 計算維度"""
    run_config = build_config(args)
    family, alpha = run_config.family, run_config.alpha

    if args.mode == "all":
        report = dimension_report(alpha, family, run_config.tol).to_dict()
    elif args.mode == "fibre":
        report = {"dim_fibre": dim_fibre(alpha, family)}
    else:
        chi1, chi2 = chi(alpha, family)
        report = {"entropy": entropy(alpha), "chi1": chi1, "chi2": chi2, "branch": branch(alpha, family)}
        if args.mode == "closed":
            report["dim_level_set"] = dim_level_set(alpha, family)
        elif args.mode == "lyapunov":
            report["lyapunov_dim"] = lyapunov_dim(alpha, family)
        else:
            report["dim_variational"] = dim_variational(alpha, family, run_config.tol)

    report["mode"] = args.mode
    return finish(
        args, "dim", render(report, run_config.fmt), run_config, report=report, extra={"mode": args.mode}
    )


def cmd_pressure(args) -> int:
    """P(s, q)，可選擇一併輸出 inf_q、對偶值與 n-柱集暴力和"""
    run_config = build_config(args)
    family, alpha = run_config.family, run_config.alpha

    q = None
    if args.q:
        q = np.array([float(v) for v in parse_numbers(args.q, "--q")])

    result = {"s": args.s, "pressure": pressure(family, alpha, args.s, q)}
    if args.cylinders:
        result["bruteforce"] = pressure_bruteforce(family, alpha, args.s, q, args.cylinders)
    if args.inf:
        minimum = minimize_pressure(family, alpha, args.s)
        result["inf_q"] = minimum.value
        result["dual"] = pressure_dual(family, alpha, args.s)
        result["iterations"] = minimum.iterations
        if run_config.fmt == "json":
            result["q_min"] = [float(v) for v in minimum.q]

    extra = {"s": args.s, "q": args.q, "inf": args.inf, "cylinders": args.cylinders}
    return finish(args, "pressure", render(result, run_config.fmt), run_config, extra=extra)


def _sweep_weights(args, J: int) -> list[list[Fraction]]:
    if args.weights:
        return [parse_numbers(group, f"--weights[{i}]") for i, group in enumerate(args.weights.split(";"))]
    if args.p0:
        if J != 2:
            raise ValidationError("p0 grid needs exactly two systems", "--p0")
        lo, hi, count = parse_numbers(args.p0, "--p0")
        if count < 2 or count != int(count):
            raise ValidationError("grid size must be an integer ≥ 2", "--p0")
        grid = [lo + (hi - lo) * Fraction(i, int(count) - 1) for i in range(int(count))]
        return [[p0, 1 - p0] for p0 in grid]
    raise ValidationError("give --weights or --p0", "--weights")


def cmd_sweep(args) -> int:
    """在一組權重上重算 dim_level_set"""
    run_config = build_config(args)
    weights_list = _sweep_weights(args, run_config.family.J)
    rows = [
        {"weights": " ".join(f"{w:.6g}" for w in weights), "dim_level_set": value}
        for weights, value in weight_sweep(run_config.family, run_config.alpha, weights_list)
    ]
    skipped = sum(1 for row in rows if row["dim_level_set"] is None)
    if skipped:
        notify(f"⚠️ {skipped} 組權重不滿足支配條件 / {skipped} weight vectors fail domination")
    extra = {"weights": args.weights, "p0": args.p0}
    return finish(args, "sweep", render(rows, run_config.fmt), run_config, extra=extra)


def setup_dimension_handlers(subparsers) -> None:
    """設定維度指令"""
    parser = subparsers.add_parser("dim", parents=[config_parser()], help="維度 / dimensions")
    parser.add_argument("--mode", choices=MODES, default="all")
    parser.set_defaults(func=cmd_dim)

    parser = subparsers.add_parser("pressure", parents=[config_parser()], help="拓撲壓力 / pressure")
    parser.add_argument("--s", type=float, required=True)
    parser.add_argument("--q", default=None, help="每個數字一個分量，逗號分隔 / one value per digit")
    parser.add_argument("--inf", action="store_true", help="最小化 q / minimise over q")
    parser.add_argument("--cylinders", type=int, default=0, help="暴力列舉深度 / brute-force depth")
    parser.set_defaults(func=cmd_pressure)

    parser = subparsers.add_parser("sweep", parents=[config_parser()], help="權重掃描 / weight sweep")
    parser.add_argument("--weights", default=None, help="以 ; 分隔的權重組 / e.g. 0.4,0.6;0.5,0.5")
    parser.add_argument("--p0", default=None, help="lo,hi,count（兩個系統）/ two-system grid")
    parser.set_defaults(func=cmd_sweep)

    logger.debug("Dimension handlers registered")
