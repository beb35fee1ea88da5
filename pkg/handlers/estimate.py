"""
經驗估計指令
"""

import io
import logging

from dimension.lyapunov import dim_fibre, dim_level_set
from estimator.fibre import local_dim_fibre
from estimator.sampling import sample_fibre_points, sample_points, sample_word
from estimator.scaling import box_count_dim, default_scales, grid_entropy_dim
from handlers.common import build_config, config_parser, finish, notify, render
from scheduler.sequence import freq_sequence

logger = logging.getLogger(__name__)


def cmd_estimate(args) -> int:
    """
    抽樣點雲並擬合尺度斜率

    --format json 輸出擬合結果，csv 輸出點雲（w,x）
    """
    run_config = build_config(args)
    family, alpha = run_config.family, run_config.alpha
    fibre = args.kind == "fibre"

    sampler = sample_fibre_points if fibre else sample_points
    cloud = sampler(
        family, alpha, run_config.depth, run_config.samples, run_config.seed, workers=run_config.workers
    )
    scales = run_config.scales or default_scales(family, run_config.samples, dim=cloud.dim)
    estimate = box_count_dim if args.estimator == "box" else grid_entropy_dim
    fit = estimate(cloud, scales)

    if args.points:
        with open(args.points, "w", encoding="utf-8") as f:
            cloud.to_csv(f)
        notify(f"✅ 點雲已寫入 / Point cloud written to {args.points}")

    if run_config.fmt == "csv":
        buffer = io.StringIO()
        cloud.to_csv(buffer)
        text = buffer.getvalue()
    else:
        result = {**fit.to_dict(), "samples": cloud.samples, "depth": cloud.depth, "seed": cloud.seed}
        result["analytic"] = dim_fibre(alpha, family) if fibre else dim_level_set(alpha, family)
        if fibre:
            result["fibre_w"] = cloud.fibre_w
        text = render(result, "json")

    extra = {"kind": args.kind, "estimator": args.estimator}
    return finish(args, "estimate", text, run_config, extra=extra)


def cmd_local(args) -> int:
    """沿隨機或排程字詞的纖維局部維度"""
    run_config = build_config(args)
    family, alpha = run_config.family, run_config.alpha
    if args.source == "schedule":
        word = freq_sequence(alpha, run_config.depth)
    else:
        word = sample_word(alpha, run_config.depth, run_config.seed)
    ratios = local_dim_fibre(family, alpha, word)

    if run_config.fmt == "csv":
        text = render([{"depth": m + 1, "local_dim": r} for m, r in enumerate(ratios)], "csv")
    else:
        checkpoints, m = {}, 1
        while m <= len(ratios):
            checkpoints[str(m)] = ratios[m - 1]
            m *= 10
        checkpoints[str(len(ratios))] = ratios[-1]
        result = {
            "source": args.source,
            "depth": len(ratios),
            "local_dim": ratios[-1],
            "dim_fibre": dim_fibre(alpha, family),
            "checkpoints": checkpoints,
        }
        text = render(result, "json")
    return finish(args, "local", text, run_config, extra={"source": args.source})


def setup_estimate_handlers(subparsers) -> None:
    """設定估計指令"""
    parser = subparsers.add_parser(
        "estimate", parents=[config_parser()], help="經驗維度 / empirical dimension"
    )
    parser.add_argument("--kind", choices=("level", "fibre"), default="level")
    parser.add_argument("--estimator", choices=("grid", "box"), default="grid")
    parser.add_argument("--points", default=None, help="另存點雲 CSV / also write the cloud as CSV")
    parser.set_defaults(func=cmd_estimate)

    parser = subparsers.add_parser(
        "local", parents=[config_parser()], help="纖維局部維度 / local fibre dimension"
    )
    parser.add_argument("--source", choices=("sample", "schedule"), default="sample")
    parser.set_defaults(func=cmd_local)

    logger.debug("Estimate handlers registered")
