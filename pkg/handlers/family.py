"""
數系驗證指令
"""

import logging

from core.system import check_domination, digit_set, has_distinct_maps
from handlers.common import build_config, config_parser, finish, notify, render

logger = logging.getLogger(__name__)


def cmd_validate(args) -> int:
    """驗證數系設定與支配條件；支配條件不成立只發出警告"""
    run_config = build_config(args, need_alpha=args.alpha != "uniform")
    family = run_config.family
    domination = check_domination(family)
    distinct = has_distinct_maps(family)

    if not domination.holds:
        notify(
            f"⚠️ 支配條件 p_e > l_e 不成立，維度公式不適用 / "
            f"Domination hypothesis fails for digits {list(domination.offenders)}"
        )
        logger.warning(f"Domination fails: {domination.offenders}")
    if not distinct:
        notify("⚠️ 有重複的分支映射 / Some digit maps coincide")

    report = {
        "valid": True,
        "systems": family.J,
        "digits": family.size,
        "weights": [str(w) for w in family.weights],
        "domination": domination.holds,
        "offenders": [list(e) for e in domination.offenders],
        "distinct_maps": distinct,
    }
    if run_config.fmt == "json":
        report["digit_set"] = [[s, K, t] for s, K, t in digit_set(family)]
        if run_config.alpha is not None:
            report["alpha"] = run_config.alpha.to_dict()
    else:
        report["offenders"] = " ".join(f"{j},{k}" for j, k in domination.offenders)
        report["weights"] = " ".join(report["weights"])

    notify(f"✅ 設定有效 / Config is valid ({family.J} systems, {family.size} digits)")
    return finish(args, "validate", render(report, run_config.fmt), run_config)


def setup_family_handlers(subparsers) -> None:
    """設定數系指令"""
    parser = subparsers.add_parser(
        "validate", parents=[config_parser()], help="驗證數系設定 / validate a family config"
    )
    parser.set_defaults(func=cmd_validate)
    logger.debug("Family handlers registered")
