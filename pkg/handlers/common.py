"""
子命令共用：參數、RunConfig、輸出與執行記錄
"""

import argparse
import asyncio
import csv
import hashlib
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import config
from core.errors import ValidationError
from core.loader import family_to_dict, load_family
from core.system import GlsFamily
from database.db import RunStore
from scheduler.frequency import FrequencyVector, load_alpha

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """一次子命令執行的完整設定"""

    family: GlsFamily
    alpha: Optional[FrequencyVector]
    depth: int
    samples: int
    seed: int
    scales: Optional[tuple[float, ...]]
    tol: float
    fmt: str
    workers: int

    def digest(self, extra: Optional[dict] = None) -> str:
        """設定內容的 sha256，相同設定得到相同摘要"""
        payload = {
            "family": family_to_dict(self.family),
            "alpha": self.alpha.to_dict() if self.alpha is not None else None,
            "depth": self.depth,
            "samples": self.samples,
            "seed": self.seed,
            "scales": list(self.scales) if self.scales else None,
            "tol": self.tol,
            "extra": extra or {},
        }
        text = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


# === 參數 ===


def store_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--db",
        default=config.DATABASE_PATH,
        help="執行記錄資料庫 / run-history database (env GLS_DATABASE)",
    )
    return parser


def config_parser(formats: tuple[str, ...] = FORMATS) -> argparse.ArgumentParser:
    """所有需要數系設定的子命令共用的參數"""
    parser = argparse.ArgumentParser(add_help=False, parents=[store_parser()])
    parser.add_argument("--config", required=True, help="數系 JSON 檔 / family JSON file")
    parser.add_argument(
        "--alpha",
        default="uniform",
        help="頻率向量：檔案、行內 'j,k:value'、uniform 或 lebesgue / frequency vector",
    )
    parser.add_argument("--depth", type=int, default=config.DEFAULT_DEPTH)
    parser.add_argument("--samples", type=int, default=config.DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--scales", default=None, help="逗號分隔，如 1/2,1/4,1/8 / comma separated")
    parser.add_argument("--tol", type=float, default=config.DEFAULT_TOL)
    parser.add_argument("--format", dest="fmt", choices=formats, default=formats[0])
    parser.add_argument("--workers", type=int, default=config.WORKERS)
    return parser


def parse_scales(text: Optional[str]) -> Optional[tuple[float, ...]]:
    if not text:
        return None
    scales = []
    for i, token in enumerate(text.split(",")):
        try:
            scales.append(float(Fraction(token.strip())))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a number: {token!r}", f"--scales[{i}]") from None
    return tuple(scales)


def parse_numbers(text: str, field: str) -> list[Fraction]:
    values = []
    for i, token in enumerate(text.split(",")):
        try:
            values.append(Fraction(token.strip()))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a number: {token!r}", f"{field}[{i}]") from None
    return values


def build_config(args, need_alpha: bool = True) -> RunConfig:
    """由 argparse 結果組成 RunConfig 並檢查數值欄位"""
    for field in ("depth", "samples", "workers"):
        if getattr(args, field) < 1:
            raise ValidationError("must be positive", f"--{field}")
    if not args.tol > 0:
        raise ValidationError("must be positive", "--tol")

    family = load_family(args.config)
    alpha = load_alpha(args.alpha, family) if need_alpha else None
    return RunConfig(
        family=family,
        alpha=alpha,
        depth=args.depth,
        samples=args.samples,
        seed=args.seed,
        scales=parse_scales(args.scales),
        tol=args.tol,
        fmt=args.fmt,
        workers=args.workers,
    )


# === 輸出 ===


def render(payload, fmt: str) -> str:
    """json：排序鍵的縮排 JSON；csv：dict 為單列、list[dict] 為多列"""
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    rows = payload if isinstance(payload, list) else [payload]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buffer.getvalue()


def notify(message: str) -> None:
    """診斷訊息一律寫到 stderr"""
    print(message, file=sys.stderr)


async def _record(db_path: str, command: str, digest: str, seed, output: str, report) -> int:
    async with RunStore(db_path) as store:
        run_id = await store.record_run(command, digest, seed, output)
        if report is not None:
            await store.record_report(run_id, report)
        return run_id


def finish(
    args,
    command: str,
    text: str,
    run_config: Optional[RunConfig] = None,
    report: Optional[dict] = None,
    extra: Optional[dict] = None,
) -> int:
    """寫出 stdout，有設定資料庫時記錄本次執行"""
    sys.stdout.write(text)
    sys.stdout.flush()

    db_path = getattr(args, "db", "")
    if db_path:
        digest = run_config.digest(extra) if run_config else hashlib.sha256(b"").hexdigest()[:16]
        seed = run_config.seed if run_config else None
        run_id = asyncio.run(_record(db_path, command, digest, seed, text, report))
        logger.debug(f"Run {run_id} stored in {db_path}")
    return 0
