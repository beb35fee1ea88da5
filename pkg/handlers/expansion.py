"""
展開編碼、解碼與頻率排程指令
"""

import logging

from codec.expansion import decode, encode, series_partial_sum, to_triples, w_to_jseq
from codec.serialize import (
    decoded_to_json,
    jseq_from_json,
    triples_to_json,
    word_from_json,
    word_to_json,
)
from core.errors import ValidationError
from handlers.common import build_config, config_parser, finish, render
from scheduler.sequence import conditional_deviation, deviation, freq_sequence, marginal_deviation, weave

logger = logging.getLogger(__name__)

WORD_FORMATS = ("json", "csv", "text")


def _word_output(word, fmt: str, summary: dict) -> str:
    """json：摘要加字詞；csv：每列 j,k；text：以 e1..e𝔪 標記"""
    if fmt == "csv":
        return render([{"j": j, "k": k} for j, k in word.digits], "csv")
    if fmt == "text":
        labels = {e: f"e{i + 1}" for i, e in enumerate(word.require_family().digits)}
        return " ".join(labels[e] for e in word.digits) + "\n"
    return render({**summary, "word": word_to_json(word)}, "json")


def _jseq_argument(args, family, n: int) -> tuple[int, ...]:
    if args.jseq is not None:
        return jseq_from_json(args.jseq)
    if args.w is not None:
        return w_to_jseq(family, args.w, n)
    raise ValidationError("give --jseq or --w", "--jseq")


def cmd_encode(args) -> int:
    """沿 j 序列（或 w 的編碼）展開 x"""
    run_config = build_config(args, need_alpha=False)
    family, n = run_config.family, run_config.depth
    jseq = _jseq_argument(args, family, n)
    word = encode(family, jseq, args.x, n)
    point = decode(word)
    summary = {
        "x": args.x,
        "triples": triples_to_json(to_triples(word)),
        "series": series_partial_sum(to_triples(word)),
        "decoded": decoded_to_json(point),
    }
    extra = {"jseq": args.jseq, "w": args.w, "x": args.x}
    return finish(args, "encode", _word_output(word, args.fmt, summary), run_config, extra=extra)


def cmd_decode(args) -> int:
    run_config = build_config(args, need_alpha=False)
    word = word_from_json(args.word, run_config.family)
    point = decode(word)
    triples = to_triples(word)
    result = {
        **decoded_to_json(point),
        "series": series_partial_sum(triples),
        "triples": triples_to_json(triples),
    }
    if args.fmt == "csv":
        result = {k: v for k, v in result.items() if not isinstance(v, list)}
        result["x_low"], result["x_high"] = point.x_interval
    return finish(args, "decode", render(result, args.fmt), run_config, extra={"word": args.word})


def cmd_schedule(args) -> int:
    """α 的確定性頻率序列"""
    run_config = build_config(args)
    alpha = run_config.alpha
    word = freq_sequence(alpha, run_config.depth)
    summary = {"deviation": deviation(word, alpha), "bound": alpha.size + 1}
    return finish(args, "schedule", _word_output(word, args.fmt, summary), run_config)


def cmd_weave(args) -> int:
    """給定 w 的 j 序列，在每個系統的時鐘上交織條件排程"""
    run_config = build_config(args)
    family, alpha, n = run_config.family, run_config.alpha, run_config.depth
    jseq = _jseq_argument(args, family, n)
    word = weave(jseq, alpha, n)
    summary = {
        "conditional_deviation": {str(j): v for j, v in conditional_deviation(word, alpha).items()},
        "marginal_deviation": marginal_deviation(word.jseq, alpha),
    }
    extra = {"jseq": args.jseq, "w": args.w}
    return finish(args, "weave", _word_output(word, args.fmt, summary), run_config, extra=extra)


def setup_expansion_handlers(subparsers) -> None:
    """設定展開指令"""
    words = config_parser(WORD_FORMATS)

    parser = subparsers.add_parser("encode", parents=[words], help="編碼 / encode x along a coding")
    parser.add_argument("--x", type=float, required=True)
    parser.add_argument("--jseq", default=None, help="JSON 整數列表 / JSON list of systems")
    parser.add_argument("--w", type=float, default=None)
    parser.set_defaults(func=cmd_encode)

    parser = subparsers.add_parser("decode", parents=[config_parser()], help="解碼 / decode a word")
    parser.add_argument("--word", required=True, help="[[j,k], ...]")
    parser.set_defaults(func=cmd_decode)

    parser = subparsers.add_parser("schedule", parents=[words], help="頻率序列 / frequency sequence")
    parser.set_defaults(func=cmd_schedule)

    parser = subparsers.add_parser("weave", parents=[words], help="交織排程 / weave along w")
    parser.add_argument("--jseq", default=None)
    parser.add_argument("--w", type=float, default=None)
    parser.set_defaults(func=cmd_weave)

    logger.debug("Expansion handlers registered")
