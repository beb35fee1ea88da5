"""
數系設定檔讀寫
格式：{"systems": [{"partition": [...], "flips": [...]}, ...], "weights": [...]}
數值可寫成 JSON 數字或 "1/3" 形式的字串
"""

import json
import logging
from pathlib import Path

from core.errors import ValidationError
from core.system import GlsFamily, new_family, new_gls_system

logger = logging.getLogger(__name__)


def family_from_dict(data) -> GlsFamily:
    """由已解析的 JSON 物件建立 GlsFamily"""
    if not isinstance(data, dict):
        raise ValidationError("config must be a JSON object", "$")

    systems_data = data.get("systems")
    if not isinstance(systems_data, list):
        raise ValidationError("missing or not a list", "systems")
    weights = data.get("weights")
    if not isinstance(weights, list):
        raise ValidationError("missing or not a list", "weights")

    systems = []
    for i, entry in enumerate(systems_data):
        field = f"systems[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError("must be an object", field)
        partition = entry.get("partition")
        flips = entry.get("flips")
        if not isinstance(partition, list):
            raise ValidationError("missing or not a list", f"{field}.partition")
        if not isinstance(flips, list):
            raise ValidationError("missing or not a list", f"{field}.flips")
        systems.append(new_gls_system(partition, flips, field=field))

    return new_family(systems, weights, field="$")


def family_to_dict(family: GlsFamily) -> dict:
    """輸出為設定檔格式，分數以字串保存"""
    return {
        "systems": [
            {"partition": [str(r) for r in system.partition], "flips": list(system.flips)}
            for system in family.systems
        ],
        "weights": [str(w) for w in family.weights],
    }


def parse_family(text: str) -> GlsFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON: {e.msg} (line {e.lineno})", "$") from None
    return family_from_dict(data)


def load_family(path: str) -> GlsFamily:
    """從檔案載入數系"""
    config_path = Path(path)
    if not config_path.exists():
        raise ValidationError(f"config file not found: {config_path}", "--config")

    with open(config_path, "r", encoding="utf-8") as f:
        family = parse_family(f.read())

    logger.info(f"Loaded family from {config_path}: J={family.J}, digits={family.size}")
    return family
