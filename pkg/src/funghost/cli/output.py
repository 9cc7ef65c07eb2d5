import csv
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import orjson
from funutil import getLogger

logger = getLogger("funghost")


@dataclass
class Report:
    """
    子命令的输出
    - command: 子命令名
    - columns: CSV 列顺序
    - rows: 每行一个 dict
    - meta: 附加信息，只写入 JSON
    """

    command: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def to_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=report.columns, extrasaction="ignore", lineterminator="\n"
    )
    writer.writeheader()
    for row in report.rows:
        writer.writerow({key: _cell(row.get(key)) for key in report.columns})
    return buffer.getvalue()


def to_json(report: Report) -> bytes:
    payload = {
        "meta": {"command": report.command, **report.meta},
        "rows": [{key: row.get(key) for key in report.columns} for row in report.rows],
    }
    return orjson.dumps(
        payload,
        option=orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS,
    )


def write_report(report: Report, path: Optional[str] = None, fmt: str = "csv") -> None:
    """
    写出报告，path 为空时写到标准输出
    :param fmt: csv 或 json
    """
    if fmt == "json":
        data = to_json(report)
        if path:
            with open(path, "wb") as f:
                f.write(data)
        else:
            sys.stdout.write(data.decode("utf-8") + "\n")
    elif fmt == "csv":
        text = to_csv(report)
        if path:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path:
        logger.success(f"{report.command}: wrote {len(report.rows)} rows to {path}")
