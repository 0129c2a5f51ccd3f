# utils/report_writer.py
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from config import OUTPUT_FORMATS, TSV_COLUMNS
from models.errors import ConfigError

logger = logging.getLogger(__name__)


def rows_frame(command: str, rows: List[Dict]) -> pd.DataFrame:
    """Table of report rows with the fixed columns of a command"""
    columns = TSV_COLUMNS[command]
    frame = pd.DataFrame(rows, columns=columns)
    return frame.fillna('')


def render(command: str, payload: Dict, rows: List[Dict], fmt: str) -> str:
    """
    Render a report.

    Args:
        command: CLI command the report belongs to
        payload: Full JSON document
        rows: Flat table rows for tsv/text
        fmt: 'json', 'tsv' or 'text'

    Returns:
        Report text, newline terminated
    """
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError(f"Unknown output format '{fmt}'")
    if fmt == 'json':
        return json.dumps(payload, indent=2, ensure_ascii=False) + '\n'
    frame = rows_frame(command, rows)
    if fmt == 'tsv':
        return frame.to_csv(sep='\t', index=False)

    lines = []
    for key, value in payload.items():
        if isinstance(value, (str, int, float, bool)) or value is None:
            lines.append(f"{key}: {value}")
    if lines:
        lines.append('')
    lines.append(frame.to_string(index=False) if len(frame) else '(no rows)')
    return '\n'.join(lines) + '\n'


def write_report(command: str, payload: Dict, rows: List[Dict], fmt: str,
                 out: Optional[str] = None) -> str:
    """Render a report and write it to `out`, or return it for stdout"""
    text = render(command, payload, rows, fmt)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info("Wrote %s report to %s", command, path)
    return text
