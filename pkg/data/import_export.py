"""
Import and export functionality
"""

import json
import logging
import os
import re
from fractions import Fraction

import pandas as pd

from config.settings import Settings
from core.exceptions import ConfigError, PlaceSetError
from core.experiment import ExperimentConfig
from utils.helpers import ensure_directory, format_rational, parse_rational
from utils.validators import (validate_choice, validate_h, validate_k_range, validate_place_spec,
                              validate_precision, validate_q)

logger = logging.getLogger(__name__)

_LINE = re.compile(r"^\s*(?P<key>[A-Za-z_]+)(\[(?P<index>[-+]?\d+)\])?\s*=\s*(?P<value>.*?)\s*$")
_PLACE_TOKEN = re.compile(r"\[[^\]]*\]|[^,\s\[\]]+")

INTEGER_KEYS = ("q", "k_min", "k_max", "precision")


def parse_places(text):
    """Split 'inf, [0,1], [1,1]' into place specifiers"""
    return tuple(_PLACE_TOKEN.findall(text))


def parse_config(text):
    """Parse a line-based key = value experiment configuration"""
    values = {}
    h = {}
    lines = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if not match:
            raise ConfigError(f"expected 'key = value', got '{raw.strip()}'", number)
        key, index, value = match.group("key"), match.group("index"), match.group("value")
        try:
            if key == "h":
                if index is None:
                    raise ConfigError("h entries are written h[e] = num/den", number)
                h[int(index)] = parse_rational(value)
            elif key in INTEGER_KEYS:
                values[key] = int(value)
            elif key == "depth":
                values[key] = None if value.lower() == "auto" else int(value)
            elif key == "places":
                values[key] = parse_places(value)
            elif key in ("format", "mode"):
                values[key] = value.lower()
            else:
                raise ConfigError(f"unknown key '{key}'", number)
        except ConfigError:
            raise
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"bad value for {key}: {e}", number)
        lines[key] = number

    if h:
        values["h"] = h
    config = ExperimentConfig(**values)
    validate_config(config, lines)
    return config


def _check(result, key, lines):
    ok, message = result
    if not ok:
        raise ConfigError(message, lines.get(key))


def validate_config(config, lines=None):
    """Run the tuple validators over a config, then the largeness conditions on S"""
    lines = lines or {}
    _check(validate_q(config.q), "q", lines)
    for spec in config.places:
        _check(validate_place_spec(spec), "places", lines)
    _check(validate_k_range(config.k_min, config.k_max), "k_max", lines)
    _check(validate_h(config.h), "h", lines)
    _check(validate_choice(config.format, Settings.FORMATS, "format"), "format", lines)
    _check(validate_choice(config.mode, Settings.MODES, "mode"), "mode", lines)
    _check(validate_precision(config.precision), "precision", lines)
    if config.depth is not None and config.depth < 1:
        raise ConfigError("depth must be positive or 'auto'", lines.get("depth"))
    try:
        config.place_set()
    except PlaceSetError:
        raise
    except ValueError as e:
        raise ConfigError(str(e), lines.get("places"))
    return config


def write_config(config):
    """Inverse of parse_config"""
    out = [
        f"q = {config.q}",
        "places = " + ", ".join(config.places),
        f"k_min = {config.k_min}",
        f"k_max = {config.k_max}",
        f"depth = {'auto' if config.depth is None else config.depth}",
        f"format = {config.format}",
        f"mode = {config.mode}",
        f"precision = {config.precision}",
    ]
    for e in sorted(config.h):
        out.append(f"h[{e}] = {format_rational(config.h[e])}")
    return "\n".join(out) + "\n"


def load_config(path):
    """Load a configuration file"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return parse_config(f.read())
    except OSError as e:
        logger.error(f"Failed to read config {path}: {e}")
        raise ConfigError(f"cannot read {path}: {e}")


def save_config(config, path):
    ensure_directory(os.path.dirname(path))
    with open(path, 'w', encoding='utf-8') as f:
        f.write(write_config(config))
    logger.info(f"Configuration written to {path}")


def reports_to_frame(reports, mode="exact", precision=Settings.DEFAULT_PRECISION):
    """Report rows as a DataFrame with the fixed column order"""
    rows = [report.to_row(mode, precision) for report in reports]
    return pd.DataFrame(rows, columns=list(Settings.CSV_COLUMNS))


def export_report(reports, fmt="csv", mode="exact", precision=Settings.DEFAULT_PRECISION, path=None):
    """Render reports as CSV or JSON; written to path when given, returned as text otherwise"""
    frame = reports_to_frame(reports, mode, precision)
    try:
        if fmt == "csv":
            text = frame.to_csv(index=False)
        elif fmt == "json":
            records = [{column: row[column] for column in Settings.CSV_COLUMNS}
                       for row in (report.to_row(mode, precision) for report in reports)]
            text = json.dumps(records, indent=2)
        else:
            raise ConfigError(f"unknown format '{fmt}'")
        if path:
            ensure_directory(os.path.dirname(path))
            with open(path, 'w', encoding='utf-8') as f:
                f.write(text)
            logger.info(f"Report with {len(frame)} rows written to {path}")
        return text
    except Exception as e:
        logger.error(f"Failed to export report: {e}")
        raise


def import_report(path):
    """Read back an exact-mode CSV report, rational columns as Fractions"""
    frame = pd.read_csv(path, dtype=str)
    for column in Settings.CSV_COLUMNS:
        if column in ("k", "Lambda", "dimQ0", "dimQbar0"):
            frame[column] = frame[column].astype(int)
        else:
            frame[column] = frame[column].map(Fraction)
    return frame
