"""
Report helpers for the command-line interface: argument value parsing,
JSON serialization and trajectory tables.
"""

import json
import math
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..algebra.models import EngelConstants
from ..classify.families import FamilyTag, is_type3
from ..errors import EngelError, InvalidParams
from ..flow.integrals import center_momentum_values, integral_G_values, right_momenta
from ..flow.models import Trajectory

TRAJECTORY_COLUMNS = ["t", "h1", "h2", "h3", "h4", "H", "G", "h4p", "r1", "r2", "r3", "r4"]
CSV_FLOAT_FORMAT = "%.17g"


def parse_float_list(text: str, expected: Optional[int] = None, name: str = "value") -> List[float]:
    """
    Parse a comma-separated list of numbers.

    Raises:
        InvalidParams: On non-numeric entries or a wrong count
    """
    parts = [part.strip() for part in str(text).split(",") if part.strip()]
    try:
        values = [float(part) for part in parts]
    except ValueError:
        raise InvalidParams(f"Could not parse {name} list {text!r}")
    if expected is not None and len(values) != expected:
        raise InvalidParams(f"{name} needs {expected} comma-separated numbers, got {len(values)}")
    return values


def parse_params(text: Optional[str]) -> Dict[str, float]:
    """Parse ``T1=2,T2=1,T3=0`` into a dict."""
    params = {}
    if not text:
        return params
    for item in str(text).split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidParams(f"Expected NAME=VALUE, got {item!r}")
        try:
            params[key.strip().upper()] = float(value)
        except ValueError:
            raise InvalidParams(f"Parameter {key.strip()} has non-numeric value {value!r}")
    return params


def to_jsonable(obj: Any) -> Any:
    """Convert numpy values, tuples and enums to plain JSON types; NaN becomes null."""
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, FamilyTag):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if math.isnan(value) else value
    return obj


def dumps(report: Any) -> str:
    """Serialize a report; floats use the shortest round-trip representation."""
    return json.dumps(to_jsonable(report), indent=2)


def error_report(error: EngelError) -> Dict[str, Any]:
    return {"error": error.to_dict()}


def trajectory_frame(T: EngelConstants, traj: Trajectory) -> pd.DataFrame:
    """
    Tabulate a trajectory with its first integrals.

    G and h4p are NaN unless T is type III.

    Returns:
        DataFrame with columns t, h1..h4, H, G, h4p, r1..r4
    """
    states = traj.states
    momenta = right_momenta(traj)

    df = pd.DataFrame({
        "t": traj.times,
        "h1": states[:, 0],
        "h2": states[:, 1],
        "h3": states[:, 2],
        "h4": states[:, 3],
        "H": 0.5 * (states[:, 0] ** 2 + states[:, 1] ** 2),
    })
    if is_type3(T):
        df["G"] = integral_G_values(T, states)
        df["h4p"] = center_momentum_values(T, states)
    else:
        df["G"] = np.nan
        df["h4p"] = np.nan
    for i in range(4):
        df[f"r{i + 1}"] = momenta[:, i]
    return df[TRAJECTORY_COLUMNS]


def frame_to_csv(df: pd.DataFrame) -> str:
    """CSV text with 17 significant digits and blanks for missing values."""
    return df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, na_rep="")
