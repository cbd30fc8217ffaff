"""
Batch conservation sweeps.

A sweep config is a JSON object:

    {
      "points": [
        {"family": "III", "params": {"T3": [1, -1], "T4": [0, 1], "T6": [1]}},
        {"T": [0, 0, 1, 1, 0, 1]}
      ],
      "h0": [[0.6, 0.8, 0.1, 0.2]],
      "random_h0": 0,
      "t_max": 10.0,
      "step": 0.001,
      "method": "rk4",
      "workers": 4
    }

Each constants entry is combined with every initial state. Rows come back in
grid order regardless of which worker finished first. A failing point
records its error and the batch continues.
"""

import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..algebra.models import EngelConstants
from ..errors import EngelError, InvalidConfig, InvalidParams
from ..flow.hamiltonian import integrate
from ..flow.integrals import conservation_report
from ..flow.models import IntegratorConfig, VerticalState
from ..classify.families import FamilyTag, build_family

logger = logging.getLogger(__name__)

DEFAULT_H0 = (0.6, 0.8, 0.1, 0.2)
SWEEP_KEYS = {"points", "h0", "random_h0", "t_max", "step", "method", "rel_tol", "abs_tol", "workers"}


@dataclass
class SweepPoint:
    """One grid point: constants (or the error building them) and an initial state."""

    index: int
    source: Dict[str, Any]
    h0: List[float]
    constants: Optional[EngelConstants] = None
    error: Optional[EngelError] = None


def load_sweep_config(path: str) -> Dict[str, Any]:
    """
    Read a sweep config file.

    Raises:
        FileNotFoundError: If the file does not exist
        InvalidConfig: On malformed JSON or unknown keys
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Sweep config not found: {path}")

    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            config = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidConfig(f"Malformed JSON in {path}: {e}")

    if not isinstance(config, dict):
        raise InvalidConfig(f"{path} must contain a JSON object")
    unknown = sorted(set(config) - SWEEP_KEYS)
    if unknown:
        raise InvalidConfig(f"Unknown sweep keys: {unknown}")
    return config


def _initial_states(config: Dict[str, Any], seed: int) -> List[List[float]]:
    try:
        states = [list(map(float, h)) for h in config.get("h0", [])]
        count = int(config.get("random_h0", 0))
    except (TypeError, ValueError) as e:
        raise InvalidConfig(f"Initial states must be numeric: {e}")
    if count < 0:
        raise InvalidConfig(f"random_h0 must be non-negative, got {count}")
    if count:
        rng = np.random.default_rng(seed)
        states.extend(rng.uniform(-1.0, 1.0, size=(count, 4)).tolist())
    if not states:
        states = [list(DEFAULT_H0)]
    for h in states:
        if len(h) != 4:
            raise InvalidConfig(f"Initial states need 4 components, got {h}")
    return states


def _expand_entry(entry: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Expand one ``points`` entry into per-constants sources."""
    if not isinstance(entry, dict):
        raise InvalidConfig(f"Sweep entry must be an object: {entry!r}")
    if "T" in entry:
        if not isinstance(entry["T"], list):
            raise InvalidConfig(f"Sweep entry 'T' must be a list, got {entry['T']!r}")
        return [{"T": list(entry["T"])}]
    if "family" in entry:
        family = str(entry["family"])
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise InvalidConfig(f"Sweep entry 'params' must be an object, got {params!r}")
        for name, values in params.items():
            if not isinstance(values, list):
                raise InvalidConfig(f"Sweep parameter {name} must be a list of values, got {values!r}")
        names = sorted(params)
        return [
            {"family": family, "params": dict(zip(names, combo))}
            for combo in itertools.product(*(params[name] for name in names))
        ]
    raise InvalidConfig(f"Sweep entry needs 'T' or 'family': {entry}")


def _resolve(source: Dict[str, Any]) -> EngelConstants:
    try:
        if "T" in source:
            return EngelConstants.from_sequence(source["T"])
        params = {name: float(value) for name, value in source["params"].items()}
    except EngelError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidParams(f"Non-numeric value in sweep point {source}: {e}")
    return build_family(FamilyTag.parse(source["family"]), params)


def expand_grid(config: Dict[str, Any], seed: int = 0) -> List[SweepPoint]:
    """
    Expand a sweep config into ordered grid points.

    Args:
        config: Parsed sweep config
        seed: Seed for randomly sampled initial states

    Returns:
        SweepPoints in grid order (constants outer, initial states inner)
    """
    h0_list = _initial_states(config, seed)
    entries = config.get("points", [])
    if not isinstance(entries, list):
        raise InvalidConfig(f"Sweep 'points' must be a list, got {entries!r}")
    points = []
    for entry in entries:
        for source in _expand_entry(entry):
            try:
                constants, error = _resolve(source), None
            except EngelError as e:
                constants, error = None, e
            for h0 in h0_list:
                points.append(SweepPoint(len(points), source, h0, constants, error))
    return points


def _run_point(point: SweepPoint, cfg: IntegratorConfig) -> Dict[str, Any]:
    row = {"index": point.index, "source": point.source, "h0": point.h0}
    if point.error is not None:
        row["error"] = point.error.to_dict()
        return row
    try:
        traj = integrate(point.constants, VerticalState.from_sequence(point.h0), cfg)
        row["constants"] = point.constants.as_dict()
        row["drifts"] = conservation_report(point.constants, traj)
    except EngelError as e:
        row["error"] = e.to_dict()
    return row


def run_sweep(config: Dict[str, Any], seed: int = 0, workers: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    Integrate every grid point and report first-integral drifts.

    Args:
        config: Parsed sweep config
        seed: Seed for randomly sampled initial states
        workers: Thread count (default: config ``workers`` or 4)

    Returns:
        One row per grid point, in grid order
    """
    try:
        cfg = IntegratorConfig(
            method=config.get("method", "rk4"),
            step=float(config.get("step", IntegratorConfig.step)),
            rel_tol=float(config.get("rel_tol", IntegratorConfig.rel_tol)),
            abs_tol=float(config.get("abs_tol", IntegratorConfig.abs_tol)),
            t_max=float(config.get("t_max", IntegratorConfig.t_max)),
        )
        workers = int(workers or config.get("workers", 4))
    except EngelError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidConfig(f"Sweep integrator settings must be numeric: {e}")

    points = expand_grid(config, seed)
    if not points:
        logger.warning("Sweep grid is empty")
        return []

    logger.info(f"Running sweep over {len(points)} points with {workers} workers")
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        rows = list(pool.map(lambda point: _run_point(point, cfg), points))

    failed = sum(1 for row in rows if "error" in row)
    if failed:
        logger.warning(f"{failed} of {len(rows)} sweep points failed")
    return rows
