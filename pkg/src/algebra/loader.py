"""
Structure file loader.

Reads a bracket table and distribution data from a JSON document:

    {"c": [[[...]]], "d1": [...], "d2": [...], "metric": [[...]],
     "orient_M": 1, "orient_D": 1}

``c[i][j][k]`` is the coefficient of e_(k+1) in [e_(i+1), e_(j+1)].
``metric`` defaults to the identity and both orientations to +1.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Tuple

import numpy as np

from ..errors import EngelError, InvalidConfig
from .models import BracketTable, DistributionData

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("c", "d1", "d2")
OPTIONAL_KEYS = ("metric", "orient_M", "orient_D")


class StructureFileParser:
    """Parser for JSON structure files."""

    def __init__(self, path: str):
        """
        Initialize the parser.

        Args:
            path: Path to the JSON structure file
        """
        self.path = Path(path)

        if not self.path.exists():
            raise FileNotFoundError(f"Structure file not found: {path}")

        self.document: Dict[str, Any] = {}
        self.table: BracketTable = None
        self.distribution: DistributionData = None

    def load(self) -> 'StructureFileParser':
        """
        Read and validate the document.

        Returns:
            Self for method chaining

        Raises:
            InvalidConfig: On malformed JSON, missing or unknown keys, or
                entries that do not form a valid table or distribution
        """
        logger.info(f"Loading structure from {self.path}")

        try:
            with open(self.path, 'r', encoding='utf-8') as f:
                self.document = json.load(f)
        except json.JSONDecodeError as e:
            raise InvalidConfig(f"Malformed JSON in {self.path}: {e}")

        if not isinstance(self.document, dict):
            raise InvalidConfig(f"{self.path} must contain a JSON object")

        missing = [key for key in REQUIRED_KEYS if key not in self.document]
        if missing:
            raise InvalidConfig(f"{self.path} is missing keys: {missing}")

        unknown = sorted(set(self.document) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
        if unknown:
            raise InvalidConfig(f"{self.path} has unknown keys: {unknown}")

        self.table = self._parse_table()
        self.distribution = self._parse_distribution()
        logger.info(f"Parsed {len(self.table.nonzero_entries())} nonzero structure constants from {self.path}")
        return self

    def _parse_table(self) -> BracketTable:
        try:
            c = np.asarray(self.document["c"], dtype=float)
        except (TypeError, ValueError) as e:
            raise InvalidConfig(f"Entry 'c' is not numeric: {e}")
        try:
            return BracketTable(c)
        except EngelError as e:
            raise InvalidConfig(f"Invalid bracket table in {self.path}: {e.message}")

    def _parse_distribution(self) -> DistributionData:
        doc = self.document
        kwargs = {"d1": doc["d1"], "d2": doc["d2"]}
        if "metric" in doc:
            kwargs["metric"] = doc["metric"]
        for key in ("orient_M", "orient_D"):
            if key in doc:
                kwargs[key] = doc[key]
        try:
            return DistributionData(**kwargs)
        except EngelError:
            raise
        except (TypeError, ValueError) as e:
            raise InvalidConfig(f"Invalid distribution in {self.path}: {e}")


def load_structure(path: str) -> Tuple[BracketTable, DistributionData]:
    """
    Load a bracket table and distribution from a JSON file.

    Args:
        path: Path to the structure file

    Returns:
        (BracketTable, DistributionData)

    Raises:
        FileNotFoundError: If the file does not exist
        InvalidConfig: If the content is malformed
        InvalidDistribution: If the distribution data is degenerate
    """
    parser = StructureFileParser(path).load()
    return parser.table, parser.distribution
