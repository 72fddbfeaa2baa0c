"""
Text and JSON formats for matrices, permutations and partitions.

Matrix text is one row per line with space-separated entries from {-1, 0, 1};
a blank line ends a matrix. Lines starting with '#' are comments. The JSON
form is {"rows": r, "cols": s, "entries": [[...], ...]}.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

from permprofile.core.errors import MatrixFormatError
from permprofile.perm_core import Permutation
from permprofile.sign_matrix import Matrix, SignMatrix

logger = logging.getLogger(__name__)

SCHEMA_PREFIX = "permprofile"


def schema(kind: str) -> str:
    """Versioned schema tag for a JSON document, e.g. "permprofile/matrix/1"."""
    return f"{SCHEMA_PREFIX}/{kind}/1"


def _parse_row(line: str, number: int) -> List[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError as e:
        raise MatrixFormatError(f"Line {number}: cannot parse {line.strip()!r} as matrix entries") from e


def parse_matrices(text: str) -> List[SignMatrix]:
    """Parse every blank-line-separated matrix in a text."""
    matrices: List[SignMatrix] = []
    rows: List[List[int]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        if not stripped:
            if rows:
                matrices.append(_build(rows))
                rows = []
            continue
        rows.append(_parse_row(stripped, number))
    if rows:
        matrices.append(_build(rows))
    return matrices


def _build(rows: List[List[int]]) -> SignMatrix:
    if len({len(row) for row in rows}) != 1:
        raise MatrixFormatError(f"Rows have different lengths: {[len(row) for row in rows]}")
    return SignMatrix.from_rows(rows)


def parse_matrix_text(text: str) -> SignMatrix:
    """
    Parse the first matrix of a text.

    Raises:
        MatrixFormatError: If the text holds no matrix or a malformed one
    """
    matrices = parse_matrices(text)
    if not matrices:
        raise MatrixFormatError("No matrix found in input")
    return matrices[0]


def format_matrix_text(matrix: Matrix) -> str:
    """Rows of space-separated entries, terminated by a blank line."""
    lines = [
        " ".join(str(matrix.value(i, j)) for j in range(1, matrix.cols + 1))
        for i in range(1, matrix.rows + 1)
    ]
    return "\n".join(lines) + "\n\n"


def matrix_to_json(matrix: Matrix) -> Dict[str, Any]:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [
            [matrix.value(i, j) for j in range(1, matrix.cols + 1)]
            for i in range(1, matrix.rows + 1)
        ],
    }


def matrix_from_json(document: Union[str, Dict[str, Any]]) -> SignMatrix:
    """
    Read the JSON form.

    Raises:
        MatrixFormatError: If keys are missing or the entries disagree with rows/cols
    """
    try:
        data = json.loads(document) if isinstance(document, str) else document
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise MatrixFormatError(f"Invalid matrix JSON: {e}") from e
    return SignMatrix(rows, cols, tuple(tuple(row) for row in entries))


def read_matrix(path: Union[str, Path]) -> SignMatrix:
    """
    Load a matrix file; a .json suffix selects the JSON form.

    Raises:
        MatrixFormatError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise MatrixFormatError(f"Cannot read matrix file {path}: {e}") from e
    logger.debug(f"Reading matrix from {path}")
    if path.suffix == ".json":
        return matrix_from_json(text)
    return parse_matrix_text(text)


def format_permutations(permutations: Iterable[Permutation]) -> str:
    """One permutation per line, lexicographically sorted."""
    return "".join(f"{p}\n" for p in sorted(permutations))


def permutation_to_json(p: Permutation) -> List[int]:
    return list(p.values)
