import json
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, FiniteFloat, PositiveInt, ValidationError, model_validator

from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import InputError, OperatorFileError
from logicsup.operator_core import HermitianOperator

Entry = Tuple[FiniteFloat, FiniteFloat]


class OperatorFile(BaseModel):
    """On-disk operator: ``{"dim": n, "label": ..., "matrix": [[[re, im], ...], ...]}``."""

    model_config = ConfigDict(extra="forbid")

    dim: PositiveInt
    label: Optional[str] = None
    matrix: List[List[Entry]]

    @model_validator(mode="after")
    def check_shape(self) -> "OperatorFile":
        if len(self.matrix) != self.dim:
            raise ValueError(f"matrix has {len(self.matrix)} rows, dim is {self.dim}")
        for index, row in enumerate(self.matrix):
            if len(row) != self.dim:
                raise ValueError(f"row {index} has {len(row)} entries, dim is {self.dim}")
        return self

    def to_array(self) -> np.ndarray:
        return np.array([[complex(re, im) for re, im in row] for row in self.matrix])

    def to_operator(self, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianOperator:
        return HermitianOperator.from_matrix(self.to_array(), self.label, tol)

    @classmethod
    def from_operator(cls, operator: HermitianOperator, label: Optional[str] = None) -> "OperatorFile":
        matrix = [[(float(z.real), float(z.imag)) for z in row] for row in operator.entries]
        return cls(dim=operator.dim, label=label or operator.label, matrix=matrix)

    def dumps(self) -> str:
        """
        Serialize with 17 significant digits so doubles round-trip exactly.

        Written by hand rather than through ``model_dump_json``: pydantic emits
        the shortest repr of each float, while operator files fix the width
        at ``%.17g`` and keep one matrix row per line. The output is still
        plain JSON that ``parse_operator_file`` reads back.
        """
        rows = []
        for row in self.matrix:
            cells = ", ".join(f"[{re:.17g}, {im:.17g}]" for re, im in row)
            rows.append(f"    [{cells}]")
        label = "" if self.label is None else f'  "label": {json.dumps(self.label)},\n'
        body = ",\n".join(rows)
        return f'{{\n  "dim": {self.dim},\n{label}  "matrix": [\n{body}\n  ]\n}}\n'


def _diagnostics(error: ValidationError) -> List[str]:
    details = []
    for item in error.errors():
        location = ".".join(str(part) for part in item.get("loc", ())) or "<root>"
        details.append(f"{location}: {item.get('msg')}")
    return details


def parse_operator_file(text: str, source: str = "<string>") -> OperatorFile:
    try:
        return OperatorFile.model_validate_json(text)
    except ValidationError as e:
        raise OperatorFileError(source, _diagnostics(e))


def read_operator(path, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianOperator:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise OperatorFileError(str(path), [str(e)])
    document = parse_operator_file(text, str(path))
    try:
        operator = document.to_operator(tol)
    except InputError as e:
        raise OperatorFileError(str(path), [f"matrix: {e}"])
    logger.debug(f"Read {document.dim}x{document.dim} operator from {path}")
    return operator


def write_operator(path, operator: HermitianOperator, label: Optional[str] = None) -> None:
    path = Path(path)
    text = OperatorFile.from_operator(operator, label).dumps()
    try:
        path.write_text(text)
    except OSError as e:
        logger.error(f"Failed to write operator to {path}: {e}")
        raise OperatorFileError(str(path), [str(e)], action="Cannot write operator file")
    logger.info(f"Wrote {operator.dim}x{operator.dim} operator to {path}")
