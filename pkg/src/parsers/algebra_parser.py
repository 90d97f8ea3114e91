"""
Algebra interchange parser.

Reads and writes the JSON interchange document. Writing is canonical
(records sorted by (i, j, k), canonical PolyQ text, two-space indent),
so export → parse → export reproduces the same bytes.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Tuple

from pydantic import ValidationError

from ..config.settings import AppConfig
from ..models.algebra_document import AlgebraDocument, BracketRecord
from ..models.lie_algebra import LieAlgebra
from ..models.polynomial import PolyQ
from .polynomial_parser import PolynomialParsingError, parse_polynomial


class AlgebraParsingError(Exception):
    """Custom exception for unreadable or malformed algebra documents."""

    pass


class AlgebraParser:
    """
    Converts between interchange documents and LieAlgebra values.
    """

    def __init__(self, config: Optional[AppConfig] = None):
        """
        Initialize the parser.

        Args:
            config: Application configuration settings
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

    def parse_file(self, path: Path) -> LieAlgebra:
        """
        Read an algebra from a UTF-8 JSON file.

        Raises:
            AlgebraParsingError: If the file is missing or its content is invalid
        """
        path = Path(path)
        if not path.exists():
            raise AlgebraParsingError(f"File not found: {path}")
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise AlgebraParsingError(f"Cannot read {path}: {e}") from e
        algebra = self.parse_text(text)
        self.logger.debug(f"Read algebra '{algebra.name}' of dimension {algebra.dim} from {path}")
        return algebra

    def parse_text(self, text: str) -> LieAlgebra:
        """
        Build a LieAlgebra from document text.

        Raises:
            AlgebraParsingError: For invalid JSON, schema violations, bad
                coefficients, duplicate records or indices out of range
        """
        try:
            document = AlgebraDocument.model_validate_json(text)
            return self.from_document(document)
        except AlgebraParsingError:
            raise
        except ValidationError as e:
            raise AlgebraParsingError(f"Malformed algebra document: {e}") from e
        except (PolynomialParsingError, ValueError) as e:
            raise AlgebraParsingError(f"Invalid algebra document: {e}") from e

    def from_document(self, document: AlgebraDocument) -> LieAlgebra:
        table: Dict[Tuple[int, int], Dict[int, PolyQ]] = {}
        for record in document.brackets:
            if record.i >= record.j:
                raise AlgebraParsingError(f"Record ({record.i},{record.j},{record.k}) needs i < j")
            row = table.setdefault((record.i, record.j), {})
            if record.k in row:
                raise AlgebraParsingError(f"Record ({record.i},{record.j},{record.k}) appears twice")
            row[record.k] = parse_polynomial(record.c, allowed=document.params)
        return LieAlgebra(
            dim=document.dim,
            name=document.name,
            params=tuple(document.params),
            brackets=table,
        )

    def to_document(self, algebra: LieAlgebra) -> AlgebraDocument:
        records = [
            BracketRecord(i=i, j=j, k=k, c=str(algebra.coefficient(i, j, k)))
            for i, j, k in algebra.nonzero_triples()
        ]
        return AlgebraDocument(
            name=algebra.name, dim=algebra.dim, params=list(algebra.params), brackets=records
        )

    def dumps(self, algebra: LieAlgebra) -> str:
        """Canonical document text, newline terminated."""
        data = self.to_document(algebra).model_dump()
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

    def write_file(self, algebra: LieAlgebra, path: Path) -> Path:
        path = Path(path)
        path.write_text(self.dumps(algebra), encoding="utf-8")
        self.logger.info(f"Saved algebra '{algebra.name}' to {path}")
        return path
