"""qgforge: unify QA corpora into answer-first text-to-text training data,
mix them deterministically, and evaluate generated questions."""

__version__ = "0.1.0"

from .encoding import EncodedExample, EncodingScheme, encode, encode_corpus
from .records import AnswerType, QARecord, ValidationReport, normalize_text, validate_record

__all__ = [
    "AnswerType",
    "EncodedExample",
    "EncodingScheme",
    "QARecord",
    "ValidationReport",
    "__version__",
    "encode",
    "encode_corpus",
    "normalize_text",
    "validate_record",
]
