"""Document -> summary -> per-sentence question generation.

The pipeline asks a summarization endpoint for a summary of the document,
then feeds each summary sentence as the target answer to the question
generation endpoint. One QA pair per summary sentence, in sentence order;
a failed QG call becomes an error entry instead of aborting the batch.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .clients import GenerationClient, GenerationRequest, TransportError
from .encoding import EncodingScheme, encode_answer_context
from .sentences import split_sentences

log = logging.getLogger(__name__)

DEFAULT_PARALLELISM = 4


@dataclass(frozen=True)
class QAPair:
    question: str
    answer: str
    source_span: tuple[int, int]  # character span of the context used

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "answer": self.answer,
            "source_span": list(self.source_span),
        }


@dataclass(frozen=True)
class PipelineError:
    sentence_index: int
    answer: str
    message: str

    def to_dict(self) -> dict:
        return {
            "sentence_index": self.sentence_index,
            "answer": self.answer,
            "message": self.message,
        }


@dataclass
class PipelineResult:
    pairs: list[QAPair]
    errors: list[PipelineError] = field(default_factory=list)
    summary: str = ""


def generate_question(
    answer: str,
    context: str,
    client: GenerationClient,
    scheme: EncodingScheme = EncodingScheme.PREPEND_ANSWER,
    max_output_tokens: int = 64,
    beam: int = 4,
) -> str:
    """Encode (answer, context), post it, return the trimmed question."""
    input_text = encode_answer_context(answer, context, scheme)
    request = GenerationRequest(input_text, max_output_tokens=max_output_tokens, beam=beam)
    return client.generate(request).output_text.strip()


def _context_window(document: str, sentence: str, width: int) -> tuple[int, int]:
    # center the window on the sentence's longest token; whole document
    # when the token is nowhere to be found
    tokens = sorted(sentence.split(), key=len, reverse=True)
    for token in tokens:
        i = document.find(token)
        if i >= 0:
            start = max(0, i - width // 2)
            return start, min(len(document), start + width)
    return 0, len(document)


def summarize_then_qg(
    document: str,
    summarizer: GenerationClient,
    qg: GenerationClient,
    scheme: EncodingScheme = EncodingScheme.PREPEND_ANSWER,
    max_summary_tokens: int = 256,
    max_question_tokens: int = 64,
    beam: int = 4,
    parallelism: int = DEFAULT_PARALLELISM,
    window_chars: int | None = None,
) -> PipelineResult:
    """Run the summarize-then-generate pipeline over one document.

    The summarizer failing aborts the run; a per-sentence QG failure is
    recorded and the remaining sentences still produce pairs. Per-sentence
    calls run concurrently up to ``parallelism`` and results are returned
    in sentence order.
    """
    summary_req = GenerationRequest(document, max_output_tokens=max_summary_tokens, beam=beam)
    summary = summarizer.generate(summary_req).output_text.strip()
    if not summary:
        log.warning("summarizer returned empty text; no pairs generated")
        return PipelineResult(pairs=[], summary=summary)
    sentences = split_sentences(summary)

    def one(index_sentence: tuple[int, str]):
        index, sentence = index_sentence
        if window_chars is None:
            span = (0, len(document))
        else:
            span = _context_window(document, sentence, window_chars)
        context = document[span[0] : span[1]]
        try:
            question = generate_question(
                sentence, context, qg, scheme,
                max_output_tokens=max_question_tokens, beam=beam,
            )
        except (TransportError, ValueError) as exc:
            return index, None, PipelineError(index, sentence, str(exc)), span
        return index, question, None, span

    workers = max(1, min(parallelism, len(sentences)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(one, enumerate(sentences)))

    pairs: list[QAPair] = []
    errors: list[PipelineError] = []
    for index, question, error, span in sorted(outcomes, key=lambda o: o[0]):
        if error is not None:
            errors.append(error)
        else:
            pairs.append(QAPair(question=question, answer=sentences[index], source_span=span))
    return PipelineResult(pairs=pairs, errors=errors, summary=summary)


def write_pairs(result: PipelineResult, fp) -> int:
    n = 0
    for pair in result.pairs:
        fp.write(json.dumps(pair.to_dict(), ensure_ascii=False))
        fp.write("\n")
        n += 1
    return n
