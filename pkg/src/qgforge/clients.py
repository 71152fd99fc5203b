"""HTTP clients for external generation and embedding endpoints.

Wire protocol (JSON over HTTP):

- generation: ``POST {base}/generate`` with
  ``{"input_text": str, "max_output_tokens": int, "beam": int}`` returning
  ``{"output_text": str, "model_id": str}``;
- embedding: ``POST {base}/embed`` with ``{"texts": [str]}`` returning
  ``{"tokens": [[str]], "embeddings": [[[float]]]}``.

5xx responses are retried with exponential backoff (3 attempts total);
4xx and timeouts fail immediately. Payloads are forwarded byte-for-byte:
the encoder's output is what goes on the wire.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import httpx
import numpy as np

ENV_GEN_URL = "QGF_GEN_URL"
ENV_EMB_URL = "QGF_EMB_URL"

DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 3
DEFAULT_BACKOFF = 0.5
DEFAULT_BEAM = 4
DEFAULT_MAX_OUTPUT_TOKENS = 64
DEFAULT_EMBED_BATCH = 32


class TransportError(RuntimeError):
    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class EndpointTimeout(TransportError):
    pass


class ProtocolError(RuntimeError):
    """The endpoint answered, but not in the shape the protocol promises."""


@dataclass(frozen=True)
class GenerationRequest:
    input_text: str
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    beam: int = DEFAULT_BEAM  # 1 means greedy decoding

    def __post_init__(self):
        if not self.input_text:
            raise ValueError("input_text must be non-empty")
        if self.beam < 1:
            raise ValueError("beam width must be >= 1")

    def payload(self) -> dict:
        return {
            "input_text": self.input_text,
            "max_output_tokens": self.max_output_tokens,
            "beam": self.beam,
        }


@dataclass(frozen=True)
class GenerationResponse:
    output_text: str
    latency_ms: float
    model_id: str


@dataclass(frozen=True)
class TokenEmbeddings:
    tokens: list[str]
    vectors: np.ndarray  # shape (len(tokens), dim)


class _JsonHttpClient:
    def __init__(
        self,
        base_url: str,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._http = httpx.Client(timeout=timeout)

    def close(self) -> None:
        self._http.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _post(self, path: str, payload: dict) -> dict:
        url = f"{self.base_url}{path}"
        last_status = None
        for attempt in range(self.retries):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                response = self._http.post(url, json=payload)
            except httpx.TimeoutException as exc:
                raise EndpointTimeout(f"timeout talking to {url}: {exc}") from exc
            except httpx.HTTPError as exc:
                raise TransportError(f"transport failure talking to {url}: {exc}") from exc
            if response.status_code >= 500:
                last_status = response.status_code
                continue
            if response.status_code >= 300:
                raise TransportError(
                    f"{url} answered {response.status_code}: {response.text[:200]}",
                    status=response.status_code,
                )
            try:
                return response.json()
            except ValueError as exc:
                raise ProtocolError(f"{url} returned non-JSON body") from exc
        raise TransportError(
            f"{url} kept failing with {last_status} after {self.retries} attempts",
            status=last_status,
        )


class GenerationClient(_JsonHttpClient):
    """Client for a text-to-text generation endpoint."""

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        started = time.monotonic()
        body = self._post("/generate", request.payload())
        latency_ms = (time.monotonic() - started) * 1000.0
        if "output_text" not in body:
            raise ProtocolError("generation response is missing output_text")
        return GenerationResponse(
            output_text=str(body["output_text"]),
            latency_ms=latency_ms,
            model_id=str(body.get("model_id", "")),
        )


class EmbeddingClient(_JsonHttpClient):
    """Client for a token-embedding endpoint; batches transparently."""

    def embed(self, texts: list[str], batch_size: int = DEFAULT_EMBED_BATCH) -> list[TokenEmbeddings]:
        results: list[TokenEmbeddings] = []
        dim: int | None = None
        for start in range(0, len(texts), batch_size):
            batch = texts[start : start + batch_size]
            body = self._post("/embed", {"texts": batch})
            tokens = body.get("tokens")
            embeddings = body.get("embeddings")
            if not isinstance(tokens, list) or not isinstance(embeddings, list):
                raise ProtocolError("embed response is missing tokens/embeddings")
            if len(tokens) != len(batch) or len(embeddings) != len(batch):
                raise ProtocolError(
                    f"embed response length {len(tokens)}/{len(embeddings)} "
                    f"does not match batch of {len(batch)}"
                )
            for text_tokens, text_vectors in zip(tokens, embeddings):
                if len(text_tokens) != len(text_vectors):
                    raise ProtocolError("token/embedding row count mismatch")
                try:
                    matrix = np.asarray(text_vectors, dtype=float)
                except ValueError as exc:
                    raise ProtocolError(f"malformed embedding rows: {exc}") from exc
                if matrix.size and matrix.ndim != 2:
                    raise ProtocolError("embedding rows have inconsistent dimensions")
                if matrix.size:
                    if dim is None:
                        dim = matrix.shape[1]
                    elif matrix.shape[1] != dim:
                        raise ProtocolError(
                            f"embedding dimension changed from {dim} to {matrix.shape[1]}"
                        )
                results.append(TokenEmbeddings(tokens=list(text_tokens), vectors=matrix))
        return results
