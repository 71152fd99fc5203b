"""Model wrappers: load checkpoints once, serialize calls per device."""

from __future__ import annotations

import threading

import torch
from transformers import AutoModel, AutoModelForSeq2SeqLM, AutoTokenizer


class Seq2SeqEngine:
    """A text-to-text checkpoint behind deterministic beam decoding."""

    def __init__(self, checkpoint: str, device: str = "cpu"):
        self.model_id = checkpoint
        self.device = device
        self.tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        self.model = AutoModelForSeq2SeqLM.from_pretrained(checkpoint).to(device).eval()
        self._lock = threading.Lock()

    def generate(self, input_text: str, max_output_tokens: int, beam: int) -> str:
        inputs = self.tokenizer(
            input_text, return_tensors="pt", truncation=True
        ).to(self.device)
        with self._lock, torch.no_grad():
            output = self.model.generate(
                **inputs,
                num_beams=beam,
                do_sample=False,
                max_new_tokens=max_output_tokens,
                min_new_tokens=1,
            )
        return self.tokenizer.decode(output[0], skip_special_tokens=True)


class EmbeddingEngine:
    """Contextual token embeddings from an encoder checkpoint.

    Special tokens are stripped so the returned token list lines up with
    the text content row-for-row.
    """

    def __init__(self, checkpoint: str, device: str = "cpu"):
        self.model_id = checkpoint
        self.device = device
        self.tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        self.model = AutoModel.from_pretrained(checkpoint).to(device).eval()
        self._lock = threading.Lock()

    def embed(self, texts: list[str]) -> tuple[list[list[str]], list[list[list[float]]]]:
        tokens_out: list[list[str]] = []
        embeddings_out: list[list[list[float]]] = []
        if not texts:
            return tokens_out, embeddings_out
        encoded = self.tokenizer(
            list(texts), return_tensors="pt", padding=True, truncation=True
        ).to(self.device)
        with self._lock, torch.no_grad():
            hidden = self.model(**encoded).last_hidden_state
        for i in range(len(texts)):
            ids = encoded["input_ids"][i].tolist()
            special = self.tokenizer.get_special_tokens_mask(ids, already_has_special_tokens=True)
            keep = [j for j, flag in enumerate(special) if not flag]
            tokens_out.append(self.tokenizer.convert_ids_to_tokens([ids[j] for j in keep]))
            embeddings_out.append(hidden[i, keep].cpu().tolist())
        return tokens_out, embeddings_out
