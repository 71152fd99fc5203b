"""Builds tiny random-weight checkpoints on disk so the shim's loading and
serving paths run offline exactly as they would with published models."""

from __future__ import annotations

import os

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")

import torch
from tokenizers import Regex, Tokenizer, decoders, pre_tokenizers, processors
from tokenizers.models import WordLevel
from transformers import (
    BartConfig,
    BartForConditionalGeneration,
    BertConfig,
    BertModel,
    PreTrainedTokenizerFast,
)

from qgshim.config import ShimConfig


def _char_tokenizer(specials: list[str], template: str, template_specials: list[str]):
    chars = [chr(c) for c in range(32, 127)] + ["\n"]
    vocab = {t: i for i, t in enumerate(specials)}
    for ch in chars:
        if ch not in vocab:
            vocab[ch] = len(vocab)
    tok = Tokenizer(WordLevel(vocab, unk_token=specials[0]))
    tok.pre_tokenizer = pre_tokenizers.Split(Regex(r"[\s\S]"), behavior="isolated")
    tok.decoder = decoders.Fuse()
    tok.post_processor = processors.TemplateProcessing(
        single=template, special_tokens=[(s, vocab[s]) for s in template_specials]
    )
    return tok, vocab


def build_seq2seq_checkpoint(path: str, seed: int) -> None:
    tok, vocab = _char_tokenizer(
        ["<unk>", "<pad>", "<s>", "</s>"], "<s> $A </s>", ["<s>", "</s>"]
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok, unk_token="<unk>", pad_token="<pad>",
        bos_token="<s>", eos_token="</s>", model_max_length=512,
    )
    fast.save_pretrained(path)
    torch.manual_seed(seed)
    config = BartConfig(
        vocab_size=len(vocab), d_model=32,
        encoder_layers=1, decoder_layers=1,
        encoder_attention_heads=2, decoder_attention_heads=2,
        encoder_ffn_dim=64, decoder_ffn_dim=64,
        max_position_embeddings=1024,
        pad_token_id=vocab["<pad>"], bos_token_id=vocab["<s>"],
        eos_token_id=vocab["</s>"], decoder_start_token_id=vocab["</s>"],
        forced_eos_token_id=None,
    )
    BartForConditionalGeneration(config).save_pretrained(path)


def build_embedding_checkpoint(path: str, seed: int) -> None:
    tok, vocab = _char_tokenizer(
        ["[UNK]", "[PAD]", "[CLS]", "[SEP]"], "[CLS] $A [SEP]", ["[CLS]", "[SEP]"]
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok, unk_token="[UNK]", pad_token="[PAD]",
        cls_token="[CLS]", sep_token="[SEP]", model_max_length=512,
    )
    fast.save_pretrained(path)
    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=len(vocab), hidden_size=32,
        num_hidden_layers=1, num_attention_heads=2,
        intermediate_size=64, max_position_embeddings=512,
        pad_token_id=vocab["[PAD]"],
    )
    BertModel(config).save_pretrained(path)


@pytest.fixture(scope="session")
def checkpoints(tmp_path_factory) -> dict[str, str]:
    root = tmp_path_factory.mktemp("checkpoints")
    qg = root / "qg"
    summarizer = root / "summarizer"
    embedder = root / "embedder"
    build_seq2seq_checkpoint(str(qg), seed=3)
    build_seq2seq_checkpoint(str(summarizer), seed=5)
    build_embedding_checkpoint(str(embedder), seed=0)
    return {"qg": str(qg), "sum": str(summarizer), "emb": str(embedder)}


@pytest.fixture(scope="session")
def shim_config(checkpoints) -> ShimConfig:
    return ShimConfig(
        qg_model=checkpoints["qg"],
        summarization_model=checkpoints["sum"],
        embedding_model=checkpoints["emb"],
    )


@pytest.fixture(scope="session")
def app(shim_config):
    from qgshim.app import create_app

    return create_app(shim_config)


@pytest.fixture(scope="session")
def client(app):
    from fastapi.testclient import TestClient

    with TestClient(app, raise_server_exceptions=False) as test_client:
        yield test_client
