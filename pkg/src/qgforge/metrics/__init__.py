from .bertscore import bertscore
from .bleu import corpus_bleu, sentence_bleu
from .meteor import meteor
from .pairs import EvalPair, PRF
from .report import COLUMNS, MetricConfig, MetricReport, evaluate_corpus, load_eval_pairs
from .rouge import lcs_length, rouge_l, rouge_lsum, rouge_n
from .stemmer import stem
from .tokenizer import ngram_counts, tokenize

__all__ = [
    "COLUMNS",
    "EvalPair",
    "MetricConfig",
    "MetricReport",
    "PRF",
    "bertscore",
    "corpus_bleu",
    "evaluate_corpus",
    "lcs_length",
    "load_eval_pairs",
    "meteor",
    "ngram_counts",
    "rouge_l",
    "rouge_lsum",
    "rouge_n",
    "sentence_bleu",
    "stem",
    "tokenize",
]
