"""Local test checkpoint: a small randomly initialized BERT-style model.

Built offline from an explicit WordPiece vocab so tokenization and
hidden-state plumbing are exercised without downloading anything.
"""

import json

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

VOCAB_WORDS = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "she", "he", "we", "they", "i", "it", "all",
    "give", "gave", "given", "agree", "come", "came",
    "##ing", "##d", "##s",
    "on", "to", "that", "with", "back", "in", "out", "up", "away",
    "the", "a", "now", "again", "then", "will", "would", "and",
    "said", "never", "quickly", "home", "matter", "of",
]


def build_checkpoint(path, hidden_size=32, num_layers=3, num_heads=4, intermediate=64, seed=1234):
    vocab = {word: index for index, word in enumerate(VOCAB_WORDS)}
    tokenizer = BertTokenizer(vocab=vocab, do_lower_case=True)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=hidden_size,
        num_hidden_layers=num_layers,
        num_attention_heads=num_heads,
        intermediate_size=intermediate,
        max_position_embeddings=128,
    )
    torch.manual_seed(seed)
    model = BertModel(config)
    model.eval()
    tokenizer.save_pretrained(str(path))
    model.save_pretrained(str(path))
    return str(path)


@pytest.fixture(scope="session")
def checkpoint(tmp_path_factory):
    return build_checkpoint(tmp_path_factory.mktemp("ckpt") / "tiny-bert")


def make_sample_record(sample_id, clean_text, target_index, construction, verb_category):
    """One record in the corpus samples-JSON schema."""
    return {
        "id": sample_id,
        "raw_text": clean_text,
        "clean_text": clean_text,
        "label": {
            "verb_category": verb_category,
            "particle": construction.split("_", 1)[1],
            "name": construction,
        },
        "target_token_index": target_index,
        "particle_token_index": target_index + 1,
        "context_before": target_index,
        "context_after": len(clean_text.split()) - target_index - 2,
    }


SIX_SAMPLES = [
    make_sample_record("s0", "she gave up now and then", 1, "give_up", "give"),
    make_sample_record("s1", "they will give up the matter", 2, "give_up", "give"),
    make_sample_record("s2", "we give in again", 1, "give_in", "give"),
    make_sample_record("s3", "he would give in quickly", 2, "give_in", "give"),
    make_sample_record("s4", "we all agreeing on the matter now", 2, "agree_on", "agree"),
    make_sample_record("s5", "they agree on it", 1, "agree_on", "agree"),
]


@pytest.fixture
def samples_json(tmp_path):
    path = tmp_path / "samples.json"
    path.write_text(json.dumps(SIX_SAMPLES, indent=2), encoding="utf-8")
    return path
